#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sturmian/green_matrix.hpp"
#include "sturmian/physical.hpp"

namespace sturmian {

// Numbers are serialized as decimals with 17 significant digits, enough for
// a lossless double round-trip; re-reading a file and re-emitting it is
// byte-identical because the writer below is the only formatter used.
// Negative zero keeps an explicit ".0" so JSON readers parse it as a float
// (a bare "-0" would come back as integer zero and drop the sign).
inline std::string format_double(double v) {
    if (v == 0.0) return std::signbit(v) ? "-0.0" : "0";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_complex_pair(Complex v) {
    return "[" + format_double(v.real()) + ", " + format_double(v.imag()) + "]";
}

struct MatrixDocument {
    PhysicalParams params;
    Complex energy{0.0, 0.0};
    std::size_t n = 0;
    std::string route;
    Complex tail{0.0, 0.0};
    std::vector<std::vector<Complex>> entries;
    bool has_cross_check = false;
    std::string cross_check_route;
    double cross_check_max_rel = 0.0;
};

inline MatrixDocument make_matrix_document(const GreensMatrix& G, Complex tail) {
    MatrixDocument doc;
    doc.params = G.params();
    doc.energy = G.energy().z;
    doc.n = G.size();
    doc.route = to_string(G.route());
    doc.tail = tail;
    doc.entries.assign(doc.n, std::vector<Complex>(doc.n));
    for (std::size_t i = 0; i < doc.n; ++i)
        for (std::size_t j = 0; j < doc.n; ++j) doc.entries[i][j] = G(i, j);
    return doc;
}

namespace detail {

inline void write_params_json(std::ostream& os, const PhysicalParams& p) {
    os << "{\"Z\": " << format_double(p.Z) << ", \"bs\": " << format_double(p.b_s)
       << ", \"l\": " << p.l << ", \"D\": " << p.dimension
       << ", \"L\": " << format_double(p.L) << "}";
}

inline PhysicalParams read_params_json(const nlohmann::json& j) {
    return make_physical_params(j.at("Z").get<double>(), j.at("bs").get<double>(),
                                j.at("l").get<int>(), j.at("D").get<int>());
}

inline Complex read_complex_pair(const nlohmann::json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace detail

inline void write_matrix_json(std::ostream& os, const MatrixDocument& doc) {
    os << "{\n";
    os << "  \"schema\": 1,\n";
    os << "  \"command\": \"green-matrix\",\n";
    os << "  \"params\": ";
    detail::write_params_json(os, doc.params);
    os << ",\n";
    os << "  \"energy\": " << format_complex_pair(doc.energy) << ",\n";
    os << "  \"n\": " << doc.n << ",\n";
    os << "  \"route\": \"" << doc.route << "\",\n";
    os << "  \"tail\": " << format_complex_pair(doc.tail) << ",\n";
    os << "  \"matrix\": [\n";
    for (std::size_t i = 0; i < doc.n; ++i) {
        os << "    [";
        for (std::size_t j = 0; j < doc.n; ++j) {
            os << format_complex_pair(doc.entries[i][j]);
            if (j + 1 < doc.n) os << ", ";
        }
        os << "]" << (i + 1 < doc.n ? "," : "") << "\n";
    }
    os << "  ]";
    if (doc.has_cross_check) {
        os << ",\n  \"cross_check\": {\"route\": \"" << doc.cross_check_route
           << "\", \"max_rel_discrepancy\": " << format_double(doc.cross_check_max_rel) << "}";
    }
    os << "\n}\n";
}

inline MatrixDocument read_matrix_json(std::istream& is) {
    const nlohmann::json j = nlohmann::json::parse(is);
    if (j.at("schema").get<int>() != 1)
        throw std::runtime_error("read_matrix_json: unsupported schema");
    MatrixDocument doc;
    doc.params = detail::read_params_json(j.at("params"));
    doc.energy = detail::read_complex_pair(j.at("energy"));
    doc.n = j.at("n").get<std::size_t>();
    doc.route = j.at("route").get<std::string>();
    doc.tail = detail::read_complex_pair(j.at("tail"));
    const auto& rows = j.at("matrix");
    doc.entries.assign(doc.n, std::vector<Complex>(doc.n));
    for (std::size_t i = 0; i < doc.n; ++i)
        for (std::size_t j2 = 0; j2 < doc.n; ++j2)
            doc.entries[i][j2] = detail::read_complex_pair(rows.at(i).at(j2));
    if (j.contains("cross_check")) {
        doc.has_cross_check = true;
        doc.cross_check_route = j.at("cross_check").at("route").get<std::string>();
        doc.cross_check_max_rel = j.at("cross_check").at("max_rel_discrepancy").get<double>();
    }
    return doc;
}

inline void write_matrix_csv(std::ostream& os, const MatrixDocument& doc) {
    os << "# schema=1 command=green-matrix Z=" << format_double(doc.params.Z)
       << " bs=" << format_double(doc.params.b_s) << " l=" << doc.params.l
       << " D=" << doc.params.dimension << " energy_re=" << format_double(doc.energy.real())
       << " energy_im=" << format_double(doc.energy.imag()) << " n=" << doc.n
       << " route=" << doc.route << " tail_re=" << format_double(doc.tail.real())
       << " tail_im=" << format_double(doc.tail.imag()) << "\n";
    os << "i,j,g_re,g_im\n";
    for (std::size_t i = 0; i < doc.n; ++i)
        for (std::size_t j = 0; j < doc.n; ++j)
            os << i << "," << j << "," << format_double(doc.entries[i][j].real()) << ","
               << format_double(doc.entries[i][j].imag()) << "\n";
}

struct ScanRow {
    Complex z{0.0, 0.0};
    Complex g00{0.0, 0.0};
    bool converged = false;
    int iterations = 0;
    bool pole = false;  // when set, the g00 fields are null/empty
};

inline void write_scan_json(std::ostream& os, const PhysicalParams& p,
                            const std::vector<ScanRow>& rows) {
    os << "{\n  \"schema\": 1,\n  \"command\": \"g00-scan\",\n  \"params\": ";
    detail::write_params_json(os, p);
    os << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ScanRow& r = rows[i];
        os << "    {\"z\": " << format_complex_pair(r.z) << ", \"g00\": ";
        if (r.pole)
            os << "null";
        else
            os << format_complex_pair(r.g00);
        os << ", \"converged\": " << (r.converged ? "true" : "false")
           << ", \"iterations\": " << r.iterations
           << ", \"pole\": " << (r.pole ? "true" : "false") << "}"
           << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "z_re,z_im,g00_re,g00_im,converged,iterations,pole\n";
    for (const ScanRow& r : rows) {
        os << format_double(r.z.real()) << "," << format_double(r.z.imag()) << ",";
        if (r.pole)
            os << ",";
        else
            os << format_double(r.g00.real()) << "," << format_double(r.g00.imag());
        os << "," << (r.converged ? 1 : 0) << "," << r.iterations << "," << (r.pole ? 1 : 0)
           << "\n";
    }
}

struct SpectrumRow {
    int n_r = 0;
    double analytic = 0.0;
    double located = 0.0;
    double abs_diff = 0.0;
};

inline void write_spectrum_json(std::ostream& os, const PhysicalParams& p,
                                const std::vector<SpectrumRow>& rows) {
    os << "{\n  \"schema\": 1,\n  \"command\": \"spectrum\",\n  \"params\": ";
    detail::write_params_json(os, p);
    os << ",\n  \"levels\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SpectrumRow& r = rows[i];
        os << "    {\"n_r\": " << r.n_r << ", \"analytic\": " << format_double(r.analytic)
           << ", \"located\": " << format_double(r.located)
           << ", \"abs_diff\": " << format_double(r.abs_diff) << "}"
           << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << "n_r,analytic,located,abs_diff\n";
    for (const SpectrumRow& r : rows)
        os << r.n_r << "," << format_double(r.analytic) << "," << format_double(r.located)
           << "," << format_double(r.abs_diff) << "\n";
}

}  // namespace sturmian
