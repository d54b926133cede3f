#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sturmian/green_matrix.hpp"
#include "sturmian/io.hpp"

namespace fs = std::filesystem;

using sturmian::Complex;
using sturmian::format_double;
using sturmian::MatrixDocument;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "sturmian_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd = env + (env.empty() ? "" : " ") + STURMIAN_CLI_PATH + " " + args +
                            " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        // trailing empty field
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST_CASE("17-digit decimal formatting round-trips doubles losslessly") {
    for (const double v :
         {-0.3, 1.0 / 3.0, 6.02214076e23, 1e-17, -0.5, 0.0, -0.0, 123456.789}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(format_double(std::stod(s)) == s);
    }
    CHECK(format_double(-0.0) == "-0.0");  // survives a JSON integer parse
}

TEST_CASE("matrix JSON round-trip is byte-identical") {
    const auto p = sturmian::make_physical_params(-1.3, 1.7, 1, 3);
    const auto e = sturmian::make_complex_energy(Complex(0.5, 0.8), p);
    const auto G = sturmian::greens_matrix_recursive(5, e, p);
    MatrixDocument doc = sturmian::make_matrix_document(G, sturmian::cn_closed_form(5, e, p));
    doc.has_cross_check = true;
    doc.cross_check_route = "tail-corrected-inversion";
    doc.cross_check_max_rel = 3.25e-13;

    std::ostringstream first;
    sturmian::write_matrix_json(first, doc);
    std::istringstream parse_in(first.str());
    const MatrixDocument reread = sturmian::read_matrix_json(parse_in);
    std::ostringstream second;
    sturmian::write_matrix_json(second, reread);
    CHECK(first.str() == second.str());

    const nlohmann::json j = nlohmann::json::parse(first.str());
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("route").get<std::string>() == "closed-form-recursion");
}

TEST_CASE("green-matrix: symmetric output, json and csv") {
    const fs::path out = scratch_dir() / "gm8.json";
    const CliResult r = run_cli("green-matrix -Z -1 -l 0 -D 3 --bs 1 --energy -0.3 --n 8 "
                                "--format json --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::ifstream in(out);
    const MatrixDocument doc = sturmian::read_matrix_json(in);
    CHECK(doc.n == 8);
    CHECK(doc.route == "closed-form-recursion");
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(doc.entries[i][j] == doc.entries[j][i]);

    // Byte-identical re-emission of the CLI's own file.
    std::ostringstream ss;
    sturmian::write_matrix_json(ss, doc);
    CHECK(ss.str() == slurp(out));

    const CliResult csv = run_cli("green-matrix -Z -1 --bs 1 --energy -0.3 --n 4 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("# schema=1 command=green-matrix", 0) == 0);
    CHECK(parse_csv(csv.out).size() == 17);  // header + 16 entries
}

TEST_CASE("green-matrix: cross-check metadata and pole exit code") {
    const CliResult r =
        run_cli("green-matrix -Z -1 --bs 1 --energy -0.3 --n 6 --cross-check");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const MatrixDocument doc = sturmian::read_matrix_json(in);
    REQUIRE(doc.has_cross_check);
    CHECK(doc.cross_check_route == "tail-corrected-inversion");
    CHECK(doc.cross_check_max_rel <= 1e-9);

    const CliResult pole = run_cli("green-matrix -Z -1 --bs 1 --energy -0.5 --n 4");
    CHECK(pole.exit_code == 2);
    CHECK(pole.err.find("n_r = 0") != std::string::npos);
}

TEST_CASE("green-matrix: 1x1 at the degenerate hand-checked point") {
    const CliResult r = run_cli("green-matrix -Z -1 --bs 2 --energy -2 --n 1");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const MatrixDocument doc = sturmian::read_matrix_json(in);
    REQUIRE(doc.n == 1);
    CHECK(std::abs(doc.entries[0][0] - Complex(-1.0)) <= 1e-12);
}

TEST_CASE("g00-scan: pole spikes bracket the bound energies") {
    const CliResult r =
        run_cli("g00-scan -Z -1 --bs 1 --grid -0.6,-0.05,200 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 201);  // header + 200 points
    CHECK(rows[0][0] == "z_re");

    std::vector<double> mags;
    std::vector<double> zs;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 7);
        zs.push_back(std::stod(rows[i][0]));
        const double re = std::stod(rows[i][2]);
        const double im = std::stod(rows[i][3]);
        mags.push_back(std::hypot(re, im));
    }
    // Reference level: the plateau between the two lowest poles.
    std::size_t plateau = 0;
    for (std::size_t i = 0; i < zs.size(); ++i)
        if (std::abs(zs[i] + 0.3) < std::abs(zs[plateau] + 0.3)) plateau = i;
    for (const double pole : {-0.5, -0.125}) {
        // the two grid points straddling the pole are both elevated and at
        // least one spikes hard
        std::size_t left = 0;
        for (std::size_t i = 0; i + 1 < zs.size(); ++i)
            if (zs[i] <= pole && pole <= zs[i + 1]) left = i;
        CHECK(mags[left] > 3.0 * mags[plateau]);
        CHECK(mags[left + 1] > 3.0 * mags[plateau]);
        CHECK(std::max(mags[left], mags[left + 1]) > 10.0 * mags[plateau]);
    }
}

TEST_CASE("g00-scan: free case is smooth and fully converged") {
    const CliResult r = run_cli("g00-scan -Z 0 --bs 1 --grid -0.6,-0.05,50 --format csv");
    REQUIRE(r.exit_code == 0);
    for (const auto& row : parse_csv(r.out)) {
        if (row[0] == "z_re") continue;
        CHECK(row[4] == "1");  // converged
        CHECK(row[6] == "0");  // no pole flag
    }
}

TEST_CASE("g00-scan: single point matches the hand value") {
    const CliResult r = run_cli("g00-scan -Z -1 --bs 2 --energy -2 --format json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("rows").size() == 1);
    const auto& row = j.at("rows").at(0);
    CHECK(std::abs(row.at("g00").at(0).get<double>() - (-1.0)) <= 1e-12);
    CHECK(std::abs(row.at("g00").at(1).get<double>()) <= 1e-12);
    CHECK(row.at("converged").get<bool>());
}

TEST_CASE("spectrum: hydrogen levels and the repulsive rejection") {
    const CliResult r = run_cli("spectrum -Z -1 --bs 1 --n 3 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(std::abs(std::stod(rows[1][1]) - (-0.5)) < 1e-15);
    CHECK(std::abs(std::stod(rows[2][1]) - (-0.125)) < 1e-15);
    CHECK(std::abs(std::stod(rows[3][1]) - (-1.0 / 18.0)) < 1e-15);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][3]) < 1e-8);

    // Half-integer L: ground level -2/9.
    const CliResult d4 = run_cli("spectrum -Z -1 -D 4 -l 0 --n 1 --format csv");
    REQUIRE(d4.exit_code == 0);
    CHECK(std::abs(std::stod(parse_csv(d4.out)[1][1]) - (-2.0 / 9.0)) < 1e-15);

    const CliResult repulsive = run_cli("spectrum -Z 1 --n 3");
    CHECK(repulsive.exit_code == 1);
    CHECK(repulsive.err.find("no bound states") != std::string::npos);
}

TEST_CASE("verify: default battery passes") {
    const CliResult r = run_cli("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] cn-route-equivalence") != std::string::npos);
    CHECK(r.out.find("[PASS] matrix-route-equivalence") != std::string::npos);
    CHECK(r.out.find("0 failed") != std::string::npos);
}

TEST_CASE("verify: pole-adjacent checks are skipped, exit 0") {
    const CliResult r = run_cli("verify --energy -0.125 -Z -1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[SKIP]") != std::string::npos);
    CHECK(r.out.find("pole-adjacent") != std::string::npos);
}

TEST_CASE("verify: near-cut region policy flags the closed form") {
    const CliResult r = run_cli("verify --near-cut --energy 0.4+1e-6i");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[FLAG] cn-route-equivalence") != std::string::npos);
    CHECK(r.out.find("authoritative") != std::string::npos);
    CHECK(r.out.find("near-cut region policy") != std::string::npos);
}

TEST_CASE("verify: iteration-cap override via the environment") {
    const CliResult r = run_cli("verify", "STURMIAN_GREEN_MAX_ITER=2");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("[FAIL] cn-route-equivalence") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("green-matrix --energy not-a-number --n 4").exit_code == 1);
    CHECK(run_cli("g00-scan -Z -1 --grid -0.6,-0.05").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}
