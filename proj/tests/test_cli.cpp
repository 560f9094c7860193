#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "ncsphere/flow.hpp"
#include "ncsphere/geometry.hpp"
#include "ncsphere/modes.hpp"
#include "ncsphere/modes_oracle.hpp"
#include "ncsphere/modeset_io.hpp"
#include "support.hpp"

using namespace ncsphere;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ncsphere");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// data rows of a CSV with '#' comments and one header line
std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string header_value(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    const std::string prefix = "# " + key + " = ";
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    return "";
}

const std::string data_dir = NCSPHERE_DATA_DIR;

fs::path temp_dir()
{
    const fs::path p = fs::temp_directory_path() / "ncsphere_cli_test";
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("cli: usage errors")
{
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"bogus"}).code == cli::kUsage);
    CHECK(run({"verify", "--alpha", "0.1", "--h", "0.1"}).code == cli::kUsage);
    CHECK(run({"curvature", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"modes"}).code == cli::kUsage);
    CHECK(run({"modes", "--modeset", data_dir + "/modeset_n3.json", "--p", "0"}).code == cli::kUsage);
    CHECK(run({"curvature", "--grid", "1"}).code == cli::kUsage);
    CHECK(run({"flow", "--a0", "1", "--b0", "1"}).code == cli::kUsage);
    const Run help = run({"verify", "--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("--alpha") != std::string::npos);
}

TEST_CASE("cli: domain errors")
{
    const Run r = run({"verify", "--alpha", "1.5"});
    CHECK(r.code == cli::kDomain);
    CHECK(r.err.find("domain") != std::string::npos);
}

TEST_CASE("cli: verify")
{
    const Run ok = run({"verify"});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("all checks passed") != std::string::npos);

    const Run zero = run({"verify", "--alpha", "0"});
    CHECK(zero.code == cli::kOk);
    CHECK(zero.out.find("PASS geometry: commutative limit R = 2") != std::string::npos);

    const Run strict = run({"verify", "--tol", "1e-30"});
    CHECK(strict.code == cli::kCheckFailed);
    CHECK(strict.out.find("FAIL") != std::string::npos);

    const Run js = run({"verify", "--h", "0.3", "--format", "json"});
    REQUIRE(js.code == cli::kOk);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() >= 9);
    CHECK(std::abs(j["config"]["alpha"].get<double>() - std::tanh(0.3)) < 1e-15);
}

TEST_CASE("cli: curvature table and sidecar")
{
    const fs::path out = temp_dir() / "curv.csv";
    const Run r = run({"curvature", "--alpha", "0.75", "--grid", "200", "--out", out.string()});
    REQUIRE(r.code == cli::kOk);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    const auto rows = csv_rows(ss.str());
    CHECK(rows.size() >= 195);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 6);
        const double x = std::stod(row[0]), R = std::stod(row[5]);
        CHECK(std::abs(R - ricci_closed(x, 0.75).scalar_R) <= 1e-12 * std::max(1.0, std::abs(R)));
    }
    const fs::path side = temp_dir() / "curv.singularities.json";
    REQUIRE(fs::exists(side));
    std::ifstream sf(side);
    const auto j = nlohmann::json::parse(sf);
    REQUIRE(j["singularities"].size() == 2);
    CHECK(std::abs(j["singularities"][0].get<double>() - 0.5 * std::acos(7.0 / 18.0)) < 1e-9);
    CHECK(j["sign_changes"].size() == 2);

    const Run flat = run({"curvature", "--alpha", "0"});
    for (const auto& row : csv_rows(flat.out)) CHECK(std::abs(std::stod(row[5]) - 2.0) < 1e-12);
    const Run near = run({"curvature", "--alpha", "0.999", "--grid", "100"});
    for (const auto& row : csv_rows(near.out)) {
        const double x = std::stod(row[0]);
        if (std::abs(x - pi / 4) > 0.2 && std::abs(x - 3 * pi / 4) > 0.2) CHECK(std::abs(std::stod(row[5])) < 0.1);
    }
}

TEST_CASE("cli: flow dataset")
{
    const Run r = run({"flow", "--a0", "0.05", "--b0", "1"});
    REQUIRE(r.code == cli::kOk);
    const double lo = std::stod(header_value(r.out, "x_min")), hi = std::stod(header_value(r.out, "x_max"));
    CHECK(lo == doctest::Approx(validity_domain(0.05, 1.0).first));
    CHECK(hi == doctest::Approx(validity_domain(0.05, 1.0).second));
    int traces = 0, boundary = 0;
    for (const auto& row : csv_rows(r.out)) {
        REQUIRE(row.size() == 9);
        if (row[0] == "trace") {
            ++traces;
            CHECK(std::stod(row[8]) < 1e-6);
            CHECK(std::stod(row[3]) >= lo - 1e-12);
            CHECK(std::stod(row[3]) <= hi + 1e-12);
        } else {
            ++boundary;
        }
    }
    CHECK(traces > 8);
    CHECK(boundary == 128);

    // a0 = 0: meridians, y constant along each trace
    const Run m = run({"flow", "--a0", "0", "--seed-count", "4"});
    for (const auto& row : csv_rows(m.out))
        if (row[0] == "trace") CHECK(std::stod(row[4]) == doctest::Approx(2 * pi * std::stoi(row[1]) / 4));
}

TEST_CASE("cli: modes table")
{
    // N = 0 with p = 1: R1 and R2 combine to the first-system residuals
    const std::string n0 = data_dir + "/modeset_n0.json";
    const Run r = run({"modes", "--modeset", n0, "--p", "1", "3", "--format", "json", "--alpha", "0.2"});
    REQUIRE(r.code == cli::kOk);
    const auto j = nlohmann::json::parse(r.out);
    const ModeSet ms0 = load_modeset(n0);
    const YSymField f{ms0.v0[0], ms0.v0[1], std::nullopt};
    const auto d = Deformation::from_alpha(0.2);
    int p1 = 0, p3 = 0;
    for (const auto& row : j["rows"]) {
        auto c = [](const nlohmann::json& v) { return cplx(v[0].get<double>(), v[1].get<double>()); };
        const double x = row["x"];
        const cplx R1 = c(row["residuals"][0]), R2 = c(row["residuals"][1]);
        if (row["p"] == 1) {
            ++p1;
            const auto [s1, s2] = sysfirst_residual(f, x, d);
            CHECK(std::abs((R1 - cplx(0, 1) * R2) / s1 - pi) < 1e-10 * pi);
            CHECK(std::abs((R1 + cplx(0, 1) * R2) / s2 - pi) < 1e-10 * pi);
            CHECK(row.contains("ysym"));
        } else {
            ++p3;
            for (const auto& v : row["magnitudes"]) CHECK(v.get<double>() == 0.0);
        }
    }
    CHECK(p1 == 10);
    CHECK(p3 == 10);

    // N = 3 against the quadrature oracle
    const std::string n3 = data_dir + "/modeset_n3.json";
    const Run r3 = run({"modes", "--modeset", n3, "--p", "2", "--grid", "4"});
    REQUIRE(r3.code == cli::kOk);
    const ModeSet ms3 = load_modeset(n3);
    for (const auto& row : csv_rows(r3.out)) {
        REQUIRE(row.size() == 19);
        const double x = std::stod(row[1]);
        const auto o = p_mode_oracle(ms3, d, x, 2);
        for (int k = 0; k < 6; ++k) {
            const cplx v(std::stod(row[2 + 2 * k]), std::stod(row[3 + 2 * k]));
            CHECK(std::abs(v - o[k]) < 1e-8);
        }
    }

    // padding leaves the table unchanged apart from the header
    const Run pad = run({"modes", "--modeset", n3, "--p", "2", "--grid", "4", "--modes", "5"});
    CHECK(csv_rows(pad.out) == csv_rows(r3.out));
    // truncation to N = 0 drops every mode
    const Run cut = run({"modes", "--modeset", n3, "--p", "1", "--grid", "2", "--modes", "0"});
    CHECK(cut.code == cli::kOk);
    CHECK(header_value(cut.out, "N") == "0");
}

TEST_CASE("cli: malformed mode set")
{
    const fs::path bad = temp_dir() / "bad.json";
    {
        std::ofstream f(bad);
        f << "{\"N\": 0,\n \"v0\": [{\"kind\": \"zero\"},\n  {\"kind\": \"spline\"}]}\n";
    }
    const Run r = run({"modes", "--modeset", bad.string()});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find(":3:") != std::string::npos);
}

TEST_CASE("cli: output is byte-identical across runs and thread counts")
{
    const std::vector<std::string> args{"modes", "--modeset", data_dir + "/modeset_n3.json", "--p", "1", "2", "3"};
    setenv("NCSPHERE_THREADS", "1", 1);
    const Run a = run(args);
    const Run fa = run({"flow"});
    setenv("NCSPHERE_THREADS", "4", 1);
    const Run b = run(args);
    const Run fb = run({"flow"});
    unsetenv("NCSPHERE_THREADS");
    CHECK(a.out == b.out);
    CHECK(fa.out == fb.out);
    CHECK(run({"curvature", "--alpha", "0.5"}).out == run({"curvature", "--alpha", "0.5"}).out);
}
