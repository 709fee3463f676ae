// Command-line front end, driven in-process.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "cli_app.hpp"

using namespace msab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "msab");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    return {code, o.str(), e.str()};
}

/// Data lines of a CSV output (comments and header removed), split on commas.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::string* header = nullptr) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            if (header) *header = line;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}
}  // namespace

TEST_CASE("MS level table", "[cli]") {
    auto r = run({"spectrum", "--problem", "schrodinger-ms", "--gamma", "1", "--mu", "0.3", "--lambda0", "0.2",
                  "--lambda-1", "-0.4", "--l", "-5..5", "--nmax", "10"});
    REQUIRE(r.code == 0);
    std::string header;
    auto rows = csv_rows(r.out, &header);
    CHECK(header == "p_z,l,n,m,E,weight,region,lambda");
    // channels l = -5..5 with n <= 10: 11 levels for each l <= 0, 11 - l for l > 0
    CHECK(rows.size() == 6 * 11 + 10 + 9 + 8 + 7 + 6);
    for (const auto& c : rows) {
        int l = std::stoi(c[1]), n = std::stoi(c[2]);
        double E = std::stod(c[4]);
        if (l >= 1) CHECK_THAT(E, WithinRel(1 + 2 * n + 0.6, 1e-14));
        if (l <= -2) CHECK_THAT(E, WithinRel(1 + 2 * n, 1e-14));
        if (l == 0 || l == -1) CHECK_FALSE(c[7].empty());
    }
}

TEST_CASE("Dirac mu = 0 ladder", "[cli]") {
    auto r = run({"spectrum", "--problem", "dirac", "--mu", "0", "--gamma", "1", "--me", "1", "--pz", "0", "--window",
                  "8"});
    REQUIRE(r.code == 0);
    std::string header;
    auto rows = csv_rows(r.out, &header);
    CHECK(header == "s,p_z,l,n,sigma,E,weight,region,lambda");
    REQUIRE(!rows.empty());
    for (const auto& c : rows) {
        int n = std::stoi(c[3]);
        CHECK_THAT(std::abs(std::stod(c[5])), WithinRel(std::sqrt(1 + 2.0 * std::abs(n)), 1e-14));
    }
}

TEST_CASE("exit codes", "[cli]") {
    auto r = run({"spectrum", "--problem", "schrodinger-ms", "--mu", "0.3", "--l", "-2..2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("l_a = -1") != std::string::npos);
    CHECK(run({"spectrum", "--problem", "nonsense"}).code == 2);
    CHECK(run({"spectrum", "--l", "3..1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"eigenfunction", "--problem", "schrodinger-ms", "--mu", "0.3", "--l", "2", "--n", "1"}).code == 2);
    CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
    CHECK(run({"spectrum", "--problem", "dirac", "--mu", "0.5", "--l", "0", "--lambda", "0"}).code == 2);
}

TEST_CASE("eigenfunction output with norm footer", "[cli]") {
    auto r = run({"eigenfunction", "--problem", "dirac", "--mu", "0.3", "--l", "-1", "--n", "1", "--dims", "radial",
                  "--points", "20"});
    REQUIRE(r.code == 0);
    std::string header;
    auto rows = csv_rows(r.out, &header);
    CHECK(header == "rho,f,g");
    CHECK(rows.size() == 20);
    auto pos = r.out.find("# norm: ");
    REQUIRE(pos != std::string::npos);
    CHECK_THAT(std::stod(r.out.substr(pos + 8)), WithinAbs(1.0, 1e-9));

    auto s = run({"eigenfunction", "--problem", "schrodinger-ms", "--mu", "0.3", "--l", "1", "--n", "3", "--format",
                  "json"});
    REQUIRE(s.code == 0);
    auto j = cli::json::parse(s.out);
    CHECK_THAT(j["meta"]["footer"]["norm"].get<double>(), WithinAbs(1.0, 1e-9));
    CHECK(j["data"].size() == 200);
}

TEST_CASE("lambda sweep of the MS R3 ground level is monotone", "[cli]") {
    auto r = run({"sweep", "--problem", "schrodinger-ms", "--mu", "0", "--l", "0", "--nmax", "0", "--param", "lambda",
                  "--from", "-1.5", "--to", "1.5", "--steps", "50"});
    REQUIRE(r.code == 0);
    std::string header;
    auto rows = csv_rows(r.out, &header);
    CHECK(header == "swept_lambda,p_z,l,n,m,E,weight,region,lambda");
    REQUIRE(rows.size() == 50);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][0]) > std::stod(rows[i - 1][0]));
        CHECK(std::stod(rows[i][5]) < std::stod(rows[i - 1][5]));
    }
    // each point agrees with direct root finding
    auto c0 = FluxConfig::from_mantissa(0.0, 1.0);
    for (std::size_t i : {0u, 17u, 49u}) {
        double lam = std::stod(rows[i][0]);
        auto lv = ms::discrete_spectrum(0, c0, Angle::radians(lam), 0);
        CHECK(std::stod(rows[i][5]) == lv[0].energy);
    }
}

TEST_CASE("verify command", "[cli]") {
    auto r = run({"verify", "--suite", "wronskian,ab-bound"});
    CHECK(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][3] == "true");
    auto f = run({"verify", "--suite", "ab-bound", "--tol", "1e-300"});
    CHECK(f.code == 1);
}

TEST_CASE("configuration round-trips through serialization", "[cli]") {
    cli::JobConfig c;
    c.problem = "dirac";
    c.mu = 0.1 + 0.2;  // not exactly representable as a short decimal
    c.gamma = 1.0 / 3.0;
    c.pz = {0.0, -0.7, 1e-300};
    c.lambda = "pi/2";
    c.lambda_table = {{0.0, 0.1}, {1.0, std::nextafter(0.2, 1.0)}};
    c.energy = 2.5;
    c.seed = 18446744073709551615ull;
    auto text = cli::to_json(c).dump();
    auto back = cli::from_json(cli::json::parse(text));
    CHECK(back == c);
    CHECK(cli::to_json(back).dump() == text);
}

TEST_CASE("outputs are byte-identical across runs", "[cli]") {
    std::vector<std::vector<std::string>> jobs{
        {"spectrum", "--problem", "dirac", "--mu", "0.3", "--l", "-1..1", "--lambda", "0.7", "--nmax", "3"},
        {"spectrum", "--problem", "schrodinger-ms", "--mu", "0.3", "--lambda0", "0.2", "--lambda-1", "-pi/4", "--l",
         "-3..3", "--format", "json"},
        {"eigenfunction", "--problem", "schrodinger-ms", "--mu", "0", "--lambda", "0.4", "--l", "0", "--n", "1"},
        {"sweep", "--problem", "dirac", "--mu", "0.3", "--l", "0", "--param", "lambda", "--from", "-1", "--to",
         "pi/2", "--steps", "5", "--nmax", "2"}};
    for (const auto& j : jobs) {
        auto a = run(j), b = run(j);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
