#pragma once
// Command-line front end: parameter parsing, spectrum / eigenfunction
// computation, verification suites and CSV / JSON export.
//
// Usage: msab <command> [options]
//   spectrum       level table of the selected problem
//   eigenfunction  samples of one eigenfunction (plus its norm)
//   verify         named invariant suite(s)
//   sweep          stacked spectra over a range of lambda, mu or p_z
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <msab/msab.hpp>

namespace msab::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* version = "1.0.0";

// ---------------------------------------------------------------- configuration

/// Complete, explicit configuration of one CLI run.  Angles are kept as the
/// user's text so that literal tokens such as `pi/2` survive round trips.
struct JobConfig {
    std::string command = "spectrum";
    std::string problem = "schrodinger-ms";  ///< schrodinger-ab | schrodinger-ms | dirac
    std::string dims = "2d";                 ///< radial | 2d | 3d
    // physics
    double gamma = 1.0;
    double mu = 0.0;
    int phi0 = 0;
    int eps_B = 1;
    int eps_q = 1;
    double kappa0 = 1.0;
    double Ms = 1.0;
    double me = 1.0;
    int s = 0;  ///< Dirac spin label; 0 = both
    std::vector<double> pz{0.0};
    // extension
    std::string lambda, lambda0, lambda_m1;
    std::vector<std::pair<double, double>> lambda_table, lambda0_table, lambda_m1_table;
    // level window
    int l_min = 0, l_max = 0;
    int nmax = 10;
    double window = 0.0;
    // eigenfunction selection and grid
    int n = 0;
    int sigma = 0;  ///< Dirac level sign selector; 0 = any
    std::optional<double> energy;
    double rho_min = 0.01, rho_max = 10.0;
    int points = 200;
    double phi = 0.0, z = 0.0;
    // verify / sweep
    std::string suite = "all";
    std::string param = "lambda";
    std::string from, to;
    int steps = 11;
    // output
    std::string format = "csv";
    std::string out;
    double tol = 0.0;  ///< verification threshold override; 0 = per-suite defaults
    std::uint64_t seed = 20240601;

    bool operator==(const JobConfig&) const = default;
};

inline json to_json(const JobConfig& c) {
    json j;
    j["command"] = c.command;
    j["problem"] = c.problem;
    j["dims"] = c.dims;
    j["gamma"] = c.gamma;
    j["mu"] = c.mu;
    j["phi0"] = c.phi0;
    j["eps_B"] = c.eps_B;
    j["eps_q"] = c.eps_q;
    j["kappa0"] = c.kappa0;
    j["Ms"] = c.Ms;
    j["me"] = c.me;
    j["s"] = c.s;
    j["pz"] = c.pz;
    j["lambda"] = c.lambda;
    j["lambda0"] = c.lambda0;
    j["lambda_m1"] = c.lambda_m1;
    j["lambda_table"] = c.lambda_table;
    j["lambda0_table"] = c.lambda0_table;
    j["lambda_m1_table"] = c.lambda_m1_table;
    j["l_min"] = c.l_min;
    j["l_max"] = c.l_max;
    j["nmax"] = c.nmax;
    j["window"] = c.window;
    j["n"] = c.n;
    j["sigma"] = c.sigma;
    j["energy"] = c.energy ? json(*c.energy) : json(nullptr);
    j["rho_min"] = c.rho_min;
    j["rho_max"] = c.rho_max;
    j["points"] = c.points;
    j["phi"] = c.phi;
    j["z"] = c.z;
    j["suite"] = c.suite;
    j["param"] = c.param;
    j["from"] = c.from;
    j["to"] = c.to;
    j["steps"] = c.steps;
    j["format"] = c.format;
    j["out"] = c.out;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    return j;
}

inline JobConfig from_json(const json& j) {
    JobConfig c;
    try {
        j.at("command").get_to(c.command);
        j.at("problem").get_to(c.problem);
        j.at("dims").get_to(c.dims);
        j.at("gamma").get_to(c.gamma);
        j.at("mu").get_to(c.mu);
        j.at("phi0").get_to(c.phi0);
        j.at("eps_B").get_to(c.eps_B);
        j.at("eps_q").get_to(c.eps_q);
        j.at("kappa0").get_to(c.kappa0);
        j.at("Ms").get_to(c.Ms);
        j.at("me").get_to(c.me);
        j.at("s").get_to(c.s);
        j.at("pz").get_to(c.pz);
        j.at("lambda").get_to(c.lambda);
        j.at("lambda0").get_to(c.lambda0);
        j.at("lambda_m1").get_to(c.lambda_m1);
        j.at("lambda_table").get_to(c.lambda_table);
        j.at("lambda0_table").get_to(c.lambda0_table);
        j.at("lambda_m1_table").get_to(c.lambda_m1_table);
        j.at("l_min").get_to(c.l_min);
        j.at("l_max").get_to(c.l_max);
        j.at("nmax").get_to(c.nmax);
        j.at("window").get_to(c.window);
        j.at("n").get_to(c.n);
        j.at("sigma").get_to(c.sigma);
        if (!j.at("energy").is_null()) c.energy = j.at("energy").get<double>();
        j.at("rho_min").get_to(c.rho_min);
        j.at("rho_max").get_to(c.rho_max);
        j.at("points").get_to(c.points);
        j.at("phi").get_to(c.phi);
        j.at("z").get_to(c.z);
        j.at("suite").get_to(c.suite);
        j.at("param").get_to(c.param);
        j.at("from").get_to(c.from);
        j.at("to").get_to(c.to);
        j.at("steps").get_to(c.steps);
        j.at("format").get_to(c.format);
        j.at("out").get_to(c.out);
        j.at("tol").get_to(c.tol);
        j.at("seed").get_to(c.seed);
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed configuration: ") + e.what());
    }
    return c;
}

/// "a..b" or a single integer.
inline std::pair<int, int> parse_range(const std::string& text) {
    auto bad = [&] { return config_error("invalid l range '" + text + "' (expected a..b or an integer)"); };
    auto to_int = [&](const std::string& t) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos != t.size()) throw bad();
        return v;
    };
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int v = to_int(text);
        return {v, v};
    }
    int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (a > b) throw config_error("empty l range '" + text + "'");
    return {a, b};
}

/// Two-column CSV (p_z, lambda); '#' lines and a non-numeric header are skipped.
inline std::vector<std::pair<double, double>> read_lambda_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open lambda table '" + path + "'");
    std::vector<std::pair<double, double>> t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw config_error("lambda table line without comma: '" + line + "'");
        std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        char* end = nullptr;
        double pz = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) {
            if (t.empty()) continue;  // header
            throw config_error("non-numeric p_z in lambda table: '" + line + "'");
        }
        while (!b.empty() && std::isspace(static_cast<unsigned char>(b.back()))) b.pop_back();
        while (!b.empty() && std::isspace(static_cast<unsigned char>(b.front()))) b.erase(b.begin());
        t.emplace_back(pz, Angle::parse(b).value());
    }
    if (t.empty()) throw config_error("lambda table '" + path + "' has no rows");
    return t;
}

inline std::optional<Angle> parse_angle(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return Angle::parse(text);
}

inline FluxConfig flux(const JobConfig& c) {
    double gamma = c.problem == "schrodinger-ab" ? 0.0 : c.gamma;
    return FluxConfig::from_mantissa(c.mu, gamma, c.phi0, c.eps_B, c.eps_q, c.kappa0);
}

inline assembly::ExtensionChoice extension(const JobConfig& c) {
    assembly::ExtensionChoice ch;
    ch.lambda = parse_angle(c.lambda);
    ch.lambda_a0 = parse_angle(c.lambda0);
    ch.lambda_am1 = parse_angle(c.lambda_m1);
    using Fn = std::function<Angle(double)>;
    std::optional<Fn> tl, t0, tm1;
    if (!c.lambda_table.empty()) tl = assembly::interpolate_lambda(c.lambda_table);
    if (!c.lambda0_table.empty()) t0 = assembly::interpolate_lambda(c.lambda0_table);
    if (!c.lambda_m1_table.empty()) tm1 = assembly::interpolate_lambda(c.lambda_m1_table);
    if (tl || t0 || tm1) {
        auto base = ch;
        ch.per_pz = [base, tl, t0, tm1](double pz) {
            auto r = base;
            r.per_pz = nullptr;
            if (tl) r.lambda = (*tl)(pz);
            if (t0) r.lambda_a0 = (*t0)(pz);
            if (tm1) r.lambda_am1 = (*tm1)(pz);
            return r;
        };
        if (tl) {
            auto f = *tl;
            ch.dirac = [f](int, double pz) { return f(pz); };
        }
    }
    return ch;
}

inline dirac::DiracParams dirac_params(const JobConfig& c) {
    dirac::DiracParams p;
    p.m_e = c.me;
    p.mu = c.mu;
    p.gamma = c.gamma;
    p.eps = c.eps_B * c.eps_q;
    p.s = c.s == 0 ? 1 : c.s;
    p.p_z = c.pz.empty() ? 0.0 : c.pz.front();
    p.l = c.l_min;
    return p;
}

inline void validate(const JobConfig& c) {
    if (c.problem != "schrodinger-ab" && c.problem != "schrodinger-ms" && c.problem != "dirac")
        throw config_error("unknown problem '" + c.problem + "'");
    if (c.dims != "radial" && c.dims != "2d" && c.dims != "3d") throw config_error("unknown dims '" + c.dims + "'");
    if (c.format != "csv" && c.format != "json") throw config_error("unknown format '" + c.format + "'");
    if (c.s != 0 && std::abs(c.s) != 1) throw config_error("--s must be 1, -1 or 0 (both)");
    if (c.nmax < 0) throw config_error("--nmax must be >= 0");
    if (c.pz.empty()) throw config_error("--pz needs at least one value");
    if (!(c.Ms > 0)) throw config_error("--ms must be > 0");
    if (c.problem == "schrodinger-ms" && !(c.gamma > 0)) throw config_error("schrodinger-ms requires --gamma > 0");
    if (!(c.tol >= 0)) throw config_error("--tol must be >= 0");
}

// ---------------------------------------------------------------- tables

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Output table plus free-form metadata (written as '#' lines in CSV).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json meta = json::object();
    json extra_rows;  ///< optional JSON-only payload replacing `rows`
};

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (auto* d = std::get_if<double>(&c)) return format_double(*d);
    return std::get<std::string>(c);
}

inline json cell_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(format_double(*d));
    return std::get<std::string>(c);
}

inline Cell angle_cell(const std::optional<Angle>& a) {
    if (!a) return std::monostate{};
    return a->value();
}

inline void write_table(std::ostream& os, const Table& t, const JobConfig& c) {
    if (c.format == "json") {
        json doc;
        doc["meta"]["version"] = version;
        doc["meta"]["config"] = to_json(c);
        doc["meta"]["columns"] = t.columns;
        for (auto& [k, v] : t.meta.items()) doc["meta"][k] = v;
        if (!t.extra_rows.is_null()) {
            doc["data"] = t.extra_rows;
        } else {
            doc["data"] = json::array();
            for (const auto& r : t.rows) {
                json o = json::object();
                for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
                doc["data"].push_back(o);
            }
        }
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# msab " << version << '\n';
    os << "# config: " << to_json(c).dump() << '\n';
    for (auto& [k, v] : t.meta.items()) {
        if (k == "footer") continue;
        os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
        os << '\n';
    }
    if (t.meta.contains("footer"))
        for (auto& [k, v] : t.meta["footer"].items()) os << "# " << k << ": " << (v.is_number_float() ? format_double(v.get<double>()) : v.dump()) << '\n';
}

// ---------------------------------------------------------------- commands

inline Table spectrum_table(const JobConfig& c) {
    Table t;
    if (c.problem == "dirac") {
        auto p = dirac_params(c);
        auto ch = extension(c);
        std::vector<int> ss = c.s == 0 ? std::vector<int>{-1, 1} : std::vector<int>{c.s};
        t.columns = {"s", "p_z", "l", "n", "sigma", "E", "weight", "region", "lambda"};
        std::vector<assembly::DiracRow> rows;
        if (c.window > 0) {
            for (auto& r : assembly::dirac_full_spectrum(p, ch, c.pz, c.l_min, c.l_max, c.window))
                if (c.s == 0 || r.s == c.s) rows.push_back(r);
        } else {
            for (int s : ss)
                for (double pz : c.pz)
                    for (int l = c.l_min; l <= c.l_max; ++l) {
                        auto q = p;
                        q.s = s;
                        q.p_z = pz;
                        q.l = l;
                        q.validate();
                        std::optional<Angle> la;
                        if (dirac::region(dirac::detail::unflipped(q)) == Region::R3) la = ch.for_dirac(s, pz);
                        for (const auto& v : dirac::spectrum(q, la, c.nmax))
                            rows.push_back({s, l, v.n, v.sigma, pz, v.energy, v.weight,
                                            dirac::region(dirac::detail::unflipped(q)), la});
                    }
        }
        for (const auto& r : rows)
            t.rows.push_back({std::int64_t(r.s), r.p_z, std::int64_t(r.l), std::int64_t(r.n), std::int64_t(r.sigma),
                              r.energy, r.weight, to_string(r.region), angle_cell(r.lambda)});
        t.meta["units"] = "energies E with c = hbar = 1";
        return t;
    }
    auto cfg = flux(c);
    auto ch = extension(c);
    if (c.problem == "schrodinger-ab") {
        t.columns = {"p_z", "l", "E", "weight", "region", "lambda"};
        t.meta["continuum_onset"] = 0.0;
        std::vector<assembly::Level2D> rows;
        if (c.dims == "3d") {
            rows = assembly::spectrum_3d(cfg, ch, c.pz, c.nmax, c.l_min, c.l_max, c.Ms).levels;
        } else {
            auto sp = assembly::spectrum_2d_ab(cfg, ch.at(0.0), c.Ms);
            rows = sp.bound;
        }
        for (const auto& r : rows)
            t.rows.push_back({r.p_z, std::int64_t(r.l), r.energy, r.weight, to_string(r.region), angle_cell(r.lambda)});
        return t;
    }
    // schrodinger-ms
    if (c.dims == "radial") {
        t.columns = {"l", "m", "E", "weight", "region", "lambda"};
        for (int l = c.l_min; l <= c.l_max; ++l) {
            auto la = ch.for_channel(l, cfg.mu);
            for (const auto& v : ms::discrete_spectrum(l, cfg, la, c.nmax))
                t.rows.push_back({std::int64_t(l), std::int64_t(v.m), v.energy, v.weight, to_string(v.region.tag),
                                  angle_cell(la)});
        }
        t.meta["units"] = "operator energies (hbar = 1, 2m = 1)";
        return t;
    }
    std::vector<assembly::Level2D> rows;
    if (c.dims == "3d") {
        auto sp = assembly::spectrum_3d(cfg, ch, c.pz, c.nmax, c.l_min, c.l_max, c.Ms);
        t.meta["continuum_onset"] = sp.continuum_onset;
        rows = sp.levels;
    } else {
        rows = assembly::spectrum_2d(cfg, ch.at(0.0), c.nmax, c.l_min, c.l_max, c.Ms);
    }
    t.columns = {"p_z", "l", "n", "m", "E", "weight", "region", "lambda"};
    for (const auto& r : rows)
        t.rows.push_back({r.p_z, std::int64_t(r.l), std::int64_t(r.n), std::int64_t(r.m), r.energy, r.weight,
                          to_string(r.region), angle_cell(r.lambda)});
    t.meta["units"] = "physical energies E = operator energy / M_s (+ p_z^2 / M_s in 3D)";
    return t;
}

inline Table eigenfunction_table(const JobConfig& c) {
    if (!(c.rho_min > 0) || !(c.rho_max > c.rho_min) || c.points < 2)
        throw config_error("eigenfunction grid needs 0 < rho_min < rho_max and points >= 2");
    auto grid = verify::linear_grid(c.rho_min, c.rho_max, c.points);
    const int l = c.l_min;
    if (c.l_max != c.l_min) throw config_error("eigenfunction needs a single channel --l");
    Table t;
    if (c.problem == "dirac") {
        auto p = dirac_params(c);
        p.l = l;
        p.validate();
        auto ch = extension(c);
        std::optional<Angle> la;
        if (dirac::region(dirac::detail::unflipped(p)) == Region::R3) la = ch.for_dirac(p.s, p.p_z);
        auto levels = dirac::spectrum(p, la, std::max(c.nmax, std::abs(c.n) + 2));
        const dirac::DiracLevel* lv = nullptr;
        for (const auto& v : levels)
            if (v.n == c.n && (c.sigma == 0 || v.sigma == c.sigma)) {
                lv = &v;
                break;
            }
        if (!lv)
            throw config_error("no Dirac level with n = " + std::to_string(c.n) +
                               (c.sigma ? ", sigma = " + std::to_string(c.sigma) : std::string()) +
                               " in channel l = " + std::to_string(l));
        auto h = dirac::eigenfunction(p, la, *lv);
        t.columns = {"rho", "f", "g"};
        bool full = c.dims != "radial";
        std::optional<assembly::AssembledEigenfunction> a;
        if (full) {
            a = assembly::dirac_spinor(*lv, p, c.phi0, h);
            for (int k = 0; k < 4; ++k) {
                t.columns.push_back("re" + std::to_string(k));
                t.columns.push_back("im" + std::to_string(k));
            }
        }
        for (double r : grid) {
            auto d = h(r);
            std::vector<Cell> row{r, d.f, d.g};
            if (a)
                for (auto v : a->eval(r, c.phi, c.z)) {
                    row.push_back(v.real());
                    row.push_back(v.imag());
                }
            t.rows.push_back(row);
        }
        verify::RadialRule rule(h.extent, std::abs(lv->energy) + 1);
        auto up = h.upper(), lo = h.lower();
        double norm = rule.integrate([&](double r) { return up(r) * up(r) + lo(r) * lo(r); });
        t.meta["level"] = {{"l", l}, {"n", lv->n}, {"sigma", lv->sigma}, {"E", lv->energy}};
        t.meta["footer"] = {{"norm", norm}};
        return t;
    }
    auto cfg = flux(c);
    auto ch = extension(c).at(c.pz.front());
    auto la = ch.for_channel(l, cfg.mu);
    std::function<double(double)> U;
    double energy = 0, extent = 0, k = 1;
    bool normalizable = true;
    if (c.problem == "schrodinger-ab") {
        if (c.energy) {
            if (!(*c.energy > 0)) throw config_error("AB continuum eigenfunction needs --energy > 0");
            energy = *c.energy;
            U = [=](double r) { return assembly::ab_continuum_physical(l, cfg, la, energy, r, c.Ms); };
            normalizable = false;
        } else {
            if (!la) throw config_error("channel l = " + std::to_string(l) + " has no bound state (region R1)");
            auto b = ab::bound_state(l, cfg, *la);
            if (!b) throw config_error("no bound state in channel l = " + std::to_string(l) + " for this lambda");
            energy = b->energy / c.Ms;
            U = b->eigenfunction.eval;
            extent = b->eigenfunction.extent;
            k = std::sqrt(std::abs(b->energy));
        }
    } else {
        int m = la ? c.n : -1;
        if (!la) {
            if (c.n < 0 || (l >= 0 && c.n < l)) throw config_error("no level n = " + std::to_string(c.n) + " in channel l = " + std::to_string(l));
            m = l >= 0 ? c.n - l : c.n;
        }
        if (m < 0) throw config_error("unknown level n = " + std::to_string(c.n));
        auto levels = ms::discrete_spectrum(l, cfg, la, m);
        const ms::MsLevel* lv = nullptr;
        for (const auto& v : levels)
            if (v.m == m) lv = &v;
        if (!lv) throw config_error("no level with n = " + std::to_string(c.n) + " in channel l = " + std::to_string(l));
        auto h = ms::eigenfunction(cfg, la, *lv);
        U = h.eval;
        energy = lv->energy / c.Ms;
        extent = h.extent;
        k = std::sqrt(std::abs(lv->energy) + 1);
    }
    t.columns = {"rho", "U"};
    bool full = c.dims != "radial";
    std::optional<assembly::AssembledEigenfunction> a;
    if (full) {
        a = assembly::scalar_eigenfunction(cfg, c.n, l, energy, U, c.dims == "3d", c.pz.front());
        t.columns.push_back("re");
        t.columns.push_back("im");
    }
    for (double r : grid) {
        std::vector<Cell> row{r, U(r)};
        if (a) {
            auto v = a->eval(r, c.phi, c.z)[0];
            row.push_back(v.real());
            row.push_back(v.imag());
        }
        t.rows.push_back(row);
    }
    t.meta["level"] = {{"l", l}, {"n", c.n}, {"E", energy}};
    if (normalizable) {
        verify::RadialRule rule(extent, k);
        t.meta["footer"] = {{"norm", rule.integrate([&](double r) { return U(r) * U(r); })}};
    } else {
        t.meta["normalization"] = "delta(E - E')";
    }
    return t;
}

/// Runs the requested suites; `all_pass` reports the overall verdict.
inline Table verify_table(const JobConfig& c, bool& all_pass) {
    auto reg = suites::registry();
    std::vector<std::string> names;
    if (c.suite == "all") {
        for (auto& [k, v] : reg) names.push_back(k);
    } else {
        std::stringstream ss(c.suite);
        std::string name;
        while (std::getline(ss, name, ','))
            if (!reg.count(name)) {
                std::string known;
                for (auto& [k, v] : reg) known += " " + k;
                throw config_error("unknown suite '" + name + "'; known:" + known + " all");
            } else {
                names.push_back(name);
            }
    }
    Table t;
    t.columns = {"check_name", "max_abs_deviation", "threshold", "pass"};
    t.extra_rows = json::array();
    all_pass = true;
    for (const auto& name : names) {
        auto r = reg.at(name)(c.seed);
        if (c.tol > 0) {
            r.threshold = c.tol;
            r.pass = r.max_abs_deviation <= c.tol;
        }
        all_pass = all_pass && r.pass;
        t.rows.push_back({r.check_name, r.max_abs_deviation, r.threshold, std::string(r.pass ? "true" : "false")});
        json o;
        o["check_name"] = r.check_name;
        o["max_abs_deviation"] = r.max_abs_deviation;
        o["threshold"] = r.threshold;
        o["pass"] = r.pass;
        o["details"] = r.details;
        t.extra_rows.push_back(o);
    }
    return t;
}

inline Table sweep_table(const JobConfig& c) {
    if (c.steps < 2) throw config_error("--steps must be >= 2");
    if (c.from.empty() || c.to.empty()) throw config_error("sweep needs --from and --to");
    const bool angle = c.param == "lambda" || c.param == "lambda0" || c.param == "lambda-1";
    if (!angle && c.param != "mu" && c.param != "pz") throw config_error("unknown sweep parameter '" + c.param + "'");
    auto parse_value = [&](const std::string& s) {
        if (angle) return Angle::parse(s).value();
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw config_error("invalid sweep bound '" + s + "'");
        }
    };
    const double a = parse_value(c.from), b = parse_value(c.to);
    Table out;
    for (int i = 0; i < c.steps; ++i) {
        JobConfig q = c;
        double v = a + (b - a) * i / (c.steps - 1);
        std::string token = i == 0 ? c.from : i == c.steps - 1 ? c.to : format_double(v);
        if (c.param == "lambda") q.lambda = token;
        else if (c.param == "lambda0") q.lambda0 = token;
        else if (c.param == "lambda-1") q.lambda_m1 = token;
        else if (c.param == "mu") q.mu = v;
        else q.pz = {v};
        double value = angle ? Angle::parse(token).value() : v;
        auto t = spectrum_table(q);
        if (out.columns.empty()) {
            out.columns = {"swept_" + c.param};
            out.columns.insert(out.columns.end(), t.columns.begin(), t.columns.end());
            out.meta = t.meta;
        }
        for (auto& r : t.rows) {
            std::vector<Cell> row{value};
            row.insert(row.end(), r.begin(), r.end());
            out.rows.push_back(row);
        }
    }
    return out;
}

// ---------------------------------------------------------------- entry point

/// Parses argv, runs the command and writes the result to --out (or `os`).
/// Errors are reported on `err`; the return value is the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& os = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Spectra, eigenfunctions and verification for Schroedinger and Dirac Hamiltonians "
                 "in Aharonov-Bohm and magnetic-solenoid fields"};
    app.require_subcommand(1, 1);
    app.fallthrough();  // global flags may follow the subcommand
    JobConfig c;
    std::string l_range = "0..0";
    std::string table0, table_l, table_m1;
    std::optional<double> energy;

    app.add_option("--out", c.out, "Output file (default: stdout)");
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", c.tol, "Verification threshold override (0: per-suite defaults)");
    app.add_option("--seed", c.seed, "Seed of randomized verification suites");

    auto problem_opts = [&](CLI::App* s) {
        s->add_option("--problem", c.problem, "schrodinger-ab | schrodinger-ms | dirac")
            ->check(CLI::IsMember({"schrodinger-ab", "schrodinger-ms", "dirac"}));
        s->add_option("--dims", c.dims, "radial | 2d | 3d")->check(CLI::IsMember({"radial", "2d", "3d"}));
        s->add_option("--gamma", c.gamma, "Field strength e|B|/(c hbar)");
        s->add_option("--mu", c.mu, "Flux mantissa in [0, 1)");
        s->add_option("--phi0", c.phi0, "Integer part of the flux");
        s->add_option("--eps-b", c.eps_B, "Sign of the field");
        s->add_option("--eps-q", c.eps_q, "Sign of the charge");
        s->add_option("--kappa0", c.kappa0, "Boundary-condition inverse length (AB)");
        s->add_option("--ms", c.Ms, "Mass parameter M_s (= 2 m_e)");
        s->add_option("--me", c.me, "Dirac mass");
        s->add_option("--s", c.s, "Dirac spin label (1, -1; 0 = both)");
        s->add_option("--pz", c.pz, "Longitudinal momenta")->delimiter(',');
        s->add_option("--lambda", c.lambda, "Extension angle (mu = 0 or Dirac); radians or pi/2, -pi/4, ...");
        s->add_option("--lambda0", c.lambda0, "Extension angle of channel l = 0 (mu > 0)");
        s->add_option("--lambda-1", c.lambda_m1, "Extension angle of channel l = -1 (mu > 0)");
        s->add_option("--lambda-table", table_l, "CSV (p_z, lambda) table for lambda");
        s->add_option("--lambda0-table", table0, "CSV (p_z, lambda) table for lambda0");
        s->add_option("--lambda-1-table", table_m1, "CSV (p_z, lambda) table for lambda-1");
        s->add_option("--l", l_range, "Channel range a..b or a single l");
        s->add_option("--nmax", c.nmax, "Highest radial / level index");
        s->add_option("--window", c.window, "Dirac energy window |E| <= window (0: use --nmax)");
    };

    auto* sp = app.add_subcommand("spectrum", "Level table");
    problem_opts(sp);
    auto* ef = app.add_subcommand("eigenfunction", "Eigenfunction samples");
    problem_opts(ef);
    ef->add_option("--n", c.n, "Level index (2D index n; Dirac signed index)");
    ef->add_option("--sigma", c.sigma, "Dirac level sign (1, -1; 0 = any)");
    ef->add_option("--energy", energy, "Continuum energy (schrodinger-ab)");
    ef->add_option("--rho-min", c.rho_min, "First grid radius");
    ef->add_option("--rho-max", c.rho_max, "Last grid radius");
    ef->add_option("--points", c.points, "Number of grid points");
    ef->add_option("--phi", c.phi, "Azimuth of assembled samples");
    ef->add_option("--z", c.z, "z of 3D samples");
    auto* vf = app.add_subcommand("verify", "Run invariant suites");
    vf->add_option("--suite", c.suite, "Suite name, comma list or 'all'");
    auto* sw = app.add_subcommand("sweep", "Stacked spectra over a parameter range");
    problem_opts(sw);
    sw->add_option("--param", c.param, "lambda | lambda0 | lambda-1 | mu | pz")
        ->check(CLI::IsMember({"lambda", "lambda0", "lambda-1", "mu", "pz"}));
    sw->add_option("--from", c.from, "First value")->required();
    sw->add_option("--to", c.to, "Last value")->required();
    sw->add_option("--steps", c.steps, "Number of values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        os << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        auto [a, b] = parse_range(l_range);
        c.l_min = a;
        c.l_max = b;
        c.energy = energy;
        if (!table_l.empty()) c.lambda_table = read_lambda_table(table_l);
        if (!table0.empty()) c.lambda0_table = read_lambda_table(table0);
        if (!table_m1.empty()) c.lambda_m1_table = read_lambda_table(table_m1);
        validate(c);

        int code = 0;
        Table t;
        if (c.command == "spectrum") t = spectrum_table(c);
        else if (c.command == "eigenfunction") t = eigenfunction_table(c);
        else if (c.command == "sweep") t = sweep_table(c);
        else {
            bool ok = true;
            t = verify_table(c, ok);
            code = ok ? 0 : 1;
        }
        if (c.out.empty()) {
            write_table(os, t, c);
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) throw config_error("cannot open output file '" + c.out + "'");
            write_table(f, t, c);
        }
        return code;
    } catch (const numerical_error& e) {
        err << "numerical error: " << e.what();
        if (!std::isnan(e.bracket_lo()))
            err << " (bracket [" << format_double(e.bracket_lo()) << ", " << format_double(e.bracket_hi()) << "])";
        err << '\n';
        return 3;
    } catch (const pole_error& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const config_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace msab::cli
