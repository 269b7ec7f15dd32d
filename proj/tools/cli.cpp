#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "weakkam/dynamics.hpp"
#include "weakkam/errors.hpp"
#include "weakkam/estimators.hpp"
#include "weakkam/io.hpp"
#include "weakkam/weakkam.hpp"

namespace weakkam::cli {

using nlohmann::json;

namespace {

constexpr double kMaxSeparatrixK = 1e5;

int line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(byte), '\n'));
}

// Reads typed fields from the config object and reports problems by line.
class Reader {
public:
    Reader(const json& j, const std::string& text) : j_(j), text_(text) {}

    std::string where(const std::string& key) const {
        const auto pos = text_.find("\"" + key + "\"");
        if (pos == std::string::npos) return "config";
        return "config line " + std::to_string(line_at(text_, pos));
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ValidationError(where(key) + ": \"" + key + "\" " + msg);
    }

    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    std::optional<double> number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number()) fail(key, "must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
        return x;
    }

    std::optional<int> integer(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) fail(key, "must be an integer");
        return v.get<int>();
    }

    std::optional<std::string> string(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_string()) fail(key, "must be a string");
        return v.get<std::string>();
    }

    std::optional<std::vector<double>> numbers(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_array()) fail(key, "must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, "must be an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

private:
    const json& j_;
    const std::string& text_;
};

const std::set<std::string> kKeys = {"command", "potential", "k_list", "action",  "energy",        "R",
                                     "R_energy", "r",        "t_end",  "dt",      "grid",          "phi0",
                                     "n",        "extra_actions", "test_functions", "quad",        "out_dir"};

std::vector<TestFunction> read_tests(const json& arr, const Reader& rd) {
    if (!arr.is_array() || arr.empty()) rd.fail("test_functions", "must be a nonempty array");
    std::vector<TestFunction> out;
    std::set<std::string> seen;
    for (const auto& e : arr) {
        if (!e.is_object() || !e.contains("id") || !e.at("id").is_string())
            rd.fail("test_functions", "entries need a string \"id\"");
        TestFunction t;
        t.id = e.at("id").get<std::string>();
        if (!seen.insert(t.id).second) rd.fail("test_functions", "has duplicate id \"" + t.id + "\"");
        json coeffs = e;
        coeffs.erase("id");
        try {
            t.u = TrigPolynomial::from_json(coeffs);
        } catch (const DomainError& ex) {
            rd.fail("test_functions", std::string("entry \"") + t.id + "\": " + ex.what());
        }
        out.push_back(std::move(t));
    }
    return out;
}

double resolve_action(const RunConfig& cfg) {
    if (cfg.action) return *cfg.action;
    return action_of_energy(kLimitOrder, *cfg.energy, cfg.potential, cfg.quad);
}

double resolve_R(const RunConfig& cfg) {
    if (cfg.R) return *cfg.R;
    return action_of_energy(kLimitOrder, *cfg.R_energy, cfg.potential, cfg.quad);
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void run_profile(const RunConfig& cfg) {
    const double I = resolve_action(cfg);
    const double k = cfg.k_list.front();
    const ActionContext fin(cfg.potential, k, I, cfg.quad);
    const ActionContext lim(cfg.potential, kLimitOrder, I, cfg.quad);
    const auto rows = profile(fin, lim, cfg.grid);

    io::CsvTable csv({"phi", "gamma_k", "gamma_0", "u_k", "u_0", "sigma_k"});
    double max_hj = 0.0, max_u = 0.0;
    for (const auto& r : rows) {
        csv.cell(r.phi).cell(r.gamma_k).cell(r.gamma_0).cell(r.u_k).cell(r.u_0).cell(r.sigma_k);
        csv.end_row();
        max_hj = std::max(max_hj, std::abs(fin.hj_residual(r.phi)));
        max_u = std::max(max_u, std::abs(r.u_k));
    }
    const double zero_avg = fin.integrate([&](double phi) { return fin.u(phi); });

    json s;
    s["command"] = "profile";
    s["potential"] = cfg.potential_json;
    s["k"] = k;
    s["action"] = I;
    s["grid"] = cfg.grid;
    s["c_k"] = fin.energy();
    s["Hbar_k"] = fin.h_bar();
    s["Hbar"] = h_bar_limit(I, cfg.potential, cfg.quad);
    s["zero_average_residual"] = zero_avg;
    s["max_hj_residual"] = max_hj;
    s["max_abs_u_k"] = max_u;
    s["u_vanishes"] = max_u <= 1e-10;
    io::write_csv(cfg.out_dir / "profile.csv", csv);
    io::write_json(cfg.out_dir / "summary.json", s);
}

void run_sweep(const RunConfig& cfg) {
    SweepParams params;
    params.k_values = cfg.k_list;
    params.action = resolve_action(cfg);
    params.R = resolve_R(cfg);
    params.r = cfg.r;
    params.quad = cfg.quad;
    params.threads = cfg.threads;
    const auto rep = sweep(cfg.potential, params);

    io::CsvTable csv({"k", "E1", "E2", "k2E1", "k2E2", "kE1", "kE2", "cR_over_k2_ok", "cI_over_k2_ok", "Hbar_k", "c_k",
                      "E1_restricted", "k2E1_restricted", "cR_over_k2_full_ok", "E1_upper_ok", "E2_upper_ok"});
    json rows = json::array();
    for (const auto& r : rep.rows) {
        csv.cell(r.k).cell(r.E1).cell(r.E2).cell(r.k2E1).cell(r.k2E2).cell(r.kE1).cell(r.kE2);
        csv.cell(r.cR_over_k2_ok).cell(r.cI_over_k2_ok).cell(r.h_bar_k).cell(r.c_k);
        csv.cell(r.E1_restricted).cell(r.k2E1_restricted).cell(r.cR_over_k2_full_ok).cell(r.E1_upper_ok).cell(r.E2_upper_ok);
        csv.end_row();
        rows.push_back({{"k", r.k},
                        {"E1", r.E1},
                        {"E2", r.E2},
                        {"k2E1", r.k2E1},
                        {"k2E2", r.k2E2},
                        {"kE1", r.kE1},
                        {"kE2", r.kE2},
                        {"cR_over_k2_ok", r.cR_over_k2_ok},
                        {"cI_over_k2_ok", r.cI_over_k2_ok},
                        {"Hbar_k", r.h_bar_k},
                        {"c_k", r.c_k},
                        {"E1_restricted", r.E1_restricted},
                        {"k2E1_restricted", r.k2E1_restricted},
                        {"cR_over_k2_full_ok", r.cR_over_k2_full_ok},
                        {"E1_upper_ok", r.E1_upper_ok},
                        {"E2_upper_ok", r.E2_upper_ok}});
    }
    json j;
    j["command"] = "sweep";
    j["potential"] = cfg.potential_json;
    j["action"] = params.action;
    j["R"] = params.R;
    j["r"] = params.r;
    j["c_R"] = optional_json(rep.c_R);
    j["c_tilde_I"] = optional_json(rep.c_tilde_I);
    j["fitted_C_upper"] = rep.fitted_C_upper;
    j["fitted_C2_upper"] = rep.fitted_C2_upper;
    j["E1_exponent"] = rep.E1_exponent;
    j["E2_exponent"] = rep.E2_exponent;
    j["stabilization_k"] = optional_json(rep.stabilization_k);
    j["rows"] = rows;
    io::write_csv(cfg.out_dir / "sweep.csv", csv);
    io::write_json(cfg.out_dir / "sweep.json", j);
}

void run_flows(const RunConfig& cfg) {
    const double I = resolve_action(cfg);
    const double t_end = cfg.t_end.value_or(2.0);

    const ActionContext first(cfg.potential, cfg.k_list.front(), I, cfg.quad);
    io::CsvTable flows({"t", "phi_torus", "I_lift", "phi_tilde", "I_ham", "phi_ham", "phi_eff"});
    for (const auto& s : trajectory_bundle(first, cfg.phi0, t_end, cfg.dt)) {
        flows.cell(s.t).cell(s.phi_torus).cell(s.I_lift).cell(s.phi_tilde).cell(s.I_ham).cell(s.phi_ham).cell(s.phi_eff);
        flows.end_row();
    }

    io::CsvTable gaps({"k", "t", "d_k", "bound", "lambda_H"});
    for (double k : cfg.k_list) {
        const ActionContext ctx(cfg.potential, k, I, cfg.quad);
        const auto g = gap_series(ctx, cfg.phi0, t_end, cfg.dt);
        for (std::size_t i = 0; i < g.times.size(); ++i) {
            gaps.cell(k).cell(g.times[i]).cell(g.d_k[i]).cell(g.bound[i]).cell(g.lambda_H);
            gaps.end_row();
        }
    }
    io::write_csv(cfg.out_dir / "flows.csv", flows);
    io::write_csv(cfg.out_dir / "gaps.csv", gaps);
}

void run_separatrix(const RunConfig& cfg) {
    const auto tests = cfg.test_functions.empty() ? default_test_functions() : cfg.test_functions;
    const auto rep = separatrix_runs(cfg.potential, cfg.k_list, tests, cfg.quad, cfg.threads);

    std::vector<std::string> header = {"k", "T_k"};
    for (const auto& t : tests) header.push_back("pairing_" + t.id);
    io::CsvTable csv(header);
    for (const auto& row : rep.rows) {
        csv.cell(row.k).cell(row.T_k);
        for (double v : row.pairings) csv.cell(v);
        csv.end_row();
    }

    const double t_cap = 10.0 * period_T(ActionContext(cfg.potential, 100.0, rep.action, cfg.quad));
    const double t_end = std::min(cfg.t_end.value_or(t_cap), t_cap);
    const double k_max = *std::max_element(cfg.k_list.begin(), cfg.k_list.end());
    const auto pair = trajectory_pair(ActionContext(cfg.potential, k_max, rep.action, cfg.quad), t_end, cfg.dt);
    io::CsvTable traj({"t", "x_k", "x"});
    for (std::size_t i = 0; i < pair.t.size(); ++i) {
        traj.cell(pair.t[i]).cell(pair.x_k[i]).cell(pair.x[i]);
        traj.end_row();
    }
    io::write_csv(cfg.out_dir / "separatrix.csv", csv);
    io::write_csv(cfg.out_dir / "trajectory.csv", traj);
}

void run_ndim(const RunConfig& cfg) {
    const double I = resolve_action(cfg);
    const double k = cfg.k_list.front();
    const ActionContext ctx(cfg.potential, k, I, cfg.quad);
    const double e1_value = e1(k, resolve_R(cfg), cfg.r, cfg.potential, cfg.quad).total;
    const auto extra = cfg.extra_actions.empty() ? std::vector<double>(std::size_t(cfg.n - 1), 1.0) : cfg.extra_actions;
    const auto rep = ndim_product(ctx, e1_value, cfg.n, extra);

    json j;
    j["command"] = "ndim";
    j["potential"] = cfg.potential_json;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["actions"] = rep.actions;
    j["Hbar_1d"] = rep.h_bar_1d;
    j["Hbar_nd"] = rep.h_bar_nd;
    j["E1_1d"] = rep.E1_1d;
    j["E1_nd"] = rep.E1_nd;
    j["E2_1d"] = rep.E2_1d;
    j["E2_nd"] = rep.E2_nd;
    j["sigma_mass"] = rep.sigma_mass;
    j["extra_defect"] = rep.extra_defect;
    j["E_equal"] = rep.E_equal;
    io::write_json(cfg.out_dir / "ndim.json", j);
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    if (name == "profile") return Command::profile;
    if (name == "sweep") return Command::sweep;
    if (name == "flows") return Command::flows;
    if (name == "separatrix") return Command::separatrix;
    if (name == "ndim") return Command::ndim;
    return std::nullopt;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::profile: return "profile";
        case Command::sweep: return "sweep";
        case Command::flows: return "flows";
        case Command::separatrix: return "separatrix";
        case Command::ndim: return "ndim";
    }
    return "?";
}

RunConfig build_config(const std::string& text, const Overrides& ov) {
    json j = json::object();
    if (!text.empty()) {
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            std::string msg = e.what();
            const auto colon = msg.find(": ");
            if (colon != std::string::npos) msg = msg.substr(colon + 2);
            throw ValidationError("config line " + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                  ": " + msg);
        }
        if (!j.is_object()) throw ValidationError("config line 1: top level must be a JSON object");
    }
    const Reader rd(j, text);
    for (const auto& [key, _] : j.items())
        if (!kKeys.count(key)) rd.fail(key, "is not a known field");

    RunConfig cfg;

    std::string cmd;
    if (ov.command) {
        cmd = *ov.command;
    } else if (auto c = rd.string("command")) {
        cmd = *c;
    } else {
        throw ValidationError("no command given (profile, sweep, flows, separatrix or ndim)");
    }
    const auto parsed = parse_command(cmd);
    if (!parsed) {
        if (!ov.command) rd.fail("command", "must be one of profile, sweep, flows, separatrix, ndim");
        throw ValidationError("unknown command \"" + cmd + "\"");
    }
    cfg.command = *parsed;

    if (rd.has("potential")) {
        cfg.potential_json = j.at("potential");
        try {
            cfg.potential = Potential::from_json(cfg.potential_json);
        } catch (const DomainError& e) {
            rd.fail("potential", std::string("is invalid: ") + e.what());
        }
    } else {
        cfg.potential_json = {{"kind", "pendulum"}};
    }

    if (!ov.k.empty()) {
        cfg.k_list = ov.k;
    } else if (auto ks = rd.numbers("k_list")) {
        cfg.k_list = *ks;
        if (ks->empty()) rd.fail("k_list", "must not be empty");
    } else if (cfg.command == Command::separatrix) {
        cfg.k_list = {1e2, 1e3, 1e4, 1e5};
    } else {
        cfg.k_list = {1e2, 1e3, 1e4};
    }
    for (double k : cfg.k_list) {
        if (!(k >= 1.0) || !std::isfinite(k) || k != std::floor(k)) {
            if (ov.k.empty()) rd.fail("k_list", "entries must be integers >= 1");
            throw ValidationError("--k: entries must be integers >= 1");
        }
        if (cfg.command == Command::separatrix && k > kMaxSeparatrixK) {
            if (ov.k.empty()) rd.fail("k_list", "entries must not exceed 1e5 for separatrix runs");
            throw ValidationError("--k: entries must not exceed 1e5 for separatrix runs");
        }
    }

    // A flag for one of a mutually exclusive pair drops the other from the file.
    cfg.action = ov.action ? ov.action : (ov.energy ? std::nullopt : rd.number("action"));
    cfg.energy = ov.energy ? ov.energy : (ov.action ? std::nullopt : rd.number("energy"));
    cfg.R = ov.R ? ov.R : (ov.R_energy ? std::nullopt : rd.number("R"));
    cfg.R_energy = ov.R_energy ? ov.R_energy : (ov.R ? std::nullopt : rd.number("R_energy"));
    if (cfg.action && cfg.energy) rd.fail("energy", "conflicts with \"action\"; give one of them");
    if (cfg.R && cfg.R_energy) rd.fail("R_energy", "conflicts with \"R\"; give one of them");

    const bool needs_action = cfg.command != Command::separatrix;
    if (needs_action && !cfg.action && !cfg.energy)
        throw ValidationError(command_name(cfg.command) + ": needs \"action\" or \"energy\"");
    const bool needs_R = cfg.command == Command::sweep || cfg.command == Command::ndim;
    if (needs_R && !cfg.R && !cfg.R_energy)
        throw ValidationError(command_name(cfg.command) + ": needs \"R\" or \"R_energy\"");
    if (cfg.R && !(*cfg.R > 0.0)) {
        if (ov.R) throw ValidationError("--R must be positive");
        rd.fail("R", "must be positive");
    }

    auto positive = [&](const std::optional<double>& flag, const char* key, double fallback, const char* flag_name) {
        if (flag) {
            if (!(*flag > 0.0)) throw ValidationError(std::string(flag_name) + " must be positive");
            return *flag;
        }
        const auto v = rd.number(key);
        if (v && !(*v > 0.0)) rd.fail(key, "must be positive");
        return v.value_or(fallback);
    };
    cfg.r = positive(ov.r, "r", 0.5, "--r");
    cfg.dt = positive(ov.dt, "dt", 0.01, "--dt");
    if (ov.t_end || rd.has("t_end")) cfg.t_end = positive(ov.t_end, "t_end", 0.0, "--t-end");
    cfg.phi0 = ov.phi0 ? *ov.phi0 : rd.number("phi0").value_or(0.0);

    cfg.grid = ov.grid ? *ov.grid : rd.integer("grid").value_or(256);
    if (cfg.grid < 16) {
        if (ov.grid) throw ValidationError("--grid must be at least 16");
        rd.fail("grid", "must be at least 16");
    }
    cfg.n = ov.n ? *ov.n : rd.integer("n").value_or(3);
    if (cfg.n < 2) {
        if (ov.n) throw ValidationError("--n must be at least 2");
        rd.fail("n", "must be at least 2");
    }
    if (auto ea = rd.numbers("extra_actions")) {
        if (int(ea->size()) != cfg.n - 1)
            rd.fail("extra_actions", "must hold n - 1 = " + std::to_string(cfg.n - 1) + " values");
        cfg.extra_actions = *ea;
    }
    if (rd.has("test_functions")) cfg.test_functions = read_tests(j.at("test_functions"), rd);

    if (rd.has("quad")) {
        const auto& qj = j.at("quad");
        if (!qj.is_object()) rd.fail("quad", "must be an object");
        const Reader qr(qj, text);
        for (const auto& [key, _] : qj.items())
            if (key != "rel_tol" && key != "abs_tol" && key != "max_subdivisions") qr.fail(key, "is not a quad field");
        cfg.quad.rel_tol = qr.number("rel_tol").value_or(cfg.quad.rel_tol);
        cfg.quad.abs_tol = qr.number("abs_tol").value_or(cfg.quad.abs_tol);
        cfg.quad.max_subdivisions = qr.integer("max_subdivisions").value_or(cfg.quad.max_subdivisions);
    }
    if (ov.rel_tol) cfg.quad.rel_tol = *ov.rel_tol;
    if (ov.abs_tol) cfg.quad.abs_tol = *ov.abs_tol;
    if (ov.max_subdivisions) cfg.quad.max_subdivisions = *ov.max_subdivisions;
    try {
        cfg.quad.validate();
    } catch (const DomainError& e) {
        throw ValidationError(rd.where("quad") + ": " + e.what());
    }

    if (ov.out) {
        cfg.out_dir = *ov.out;
    } else if (auto o = rd.string("out_dir")) {
        cfg.out_dir = *o;
    }
    return cfg;
}

unsigned thread_cap() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("WEAKKAM_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ValidationError("WEAKKAM_THREADS must be a positive integer");
    return unsigned(std::min<long>(v, hw));
}

void run(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
    switch (cfg.command) {
        case Command::profile: run_profile(cfg); break;
        case Command::sweep: run_sweep(cfg); break;
        case Command::flows: run_flows(cfg); break;
        case Command::separatrix: run_separatrix(cfg); break;
        case Command::ndim: run_ndim(cfg); break;
    }
}

int main(int argc, char** argv) {
    CLI::App app{"Approximate weak KAM solutions for H = I^2/2 + f(phi)", "weakkam"};
    Overrides ov;
    std::string command, config, out;
    double action = 0, energy = 0, R = 0, R_energy = 0, r = 0, t_end = 0, dt = 0, phi0 = 0, rel = 0, abs = 0;
    int grid = 0, n = 0, max_sub = 0;

    app.add_option("command", command, "profile | sweep | flows | separatrix | ndim");
    auto* o_config = app.add_option("--config", config, "JSON run configuration");
    app.add_option("--k", ov.k, "k values (overrides k_list)")->delimiter(',');
    auto* o_action = app.add_option("--action", action, "action I");
    auto* o_energy = app.add_option("--energy", energy, "limit energy c(I), instead of --action");
    auto* o_R = app.add_option("--R", R, "upper action of the E1 range");
    auto* o_Re = app.add_option("--R-energy", R_energy, "limit energy c(R), instead of --R");
    auto* o_r = app.add_option("--r", r, "gap above max f where the restricted E1 starts");
    auto* o_t = app.add_option("--t-end", t_end, "final time");
    auto* o_dt = app.add_option("--dt", dt, "output time step");
    auto* o_phi0 = app.add_option("--phi0", phi0, "initial angle for flows");
    auto* o_grid = app.add_option("--grid", grid, "profile grid size");
    auto* o_n = app.add_option("--n", n, "dimension for ndim");
    auto* o_rel = app.add_option("--rel-tol", rel, "quadrature relative tolerance");
    auto* o_abs = app.add_option("--abs-tol", abs, "quadrature absolute tolerance");
    auto* o_sub = app.add_option("--max-subdivisions", max_sub, "quadrature subdivision budget");
    auto* o_out = app.add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto take = [](CLI::Option* o, auto value, auto& slot) {
        if (o->count()) slot = value;
    };
    if (!command.empty()) ov.command = command;
    take(o_config, config, ov.config);
    take(o_action, action, ov.action);
    take(o_energy, energy, ov.energy);
    take(o_R, R, ov.R);
    take(o_Re, R_energy, ov.R_energy);
    take(o_r, r, ov.r);
    take(o_t, t_end, ov.t_end);
    take(o_dt, dt, ov.dt);
    take(o_phi0, phi0, ov.phi0);
    take(o_grid, grid, ov.grid);
    take(o_n, n, ov.n);
    take(o_rel, rel, ov.rel_tol);
    take(o_abs, abs, ov.abs_tol);
    take(o_sub, max_sub, ov.max_subdivisions);
    take(o_out, out, ov.out);

    try {
        std::string text;
        if (ov.config) {
            std::ifstream is(*ov.config, std::ios::binary);
            if (!is) throw ValidationError("cannot read config file " + *ov.config);
            std::ostringstream ss;
            ss << is.rdbuf();
            text = ss.str();
        }
        RunConfig cfg = build_config(text, ov);
        cfg.threads = thread_cap();
        run(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "weakkam: " << e.what() << "\n";
        return 2;
    } catch (const AccuracyError& e) {
        std::cerr << "weakkam: accuracy error: " << e.what() << " (best estimate " << e.best_estimate()
                  << ", error bound " << e.error_bound() << ")\n";
        return 3;
    } catch (const BracketError& e) {
        std::cerr << "weakkam: accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "weakkam: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "weakkam: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace weakkam::cli
