#include "lomega/cli_app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lomega {

const char* kArtifactVersion = "0.1.0";

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown field '" + it.key() + "' in " + where);
}

std::string csv_of(const std::vector<std::pair<long long, double>>& rows) {
    std::ostringstream os;
    os << "iter,residual\n";
    char buf[64];
    for (const auto& [it, res] : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g\n", it, res);
        os << buf;
    }
    return os.str();
}

std::string csv_of_indexed(const std::vector<double>& residuals) {
    std::vector<std::pair<long long, double>> rows;
    rows.reserve(residuals.size());
    for (std::size_t i = 0; i < residuals.size(); ++i)
        rows.emplace_back(static_cast<long long>(i + 1), residuals[i]);
    return csv_of(rows);
}

}  // namespace

Modulus parse_modulus_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string id = spec.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("omega spec: expected key=value in '" + kv + "'");
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
    }
    if (id == "zero") return Modulus::catalog("linear", {{"c", 0.0}});
    return Modulus::catalog(id, params);
}

MapParams map_params_from_json(const json& j) {
    check_keys(j,
               {"L", "sigma", "theta", "eta", "eps", "lambda", "dim", "beta", "alpha_num",
                "alpha_den", "full_set", "level", "norm", "f_file"},
               "map_params");
    MapParams p;
    if (j.contains("L")) p.L = j.at("L").get<double>();
    if (j.contains("sigma")) p.sigma = j.at("sigma").get<double>();
    if (j.contains("theta")) p.theta = j.at("theta").get<double>();
    if (j.contains("eta")) p.eta = j.at("eta").get<double>();
    if (j.contains("eps")) p.eps = j.at("eps").get<double>();
    if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
    if (j.contains("dim")) p.dim = j.at("dim").get<int>();
    if (j.contains("beta")) p.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("alpha_num"))
        p.alpha = Rational(j.at("alpha_num").get<long long>(),
                           j.value("alpha_den", (long long)1));
    if (j.contains("full_set")) p.full_set = j.at("full_set").get<bool>();
    if (j.contains("level")) p.level = j.at("level").get<int>();
    if (j.contains("norm")) p.norm_tag = norm_from_string(j.at("norm").get<std::string>());
    if (j.contains("f_file")) {
        std::ifstream in(j.at("f_file").get<std::string>());
        if (!in) throw ConfigError("map_params.f_file: cannot open file");
        json fj = json::parse(in);
        auto pw = piecewise_from_json(fj);
        p.f_handle = std::make_shared<Fn1D>(pw.as_fn("loaded piecewise function"));
    }
    return p;
}

namespace {

MapInstance map_from_config(const json& cfg) {
    if (!cfg.contains("map")) throw ConfigError("missing field 'map'");
    MapParams params;
    if (cfg.contains("map_params")) params = map_params_from_json(cfg.at("map_params"));
    if (cfg.contains("dim")) params.dim = cfg.at("dim").get<int>();
    try {
        return build_map(cfg.at("map").get<std::string>(), std::move(params));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

json resolved_config(const json& cfg, std::uint64_t seed) {
    json out = cfg;
    out["seed"] = seed;
    return out;
}

RunResult run_modulus(const json& cfg, std::uint64_t seed) {
    check_keys(cfg, {"command", "seed", "modulus", "L", "grid", "out", "trace"}, "config");
    if (!cfg.contains("modulus")) throw ConfigError("missing field 'modulus'");
    Modulus m;
    try {
        m = parse_modulus_spec(cfg.at("modulus").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const double L = cfg.value("L", 0.0);
    GridSpec grid = cfg.contains("grid") ? grid_from_json(cfg.at("grid")) : default_grid(m);
    auto rep = check_properties(m, L, grid);
    RunResult rr;
    rr.report["results"]["modulus"] = to_json(m);
    rr.report["results"]["report"] = to_json(rep);
    rr.exit_code = 0;
    rr.report["ok"] = true;
    return rr;
}

RunResult run_certify(const json& cfg, std::uint64_t seed) {
    check_keys(cfg,
               {"command", "seed", "map", "map_params", "dim", "L", "omega", "pairs", "out",
                "trace"},
               "config");
    MapInstance map = map_from_config(cfg);
    const double L = cfg.contains("L") ? cfg.at("L").get<double>() : map.metadata().claimed_L;
    Modulus omega = map.metadata().claimed_omega;
    if (cfg.contains("omega")) {
        const std::string spec = cfg.at("omega").get<std::string>();
        if (spec != "declared") {
            try {
                omega = parse_modulus_spec(spec);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    const long long pairs = cfg.value("pairs", (long long)100000);
    auto cert = certify_L_omega(map, L, omega, pairs, seed);
    RunResult rr;
    rr.report["results"]["map"] = map_summary(map);
    rr.report["results"]["L"] = L;
    rr.report["results"]["omega"] = to_json(omega);
    rr.report["results"]["certificate"] = to_json(cert);
    rr.report["ok"] = cert.pass;
    rr.exit_code = cert.pass ? 0 : 1;
    return rr;
}

RunResult run_displace(const json& cfg, std::uint64_t seed) {
    check_keys(cfg,
               {"command", "seed", "map", "map_params", "dim", "multistart", "budget",
                "basis_starts", "out", "trace"},
               "config");
    MapInstance map = map_from_config(cfg);
    const int multistart = cfg.value("multistart", 8);
    const long long budget = cfg.value("budget", (long long)20000);
    const bool basis = cfg.value("basis_starts", true);
    auto rep = displacement_search(map, multistart, seed, budget, basis);
    RunResult rr;
    rr.report["results"]["map"] = map_summary(map);
    rr.report["results"]["displacement"] = to_json(rep);
    rr.report["results"]["fixed_point_witness"] = to_json(fixed_point_free_witness(map));
    rr.report["ok"] = true;
    rr.trace_csv = csv_of(rep.history);
    return rr;
}

RunResult run_afp(const json& cfg, std::uint64_t seed) {
    check_keys(cfg,
               {"command", "seed", "map", "map_params", "dim", "method", "n", "budget",
                "mu_schedule", "require_slope", "out", "trace"},
               "config");
    MapInstance map = map_from_config(cfg);
    std::string method = cfg.value("method", map.id() == "thm510" ? "thm510" : "mu");
    AFPSequence seq;
    if (method == "thm510") {
        seq = afp_thm510(map, cfg.value("n", 20));
    } else if (method == "mu") {
        std::vector<double> mu = cfg.contains("mu_schedule")
                                     ? cfg.at("mu_schedule").get<std::vector<double>>()
                                     : default_mu_schedule();
        try {
            seq = afp_mu_schedule(map, mu, cfg.value("budget", (long long)4000), seed,
                                  cfg.value("require_slope", true));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else {
        throw ConfigError("field 'method': expected 'thm510' or 'mu'");
    }
    RunResult rr;
    rr.report["results"]["map"] = map_summary(map);
    rr.report["results"]["afp"] = to_json(seq);
    rr.report["ok"] = true;
    rr.trace_csv = csv_of_indexed(seq.residuals);
    return rr;
}

RunResult run_extend(const json& cfg, std::uint64_t seed) {
    check_keys(cfg,
               {"command", "seed", "kind", "omega", "omega_tilde", "lambda", "epsilon", "depth",
                "root_tol", "target", "pairs", "out", "out_function", "trace"},
               "config");
    const std::string kind = cfg.value("kind", "breneis");
    RunResult rr;
    if (kind == "mcshane") {
        // f0 is the radial bump profile when lambda is given, otherwise the
        // omega spec restricted to [0, target]
        Modulus wt = cfg.contains("omega_tilde")
                         ? parse_modulus_spec(cfg.at("omega_tilde").get<std::string>())
                         : Modulus::catalog("radial-majorant",
                                            {{"lambda", cfg.value("lambda", 0.4)}});
        Fn1D f0;
        if (cfg.contains("lambda") || !cfg.contains("omega")) {
            const double lam = cfg.value("lambda", 0.4);
            f0 = Fn1D{"lambda r sqrt(1-r)", 0.0, 2.0 / 3.0,
                      [lam](double r) { return lam * r * std::sqrt(std::max(1.0 - r, 0.0)); }};
        } else {
            Modulus om = parse_modulus_spec(cfg.at("omega").get<std::string>());
            const double hi = std::min(om.domain_end(), cfg.value("target", 1.0));
            f0 = fn1d_of(om, 0.0, hi * 0.5);
        }
        McShaneReport ms;
        try {
            ms = mcshane_extend(f0, wt, cfg.value("target", 1.0));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        auto cert = verify_domination(ms.f.as_fn("mcshane extension"), wt,
                                      cfg.value("pairs", (long long)20000), seed);
        rr.report["results"]["function"] = to_json(ms.f);
        rr.report["results"]["warnings"] = ms.warnings;
        rr.report["results"]["domination"] = to_json(cert);
        rr.report["ok"] = cert.pass;
        rr.exit_code = cert.pass ? 0 : 1;
    } else if (kind == "breneis") {
        Modulus om = cfg.contains("omega")
                         ? parse_modulus_spec(cfg.at("omega").get<std::string>())
                         : Modulus::catalog("linear", {{"c", 1.0}});
        std::pair<PiecewiseFunction, BreneisState> out;
        try {
            out = breneis_construct(om, cfg.value("epsilon", 0.25), cfg.value("depth", 200),
                                    cfg.value("root_tol", 1e-10));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        auto cert = verify_domination(out.first.as_fn("breneis construction"), om,
                                      cfg.value("pairs", (long long)20000), seed);
        rr.report["results"]["function"] = to_json(out.first);
        rr.report["results"]["state"] = to_json(out.second);
        rr.report["results"]["domination"] = to_json(cert);
        rr.report["ok"] = cert.pass;
        rr.exit_code = cert.pass ? 0 : 1;
    } else {
        throw ConfigError("field 'kind': expected 'mcshane' or 'breneis'");
    }
    if (cfg.contains("out_function")) {
        std::ofstream f(cfg.at("out_function").get<std::string>());
        if (!f) throw ConfigError("out_function: cannot open for writing");
        f << rr.report["results"]["function"].dump(2) << "\n";
    }
    return rr;
}

RunResult run_catalog(const json& cfg, std::uint64_t) {
    check_keys(cfg, {"command", "seed", "out", "trace"}, "config");
    RunResult rr;
    json moduli = json::array();
    for (const char* id : {"log", "alog", "sqrt2", "radial-majorant", "ratio", "linear",
                           "zero-at-one", "tabulated"})
        moduli.push_back(id);
    rr.report["results"]["moduli"] = moduli;
    json maps = json::array();
    for (const auto& id : map_catalog_ids()) {
        json entry;
        entry["id"] = id;
        try {
            MapInstance m = build_map(id, MapParams{});
            entry["defaults"] = map_summary(m);
        } catch (const std::exception& e) {
            entry["error"] = e.what();
        }
        maps.push_back(entry);
    }
    rr.report["results"]["maps"] = maps;
    rr.report["ok"] = true;
    return rr;
}

}  // namespace

RunResult run_experiment(const json& config) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (!config.contains("command")) throw ConfigError("missing field 'command'");
    const std::string cmd = config.at("command").get<std::string>();
    const std::uint64_t seed = config.value("seed", (std::uint64_t)1);

    RunResult rr;
    if (cmd == "modulus")
        rr = run_modulus(config, seed);
    else if (cmd == "certify")
        rr = run_certify(config, seed);
    else if (cmd == "displace")
        rr = run_displace(config, seed);
    else if (cmd == "afp")
        rr = run_afp(config, seed);
    else if (cmd == "extend")
        rr = run_extend(config, seed);
    else if (cmd == "catalog")
        rr = run_catalog(config, seed);
    else
        throw ConfigError("field 'command': unknown command '" + cmd + "'");

    json full;
    full["artifact"] = {{"name", "lomega"}, {"version", kArtifactVersion}};
    full["command"] = cmd;
    full["config"] = resolved_config(config, seed);
    for (auto it = rr.report.begin(); it != rr.report.end(); ++it) full[it.key()] = it.value();
    rr.report = std::move(full);
    return rr;
}

}  // namespace lomega
