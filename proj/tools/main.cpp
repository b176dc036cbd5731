#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "lomega/cli_app.hpp"

namespace {

using lomega::json;

json load_base_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw lomega::ConfigError("config: cannot open '" + path + "'");
    return json::parse(in);
}

void emit(const lomega::RunResult& rr, const std::string& out_path,
          const std::string& trace_path) {
    const std::string text = rr.report.dump(2) + "\n";
    std::string target = out_path;
    if (target.empty() && rr.report["config"].contains("out"))
        target = rr.report["config"]["out"].get<std::string>();
    if (target.empty()) {
        const char* dir = std::getenv("LOMEGA_OUT_DIR");
        if (dir && *dir) target = std::string(dir) + "/report.json";
    }
    if (!target.empty()) {
        std::ofstream f(target, std::ios::binary);
        if (!f) throw lomega::ConfigError("out: cannot open '" + target + "' for writing");
        f << text;
    }
    std::cout << text;
    if (!trace_path.empty() && !rr.trace_csv.empty()) {
        std::ofstream f(trace_path, std::ios::binary);
        if (!f) throw lomega::ConfigError("trace: cannot open '" + trace_path + "' for writing");
        f << rr.trace_csv;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for maps with controlled moduli of continuity"};
    app.require_subcommand(1);

    std::string config_path, out_path, trace_path;
    std::uint64_t seed = 1;
    app.add_option("--config", config_path, "JSON config file (flags override fields)");
    app.add_option("--out", out_path, "write the JSON report to this path");
    app.add_option("--trace", trace_path, "write a CSV residual trace to this path");
    app.add_option("--seed", seed, "RNG seed");

    // shared map options
    std::string map_id, omega_spec;
    int dim = 64;
    double L = std::nan("");
    long long pairs = 100000;

    auto* c_cat = app.add_subcommand("catalog", "list moduli and map catalog entries");

    auto* c_mod = app.add_subcommand("modulus", "property report for a modulus");
    std::string modulus_spec;
    c_mod->add_option("--id", modulus_spec, "modulus spec, e.g. log:L=0.3")->required();
    c_mod->add_option("--L", L, "L used by the omega_4 check");

    auto* c_cert = app.add_subcommand("certify", "L-omega nonexpansiveness certificate");
    c_cert->add_option("--map", map_id, "catalog map id")->required();
    c_cert->add_option("--L", L, "certificate L (default: declared)");
    c_cert->add_option("--omega", omega_spec, "omega spec or 'declared'");
    c_cert->add_option("--pairs", pairs, "sampled pairs");
    c_cert->add_option("--dim", dim, "truncation dimension");

    auto* c_disp = app.add_subcommand("displace", "minimal displacement search");
    int multistart = 8;
    long long budget = 20000;
    c_disp->add_option("--map", map_id, "catalog map id")->required();
    c_disp->add_option("--multistart", multistart, "number of starts");
    c_disp->add_option("--budget", budget, "total iteration budget");
    c_disp->add_option("--dim", dim, "truncation dimension");

    auto* c_afp = app.add_subcommand("afp", "approximate fixed point sequences");
    int n = 20;
    std::string method;
    c_afp->add_option("--map", map_id, "catalog map id")->required();
    c_afp->add_option("--n", n, "sequence length (thm510 method)");
    c_afp->add_option("--method", method, "thm510 or mu");
    c_afp->add_option("--budget", budget, "inner search budget (mu method)");
    c_afp->add_option("--dim", dim, "truncation dimension");

    auto* c_ext = app.add_subcommand("extend", "1-D constructions with prescribed moduli");
    std::string kind = "breneis", omega_tilde_spec, out_function;
    double epsilon = 0.25, lambda = std::nan(""), root_tol = 1e-10;
    int depth = 200;
    c_ext->add_option("--kind", kind, "mcshane or breneis");
    c_ext->add_option("--omega", omega_spec, "generator modulus spec");
    c_ext->add_option("--omega-tilde", omega_tilde_spec, "majorant modulus spec (mcshane)");
    c_ext->add_option("--lambda", lambda, "radial bump profile parameter (mcshane)");
    c_ext->add_option("--epsilon", epsilon, "slope margin (breneis)");
    c_ext->add_option("--depth", depth, "interval budget (breneis)");
    c_ext->add_option("--root-tol", root_tol, "bisection tolerance (breneis)");
    c_ext->add_option("--out-function", out_function, "write the constructed function JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_base_config(config_path);
        cfg["seed"] = seed;
        if (c_cat->parsed()) cfg["command"] = "catalog";
        if (c_mod->parsed()) {
            cfg["command"] = "modulus";
            cfg["modulus"] = modulus_spec;
            if (!std::isnan(L)) cfg["L"] = L;
        }
        if (c_cert->parsed()) {
            cfg["command"] = "certify";
            cfg["map"] = map_id;
            cfg["dim"] = dim;
            if (!std::isnan(L)) cfg["L"] = L;
            if (!omega_spec.empty()) cfg["omega"] = omega_spec;
            cfg["pairs"] = pairs;
        }
        if (c_disp->parsed()) {
            cfg["command"] = "displace";
            cfg["map"] = map_id;
            cfg["dim"] = dim;
            cfg["multistart"] = multistart;
            cfg["budget"] = budget;
        }
        if (c_afp->parsed()) {
            cfg["command"] = "afp";
            cfg["map"] = map_id;
            cfg["dim"] = dim;
            cfg["n"] = n;
            if (!method.empty()) cfg["method"] = method;
            if (c_afp->count("--budget")) cfg["budget"] = budget;
        }
        if (c_ext->parsed()) {
            cfg["command"] = "extend";
            cfg["kind"] = kind;
            if (!omega_spec.empty()) cfg["omega"] = omega_spec;
            if (!omega_tilde_spec.empty()) cfg["omega_tilde"] = omega_tilde_spec;
            if (!std::isnan(lambda)) cfg["lambda"] = lambda;
            cfg["epsilon"] = epsilon;
            cfg["depth"] = depth;
            cfg["root_tol"] = root_tol;
            if (!out_function.empty()) cfg["out_function"] = out_function;
        }
        auto rr = lomega::run_experiment(cfg);
        emit(rr, out_path, trace_path);
        return rr.exit_code;
    } catch (const lomega::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
