#include "lomega/serialize.hpp"

#include <cmath>
#include <numeric>

namespace lomega {

json to_json(const Point& p) {
    json j;
    if (const auto* v = std::get_if<Vec>(&p)) {
        j["type"] = "vec";
        j["norm"] = to_string(v->norm_tag);
        j["coords"] = v->coords;
    } else if (const auto* t = std::get_if<TailSeq>(&p)) {
        j["type"] = "tailseq";
        j["prefix"] = t->prefix;
        j["tail"] = t->tail;
    } else {
        const auto& f = std::get<StepFn>(p);
        j["type"] = "stepfn";
        j["level"] = f.level();
        // common-denominator encoding keeps the round trip lossless
        long long den = 1;
        for (const auto& v : f.values()) den = std::lcm(den, v.den());
        std::vector<long long> nums;
        nums.reserve(f.values().size());
        for (const auto& v : f.values()) nums.push_back(v.num() * (den / v.den()));
        j["numerators"] = nums;
        j["denominator"] = den;
    }
    return j;
}

Point point_from_json(const json& j) {
    const std::string type = j.at("type");
    if (type == "vec") {
        Vec v;
        v.norm_tag = norm_from_string(j.at("norm"));
        v.coords = j.at("coords").get<std::vector<double>>();
        return Point{v};
    }
    if (type == "tailseq") {
        TailSeq t;
        t.prefix = j.at("prefix").get<std::vector<double>>();
        t.tail = j.at("tail");
        return Point{t};
    }
    if (type == "stepfn") {
        const long long den = j.at("denominator");
        auto nums = j.at("numerators").get<std::vector<long long>>();
        std::vector<Rational> vals;
        vals.reserve(nums.size());
        for (long long n : nums) vals.emplace_back(n, den);
        return Point{StepFn(j.at("level"), std::move(vals))};
    }
    throw std::invalid_argument("point_from_json: unknown type " + type);
}

json to_json(const Modulus& m) {
    json j;
    if (m.is_tabulated()) {
        j["id"] = "tabulated";
        j["xs"] = m.tab_x();
        j["ys"] = m.tab_y();
        return j;
    }
    static const std::vector<std::string> catalog = {
        "log", "alog", "sqrt2", "radial-majorant", "ratio", "linear", "zero-at-one"};
    const bool in_catalog = std::find(catalog.begin(), catalog.end(), m.id()) != catalog.end();
    if (in_catalog) {
        j["id"] = m.id();
        j["params"] = m.params();
        return j;
    }
    // custom evaluator: serialize a dense tabulation
    const double hi = std::min(m.domain_end(), 4.0);
    Modulus tab = m.tabulate(GridSpec::linear(0.0, hi, 4097));
    j["id"] = "tabulated";
    j["source_id"] = m.id();
    j["xs"] = tab.tab_x();
    j["ys"] = tab.tab_y();
    return j;
}

Modulus modulus_from_json(const json& j) {
    const std::string id = j.at("id");
    if (id == "tabulated")
        return Modulus::tabulated(j.at("xs").get<std::vector<double>>(),
                                  j.at("ys").get<std::vector<double>>());
    std::map<std::string, double> params;
    if (j.contains("params")) params = j.at("params").get<std::map<std::string, double>>();
    return Modulus::catalog(id, params);
}

json to_json(const GridSpec& g) {
    json j;
    switch (g.kind) {
        case GridSpec::Kind::geometric: j["kind"] = "geometric"; break;
        case GridSpec::Kind::linear: j["kind"] = "linear"; break;
        case GridSpec::Kind::explicit_points: j["kind"] = "explicit"; break;
    }
    if (g.kind == GridSpec::Kind::explicit_points) {
        j["points"] = g.given;
    } else {
        j["lo"] = g.lo;
        j["hi"] = g.hi;
        j["n"] = g.points;
    }
    return j;
}

GridSpec grid_from_json(const json& j) {
    const std::string kind = j.value("kind", "geometric");
    if (kind == "explicit")
        return GridSpec::explicit_points(j.at("points").get<std::vector<double>>());
    if (kind == "linear") return GridSpec::linear(j.at("lo"), j.at("hi"), j.at("n"));
    return GridSpec::geometric(j.at("lo"), j.at("hi"), j.at("n"));
}

json to_json(const Flag& f) {
    json j;
    j["verdict"] = to_string(f.verdict);
    if (f.witness_a) j["witness_a"] = *f.witness_a;
    if (f.witness_b) j["witness_b"] = *f.witness_b;
    if (!f.note.empty()) j["note"] = f.note;
    return j;
}

json to_json(const DeltaOmegaResult& d) {
    json j;
    j["value"] = std::isinf(d.value) ? json("inf") : json(d.value);
    j["divergent"] = d.divergent;
    j["stabilized"] = d.stabilized;
    j["scales"] = d.scales;
    j["window_max"] = d.window_max;
    j["tail_sequence"] = d.tail_sequence;
    return j;
}

json to_json(const OsgoodResult& o) {
    json j;
    j["verdict"] = o.verdict == Verdict::holds   ? "diverges"
                   : o.verdict == Verdict::fails ? "converges"
                                                 : "undetermined";
    j["eps"] = o.eps;
    j["integral"] = o.integral;
    j["note"] = o.note;
    return j;
}

json to_json(const ModulusReport& r) {
    json j;
    j["omega1"] = to_json(r.omega1);
    j["omega2"] = to_json(r.omega2);
    j["omega3"] = to_json(r.omega3);
    j["omega4"] = to_json(r.omega4);
    j["subadditive"] = to_json(r.subadditive);
    j["concave"] = to_json(r.concave);
    j["nondecreasing_near_0"] = to_json(r.nondecreasing_near_0);
    j["delta_omega"] = to_json(r.delta_omega);
    j["osgood"] = to_json(r.osgood);
    j["grid"] = to_json(r.grid);
    j["L"] = r.L;
    return j;
}

json to_json(const EmpiricalModulus& e) {
    json j;
    j["source"] = e.source;
    j["pair_count"] = e.pair_count;
    j["delta_grid"] = e.delta_grid;
    j["sup_values"] = e.sup_values;
    return j;
}

json to_json(const WorstPair& w) {
    json j;
    if (w.x) j["x"] = to_json(*w.x);
    if (w.y) j["y"] = to_json(*w.y);
    if (w.r) j["r"] = *w.r;
    if (w.s) j["s"] = *w.s;
    j["dist"] = w.dist;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    return j;
}

json to_json(const Certificate& c) {
    json j;
    j["pass"] = c.pass;
    j["margin"] = std::isinf(c.margin) ? json(c.margin > 0 ? "inf" : "-inf") : json(c.margin);
    j["worst_pair"] = to_json(c.worst);
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    if (c.skipped > 0) j["skipped_pairs"] = c.skipped;
    j["note"] = c.note;
    return j;
}

json to_json(const DomainSpec& d) {
    json j;
    j["describe"] = d.describe();
    j["dim"] = d.dim();
    j["diameter"] = d.diameter();
    return j;
}

json to_json(const MapMetadata& m) {
    json j;
    j["claimed_L"] = m.claimed_L;
    j["claimed_omega"] = to_json(m.claimed_omega);
    j["fixed_point_status"] = to_string(m.fp_status);
    j["fixed_point_note"] = m.fp_note;
    j["displacement_note"] = m.displacement_note;
    j["source"] = m.source;
    return j;
}

json map_summary(const MapInstance& m) {
    json j;
    j["id"] = m.id();
    j["params"] = m.params().resolved;
    j["domain"] = to_json(m.domain());
    j["metadata"] = to_json(m.metadata());
    return j;
}

json to_json(const DisplacementReport& r) {
    json j;
    j["best_residual"] = r.best_residual;
    j["best_point"] = to_json(r.best_point);
    j["iterations"] = r.iterations;
    j["scheme"] = r.scheme;
    j["converged"] = r.converged;
    j["escaped"] = r.escaped;
    json hist = json::array();
    for (const auto& [it, res] : r.history) hist.push_back(json::array({it, res}));
    j["history"] = hist;
    json starts = json::array();
    for (const auto& s : r.starts) {
        json e;
        e["initial_residual"] = s.initial_residual;
        e["best_residual"] = s.best_residual;
        starts.push_back(e);
    }
    j["starts"] = starts;
    j["note"] = r.note;
    return j;
}

json to_json(const AFPSequence& s) {
    json j;
    j["construction"] = s.construction;
    j["residuals"] = s.residuals;
    j["aux"] = s.aux;
    if (!s.bound.empty()) j["bound"] = s.bound;
    if (!s.closed_form.empty()) j["closed_form"] = s.closed_form;
    j["note"] = s.note;
    return j;
}

json to_json(const DiametralProfile& p) {
    json j;
    j["diameter"] = p.diameter;
    j["radii"] = p.radii;
    std::vector<int> flags;
    flags.reserve(p.diametral.size());
    for (bool b : p.diametral) flags.push_back(b ? 1 : 0);
    j["diametral"] = flags;
    return j;
}

json to_json(const BreneisState& s) {
    json j;
    j["x_seq"] = s.x_seq;
    j["y_seq"] = s.y_seq;
    j["depth"] = s.depth;
    j["epsilon"] = s.epsilon;
    j["delta0"] = s.delta0;
    j["M"] = s.M;
    j["reached_zero"] = s.reached_zero;
    j["root_tol"] = s.root_tol;
    return j;
}

json to_json(const FpfWitness& w) {
    json j;
    j["applicable"] = w.applicable;
    j["consistent"] = w.consistent;
    j["limit_value"] = w.limit_value;
    j["note"] = w.note;
    return j;
}

json to_json(const PiecewiseFunction& f) {
    json j;
    switch (f.repr()) {
        case PiecewiseFunction::Repr::inf_extension:
            j["repr"] = "inf_extension";
            j["nodes"] = f.nodes();
            j["values"] = f.node_values();
            j["omega_tilde"] = to_json(f.omega_tilde());
            break;
        case PiecewiseFunction::Repr::omega_segments:
            j["repr"] = "omega_segments";
            j["x_seq"] = f.x_seq();
            j["y_seq"] = f.y_seq();
            j["omega_tilde"] = to_json(f.omega_tilde());
            break;
        case PiecewiseFunction::Repr::interp:
            j["repr"] = "interp";
            j["nodes"] = f.nodes();
            j["values"] = f.node_values();
            break;
    }
    j["hi"] = f.hi();
    j["value_bound"] = f.value_bound();
    return j;
}

PiecewiseFunction piecewise_from_json(const json& j) {
    const std::string repr = j.at("repr");
    if (repr == "inf_extension")
        return PiecewiseFunction::inf_extension(
            j.at("nodes").get<std::vector<double>>(), j.at("values").get<std::vector<double>>(),
            modulus_from_json(j.at("omega_tilde")), j.at("hi"), j.at("value_bound"));
    if (repr == "omega_segments")
        return PiecewiseFunction::omega_segments(
            j.at("x_seq").get<std::vector<double>>(), j.at("y_seq").get<std::vector<double>>(),
            modulus_from_json(j.at("omega_tilde")), j.at("value_bound"));
    if (repr == "interp")
        return PiecewiseFunction::interp(j.at("nodes").get<std::vector<double>>(),
                                         j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("piecewise_from_json: unknown repr " + repr);
}

}  // namespace lomega
