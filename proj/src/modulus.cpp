#include "lomega/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lomega {

namespace {

double require(const std::map<std::string, double>& params, const std::string& key,
               double fallback = std::numeric_limits<double>::quiet_NaN()) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (std::isnan(fallback)) throw std::invalid_argument("modulus: missing parameter '" + key + "'");
    return fallback;
}

// comparison slack: absolute floor plus a relative part
bool leq(double x, double y, double rel = 1e-9) {
    return x <= y + std::max(1e-12, rel * std::max(std::abs(x), std::abs(y)));
}

}  // namespace

double Modulus::operator()(double delta) const {
    if (delta == 0.0) return 0.0;
    if (delta < 0.0) throw std::domain_error("modulus: negative argument");
    if (delta > domain_end_ * (1 + 1e-12))
        throw std::domain_error("modulus '" + id_ + "': argument " + std::to_string(delta) +
                                " beyond domain end " + std::to_string(domain_end_));
    return eval_(std::min(delta, domain_end_));
}

Modulus Modulus::catalog(const std::string& id, const std::map<std::string, double>& params) {
    Modulus m;
    m.id_ = id;
    m.params_ = params;
    if (id == "log") {
        const double L = require(params, "L", 0.0);
        if (L < 0) throw std::invalid_argument("log modulus: L must be >= 0");
        m.params_ = {{"L", L}};
        m.eval_ = [L](double d) { return d * (L + log10_abs(d)); };
    } else if (id == "alog") {
        const double a = require(params, "alpha", 1.0);
        if (a < 0) throw std::invalid_argument("alog modulus: alpha must be >= 0");
        m.params_ = {{"alpha", a}};
        m.eval_ = [a](double d) { return a * d * log10_abs(d); };
    } else if (id == "sqrt2") {
        m.params_ = {};
        m.eval_ = [](double d) { return std::sqrt(2.0 * d); };
    } else if (id == "radial-majorant") {
        const double lam = require(params, "lambda");
        if (lam <= 0 || lam >= 1)
            throw std::invalid_argument("radial-majorant: lambda must lie in (0,1)");
        m.params_ = {{"lambda", lam}};
        const double a = lam / (2.0 * std::sqrt(3.0));
        const double b = 1.5 * lam;
        m.eval_ = [a, b](double d) { return a * d + b * d * std::sqrt(std::abs(1.0 - d)); };
    } else if (id == "ratio") {
        const double L = require(params, "L");
        if (L < 0 || L > 1) throw std::invalid_argument("ratio modulus: L must lie in [0,1]");
        m.params_ = {{"L", L}};
        m.eval_ = [L](double d) { return (1.0 - L) * d / (1.0 + d); };
    } else if (id == "linear") {
        const double c = require(params, "c");
        if (c < 0) throw std::invalid_argument("linear modulus: c must be >= 0");
        m.params_ = {{"c", c}};
        m.eval_ = [c](double d) { return c * d; };
    } else if (id == "zero-at-one") {
        const double c = require(params, "c", 1.0);
        if (c < 0) throw std::invalid_argument("zero-at-one modulus: c must be >= 0");
        m.params_ = {{"c", c}};
        m.eval_ = [c](double d) { return c * d * std::abs(1.0 - d); };
    } else if (id == "tabulated") {
        throw std::invalid_argument("tabulated modulus requires explicit grid data");
    } else {
        throw std::invalid_argument("unknown modulus id: " + id);
    }
    return m;
}

Modulus Modulus::tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("tabulated modulus: need matching xs/ys with >= 2 nodes");
    if (xs.front() != 0.0 || ys.front() != 0.0) {
        xs.insert(xs.begin(), 0.0);
        ys.insert(ys.begin(), 0.0);
    }
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("tabulated modulus: xs must be strictly increasing");
    for (double y : ys)
        if (y < 0) throw std::invalid_argument("tabulated modulus: values must be >= 0");
    Modulus m;
    m.id_ = "tabulated";
    m.domain_end_ = xs.back();
    m.tab_x_ = xs;
    m.tab_y_ = ys;
    m.eval_ = [xs, ys](double d) {
        auto it = std::upper_bound(xs.begin(), xs.end(), d);
        if (it == xs.begin()) return ys.front();
        if (it == xs.end()) return ys.back();
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double t = (d - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    };
    return m;
}

Modulus Modulus::custom(std::string name, std::function<double(double)> eval, double domain_end) {
    Modulus m;
    m.id_ = std::move(name);
    m.domain_end_ = domain_end;
    m.eval_ = std::move(eval);
    if (std::abs(m.eval_(0.0)) > 1e-15)
        throw std::invalid_argument("custom modulus '" + m.id_ + "': eval(0) must be 0");
    return m;
}

Modulus Modulus::scaled_values(double c) const {
    if (c < 0) throw std::invalid_argument("scaled_values: factor must be >= 0");
    Modulus m = *this;
    m.id_ = id_ + "*" + std::to_string(c);
    auto base = eval_;
    m.eval_ = [base, c](double d) { return c * base(d); };
    m.tab_x_.clear();
    m.tab_y_.clear();
    return m;
}

Modulus Modulus::scaled_argument(double mu) const {
    if (mu <= 0) throw std::invalid_argument("scaled_argument: factor must be positive");
    Modulus m = *this;
    m.id_ = id_ + "(mu=" + std::to_string(mu) + ")";
    m.domain_end_ = domain_end_ >= kUnbounded ? kUnbounded : domain_end_ / mu;
    auto base = eval_;
    m.eval_ = [base, mu](double d) { return base(mu * d); };
    m.tab_x_.clear();
    m.tab_y_.clear();
    return m;
}

Modulus Modulus::tabulate(const GridSpec& grid) const {
    auto xs = grid.materialize();
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back((*this)(x));
    return tabulated(std::move(xs), std::move(ys));
}

GridSpec default_grid(const Modulus& m) {
    return GridSpec::geometric(1e-8, std::min(m.domain_end(), 10.0), 10000);
}

std::vector<double> default_probe_scales(const Modulus& m) {
    // dyadic scales: ratio evaluation is exact for homogeneous moduli
    std::vector<double> scales;
    const double hi = std::min(0.25, m.domain_end());
    for (double s = hi; s > 1e-9; s *= 0.5) scales.push_back(s);
    return scales;
}

DeltaOmegaResult delta_omega_full(const Modulus& m) {
    return delta_omega_full(m, default_probe_scales(m));
}

DeltaOmegaResult delta_omega_full(const Modulus& m, const std::vector<double>& probes) {
    if (probes.size() < 3) throw std::invalid_argument("delta_omega: need >= 3 probe scales");
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (probes[i] <= 0 || probes[i] > m.domain_end())
            throw std::invalid_argument("delta_omega: probe scale outside (0, domain_end]");
        if (i > 0 && !(probes[i] < probes[i - 1]))
            throw std::invalid_argument("delta_omega: probe scales must be strictly decreasing");
    }
    DeltaOmegaResult r;
    r.scales = probes;
    // windows between consecutive probe scales, refined with the dyadic points
    // they contain
    const std::size_t W = probes.size() - 1;
    r.window_max.resize(W, 0.0);
    for (std::size_t j = 0; j < W; ++j) {
        const double hi = probes[j], lo = probes[j + 1];
        double best = std::max(m(hi) / hi, m(lo) / lo);
        for (double d = std::exp2(std::floor(std::log2(hi))); d > lo; d *= 0.5)
            if (d < hi) best = std::max(best, m(d) / d);
        r.window_max[j] = best;
    }
    r.tail_sequence.resize(W);
    double suffix = 0.0;
    for (std::size_t j = W; j-- > 0;) {
        suffix = std::max(suffix, r.window_max[j]);
        r.tail_sequence[j] = suffix;
    }
    const double last = r.window_max[W - 1];
    const double prev = r.window_max[W - 2];
    r.stabilized = std::abs(last - prev) <= std::max(1e-9, 1e-4 * std::abs(last));
    const std::size_t lookback = std::min<std::size_t>(5, W);
    bool increasing = true;
    for (std::size_t j = W - lookback; j + 1 < W; ++j)
        if (!(r.window_max[j + 1] >= r.window_max[j] - 1e-12)) increasing = false;
    const bool grew = last > r.window_max[W - lookback] + 1e-12;
    r.divergent = increasing && grew && (!r.stabilized || last > tol::divergence_threshold);
    r.value = r.divergent ? std::numeric_limits<double>::infinity() : last;
    return r;
}

double delta_omega(const Modulus& m) { return delta_omega_full(m).value; }

OsgoodResult osgood_divergence(const Modulus& m) {
    std::vector<double> eps;
    for (int k = 1; k <= 8; ++k) eps.push_back(std::pow(10.0, -k));
    return osgood_divergence(m, eps);
}

OsgoodResult osgood_divergence(const Modulus& m, const std::vector<double>& schedule) {
    if (schedule.size() < 3) throw std::invalid_argument("osgood: need >= 3 schedule points");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] <= 0 || schedule[i] >= 1)
            throw std::invalid_argument("osgood: schedule must lie in (0,1)");
        if (i > 0 && !(schedule[i] < schedule[i - 1]))
            throw std::invalid_argument("osgood: schedule must be strictly decreasing");
    }
    // pre: strictly positive on (0,1]
    for (int i = 0; i <= 256; ++i) {
        const double r = std::exp(std::log(schedule.back()) * (1.0 - i / 256.0));
        if (m(r) <= 0.0)
            throw std::invalid_argument("osgood: omega vanishes at r=" + std::to_string(r));
    }

    // integral of 1/omega on [a, b] via log substitution + composite Simpson
    auto segment = [&m](double a, double b) {
        const double ua = std::log(a), ub = std::log(b);
        const int n = 256;  // even
        const double h = (ub - ua) / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double u = ua + h * i;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * std::exp(u) / m(std::exp(u));
        }
        return acc * h / 3.0;
    };

    OsgoodResult res;
    res.eps = schedule;
    double total = segment(schedule[0], 1.0);
    res.integral.push_back(total);
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        total += segment(schedule[k], schedule[k - 1]);
        res.integral.push_back(total);
    }

    const std::size_t K = res.integral.size();
    std::vector<double> inc;
    for (std::size_t k = 1; k < K; ++k) inc.push_back(res.integral[k] - res.integral[k - 1]);
    // decay exponent per schedule step; harmonic-type tails have p ~ 0
    std::vector<double> p;
    for (std::size_t k = 1; k < inc.size(); ++k) {
        if (inc[k] <= 0 || inc[k - 1] <= 0) continue;
        p.push_back(std::log10(inc[k - 1] / inc[k]));
    }
    // verdict semantics: holds = integral diverges (Osgood condition),
    // fails = integral converges
    std::ostringstream note;
    note << "heuristic: integral=" << res.integral.back();
    if (res.integral.back() > 1e3) {
        res.verdict = Verdict::holds;
        note << ", diverges (exceeded hard threshold)";
    } else if (p.size() >= 3) {
        const double p_tail = std::min({p[p.size() - 1], p[p.size() - 2], p[p.size() - 3]});
        const double p_min = std::min(p[p.size() - 1], p[p.size() - 2]);
        if (p_tail >= 0.2) {
            res.verdict = Verdict::fails;
            note << ", converges (increment decay exponent " << p_tail << ")";
        } else if (p_min <= 0.1) {
            res.verdict = Verdict::holds;
            note << ", diverges (increments persist, decay exponent " << p_min << ")";
        } else {
            res.verdict = Verdict::undetermined;
            note << ", borderline increment decay";
        }
    }
    res.note = note.str();
    return res;
}

// --------------------------------------------------------- check_properties

ModulusReport check_properties(const Modulus& m, double L) {
    return check_properties(m, L, default_grid(m));
}

ModulusReport check_properties(const Modulus& m, double L, const GridSpec& grid) {
    if (L < 0 || L > 1) throw std::invalid_argument("check_properties: L must lie in [0,1]");
    ModulusReport rep;
    rep.grid = grid;
    rep.L = L;

    std::vector<double> pts = grid.materialize();
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [&](double d) { return d <= 0.0 || d > m.domain_end(); }),
              pts.end());
    if (pts.empty()) throw std::invalid_argument("check_properties: grid outside modulus domain");

    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = m(pts[i]);

    // (omega1) nondecreasing on [1, inf)
    {
        std::size_t first = 0;
        while (first < pts.size() && pts[first] < 1.0) ++first;
        if (pts.size() - first < 2) {
            rep.omega1 = Flag::unknown("grid has fewer than 2 points in [1, inf)");
        } else {
            rep.omega1 = Flag::pass();
            for (std::size_t i = first; i + 1 < pts.size(); ++i) {
                if (!leq(vals[i], vals[i + 1])) {
                    rep.omega1 = Flag::fail(pts[i], pts[i + 1], "omega decreases on [1, inf)");
                    break;
                }
            }
        }
    }

    auto dres = delta_omega_full(m);
    rep.delta_omega = dres;

    // (omega2) ratio diverges at 0
    {
        if (dres.divergent) {
            rep.omega2 = Flag::pass("ratio grows without stabilizing on probe scales");
        } else if (dres.stabilized) {
            rep.omega2 = Flag::fail(dres.scales.back(), "ratio stabilized near " +
                                                            std::to_string(dres.value));
        } else {
            rep.omega2 = Flag::unknown("ratio trend not resolved on probe scales");
        }
    }

    // (omega3) ratio nonincreasing on (0, 1]
    {
        rep.omega3 = Flag::pass();
        double prev_ratio = -1.0;
        double prev_pt = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] > 1.0) break;
            const double ratio = vals[i] / pts[i];
            if (prev_ratio >= 0 && !leq(ratio, prev_ratio)) {
                rep.omega3 = Flag::fail(prev_pt, pts[i], "ratio increases on (0,1]");
                break;
            }
            prev_ratio = ratio;
            prev_pt = pts[i];
        }
    }

    // (omega4) limsup ratio <= 1 - L
    {
        if (dres.divergent) {
            rep.omega4 = Flag::fail(dres.scales.back(), "ratio diverges at 0");
        } else if (dres.stabilized) {
            if (leq(dres.value, 1.0 - L))
                rep.omega4 = Flag::pass();
            else
                rep.omega4 = Flag::fail(dres.scales.back(),
                                        "tail ratio " + std::to_string(dres.value) + " > 1-L");
        } else {
            rep.omega4 = Flag::unknown("tail ratio not stabilized");
        }
    }

    // subadditivity and midpoint concavity on a coarse subgrid
    {
        std::vector<double> sub;
        const std::size_t stride = std::max<std::size_t>(1, pts.size() / 96);
        for (std::size_t i = 0; i < pts.size(); i += stride) sub.push_back(pts[i]);
        rep.subadditive = Flag::pass();
        rep.concave = Flag::pass();
        for (std::size_t i = 0; i < sub.size() && rep.subadditive.verdict != Verdict::fails; ++i) {
            for (std::size_t j = i; j < sub.size(); ++j) {
                const double a = sub[i], b = sub[j];
                if (a + b <= m.domain_end()) {
                    if (!leq(m(a + b), m(a) + m(b))) {
                        rep.subadditive = Flag::fail(a, b, "omega(a+b) > omega(a)+omega(b)");
                        break;
                    }
                }
            }
        }
        for (std::size_t i = 0; i < sub.size() && rep.concave.verdict != Verdict::fails; ++i) {
            for (std::size_t j = i; j < sub.size(); ++j) {
                const double a = sub[i], b = sub[j];
                if (!leq((m(a) + m(b)) / 2.0, m((a + b) / 2.0))) {
                    rep.concave = Flag::fail(a, b, "midpoint test fails");
                    break;
                }
            }
        }
    }

    // nondecreasing near 0: a clean nondecreasing prefix spanning at least two
    // decades above the smallest grid point counts as a witness for delta_0
    {
        const double cap = std::min(1.0, m.domain_end());
        std::size_t violation = pts.size();
        for (std::size_t i = 0; i + 1 < pts.size() && pts[i + 1] <= cap; ++i) {
            if (!leq(vals[i], vals[i + 1])) {
                violation = i;
                break;
            }
        }
        if (violation == pts.size()) {
            rep.nondecreasing_near_0 = Flag::pass();
        } else if (pts[violation] >= 100.0 * pts.front()) {
            rep.nondecreasing_near_0 =
                Flag::pass("nondecreasing on (0, " + std::to_string(pts[violation]) + "]");
        } else {
            rep.nondecreasing_near_0 =
                Flag::fail(pts[violation], pts[violation + 1], "decrease arbitrarily close to 0");
        }
    }

    // Osgood heuristic (needs strict positivity on (0,1])
    try {
        if (m.domain_end() >= 1.0) {
            auto os = osgood_divergence(m);
            rep.osgood = {os.verdict, {}, {}, os.note};
        } else {
            rep.osgood = Flag::unknown("domain does not cover (0,1]");
        }
    } catch (const std::exception& e) {
        rep.osgood = Flag::unknown(std::string("not evaluable: ") + e.what());
    }

    return rep;
}

}  // namespace lomega
