#include "lomega/minmod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lomega/maps.hpp"
#include "lomega/rng.hpp"

namespace lomega {

Modulus EmpiricalModulus::as_modulus() const {
    return Modulus::tabulated(delta_grid, sup_values);
}

EmpiricalModulus empirical_from_samples(std::vector<PairSample> samples, const GridSpec& grid,
                                        std::string source) {
    EmpiricalModulus emp;
    emp.source = std::move(source);
    emp.pair_count = static_cast<long long>(samples.size());
    emp.delta_grid = grid.materialize();
    std::sort(samples.begin(), samples.end(),
              [](const PairSample& a, const PairSample& b) { return a.d < b.d; });
    // prefix maxima of the image distances, then one binary search per delta
    std::vector<double> prefix_max(samples.size());
    double run = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        run = std::max(run, samples[i].v);
        prefix_max[i] = run;
    }
    emp.sup_values.resize(emp.delta_grid.size());
    for (std::size_t g = 0; g < emp.delta_grid.size(); ++g) {
        const double delta = emp.delta_grid[g];
        auto it = std::upper_bound(samples.begin(), samples.end(), delta,
                                   [](double d, const PairSample& s) { return d < s.d; });
        emp.sup_values[g] = it == samples.begin() ? 0.0 : prefix_max[it - samples.begin() - 1];
    }
    return emp;
}

// pair mix per the sampling policy: uniform pairs, near-diagonal pairs and
// boundary-biased pairs (the inequality is tightest near 0 and at extreme
// points)
std::vector<PairSample> sample_fn_pairs(const Fn1D& f, long long pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("sample_fn_pairs: pairs must be >= 1");
    Rng rng(seed);
    std::vector<PairSample> out;
    out.reserve(pairs);
    const double lo = f.lo, hi = f.hi, span = hi - lo;
    for (long long i = 0; i < pairs; ++i) {
        double r, s;
        const double pick = rng.uniform01();
        if (pick < 0.4) {
            r = rng.uniform(lo, hi);
            s = rng.uniform(lo, hi);
        } else if (pick < 0.7) {
            r = rng.uniform(lo, hi);
            const double gap = rng.log_uniform(1e-8, 1e-2) * span;
            s = std::clamp(rng.coin() ? r + gap : r - gap, lo, hi);
        } else {
            r = rng.coin() ? lo : hi;
            s = rng.coin(0.25) ? (rng.coin() ? lo : hi) : rng.uniform(lo, hi);
        }
        out.push_back({std::abs(r - s), std::abs(f(r) - f(s))});
    }
    return out;
}

std::vector<PairSample> sample_map_pairs(const MapInstance& map, long long pairs,
                                         std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("sample_map_pairs: pairs must be >= 1");
    const DomainSpec& dom = map.domain();
    Rng rng(seed);
    const double diam = dom.diameter();
    std::vector<PairSample> out;
    out.reserve(pairs);

    const long long block = 4096;
    long long done = 0;
    while (done < pairs) {
        const long long count = std::min(block, pairs - done);
        auto xs = dom.sample(static_cast<int>(count), rng.next_u64(), Strategy::uniform());
        for (long long i = 0; i < count; ++i) {
            const double pick = rng.uniform01();
            Point x = xs[static_cast<std::size_t>(i)];
            Point y;
            if (pick < 0.4) {
                y = dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
            } else if (pick < 0.7) {
                const double r = rng.log_uniform(1e-8, 1e-2) * std::max(diam, 1e-12);
                y = dom.sample(1, rng.next_u64(), Strategy::near(x, r))[0];
            } else {
                x = dom.sample(1, rng.next_u64(), Strategy::boundary())[0];
                y = rng.coin() ? dom.sample(1, rng.next_u64(), Strategy::boundary())[0]
                               : dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
            }
            out.push_back({dist(x, y), dist(map.apply(x), map.apply(y))});
            ++done;
        }
    }
    return out;
}

EmpiricalModulus empirical_min_modulus(const Fn1D& f, const GridSpec& grid, long long pairs,
                                       std::uint64_t seed) {
    return empirical_from_samples(sample_fn_pairs(f, pairs, seed), grid, f.name);
}

EmpiricalModulus empirical_min_modulus(const MapInstance& map, const GridSpec& grid,
                                       long long pairs, std::uint64_t seed) {
    return empirical_from_samples(sample_map_pairs(map, pairs, seed), grid, map.id());
}

Fn1D fn1d_of(const Modulus& m, double lo, double hi) {
    return Fn1D{m.id(), lo, hi, [m](double x) { return m(x); }};
}

// ------------------------------------------------------------ certificates

namespace {

struct RawPair {
    double d, lhs;
};

template <typename Pairs, typename Rhs>
Certificate certify_core(Pairs&& pair_stream, Rhs&& rhs_of, long long pairs, std::uint64_t seed,
                         double tolerance, double domain_end) {
    Certificate cert;
    cert.samples = pairs;
    cert.seed = seed;
    cert.tolerance = tolerance;
    cert.margin = std::numeric_limits<double>::infinity();
    for (long long i = 0; i < pairs; ++i) {
        auto [x, y, d, lhs] = pair_stream(i);
        if (d > domain_end) {
            ++cert.skipped;
            continue;
        }
        const double rhs = rhs_of(d);
        const double margin = rhs - lhs;
        if (margin < cert.margin) {
            cert.margin = margin;
            cert.worst.dist = d;
            cert.worst.lhs = lhs;
            cert.worst.rhs = rhs;
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) {
                cert.worst.r = x;
                cert.worst.s = y;
            } else {
                cert.worst.x = x;
                cert.worst.y = y;
            }
        }
    }
    cert.pass = cert.margin >= -tolerance;
    return cert;
}

}  // namespace

Certificate certify_L_omega(const MapInstance& map, double L, const Modulus& omega,
                            long long pairs, std::uint64_t seed, double tolerance) {
    if (L < 0.0) throw std::invalid_argument("certify_L_omega: L must be >= 0");
    // pairs with distance beyond the modulus domain are skipped and counted
    const DomainSpec& dom = map.domain();
    Rng rng(seed);
    const double diam = dom.diameter();

    auto stream = [&](long long) {
        const double pick = rng.uniform01();
        Point x, y;
        if (pick < 0.4) {
            x = dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
            y = dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
        } else if (pick < 0.7) {
            x = dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
            const double r = rng.log_uniform(1e-8, 1e-2) * std::max(diam, 1e-12);
            y = dom.sample(1, rng.next_u64(), Strategy::near(x, r))[0];
        } else {
            x = dom.sample(1, rng.next_u64(), Strategy::boundary())[0];
            y = rng.coin() ? dom.sample(1, rng.next_u64(), Strategy::boundary())[0]
                           : dom.sample(1, rng.next_u64(), Strategy::uniform())[0];
        }
        const double d = dist(x, y);
        const double lhs = dist(map.apply(x), map.apply(y));
        return std::tuple<Point, Point, double, double>{std::move(x), std::move(y), d, lhs};
    };
    Certificate cert = certify_core(stream, [&](double d) { return L * d + omega(d); }, pairs,
                                    seed, tolerance, omega.domain_end());
    cert.note = "L-omega certificate for " + map.id() + " at L=" + std::to_string(L) +
                ", omega=" + omega.id();
    return cert;
}

Certificate certify_fn_L_omega(const Fn1D& f, double L, const Modulus& omega, long long pairs,
                               std::uint64_t seed, double tolerance) {
    Rng rng(seed);
    const double lo = f.lo, hi = f.hi, span = hi - lo;
    auto stream = [&](long long) {
        double r, s;
        const double pick = rng.uniform01();
        if (pick < 0.4) {
            r = rng.uniform(lo, hi);
            s = rng.uniform(lo, hi);
        } else if (pick < 0.7) {
            r = rng.uniform(lo, hi);
            const double gap = rng.log_uniform(1e-8, 1e-2) * span;
            s = std::clamp(rng.coin() ? r + gap : r - gap, lo, hi);
        } else {
            r = rng.coin() ? lo : hi;
            s = rng.uniform(lo, hi);
        }
        return std::tuple<double, double, double, double>{r, s, std::abs(r - s),
                                                          std::abs(f(r) - f(s))};
    };
    Certificate cert = certify_core(stream, [&](double d) { return L * d + omega(d); }, pairs,
                                    seed, tolerance, omega.domain_end());
    cert.note = "L-omega certificate for function " + f.name;
    return cert;
}

Certificate nonexpansive_upgrade_check(double L, const Modulus& omega, const GridSpec& grid) {
    Certificate cert;
    cert.tolerance = tol::cert;
    cert.margin = std::numeric_limits<double>::infinity();
    auto pts = grid.materialize();
    double first_violation = -1.0;
    long long used = 0;
    for (double d : pts) {
        if (d <= 0.0 || d > 1.0 || d > omega.domain_end()) continue;
        ++used;
        const double lhs = L * d + omega(d);
        const double margin = d - lhs;
        if (margin < -tol::cert && first_violation < 0.0) first_violation = d;
        if (margin < cert.margin) {
            cert.margin = margin;
            cert.worst.r = d;
            cert.worst.s = d;
            cert.worst.dist = d;
            cert.worst.lhs = lhs;
            cert.worst.rhs = d;
        }
    }
    if (used == 0) throw std::invalid_argument("nonexpansive_upgrade_check: grid not in (0,1]");
    cert.samples = used;
    cert.pass = cert.margin >= -tol::cert;
    if (!cert.pass && first_violation > 0.0) {
        // report the smallest violating delta: the failure mode that matters
        // lives at 0
        const double d = first_violation;
        cert.worst.r = d;
        cert.worst.s = d;
        cert.worst.dist = d;
        cert.worst.lhs = L * d + omega(d);
        cert.worst.rhs = d;
    }
    cert.note = cert.pass
                    ? "L delta + omega(delta) <= delta on (0,1]: certified maps are 1-Lipschitz "
                      "on pairs with distance <= 1 (chaining extends to convex domains)"
                    : "moduli-level inequality fails";
    return cert;
}

// -------------------------------------------------------- lower derivative

std::vector<double> default_derivative_scales() {
    std::vector<double> scales;
    for (int k = 3; k <= 30; ++k) scales.push_back(std::exp2(-k));
    return scales;
}

DerivativeEstimate lower_derivative(const MapInstance& map, const Point& x, const Point& y,
                                    const std::vector<double>& scales) {
    DerivativeEstimate est;
    const double d_xy = dist(x, y);
    if (d_xy == 0.0) {
        est.value = 0.0;  // by definition when y == x
        return est;
    }
    if (!map.domain().contains(x) || !map.domain().contains(y))
        throw std::invalid_argument("lower_derivative: endpoints must lie in the domain");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1]))
            throw std::invalid_argument("lower_derivative: scales must be strictly decreasing");

    const Point tx = map.apply(x);
    est.scales = scales;
    double running = std::numeric_limits<double>::infinity();
    for (double epsv : scales) {
        // probes z = x + t (y - x) with rho(z,x) < eps
        const double t_cap = std::min(0.999999 * epsv / d_xy, 1.0);
        double inf_ratio = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 16; ++k) {
            const double t = t_cap * std::exp2(-k);
            if (t <= 0.0) break;
            const Point z = lerp(x, y, t);
            const double dzx = dist(z, x);
            if (dzx <= 0.0 || dzx >= epsv) continue;
            const double ratio = dist(map.apply(z), tx) / dzx;
            if (ratio < inf_ratio) inf_ratio = ratio;
            if (est.segment_points.size() < 64) est.segment_points.push_back(t);
        }
        est.infima.push_back(inf_ratio);  // +inf when no valid probe exists
        running = std::min(running, inf_ratio);
        est.running_min.push_back(running);
    }
    est.value = running;
    // flag a monotone-increasing trend across the recorded scales
    est.diverging = est.infima.size() >= 4;
    for (std::size_t i = est.infima.size() >= 4 ? est.infima.size() - 4 : 0;
         i + 1 < est.infima.size(); ++i)
        if (!(est.infima[i + 1] > est.infima[i] * (1.0 + 1e-9) ||
              (std::isinf(est.infima[i + 1]) && !std::isinf(est.infima[i]))))
            est.diverging = false;
    return est;
}

}  // namespace lomega
