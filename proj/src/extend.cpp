#include "lomega/extend.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lomega {

// ------------------------------------------------------- PiecewiseFunction

PiecewiseFunction PiecewiseFunction::inf_extension(std::vector<double> nodes,
                                                   std::vector<double> values, Modulus omega_tilde,
                                                   double hi, double value_bound) {
    if (nodes.size() != values.size() || nodes.empty())
        throw std::invalid_argument("inf_extension: need matching nonempty nodes/values");
    PiecewiseFunction f;
    f.repr_ = Repr::inf_extension;
    f.xs_ = std::move(nodes);
    f.ys_ = std::move(values);
    f.omega_tilde_ = std::move(omega_tilde);
    f.hi_ = hi;
    f.bound_ = value_bound;
    return f;
}

PiecewiseFunction PiecewiseFunction::omega_segments(std::vector<double> x_seq,
                                                    std::vector<double> y_seq, Modulus omega_tilde,
                                                    double value_bound) {
    if (x_seq.size() < 2 || y_seq.size() + 1 != x_seq.size())
        throw std::invalid_argument("omega_segments: need x_seq of n+1 and y_seq of n entries");
    PiecewiseFunction f;
    f.repr_ = Repr::omega_segments;
    f.xs_ = std::move(x_seq);
    f.ys_ = std::move(y_seq);
    f.omega_tilde_ = std::move(omega_tilde);
    f.hi_ = f.xs_.front();
    f.bound_ = value_bound;
    return f;
}

PiecewiseFunction PiecewiseFunction::interp(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("interp: need >= 2 nodes");
    PiecewiseFunction f;
    f.repr_ = Repr::interp;
    f.hi_ = xs.back();
    f.bound_ = *std::max_element(ys.begin(), ys.end());
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    return f;
}

double PiecewiseFunction::operator()(double z) const {
    if (z < -1e-12 || z > hi_ * (1 + 1e-12))
        throw std::domain_error("piecewise function: argument outside [0, hi]");
    z = std::clamp(z, 0.0, hi_);
    switch (repr_) {
        case Repr::inf_extension: {
            double best = bound_;
            for (std::size_t i = 0; i < xs_.size(); ++i)
                best = std::min(best, ys_[i] + omega_tilde_(std::abs(z - xs_[i])));
            return std::max(best, 0.0);
        }
        case Repr::omega_segments: {
            // x_seq descends from x_0; below the last breakpoint f == 0
            if (z <= xs_.back()) return 0.0;
            // find n with x_{n+1} <= z <= x_n
            std::size_t n = 0;
            while (n + 1 < xs_.size() && z < xs_[n + 1]) ++n;
            const double xn = xs_[n], xn1 = xs_[n + 1], yn1 = ys_[n];
            if (z <= yn1) return std::max(omega_tilde_(z) - omega_tilde_(xn1), 0.0);
            return std::max(omega_tilde_(xn) - omega_tilde_(z), 0.0);
        }
        case Repr::interp: {
            auto it = std::upper_bound(xs_.begin(), xs_.end(), z);
            if (it == xs_.begin()) return ys_.front();
            if (it == xs_.end()) return ys_.back();
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double t = (z - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
        }
    }
    return 0.0;
}

std::vector<double> PiecewiseFunction::breakpoints() const {
    if (repr_ != Repr::omega_segments) return xs_;
    std::vector<double> b = xs_;
    b.insert(b.end(), ys_.begin(), ys_.end());
    std::sort(b.begin(), b.end());
    return b;
}

Fn1D PiecewiseFunction::as_fn(std::string name) const {
    auto copy = *this;
    return Fn1D{std::move(name), 0.0, hi_, [copy](double z) { return copy(z); }};
}

// ------------------------------------------------------------- McShane

McShaneReport mcshane_extend(const std::vector<double>& d_nodes,
                             const std::vector<double>& f0_values, const Modulus& omega_tilde,
                             double target_hi) {
    if (d_nodes.size() != f0_values.size() || d_nodes.empty())
        throw std::invalid_argument("mcshane_extend: need matching nonempty nodes/values");
    for (double v : f0_values)
        if (v < 0) throw std::invalid_argument("mcshane_extend: f0 must be nonnegative");
    for (double x : d_nodes)
        if (x < 0 || x > target_hi)
            throw std::invalid_argument("mcshane_extend: node outside [0, target]");

    McShaneReport rep;
    // structural pre-check of the majorant: subadditivity failure rejects,
    // non-monotonicity is only a warning (the inf-form stays well-defined)
    auto props = check_properties(omega_tilde, 0.0,
                                  GridSpec::geometric(1e-6, std::min(omega_tilde.domain_end(),
                                                                     std::max(1.0, target_hi)),
                                                      512));
    rep.subadditive_check = props.subadditive;
    rep.monotone_check = props.nondecreasing_near_0;
    std::ostringstream warn;
    if (props.subadditive.fails()) {
        std::ostringstream os;
        os << "mcshane_extend: majorant is not subadditive (witness a=" << *props.subadditive.witness_a
           << ", b=" << *props.subadditive.witness_b << ")";
        throw std::invalid_argument(os.str());
    }
    if (props.subadditive.verdict == Verdict::undetermined)
        warn << "subadditivity undetermined on check grid; ";
    if (props.omega1.fails() || props.nondecreasing_near_0.fails())
        warn << "majorant is not nondecreasing everywhere; ";

    // f0 must admit the majorant on its own domain
    for (std::size_t i = 0; i < d_nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < d_nodes.size(); ++j) {
            const double gap = std::abs(d_nodes[i] - d_nodes[j]);
            if (gap > omega_tilde.domain_end()) continue;
            const double diff = std::abs(f0_values[i] - f0_values[j]);
            if (diff > omega_tilde(gap) + tol::cert) {
                std::ostringstream os;
                os << "mcshane_extend: f0 violates its modulus on D at (" << d_nodes[i] << ", "
                   << d_nodes[j] << "): |df0|=" << diff << " > " << omega_tilde(gap);
                throw std::invalid_argument(os.str());
            }
        }
    }

    const double M = *std::max_element(f0_values.begin(), f0_values.end());
    rep.f = PiecewiseFunction::inf_extension(d_nodes, f0_values, omega_tilde, target_hi, M);
    rep.warnings = warn.str();
    return rep;
}

McShaneReport mcshane_extend(const Fn1D& f0, const Modulus& omega_tilde, double target_hi,
                             int nodes) {
    if (nodes < 2) throw std::invalid_argument("mcshane_extend: need >= 2 sample nodes");
    std::vector<double> xs(nodes), ys(nodes);
    for (int i = 0; i < nodes; ++i) {
        xs[i] = f0.lo + (f0.hi - f0.lo) * i / (nodes - 1);
        ys[i] = f0(xs[i]);
    }
    return mcshane_extend(xs, ys, omega_tilde, target_hi);
}

// ------------------------------------------------------------- Breneis

namespace {

// root of wt(y) = target on [lo, hi], wt increasing
double solve_increasing(const Modulus& wt, double target, double lo, double hi, double rtol) {
    double flo = wt(lo) - target, fhi = wt(hi) - target;
    if (flo > 1e-12 || fhi < -1e-12)
        throw std::runtime_error("breneis: midpoint root not bracketed");
    for (int it = 0; it < 200 && hi - lo > rtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (wt(mid) - target <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<PiecewiseFunction, BreneisState> breneis_construct(const Modulus& omega, double epsilon,
                                                             int depth, double root_tol) {
    // numeric check of M = lim omega(delta)/delta
    auto d = delta_omega_full(omega);
    if (d.divergent || !d.stabilized || !(d.value > 0))
        throw std::invalid_argument(
            "breneis_construct: omega(delta)/delta does not settle at a finite positive limit");
    const double M = d.value;
    if (!(epsilon > 0 && epsilon < M))
        throw std::invalid_argument("breneis_construct: epsilon must lie in (0, M)");
    const double slope = M - epsilon;
    Modulus wt = Modulus::custom("(M-eps)*min(h,1)",
                                 [slope](double h) { return slope * std::min(h, 1.0); });
    return breneis_construct(omega, wt, epsilon, depth, root_tol);
}

std::pair<PiecewiseFunction, BreneisState> breneis_construct(const Modulus& omega,
                                                             const Modulus& omega_tilde,
                                                             double epsilon, int depth,
                                                             double root_tol) {
    if (depth < 1) throw std::invalid_argument("breneis_construct: depth must be >= 1");
    if (!(omega.domain_end() > 1.0))
        throw std::invalid_argument("breneis_construct: omega must live on [0,b] with b > 1");

    // omega nondecreasing on [0, b] for some b > 1
    {
        const double b = std::min(omega.domain_end(), 1.25);
        double prev = 0.0;
        for (int i = 1; i <= 512; ++i) {
            const double t = b * i / 512.0;
            const double v = omega(t);
            if (v + 1e-12 < prev)
                throw std::invalid_argument("breneis_construct: omega not nondecreasing at " +
                                            std::to_string(t));
            prev = v;
        }
    }

    auto d = delta_omega_full(omega);
    if (d.divergent || !d.stabilized || !(d.value > 0))
        throw std::invalid_argument(
            "breneis_construct: omega(delta)/delta does not settle at a finite positive limit");
    const double M = d.value;
    if (!(epsilon > 0 && epsilon < M))
        throw std::invalid_argument("breneis_construct: epsilon must lie in (0, M)");

    // majorant requirements: increasing, (M-eps)-Lipschitz on [0,1], constant
    // beyond 1, self-dominating (checked as nondecreasing + subadditive)
    {
        double prev = -1.0;
        for (int i = 0; i <= 512; ++i) {
            const double t = 1.5 * i / 512.0;
            const double v = omega_tilde(t);
            if (v < prev - 1e-12)
                throw std::invalid_argument("breneis_construct: majorant not nondecreasing");
            if (i > 0 && t <= 1.0) {
                const double lip = (v - prev) / (1.5 / 512.0);
                if (lip > (M - epsilon) * (1 + 1e-6) + 1e-12)
                    throw std::invalid_argument(
                        "breneis_construct: majorant exceeds the (M-eps) Lipschitz bound");
            }
            prev = v;
        }
        if (std::abs(omega_tilde(1.4) - omega_tilde(1.0)) > 1e-12)
            throw std::invalid_argument("breneis_construct: majorant must be constant beyond 1");
        auto props = check_properties(omega_tilde, 0.0, GridSpec::geometric(1e-6, 1.0, 256));
        if (props.subadditive.fails())
            throw std::invalid_argument("breneis_construct: majorant fails self-domination");
    }

    BreneisState st;
    st.epsilon = epsilon;
    st.M = M;
    st.root_tol = root_tol;
    st.x_seq.push_back(1.0);

    // delta0: largest dyadic scale below which (M-eps) d <= omega(d) <= (M+eps) d
    st.delta0 = 0.0;
    for (double cand = 1.0; cand > 1e-9; cand *= 0.5) {
        bool ok = true;
        for (int i = 1; i <= 64 && ok; ++i) {
            const double t = cand * i / 64.0;
            const double v = omega(t);
            ok = v >= (M - epsilon) * t - 1e-12 && v <= (M + epsilon) * t + 1e-12;
        }
        if (ok) {
            st.delta0 = cand;
            break;
        }
    }

    // membership in A_{n+1}: wt(x+h) - wt(x) <= omega(h) on an h-grid of
    // [0, y_x - x]; the grid is geometric (the inequality is tightest at the
    // ends) plus the right endpoint
    auto y_of = [&](double x, double xn) {
        const double target = 0.5 * (omega_tilde(x) + omega_tilde(xn));
        return solve_increasing(omega_tilde, target, x, xn, root_tol * 0.25);
    };
    auto member = [&](double x, double xn) {
        const double yx = y_of(x, xn);
        const double span = yx - x;
        if (span <= 0) return true;
        const double wx = omega_tilde(x);
        for (int i = 0; i <= 256; ++i) {
            const double h = i == 256 ? span : span * std::pow(2.0, -0.0625 * (256 - i));
            if (omega_tilde(x + h) - wx > omega(h) + 1e-13) return false;
        }
        return true;
    };

    for (int n = 0; n < depth; ++n) {
        const double xn = st.x_seq.back();
        if (xn <= 1e-6 || xn <= 0.0) break;
        double next;
        if (member(0.0, xn)) {
            next = 0.0;
        } else {
            // coarse ascending scan for the first member, then bisect the
            // membership boundary (inf A attained by compactness)
            const int scan = 512;
            double lo = 0.0, hi_pt = xn;
            bool found = false;
            for (int i = 1; i <= scan; ++i) {
                const double t = xn * i / scan;
                if (member(t, xn)) {
                    hi_pt = t;
                    lo = xn * (i - 1) / scan;
                    found = true;
                    break;
                }
            }
            if (!found) hi_pt = xn;  // x_n itself is always a member (y_{x_n} = x_n)
            while (hi_pt - lo > root_tol) {
                const double mid = 0.5 * (lo + hi_pt);
                if (member(mid, xn))
                    hi_pt = mid;
                else
                    lo = mid;
            }
            next = hi_pt;
        }
        st.y_seq.push_back(y_of(next, xn));
        st.x_seq.push_back(next);
        if (next == 0.0) {
            st.reached_zero = true;
            break;
        }
    }
    st.depth = static_cast<int>(st.x_seq.size()) - 1;

    PiecewiseFunction f = PiecewiseFunction::omega_segments(st.x_seq, st.y_seq, omega_tilde, M);
    return {std::move(f), std::move(st)};
}

// ---------------------------------------------------------- domination

Certificate verify_domination(const Fn1D& f, const Modulus& omega, long long pairs,
                              std::uint64_t seed) {
    const double span = f.hi - f.lo;
    const double hi = std::min(span, omega.domain_end());
    const GridSpec grid = GridSpec::geometric(std::min(1e-8, hi / 2), hi, 2048);
    auto emp = empirical_min_modulus(f, grid, pairs, seed);
    Certificate cert;
    cert.samples = pairs;
    cert.seed = seed;
    cert.pass = true;
    cert.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < emp.delta_grid.size(); ++i) {
        const double lhs = emp.sup_values[i];
        const double rhs = omega(emp.delta_grid[i]);
        const double margin = rhs - lhs;
        if (margin < cert.margin) {
            cert.margin = margin;
            cert.worst.r = emp.delta_grid[i];
            cert.worst.s = emp.delta_grid[i];
            cert.worst.dist = emp.delta_grid[i];
            cert.worst.lhs = lhs;
            cert.worst.rhs = rhs;
        }
    }
    cert.pass = cert.margin >= -tol::cert;
    cert.note = "empirical domination of " + f.name + " by " + omega.id();
    return cert;
}

}  // namespace lomega
