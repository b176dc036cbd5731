#include "lomega/fpengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lomega {

std::string to_string(IterScheme s) {
    return s == IterScheme::picard ? "picard" : "krasnoselskii";
}

DisplacementReport iterate_displacement(const MapInstance& map, const Point& x0, IterScheme scheme,
                                        double lambda, long long max_iter, double tolerance) {
    if (scheme == IterScheme::krasnoselskii && !(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("iterate_displacement: lambda must lie in (0,1)");
    if (!map.domain().contains(x0))
        throw std::invalid_argument("iterate_displacement: start outside domain");

    DisplacementReport rep;
    rep.scheme = to_string(scheme);
    const long long stride = std::max<long long>(1, max_iter / 1000);
    Point x = x0;
    rep.best_point = x0;
    rep.best_residual = std::numeric_limits<double>::infinity();
    for (long long it = 0; it < max_iter; ++it) {
        Point fx;
        try {
            fx = map.apply(x);
        } catch (const std::exception& e) {
            rep.escaped = true;
            rep.note = std::string("iterate escaped the domain: ") + e.what();
            break;
        }
        const double r = dist(fx, x);
        if (r < rep.best_residual) {
            rep.best_residual = r;
            rep.best_point = x;
        }
        if (it % stride == 0) rep.history.emplace_back(it, r);
        ++rep.iterations;
        if (r <= tolerance) {
            rep.converged = true;
            rep.history.emplace_back(it, r);
            break;
        }
        x = scheme == IterScheme::picard ? std::move(fx) : lerp(x, fx, lambda);
    }
    return rep;
}

namespace {

std::vector<Point> basis_starts(const DomainSpec& dom) {
    std::vector<Point> out;
    if (dom.point_class() == PointClass::vec &&
        (dom.kind() == DomainSpec::Kind::ball || dom.kind() == DomainSpec::Kind::simplex ||
         dom.kind() == DomainSpec::Kind::box)) {
        const double r = dom.radius();
        const int count = std::min(dom.dim(), 24);
        for (int k = 0; k < count; ++k)
            out.emplace_back(basis_vec(dom.dim(), k, dom.norm_tag(), r));
    }
    return out;
}

}  // namespace

DisplacementReport displacement_search(const MapInstance& map, int multistart, std::uint64_t seed,
                                       long long budget, bool include_basis_starts) {
    if (multistart < 1) throw std::invalid_argument("displacement_search: need >= 1 start");
    const DomainSpec& dom = map.domain();
    Rng rng(seed);

    std::vector<Point> starts;
    if (include_basis_starts)
        for (auto& b : basis_starts(dom)) starts.push_back(std::move(b));
    {
        const int uniform_n = (multistart + 1) / 2;
        const int boundary_n = std::max(1, multistart - uniform_n);
        for (auto& p : dom.sample(uniform_n, rng.next_u64(), Strategy::uniform()))
            starts.push_back(std::move(p));
        for (auto& p : dom.sample(boundary_n, rng.next_u64(), Strategy::boundary()))
            starts.push_back(std::move(p));
    }

    DisplacementReport best;
    best.scheme = "multistart";
    best.best_residual = std::numeric_limits<double>::infinity();
    const long long per_start = std::max<long long>(8, budget / static_cast<long long>(starts.size()));
    for (std::size_t s = 0; s < starts.size(); ++s) {
        const IterScheme scheme = s % 2 == 0 ? IterScheme::picard : IterScheme::krasnoselskii;
        auto rep = iterate_displacement(map, starts[s], scheme, 0.5, per_start, 1e-14);
        StartRecord rec;
        rec.start = starts[s];
        rec.initial_residual = dist(map.apply(starts[s]), starts[s]);
        rec.best_residual = rep.best_residual;
        best.starts.push_back(std::move(rec));
        best.iterations += rep.iterations;
        if (rep.best_residual < best.best_residual) {
            best.best_residual = rep.best_residual;
            best.best_point = rep.best_point;
            best.converged = rep.converged;
            best.history = rep.history;
        }
    }

    // local refinement: shrinking random neighborhood descent around the best
    if (!std::isinf(best.best_residual)) {
        double radius = std::max(dom.diameter() * 0.05, 1e-12);
        Point cur = best.best_point;
        double cur_res = best.best_residual;
        for (int k = 0; k < 64; ++k) {
            Point cand = dom.sample(1, rng.next_u64(), Strategy::near(cur, radius))[0];
            double res;
            try {
                res = dist(map.apply(cand), cand);
            } catch (const std::exception&) {
                radius *= 0.7;
                continue;
            }
            ++best.iterations;
            if (res < cur_res) {
                cur = std::move(cand);
                cur_res = res;
            } else {
                radius *= 0.7;
            }
        }
        if (cur_res < best.best_residual) {
            best.best_residual = cur_res;
            best.best_point = cur;
        }
    }
    best.note = "upper bound for the minimal displacement; infimum not claimed";
    return best;
}

AFPSequence afp_thm510(const MapInstance& map, int n_max, double bisect_tol) {
    if (map.id() != "thm510")
        throw std::invalid_argument("afp_thm510: needs a thm510 catalog instance");
    const auto& params = map.params();
    const double eta = *params.eta;
    const double eps = *params.eps;
    const auto& beta = params.beta;
    const Fn1D& f = *params.f_handle;
    const int d = params.dim;
    if (n_max < 1 || n_max >= d)
        throw std::invalid_argument("afp_thm510: need 1 <= n_max < dim");

    AFPSequence seq;
    seq.construction = "thm510";
    std::vector<double> t(n_max);
    for (int i = 0; i < n_max; ++i) {
        auto g = [&](double x) { return (1.0 - beta[i]) * f(eps * x) + beta[i] * eta; };
        double lo = beta[i] * eta, hi = eta;
        const double glo = g(lo) - lo, ghi = g(hi) - hi;
        if (glo < -1e-12 || ghi > 1e-12)
            throw std::runtime_error(
                "afp_thm510: no sign change on the bracket; f/parameters inconsistent");
        while (hi - lo > bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) - mid >= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        t[i] = 0.5 * (lo + hi);
        seq.aux.push_back(t[i]);
    }
    for (int n = 1; n <= n_max; ++n) {
        Vec y = zero_vec(d, Norm::sup);
        for (int i = 0; i < n; ++i) y.coords[i] = t[i];
        const Point yp{y};
        seq.points.push_back(yp);
        seq.residuals.push_back(dist(map.apply(yp), yp));
        seq.closed_form.push_back(eta * beta[n]);  // eta * beta_{n+1}, 1-based
    }
    seq.note = "residual closed form eta beta_{n+1} on the standard basis";
    return seq;
}

std::vector<double> default_mu_schedule() {
    std::vector<double> mu;
    for (int k = 1; k <= 20; ++k) mu.push_back(1.0 - std::exp2(-k));
    return mu;
}

AFPSequence afp_mu_schedule(const MapInstance& map, const std::vector<double>& mu_schedule,
                            long long inner_budget, std::uint64_t seed,
                            bool require_slope_condition) {
    for (std::size_t i = 0; i < mu_schedule.size(); ++i) {
        if (!(mu_schedule[i] > 0.0 && mu_schedule[i] < 1.0))
            throw std::invalid_argument("afp_mu_schedule: mu values must lie in (0,1)");
        if (i > 0 && !(mu_schedule[i] > mu_schedule[i - 1]))
            throw std::invalid_argument("afp_mu_schedule: schedule must increase");
    }
    AFPSequence seq;
    seq.construction = "mu_schedule";

    const double L = map.metadata().claimed_L;
    const Modulus& omega = map.metadata().claimed_omega;
    auto slope = delta_omega_full(omega);
    std::ostringstream note;
    if (slope.divergent || slope.value > 1.0 - L + tol::cert) {
        std::ostringstream msg;
        msg << "declared pair violates the slope premise: Delta_omega ~ "
            << (slope.divergent ? std::numeric_limits<double>::infinity() : slope.value)
            << " > 1 - L = " << (1.0 - L);
        if (require_slope_condition) throw std::invalid_argument("afp_mu_schedule: " + msg.str());
        note << msg.str() << " (running diagnostically); ";
    }

    const double diam = map.domain().diameter();
    Rng rng(seed);
    for (double mu : mu_schedule) {
        MapInstance fmu = mu_scale(map, mu);
        auto rep = displacement_search(fmu, 4, rng.next_u64(), inner_budget, false);
        seq.aux.push_back(mu);
        seq.points.push_back(rep.best_point);
        seq.residuals.push_back(rep.best_residual);
        // transfer bound: residual + (1-mu) L diam + sup_{r<=diam} omega((1-mu) r)
        double sup_term = 0.0;
        for (int i = 1; i <= 64; ++i) {
            const double r = diam * i / 64.0;
            const double arg = std::min((1.0 - mu) * r, omega.domain_end());
            sup_term = std::max(sup_term, omega(arg));
        }
        seq.bound.push_back(rep.best_residual + (1.0 - mu) * L * diam + sup_term);
    }
    note << "bound: residual(F_mu) + (1-mu) L diam K + sup omega((1-mu) r)";
    seq.note = note.str();
    return seq;
}

Certificate constancy_certify(const MapInstance& map, const Modulus& omega, int samples,
                              std::uint64_t seed) {
    if (std::abs(omega(1.0)) > 1e-12)
        throw std::invalid_argument("constancy_certify: omega(1) must be 0");
    const DomainSpec& dom = map.domain();
    const bool ball_like = dom.kind() == DomainSpec::Kind::ball && dom.dim() >= 2;
    const bool positive_part = (dom.kind() == DomainSpec::Kind::simplex ||
                                dom.kind() == DomainSpec::Kind::box) &&
                               dom.radius() == 1.0 && dom.dim() >= 2;
    if (!ball_like && !positive_part)
        throw std::invalid_argument(
            "constancy_certify: domain must be a ball with dim >= 2 or the positive part of one");

    // premise: 0-omega-nonexpansive
    Certificate premise = certify_L_omega(map, 0.0, omega, std::max(samples, 1000), seed);
    if (!premise.pass) {
        premise.note = "constancy premise failed: map is not omega-nonexpansive for " + omega.id() +
                       "; no constancy certificate issued";
        return premise;
    }

    Certificate cert;
    cert.samples = samples;
    cert.seed = seed;
    const Point origin =
        positive_part ? Point{zero_vec(dom.dim(), dom.norm_tag())} : dom.base_point();
    const Point t0 = map.apply(origin);
    double worst = 0.0;
    // for the positive part, route samples through the modulus-preserving
    // retraction of the full ball
    std::vector<Point> pts;
    if (positive_part) {
        auto raw = DomainSpec::ball(1.0, dom.norm_tag(), dom.dim())
                       .sample(samples, seed + 1, Strategy::uniform());
        for (auto& p : raw) pts.emplace_back(positive_retraction(std::get<Vec>(p)));
        // the l1 positive part is the simplex; retraction output may exceed it
        for (auto& p : pts) p = project_into(dom, p);
    } else {
        pts = dom.sample(samples, seed + 1, Strategy::uniform());
    }
    for (const auto& x : pts) {
        const double dev = dist(map.apply(x), t0);
        if (dev > worst) {
            worst = dev;
            cert.worst.x = x;
            cert.worst.y = t0;
            cert.worst.lhs = dev;
            cert.worst.rhs = 0.0;
        }
    }
    cert.margin = -worst;
    cert.pass = worst <= tol::cert;
    cert.note = cert.pass ? "map is constant on the sampled domain (matches T(0))"
                          : "map moves some sample away from T(0)";
    return cert;
}

DiametralProfile diametral_profile(const std::vector<Point>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("diametral_profile: need at least 2 points");
    DiametralProfile prof;
    const std::size_t n = points.size();
    prof.radii.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist(points[i], points[j]);
            prof.radii[i] = std::max(prof.radii[i], d);
            prof.radii[j] = std::max(prof.radii[j], d);
            prof.diameter = std::max(prof.diameter, d);
        }
    prof.diametral.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        prof.diametral[i] =
            prof.radii[i] >= prof.diameter - 1e-12 * std::max(1.0, prof.diameter);
    return prof;
}

}  // namespace lomega
