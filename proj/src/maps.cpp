#include "lomega/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lomega {

namespace {

constexpr double kLn10 = 2.302585092994045684;

std::vector<double> default_beta(int dim) {
    std::vector<double> beta(dim);
    for (int i = 0; i < dim; ++i) beta[i] = std::exp2(-(i + 2));  // beta_n = 2^-(n+1), n 1-based
    return beta;
}

void validate_schedule(const std::vector<double>& beta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (!(beta[i] > 0.0 && beta[i] < 1.0))
            throw std::invalid_argument("schedule: beta_n must lie in (0,1)");
        if (i > 0 && !(beta[i] < beta[i - 1]))
            throw std::invalid_argument("schedule: beta_n must be strictly decreasing");
        sum += beta[i];
    }
    if (sum > 1.0 + 1e-12) throw std::invalid_argument("schedule: sum of beta_n must be <= 1");
}

// t |log10 t| with the continuous extension 0 |log 0| = 0
double tlogt(double t) {
    t = std::abs(t);
    return t == 0.0 ? 0.0 : t * std::abs(std::log10(t));
}

void reject(const std::string& id, const std::string& inequality) {
    throw std::invalid_argument("build_map(" + id + "): constraint violated: " + inequality);
}

Fn1D default_log_fn() {
    return Fn1D{"r|log r|", 0.0, 1.0, [](double r) { return tlogt(r); }};
}

}  // namespace

std::string to_string(FpStatus s) {
    switch (s) {
        case FpStatus::has_fixed_point: return "has_fixed_point";
        case FpStatus::fixed_point_free: return "fixed_point_free";
        case FpStatus::fixed_point_free_infinite: return "fixed_point_free_infinite";
    }
    return "?";
}

Point MapInstance::apply(const Point& x) const {
    if (!domain_.contains(x))
        throw std::domain_error("map " + id_ + ": point outside domain " + domain_.describe() +
                                ": " + lomega::describe(x));
    return fn_(x);
}

std::vector<std::string> map_catalog_ids() {
    return {"ex44", "ex45", "ex46", "thm51", "prop59", "thm510", "alspach", "radial", "c0shift",
            "identity", "constant"};
}

MapInstance build_map(const std::string& id, MapParams params) {
    const int d = params.dim;
    if (d < 2) throw std::invalid_argument("build_map: truncation dim must be >= 2");

    if (id == "ex44") {
        DomainSpec dom = DomainSpec::simplex(1.0, d);
        MapMetadata meta;
        meta.claimed_L = 2.0 / kLn10;
        meta.claimed_omega = Modulus::catalog("alog", {{"alpha", 1.0}});
        meta.fp_status = FpStatus::has_fixed_point;
        meta.fp_note = "0 is fixed";
        meta.displacement_note = "displacement 0 at the origin";
        meta.source = "coordinatewise t|log t| map with summable weights on the l1 simplex";
        params.resolved = {{"dim", double(d)}};
        auto fn = [d](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            Vec y = zero_vec(d, Norm::l1);
            for (int i = 0; i < d; ++i) y.coords[i] = std::exp2(-(i + 1)) * tlogt(x.coords[i]);
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "ex45") {
        const double L = params.L.value_or(0.5);
        const double eps = params.eps.value_or(0.15);
        const double theta = params.theta.value_or(0.4);
        const double eta = params.eta.value_or(0.08);
        if (!(L > 0.0 && L <= 1.0)) reject(id, "L in (0,1]");
        if (!(eps > 0.1 && eps < 0.2)) reject(id, "eps in (0.1, 0.2)");
        // r |log r| nondecreasing on [0, 2 eps]
        for (int i = 1; i <= 512; ++i) {
            const double a = 2 * eps * (i - 1) / 512.0, b = 2 * eps * i / 512.0;
            if (tlogt(b) + 1e-12 < tlogt(a)) reject(id, "r|log r| nondecreasing on [0, 2 eps]");
        }
        if (!(tlogt(eps) < eps)) reject(id, "eps |log eps| < eps");
        if (!(theta > 0.0 && theta < std::min(0.5, L * kLn10)))
            reject(id, "theta in (0, min(1/2, L ln 10))");
        if (!(eta > 0.0 && eta < std::min(eps * (1.0 - theta), L - theta / kLn10)))
            reject(id, "eta in (0, min(eps (1-theta), L - theta/ln 10))");

        DomainSpec dom = DomainSpec::simplex(eps, d);
        MapMetadata meta;
        meta.claimed_L = L;
        meta.claimed_omega = Modulus::catalog("alog", {{"alpha", 1.0}});
        meta.fp_status = FpStatus::fixed_point_free;
        meta.fp_note =
            "coordinate recursion t' = theta t |log sqrt(t)| has positive limit, incompatible "
            "with summability";
        meta.displacement_note = "fails the fixed point property; displacement not claimed zero";
        meta.source = "head-replenished shifted t|log sqrt(t)| map on a small l1 simplex";
        params.resolved = {{"L", L}, {"eps", eps}, {"theta", theta}, {"eta", eta}, {"dim", double(d)}};
        auto fn = [d, eta, theta](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            double sum = 0.0;
            for (double c : x.coords) sum += c;
            Vec y = zero_vec(d, Norm::l1);
            y.coords[0] = eta * (1.0 - sum);
            for (int i = 1; i < d; ++i) y.coords[i] = theta * 0.5 * tlogt(x.coords[i - 1]);
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "ex46") {
        const double L = params.L.value_or(0.5);
        if (!(L > 0.0 && L <= 1.0)) reject(id, "L in (0,1]");
        DomainSpec dom = DomainSpec::ball(1.0, Norm::l2, d);
        MapMetadata meta;
        meta.claimed_L = L;
        meta.claimed_omega = Modulus::catalog("sqrt2");
        meta.fp_status = L < 1.0 ? FpStatus::has_fixed_point : FpStatus::fixed_point_free_infinite;
        meta.fp_note = L < 1.0 ? "geometric fixed point with x_1 = sqrt((1-L^2)/(2-L^2))"
                               : "for L = 1 the recursion forces a constant sequence, excluded; "
                                 "truncation keeps the best residual near 1/sqrt(dim)";
        meta.displacement_note = L < 1.0 ? "displacement 0 at the fixed point"
                                         : "desk-scale residual floor from truncation";
        meta.source = "sphere-lifting right-shift map on the Hilbert ball";
        params.resolved = {{"L", L}, {"dim", double(d)}};
        auto fn = [d, L](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            double s = 1.0;
            for (double c : x.coords) s -= c * c;
            if (s < -1e-9)
                throw std::domain_error("ex46: 1 - ||x||^2 negative, square root undefined");
            Vec y = zero_vec(d, Norm::l2);
            y.coords[0] = std::sqrt(std::max(s, 0.0));
            for (int i = 1; i < d; ++i) y.coords[i] = L * x.coords[i - 1];
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "thm51") {
        std::vector<double> beta = params.beta.empty() ? default_beta(d) : params.beta;
        if (static_cast<int>(beta.size()) != d)
            throw std::invalid_argument("thm51: schedule length must equal dim");
        validate_schedule(beta);
        std::shared_ptr<Fn1D> f =
            params.f_handle ? params.f_handle : std::make_shared<Fn1D>(default_log_fn());
        const double f0 = (*f)(0.0);

        DomainSpec dom = DomainSpec::ball(1.0, Norm::l1, d);
        MapMetadata meta;
        meta.claimed_L = 2.0;
        meta.claimed_omega = Modulus::catalog("alog", {{"alpha", 1.0}});
        meta.fp_status = FpStatus::fixed_point_free_infinite;
        meta.fp_note =
            "fixed point would need all coordinates equal to the replenishment level; excluded "
            "in the sequence space, a truncated diagonal solution may exist";
        meta.displacement_note = "residual beta_k at the k-th basis vector, so displacement 0";
        meta.source = "damped coordinates plus norm-driven replenishment on the basis ball";
        params.resolved = {{"dim", double(d)}, {"beta_1", beta[0]}};
        params.beta = beta;
        params.f_handle = f;
        auto fn = [d, beta, f, f0](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            const double nrm = std::min(norm(x), 1.0);
            const double c = (1.0 - nrm) * std::cos((*f)(nrm) - f0);
            Vec y = zero_vec(d, Norm::l1);
            for (int i = 0; i < d; ++i) y.coords[i] = (1.0 - beta[i]) * x.coords[i] + c * beta[i];
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "prop59") {
        const double L = params.L.value_or(0.5);
        const double sigma = params.sigma.value_or(0.5);
        const double eps = params.eps.value_or(0.009);
        if (!(L > 0.0 && L <= 1.0)) reject(id, "L in (0,1]");
        if (!(sigma > 0.0 && sigma < 1.0)) reject(id, "sigma in (0,1)");
        if (!(eps > 0.0 && eps < 1.0)) reject(id, "eps in (0,1)");
        if (!(2.0 * sigma <= L * kLn10)) reject(id, "2 sigma <= L ln 10");
        if (!(std::pow(eps, sigma) < 0.1)) reject(id, "eps^sigma < 1/10");

        DomainSpec dom = DomainSpec::tail_ball(eps, d);
        MapMetadata meta;
        meta.claimed_L = L;
        meta.claimed_omega = Modulus::catalog("alog", {{"alpha", 1.0}});
        meta.fp_status = FpStatus::fixed_point_free;
        meta.fp_note =
            "limit equation t = sigma t |log t| forces t = 10^(-1/sigma) > eps, outside the ball";
        meta.displacement_note = "search floor reported; freeness argued via the recursion";
        meta.source =
            "Banach-limit head with coordinatewise t|log t^sigma| shift on a small sup ball; "
            "coordinate images clamped at the ball radius to keep the map well-defined";
        params.resolved = {{"L", L}, {"sigma", sigma}, {"eps", eps}, {"dim", double(d)}};
        auto phi = [sigma, eps](double t) { return std::min(sigma * tlogt(t), eps); };
        auto fn = [phi, eps](const Point& p) -> Point {
            const TailSeq& x = std::get<TailSeq>(p);
            TailSeq y;
            y.prefix.resize(x.prefix.size() + 1);
            y.prefix[0] = eps - phi(std::abs(banach_limit(x)));
            for (std::size_t i = 0; i < x.prefix.size(); ++i) y.prefix[i + 1] = phi(x.prefix[i]);
            y.tail = phi(x.tail);
            return Point{compact(std::move(y))};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "thm510") {
        const double eta = params.eta.value_or(0.2);
        const double eps = params.eps.value_or(0.5);
        if (!(eta > 0.0 && eta < 1.0)) reject(id, "eta in (0,1)");
        if (!(eps > 0.0 && eps < 1.0)) reject(id, "eps (basis distortion constant) in (0,1)");
        std::vector<double> beta = params.beta.empty() ? default_beta(d) : params.beta;
        if (static_cast<int>(beta.size()) != d)
            throw std::invalid_argument("thm510: schedule length must equal dim");
        validate_schedule(beta);

        std::shared_ptr<Modulus> omega = params.omega_handle
                                             ? params.omega_handle
                                             : std::make_shared<Modulus>(
                                                   Modulus::catalog("alog", {{"alpha", 1.0}}));
        // generator requirements: nondecreasing on [0, eta], omega(eta) <= eta,
        // subadditive on [0,1]
        for (int i = 1; i <= 512; ++i) {
            const double a = eta * (i - 1) / 512.0, b = eta * i / 512.0;
            if ((*omega)(b) + 1e-12 < (*omega)(a))
                reject(id, "omega nondecreasing on [0, eta]");
        }
        if (!((*omega)(eta) <= eta + 1e-12)) reject(id, "omega(eta) <= eta");
        {
            auto props = check_properties(*omega, 0.0, GridSpec::geometric(1e-6, 1.0, 512));
            if (props.subadditive.fails()) reject(id, "omega subadditive on [0,1]");
        }

        std::shared_ptr<Fn1D> f = params.f_handle;
        if (!f) {
            // extension of omega restricted to [0, eta], capped majorant
            Modulus wcap = *omega;
            Modulus wt = Modulus::custom(
                "capped " + omega->id(),
                [wcap, eta](double t) { return wcap(std::min(t, eta)); });
            Fn1D f0{"omega|[0,eta]", 0.0, eta, [wcap](double t) { return wcap(t); }};
            auto ms = mcshane_extend(f0, wt, 1.0, 2049);
            f = std::make_shared<Fn1D>(ms.f.as_fn("extension of " + omega->id()));
        }
        if (std::abs((*f)(0.0)) > 1e-12) reject(id, "f(0) = 0");

        DomainSpec dom = DomainSpec::box(eta, d);
        MapMetadata meta;
        meta.claimed_L = 0.0;
        meta.claimed_omega = *omega;
        meta.fp_status = FpStatus::fixed_point_free_infinite;
        meta.fp_note =
            "coordinate fixed points t_n would have to stay above eta eventually, against "
            "t_n -> 0; the truncated model admits the finite solution";
        meta.displacement_note = "approximate fixed points y_n with residual eta beta_{n+1}";
        meta.source = "damped f(eps t) coordinates with replenishment on the c0-style box";
        params.resolved = {{"eta", eta}, {"eps", eps}, {"dim", double(d)}, {"beta_1", beta[0]}};
        params.beta = beta;
        params.f_handle = f;
        params.omega_handle = omega;
        params.eta = eta;
        params.eps = eps;
        auto fn = [d, beta, eta, eps, f](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            Vec y = zero_vec(d, Norm::sup);
            for (int i = 0; i < d; ++i)
                y.coords[i] = (1.0 - beta[i]) * (*f)(eps * x.coords[i]) + eta * beta[i];
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "alspach") {
        const int level = params.level;
        if (level < 0 || level > 24) throw std::invalid_argument("alspach: level must be in [0,24]");
        DomainSpec dom = params.full_set
                             ? DomainSpec::step_cube(level)
                             : DomainSpec::step_slice(params.alpha.value_or(Rational(1, 25)), level);
        MapMetadata meta;
        if (params.full_set) {
            meta.claimed_L = 1.0;
            meta.claimed_omega = Modulus::catalog("linear", {{"c", 0.0}});
            meta.fp_status = FpStatus::has_fixed_point;
            meta.fp_note = "f == 0 and f == 1 are fixed on the full order interval";
        } else {
            const Rational a = params.alpha.value_or(Rational(1, 25));
            if (!(Rational(2) * a <= Rational(1, 10)))
                reject(id, "2 alpha <= 1/10 (so |log r| >= 1 on slice distances)");
            meta.claimed_L = 0.0;
            meta.claimed_omega = Modulus::catalog("alog", {{"alpha", 1.0}});
            meta.fp_status = FpStatus::fixed_point_free;
            meta.fp_note = "fixed-point free on the norm slice; exact isometry, displacement 0";
        }
        meta.displacement_note = "doubling map; minimal displacement 0";
        meta.source = "baker-style doubling isometry on dyadic step functions";
        params.resolved = {{"level", double(level)}, {"full_set", params.full_set ? 1.0 : 0.0}};
        auto fn = [](const Point& p) -> Point {
            const StepFn& fin = std::get<StepFn>(p);
            if (fin.level() > 24) throw std::domain_error("alspach: resolution cap exceeded");
            const auto& v = fin.values();
            std::vector<Rational> out(v.size() * 2);
            const Rational one(1);
            for (std::size_t j = 0; j < v.size(); ++j) {
                const Rational twice = Rational(2) * v[j];
                out[j] = min(twice, one);
                out[v.size() + j] = max(twice, one) - one;
            }
            return Point{StepFn(fin.level() + 1, std::move(out))};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "radial") {
        const double lam = params.lambda.value_or(0.4);
        if (!(lam > 0.0 && lam < 1.0)) reject(id, "lambda in (0,1)");
        const Norm n = params.norm_tag.value_or(Norm::l2);
        const double sqrt3 = std::sqrt(3.0);

        Fn1D phi{"lambda r sqrt(1-r)", 0.0, 2.0 / 3.0,
                 [lam](double r) { return lam * r * std::sqrt(std::max(1.0 - r, 0.0)); }};
        Modulus wt = Modulus::catalog("radial-majorant", {{"lambda", lam}});
        auto ms = mcshane_extend(phi, wt, 1.0, 2049);
        auto f = std::make_shared<Fn1D>(ms.f.as_fn("extension of lambda r sqrt(1-r)"));

        DomainSpec dom = DomainSpec::ball(1.0, n, d);
        MapMetadata meta;
        meta.claimed_L = 7.0 * sqrt3 * lam / 18.0;
        meta.claimed_omega = Modulus::custom(
            "radial-omega", [lam](double dlt) { return 1.5 * lam * dlt * std::sqrt(std::abs(1.0 - dlt)); });
        meta.fp_status = FpStatus::has_fixed_point;
        meta.fp_note = "0 is fixed";
        meta.displacement_note = "displacement 0 at the origin";
        meta.source = "radial rescaling by an extended bump profile on the unit ball";
        params.resolved = {{"lambda", lam}, {"dim", double(d)}};
        params.f_handle = f;
        params.lambda = lam;
        auto fn = [f](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            return Point{scale(x, (*f)(std::min(norm(x), 1.0)))};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "c0shift") {
        std::shared_ptr<Fn1D> f = params.f_handle;
        if (!f)
            f = std::make_shared<Fn1D>(
                Fn1D{"sin(r^2)", 0.0, 1.0, [](double r) { return std::sin(r * r); }});
        // f must map [0,1] into [0,1]; estimate a slope/range majorant for the
        // declared modulus
        double fmin = 1e300, fmax = -1e300, slope = 0.0;
        const int gridn = 1 << 13;
        double prev = (*f)(0.0);
        for (int i = 0; i <= gridn; ++i) {
            const double r = double(i) / gridn;
            const double v = (*f)(r);
            if (v < -1e-12 || v > 1.0 + 1e-12)
                reject(id, "f maps [0,1] into [0,1]");
            fmin = std::min(fmin, v);
            fmax = std::max(fmax, v);
            if (i > 0) slope = std::max(slope, std::abs(v - prev) * gridn);
            prev = v;
        }
        const double cap = fmax - fmin;
        const double c = slope * 1.1 + 1e-9;

        DomainSpec dom = DomainSpec::ball(1.0, Norm::sup, d);
        MapMetadata meta;
        meta.claimed_L = 1.0;
        meta.claimed_omega = Modulus::custom(
            "slope-majorant of " + f->name,
            [c, cap](double dlt) { return std::min(c * dlt, cap); });
        meta.fp_status = FpStatus::fixed_point_free_infinite;
        meta.fp_note =
            "shift equations force a constant vector, which must vanish, against the head "
            "equation; the truncated model admits a diagonal solution";
        meta.displacement_note = "displacement 0 when the profile slope vanishes at 0";
        meta.source = "norm-fed head insertion before the right shift on the sup ball";
        params.resolved = {{"dim", double(d)}, {"slope_majorant", c}};
        params.f_handle = f;
        auto fn = [d, f](const Point& p) -> Point {
            const Vec& x = std::get<Vec>(p);
            const double nrm = std::min(norm(x), 1.0);
            Vec y = zero_vec(d, Norm::sup);
            y.coords[0] = 1.0 - (*f)(nrm) * nrm;
            for (int i = 1; i < d; ++i) y.coords[i] = x.coords[i - 1];
            return Point{y};
        };
        return MapInstance(id, std::move(params), std::move(dom), std::move(meta), fn);
    }

    if (id == "identity") {
        return make_identity(DomainSpec::ball(1.0, params.norm_tag.value_or(Norm::l2), d));
    }
    if (id == "constant") {
        DomainSpec dom = DomainSpec::ball(1.0, params.norm_tag.value_or(Norm::l2), d);
        Point v = dom.base_point();
        return make_constant(std::move(dom), std::move(v));
    }

    throw std::invalid_argument("unknown map id: " + id);
}

MapInstance build_map_with_domain(const std::string& id, MapParams params, DomainSpec domain) {
    MapInstance base = build_map(id, std::move(params));
    return MapInstance(base.id(), base.params(), std::move(domain), base.metadata(),
                       [base](const Point& p) { return base.apply_unchecked(p); });
}

MapInstance make_identity(DomainSpec domain) {
    MapMetadata meta;
    meta.claimed_L = 1.0;
    meta.claimed_omega = Modulus::catalog("linear", {{"c", 0.0}});
    meta.fp_status = FpStatus::has_fixed_point;
    meta.fp_note = "every point is fixed";
    meta.source = "identity";
    return MapInstance("identity", MapParams{}, std::move(domain), std::move(meta),
                       [](const Point& p) { return p; });
}

MapInstance make_constant(DomainSpec domain, Point value) {
    if (!domain.contains(value))
        throw std::invalid_argument("make_constant: value must lie in the domain");
    MapMetadata meta;
    meta.claimed_L = 0.0;
    meta.claimed_omega = Modulus::catalog("linear", {{"c", 0.0}});
    meta.fp_status = FpStatus::has_fixed_point;
    meta.fp_note = "the constant value is fixed";
    meta.source = "constant";
    return MapInstance("constant", MapParams{}, std::move(domain), std::move(meta),
                       [value](const Point&) { return value; });
}

MapInstance krasnoselskii_average(const MapInstance& S, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("krasnoselskii_average: delta must lie in (0,1)");
    const double L0 = S.metadata().claimed_L;
    if (L0 > 1.0 && !(delta * (L0 - 1.0) < 1.0))
        throw std::invalid_argument(
            "krasnoselskii_average: delta (L0 - 1) must stay below 1 for the declared L0");
    MapMetadata meta = S.metadata();
    meta.claimed_L = 1.0 - delta + delta * L0;
    meta.claimed_omega = S.metadata().claimed_omega.scaled_values(delta);
    meta.source = "averaged: " + S.metadata().source;
    meta.displacement_note = "residuals scale by delta exactly";
    MapParams params = S.params();
    params.resolved["delta"] = delta;
    auto fn = [S, delta](const Point& p) { return lerp(p, S.apply_unchecked(p), delta); };
    return MapInstance("avg(" + S.id() + ")", std::move(params), S.domain(), std::move(meta), fn);
}

double krasnoselskii_delta_for(const MapInstance& S, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("krasnoselskii_delta_for: epsilon must lie in (0,1)");
    const double L0 = S.metadata().claimed_L;
    if (L0 <= 1.0) return 0.5;
    return 0.999 * std::min(1.0, epsilon / (L0 - 1.0));
}

MapInstance mu_scale(const MapInstance& T, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu_scale: mu must lie in (0,1)");
    const Point origin = scale_point(T.domain().base_point(), 0.0);
    if (!T.domain().contains(origin))
        throw std::invalid_argument("mu_scale: 0 not in domain and no shift provided");
    MapMetadata meta = T.metadata();
    meta.claimed_L = mu * T.metadata().claimed_L;
    meta.claimed_omega = T.metadata().claimed_omega.scaled_argument(mu);
    meta.source = "argument-scaled: " + T.metadata().source;
    meta.displacement_note =
        "d(T,K) <= d(F_mu,K) + (1-mu) L diam(K) + sup_{r<=diam K} omega((1-mu) r)";
    MapParams params = T.params();
    params.resolved["mu"] = mu;
    auto fn = [T, mu](const Point& p) { return T.apply_unchecked(scale_point(p, mu)); };
    return MapInstance("mu(" + T.id() + ")", std::move(params), T.domain(), std::move(meta), fn);
}

MapInstance shrink_scale(const MapInstance& P, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("shrink_scale: eta must lie in (0,1)");
    if (P.domain().point_class() != PointClass::vec)
        throw std::invalid_argument("shrink_scale: supported on coordinate-vector domains");
    const Point origin = Point{zero_vec(P.domain().dim(), P.domain().norm_tag())};
    if (!P.domain().contains(origin))
        throw std::invalid_argument("shrink_scale: domain must be star-shaped about 0");
    DomainSpec dom = DomainSpec::scaled(P.domain(), origin, eta);
    MapMetadata meta = P.metadata();
    const Modulus base = P.metadata().claimed_omega;
    meta.claimed_omega = base.scaled_argument(1.0 / eta).scaled_values(eta);
    meta.source = "shrunk: " + P.metadata().source;
    meta.displacement_note = "d(T, eta C) = eta d(P, C) on sampled estimates";
    MapParams params = P.params();
    params.resolved["shrink_eta"] = eta;
    auto fn = [P, eta](const Point& p) {
        return scale_point(P.apply_unchecked(scale_point(p, 1.0 / eta)), eta);
    };
    return MapInstance("shrink(" + P.id() + ")", std::move(params), std::move(dom), std::move(meta),
                       fn);
}

Certificate check_invariance(const MapInstance& map, int n, std::uint64_t seed) {
    Certificate cert;
    cert.samples = n;
    cert.seed = seed;
    double worst = 0.0;
    auto points = map.domain().sample((n + 1) / 2, seed, Strategy::uniform());
    auto boundary = map.domain().sample(n / 2, seed + 1, Strategy::boundary());
    points.insert(points.end(), boundary.begin(), boundary.end());
    for (const auto& x : points) {
        try {
            const Point y = map.apply(x);
            const double v = map.domain().violation(y);
            if (v > worst) {
                worst = v;
                cert.worst.x = x;
                cert.worst.y = y;
                cert.worst.lhs = v;
                cert.worst.rhs = 0.0;
            }
        } catch (const std::exception& e) {
            cert.pass = false;
            cert.margin = -std::numeric_limits<double>::infinity();
            cert.worst.x = x;
            cert.note = std::string("application failed: ") + e.what();
            return cert;
        }
    }
    cert.margin = -worst;
    cert.pass = worst <= tol::domain;
    cert.note = "invariance T(K) within K, worst violation " + std::to_string(worst);
    return cert;
}

FpfWitness fixed_point_free_witness(const MapInstance& map) {
    FpfWitness w;
    const std::string& id = map.id();
    if (id == "ex45") {
        const double theta = map.params().resolved.at("theta");
        w.applicable = true;
        w.limit_value = std::pow(10.0, -2.0 / theta);
        w.consistent = w.limit_value > 0.0;
        w.note =
            "recursion t' = (theta/2) t |log t| has positive limit t* = 10^(-2/theta); a positive "
            "coordinate floor is not summable, so no fixed point in the l1 simplex";
        return w;
    }
    if (id == "prop59") {
        const double sigma = map.params().resolved.at("sigma");
        const double eps = map.params().resolved.at("eps");
        w.applicable = true;
        w.limit_value = std::pow(10.0, -1.0 / sigma);
        w.consistent = w.limit_value > eps;
        w.note = "limit equation t = sigma t |log t| forces t* = 10^(-1/sigma); t* > eps keeps it "
                 "outside the ball (eps^sigma < 1/10)";
        return w;
    }
    if (id == "c0shift") {
        w.applicable = true;
        w.limit_value = 0.0;
        w.consistent = true;
        w.note = "shift equations force a constant sequence, which must vanish; the head equation "
                 "then reads 1 = 0";
        return w;
    }
    if (id == "ex46" && map.metadata().claimed_L >= 1.0) {
        w.applicable = true;
        w.limit_value = 0.0;
        w.consistent = true;
        w.note = "at L = 1 the recursion forces a constant sequence, which must vanish, against "
                 "x_1 = sqrt(1 - ||x||^2) = 1";
        return w;
    }
    w.note = "no recursion witness recorded for this map";
    return w;
}

}  // namespace lomega
