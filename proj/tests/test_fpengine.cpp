#include <doctest.h>

#include <cmath>

#include "lomega/fpengine.hpp"

using namespace lomega;

namespace {

MapParams with_dim(int d) {
    MapParams p;
    p.dim = d;
    return p;
}

}  // namespace

TEST_CASE("identity: residual 0 at the start, immediately converged") {
    auto id = make_identity(DomainSpec::ball(1.0, Norm::l2, 4));
    Point x0{basis_vec(4, 0, Norm::l2, 0.5)};
    auto rep = iterate_displacement(id, x0, IterScheme::picard, 0.0, 100, 1e-12);
    CHECK(rep.converged);
    CHECK(rep.best_residual == 0.0);
    CHECK(rep.iterations == 1);
}

TEST_CASE("summable log map contracts to the origin") {
    // oracle: each coordinate obeys t' = 2^-n t |log t| and 2^-1 t |log t| < t/2
    // for t < 10; direct 1-D iteration reaches 1e-12 quickly
    double t = 0.9;
    for (int i = 0; i < 60; ++i) t = 0.5 * t * std::abs(std::log10(t));
    CHECK(t < 1e-12);

    auto map = build_map("ex44", with_dim(32));
    auto start = map.domain().sample(1, 5, Strategy::uniform())[0];
    auto rep = iterate_displacement(map, start, IterScheme::picard, 0.0, 2000, 1e-11);
    CHECK(rep.best_residual < 1e-10);
    CHECK(dist(rep.best_point, Point{zero_vec(32, Norm::l1)}) < 1e-8);
}

TEST_CASE("sphere-lift map at L=0.5 finds the geometric fixed point") {
    auto map = build_map("ex46", [] {
        MapParams p;
        p.L = 0.5;
        p.dim = 64;
        return p;
    }());
    auto start = map.domain().sample(1, 9, Strategy::uniform())[0];
    auto rep = iterate_displacement(map, start, IterScheme::picard, 0.0, 20000, 1e-12);
    CHECK(rep.best_residual < 1e-10);
    const Vec& x = std::get<Vec>(rep.best_point);
    // oracle: x_1 = sqrt((1-L^2)/(2-L^2)) = sqrt(3/7), truncation-adjusted
    CHECK(x.coords[0] == doctest::Approx(std::sqrt(3.0 / 7.0)).epsilon(1e-8));
}

TEST_CASE("reported residuals re-evaluate under apply") {
    for (const auto& id : {"ex44", "radial", "thm51"}) {
        CAPTURE(id);
        auto map = build_map(id, with_dim(16));
        auto rep = displacement_search(map, 4, 11, 4000);
        const double re = dist(map.apply(rep.best_point), rep.best_point);
        CHECK(re == doctest::Approx(rep.best_residual).epsilon(1e-12));
    }
}

TEST_CASE("doubling map: displacement 0 at the zero function") {
    MapParams p;
    p.full_set = true;
    p.level = 3;
    auto map = build_map("alspach", p);
    // oracle: exact evaluation, T(0) = 0
    const Point zero{StepFn::constant(Rational(0), 3)};
    CHECK(dist(map.apply(zero), zero) == 0.0);
    auto rep = displacement_search(map, 4, 13, 400);
    CHECK(rep.best_residual == 0.0);
}

TEST_CASE("damped replenishment map: residual beta_k along basis starts") {
    auto map = build_map("thm51", with_dim(32));
    auto rep = displacement_search(map, 4, 15, 2000);
    const auto& beta = map.params().beta;
    // the k-th basis start has initial residual exactly beta_k
    std::size_t matched = 0;
    for (std::size_t k = 0; k < rep.starts.size(); ++k) {
        const auto* v = std::get_if<Vec>(&rep.starts[k].start);
        if (!v) continue;
        int idx = -1, nonzero = 0;
        for (int i = 0; i < 32; ++i)
            if (v->coords[i] != 0.0) {
                ++nonzero;
                idx = i;
            }
        if (nonzero == 1 && v->coords[idx] == 1.0) {
            CHECK(rep.starts[k].initial_residual ==
                  doctest::Approx(beta[idx]).epsilon(1e-12));
            ++matched;
        }
    }
    CHECK(matched >= 8);
}

TEST_CASE("banach-limit head map: search floor stays positive at desk scale") {
    auto map = build_map("prop59", with_dim(16));
    auto rep = displacement_search(map, 6, 17, 3000);
    CHECK(rep.best_residual > 1e-4);
    auto w = fixed_point_free_witness(map);
    CHECK(w.consistent);
}

TEST_CASE("box map: solved t_i hit their brackets and residuals obey the closed form") {
    auto map = build_map("thm510", with_dim(32));
    auto seq = afp_thm510(map, 12);
    const auto& params = map.params();
    const double eta = *params.eta;
    for (std::size_t i = 0; i < seq.aux.size(); ++i) {
        const double t = seq.aux[i];
        CHECK(t >= params.beta[i] * eta - 1e-12);
        CHECK(t <= eta + 1e-12);
        const double g = (1.0 - params.beta[i]) * (*params.f_handle)(*params.eps * t) +
                         params.beta[i] * eta;
        CHECK(g == doctest::Approx(t).epsilon(1e-9));
    }
    for (std::size_t n = 0; n < seq.residuals.size(); ++n) {
        CHECK(seq.residuals[n] == seq.closed_form[n]);  // exact float equality
        if (n > 0) CHECK(seq.residuals[n] < seq.residuals[n - 1]);
    }
}

TEST_CASE("mu schedule on the radial map: transfer bound decreases toward 0") {
    auto map = build_map("radial", with_dim(16));
    // premise: Delta_omega = 3 lambda / 2 = 0.6 <= 1 - L = 1 - 7 sqrt3 0.4/18
    const double L = map.metadata().claimed_L;
    CHECK(0.6 <= 1.0 - L + 1e-12);
    std::vector<double> mu = {0.5, 0.75, 0.875, 0.9375, 0.96875, 0.984375};
    auto seq = afp_mu_schedule(map, mu, 3000, 19);
    REQUIRE(seq.bound.size() == mu.size());
    CHECK(seq.bound.back() < seq.bound.front());
    CHECK(seq.bound.back() < 0.2);
    for (double r : seq.residuals) CHECK(r < 1e-6);
}

TEST_CASE("mu schedule: slope premise enforced, diagnostic override available") {
    auto map = build_map("c0shift", with_dim(16));
    std::vector<double> mu = {0.5, 0.75, 0.875};
    // declared slope majorant of sin(r^2) exceeds 1 - L = 0, so the premise
    // fails; the diagnostic mode still runs the searches
    CHECK_THROWS_AS(afp_mu_schedule(map, mu, 2000, 23), std::invalid_argument);
    auto seq = afp_mu_schedule(map, mu, 2000, 23, false);
    REQUIRE(seq.residuals.size() == mu.size());
    for (double r : seq.residuals) CHECK(r < 1e-6);
}

TEST_CASE("constancy: the constant map passes end to end") {
    auto dom = DomainSpec::ball(1.0, Norm::l2, 8);
    auto cmap = make_constant(dom, Point{basis_vec(8, 1, Norm::l2, 0.25)});
    auto omega = Modulus::catalog("zero-at-one", {{"c", 1.0}});
    auto cert = constancy_certify(cmap, omega, 2000, 29);
    CHECK(cert.pass);
}

TEST_CASE("constancy: identity fails the premise, certificate not issued") {
    auto id = make_identity(DomainSpec::ball(1.0, Norm::l2, 8));
    auto omega = Modulus::catalog("zero-at-one", {{"c", 1.0}});
    auto cert = constancy_certify(id, omega, 2000, 31);
    CHECK(!cert.pass);
    CHECK(cert.note.find("premise") != std::string::npos);
}

TEST_CASE("constancy: positive-part routing through the retraction") {
    auto dom = DomainSpec::positive_ball(Norm::l1, 8);
    auto cmap = make_constant(dom, Point{basis_vec(8, 0, Norm::l1, 0.1)});
    auto cert = constancy_certify(cmap, Modulus::catalog("zero-at-one", {{"c", 1.0}}), 2000, 37);
    CHECK(cert.pass);
}

TEST_CASE("constancy rejects an omega that does not vanish at 1") {
    auto id = make_identity(DomainSpec::ball(1.0, Norm::l2, 8));
    CHECK_THROWS_AS(constancy_certify(id, Modulus::catalog("sqrt2"), 100, 1),
                    std::invalid_argument);
}

TEST_CASE("diametral profile") {
    SUBCASE("two points are both diametral") {
        std::vector<Point> pts = {Point{basis_vec(4, 0, Norm::l2, 1.0)},
                                  Point{basis_vec(4, 1, Norm::l2, 1.0)}};
        auto prof = diametral_profile(pts);
        CHECK(prof.diameter == doctest::Approx(std::sqrt(2.0)));
        CHECK(prof.diametral[0]);
        CHECK(prof.diametral[1]);
    }
    SUBCASE("equilateral triangle plus centroid: centroid is not diametral") {
        auto mk = [](double a, double b) {
            Vec v = zero_vec(4, Norm::l2);
            v.coords[0] = a;
            v.coords[1] = b;
            return Point{v};
        };
        const double h = std::sqrt(3.0) / 2.0;
        std::vector<Point> pts = {mk(0, 0), mk(1, 0), mk(0.5, h), mk(0.5, h / 3.0)};
        auto prof = diametral_profile(pts);
        CHECK(prof.diameter == doctest::Approx(1.0));
        // oracle: centroid sits at distance 1/sqrt(3) < 1 from each vertex
        CHECK(prof.radii[3] == doctest::Approx(1.0 / std::sqrt(3.0)));
        CHECK(prof.diametral[0]);
        CHECK(prof.diametral[1]);
        CHECK(prof.diametral[2]);
        CHECK(!prof.diametral[3]);
    }
    SUBCASE("coincident points have zero diameter") {
        std::vector<Point> pts(3, Point{zero_vec(4, Norm::l2)});
        auto prof = diametral_profile(pts);
        CHECK(prof.diameter == 0.0);
    }
}

TEST_CASE("escaped iterations are reported with the last valid state") {
    // the doubling map raises the resolution cap after enough applications
    MapParams p;
    p.full_set = true;
    p.level = 20;
    auto map = build_map("alspach", p);
    auto start = map.domain().sample(1, 41, Strategy::uniform())[0];
    auto rep = iterate_displacement(map, start, IterScheme::picard, 0.0, 100, 0.0);
    CHECK(rep.escaped);
    CHECK(rep.iterations < 100);
    CHECK(std::isfinite(rep.best_residual));
}
