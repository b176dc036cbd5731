#include <doctest.h>

#include <cmath>

#include "lomega/rng.hpp"
#include "lomega/spaces.hpp"

using namespace lomega;

TEST_CASE("norms of tagged vectors") {
    Vec v{{0.2, 0.3}, Norm::l1};
    CHECK(norm(v) == doctest::Approx(0.5).epsilon(1e-15));
    v.norm_tag = Norm::l2;
    CHECK(norm(v) == doctest::Approx(std::sqrt(0.13)).epsilon(1e-15));
    v.norm_tag = Norm::sup;
    CHECK(norm(v) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("norm axioms on sampled instances") {
    Rng rng(11);
    for (Norm tag : {Norm::l1, Norm::l2, Norm::sup}) {
        for (int rep = 0; rep < 3000; ++rep) {
            Vec a = zero_vec(8, tag), b = zero_vec(8, tag);
            for (auto& c : a.coords) c = rng.uniform(-2, 2);
            for (auto& c : b.coords) c = rng.uniform(-2, 2);
            const double c = rng.uniform(-3, 3);
            CHECK(norm(a) >= 0.0);
            CHECK(norm(scale(a, c)) == doctest::Approx(std::abs(c) * norm(a)).epsilon(1e-12));
            CHECK(norm(add(a, b)) <= norm(a) + norm(b) + 1e-12);
        }
        CHECK(norm(zero_vec(8, tag)) == 0.0);
    }
}

TEST_CASE("triangle inequality on sampled triples") {
    Rng rng(12);
    for (int rep = 0; rep < 2000; ++rep) {
        const Norm tag = rep % 3 == 0 ? Norm::l1 : rep % 3 == 1 ? Norm::l2 : Norm::sup;
        Vec a = zero_vec(6, tag), b = zero_vec(6, tag), c = zero_vec(6, tag);
        for (auto& x : a.coords) x = rng.uniform(-1, 1);
        for (auto& x : b.coords) x = rng.uniform(-1, 1);
        for (auto& x : c.coords) x = rng.uniform(-1, 1);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("tail sequences: norm and banach limit") {
    TailSeq s{{0.9}, 0.1};
    CHECK(norm(s) == doctest::Approx(0.9));
    CHECK(banach_limit(s) == 0.1);

    // c0 vectors have banach limit 0, convergent sequences their limit
    CHECK(banach_limit(TailSeq{{5.0, -3.0}, 0.0}) == 0.0);
    CHECK(banach_limit(TailSeq{{7.0, 2.0, -1.0}, 0.25}) == 0.25);
}

TEST_CASE("banach limit is exactly linear, shift invariant, bounded") {
    Rng rng(13);
    for (int rep = 0; rep < 1000; ++rep) {
        TailSeq x{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(-1, 1)};
        TailSeq y{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(-1, 1)};
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        // oracle: direct tail arithmetic
        CHECK(banach_limit(combine(a, x, b, y)) == a * x.tail + b * y.tail);
        CHECK(banach_limit(right_shift(x)) == banach_limit(x));
        CHECK(std::abs(banach_limit(x)) <= norm(x));
        if (x.tail >= 0.0) {
            TailSeq pos = x;
            for (auto& c : pos.prefix) c = std::abs(c);
            CHECK(banach_limit(pos) >= 0.0);
        }
    }
}

TEST_CASE("positive retraction: norm preserved, idempotent, nonexpansive") {
    Vec v{{-0.3, 0.4}, Norm::l1};
    Vec r = positive_retraction(v);
    CHECK(r.coords[0] == 0.3);
    CHECK(r.coords[1] == 0.4);
    CHECK(norm(r) == doctest::Approx(0.7).epsilon(1e-15));

    Vec nonneg{{0.1, 0.2, 0.0}, Norm::sup};
    CHECK(dist(positive_retraction(nonneg), nonneg) == 0.0);

    Rng rng(14);
    for (int rep = 0; rep < 10000; ++rep) {
        const Norm tag = rep % 2 ? Norm::l1 : Norm::sup;
        Vec a = zero_vec(6, tag), b = zero_vec(6, tag);
        for (auto& x : a.coords) x = rng.uniform(-1, 1);
        for (auto& x : b.coords) x = rng.uniform(-1, 1);
        CHECK(norm(positive_retraction(a)) == doctest::Approx(norm(a)).epsilon(1e-15));
        CHECK(dist(positive_retraction(positive_retraction(a)), positive_retraction(a)) == 0.0);
        CHECK(dist(positive_retraction(a), positive_retraction(b)) <= dist(a, b) + 1e-12);
    }
}

TEST_CASE("step functions: exact arithmetic") {
    StepFn f(1, {Rational(1, 2), Rational(1, 4)});
    CHECK(f.l1_norm() == Rational(3, 8));

    // refinement changes nothing
    CHECK(f.refined(5).l1_norm() == Rational(3, 8));
    CHECK(l1_distance_exact(f, f.refined(7)) == Rational(0));

    SUBCASE("hand-computed distances") {
        CHECK(l1_distance_exact(f, f) == Rational(0));
        StepFn one = StepFn::constant(Rational(1));
        StepFn zero = StepFn::constant(Rational(0));
        CHECK(l1_distance_exact(one, zero) == Rational(1));
        // f = (1,0) at k=1 vs g == 1/2: two cells each contribute 1/2 * 1/2
        StepFn g = StepFn::constant(Rational(1, 2));
        StepFn h(1, {Rational(1), Rational(0)});
        CHECK(l1_distance_exact(h, g) == Rational(1, 2));
    }

    SUBCASE("no drift after 20 refinement rounds") {
        StepFn cur(2, {Rational(1, 3), Rational(2, 7), Rational(0), Rational(1)});
        const Rational nrm = cur.l1_norm();
        for (int k = 0; k < 20; ++k) {
            cur = cur.refined(cur.level() + 1);
            if (cur.level() > 22) break;
        }
        CHECK(cur.l1_norm() == nrm);
    }

    SUBCASE("refinement is associative with distances") {
        StepFn a(2, {Rational(1, 3), Rational(1, 5), Rational(1), Rational(0)});
        StepFn b(1, {Rational(1, 2), Rational(2, 3)});
        CHECK(l1_distance_exact(a, b) == l1_distance_exact(a.refined(6), b.refined(4)));
    }
}

TEST_CASE("rational guards") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK_THROWS_AS(StepFn(1, {Rational(3, 2), Rational(0)}), std::invalid_argument);
}

TEST_CASE("sample/contains soundness for every domain kind") {
    const std::vector<DomainSpec> domains = {
        DomainSpec::ball(1.0, Norm::l2, 8),
        DomainSpec::ball(0.5, Norm::l1, 8),
        DomainSpec::ball(2.0, Norm::sup, 8),
        DomainSpec::simplex(0.15, 8),
        DomainSpec::box(0.2, 8),
        DomainSpec::tail_ball(0.009, 6),
        DomainSpec::step_cube(4),
        DomainSpec::step_slice(Rational(1, 25), 4),
    };
    for (const auto& dom : domains) {
        for (auto strategy : {Strategy::uniform(), Strategy::boundary()}) {
            auto pts = dom.sample(200, 5, strategy);
            for (const auto& p : pts) CHECK(dom.contains(p));
        }
        // near sampling stays inside too
        auto center = dom.sample(1, 3, Strategy::uniform())[0];
        for (const auto& p : dom.sample(100, 9, Strategy::near(center, 1e-4)))
            CHECK(dom.contains(p));
    }
}

TEST_CASE("simplex samples: coords nonnegative, sums within eps") {
    auto pts = DomainSpec::simplex(0.15, 8).sample(500, 21, Strategy::uniform());
    for (const auto& p : pts) {
        const Vec& v = std::get<Vec>(p);
        double sum = 0.0;
        for (double c : v.coords) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(sum <= 0.15 + 1e-12);
    }
}

TEST_CASE("box boundary samples pin a coordinate") {
    auto pts = DomainSpec::box(0.2, 8).sample(200, 22, Strategy::boundary());
    for (const auto& p : pts) {
        const Vec& v = std::get<Vec>(p);
        bool pinned = false;
        for (double c : v.coords) pinned = pinned || c == 0.0 || c == 0.2;
        CHECK(pinned);
    }
}

TEST_CASE("near sampling on the l2 ball stays near") {
    auto dom = DomainSpec::ball(1.0, Norm::l2, 8);
    auto center = dom.sample(1, 2, Strategy::uniform())[0];
    for (const auto& p : dom.sample(200, 4, Strategy::near(center, 1e-4))) {
        CHECK(dist(p, center) <= 1e-4 + 1e-12);
        CHECK(dom.contains(p));
    }
}

TEST_CASE("slice sampling hits the norm exactly") {
    auto dom = DomainSpec::step_slice(Rational(1, 25), 6);
    for (const auto& p : dom.sample(50, 31, Strategy::uniform()))
        CHECK(std::get<StepFn>(p).l1_norm() == Rational(1, 25));
}

TEST_CASE("scaled domain wraps an inner domain") {
    auto inner = DomainSpec::ball(1.0, Norm::l2, 4);
    auto dom = DomainSpec::scaled(inner, Point{zero_vec(4, Norm::l2)}, 0.25);
    for (const auto& p : dom.sample(100, 8, Strategy::uniform())) {
        CHECK(dom.contains(p));
        CHECK(norm(std::get<Vec>(p)) <= 0.25 + 1e-12);
    }
    CHECK(dom.diameter() == doctest::Approx(0.5));
}
