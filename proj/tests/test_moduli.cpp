#include <doctest.h>

#include <cmath>

#include "lomega/modulus.hpp"
#include "lomega/rng.hpp"

using namespace lomega;

TEST_CASE("catalog evaluations") {
    // log of 1 vanishes, leaving the L part
    CHECK(Modulus::catalog("log", {{"L", 0.3}})(1.0) == doctest::Approx(0.3).epsilon(1e-15));
    // base-10 log of 0.1
    CHECK(Modulus::catalog("alog", {{"alpha", 1.0}})(0.1) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(Modulus::catalog("sqrt2")(0.5) == doctest::Approx(1.0).epsilon(1e-15));

    // independent high-precision evaluation of the radial majorant at 1:
    // (lambda / (2 sqrt 3)) * 1 + 0
    const long double oracle = 0.5L / (2.0L * std::sqrt(3.0L));
    CHECK(std::abs((double)oracle - 0.14433756729740643) < 1e-15);
    CHECK(Modulus::catalog("radial-majorant", {{"lambda", 0.5}})(1.0) ==
          doctest::Approx((double)oracle).epsilon(1e-14));

    CHECK(Modulus::catalog("ratio", {{"L", 0.3}})(1.0) == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(Modulus::catalog("linear", {{"c", 2.5}})(0.4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Modulus::catalog("zero-at-one", {{"c", 3.0}})(1.0) == 0.0);
}

TEST_CASE("catalog rejects bad ids and parameters") {
    CHECK_THROWS_AS(Modulus::catalog("nope"), std::invalid_argument);
    CHECK_THROWS_AS(Modulus::catalog("log", {{"L", -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Modulus::catalog("radial-majorant", {{"lambda", 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(Modulus::catalog("linear", {{"c", -0.1}}), std::invalid_argument);
}

TEST_CASE("every catalog modulus vanishes at 0 and stays nonnegative") {
    const std::vector<Modulus> moduli = {
        Modulus::catalog("log", {{"L", 0.3}}),
        Modulus::catalog("alog", {{"alpha", 1.0}}),
        Modulus::catalog("sqrt2"),
        Modulus::catalog("radial-majorant", {{"lambda", 0.4}}),
        Modulus::catalog("ratio", {{"L", 0.3}}),
        Modulus::catalog("linear", {{"c", 0.7}}),
        Modulus::catalog("zero-at-one", {{"c", 1.0}}),
        Modulus::tabulated({0.0, 0.5, 1.0}, {0.0, 0.25, 0.1}),
    };
    for (const auto& m : moduli) {
        CHECK(m(0.0) == 0.0);
        for (double d : GridSpec::geometric(1e-8, std::min(m.domain_end(), 2.0), 10000).materialize())
            CHECK(m(d) >= 0.0);
    }
}

TEST_CASE("tabulated modulus interpolates linearly") {
    auto m = Modulus::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(m(0.5) == doctest::Approx(0.5));
    CHECK(m(1.5) == doctest::Approx(0.5));
    CHECK(m.domain_end() == 2.0);
    CHECK_THROWS_AS(m(3.0), std::domain_error);
}

TEST_CASE("delta_omega: exact for homogeneous moduli") {
    // dyadic probe scales make the ratio evaluation exact
    for (double c : {0.1, 0.3, 0.7, 0.9, 1.0, 1.7}) {
        auto r = delta_omega_full(Modulus::catalog("linear", {{"c", c}}));
        CHECK(r.value == c);
        CHECK(!r.divergent);
        CHECK(r.stabilized);
    }
}

TEST_CASE("delta_omega: radial slope at 0 is 3 lambda / 2") {
    // omega(d) = (3 lambda / 2) d sqrt|1-d|, lambda = 0.4
    auto omega = Modulus::custom(
        "radial-omega", [](double d) { return 1.5 * 0.4 * d * std::sqrt(std::abs(1.0 - d)); });
    auto r = delta_omega_full(omega);
    CHECK(!r.divergent);
    CHECK(r.value == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("delta_omega: log modulus diverges") {
    auto r = delta_omega_full(Modulus::catalog("log", {{"L", 0.0}}));
    CHECK(r.divergent);
    CHECK(std::isinf(r.value));
    // recorded tail sequence is nonincreasing (limsup estimator contract)
    for (std::size_t i = 0; i + 1 < r.tail_sequence.size(); ++i)
        CHECK(r.tail_sequence[i] >= r.tail_sequence[i + 1]);
}

TEST_CASE("delta_omega: probe scale validation") {
    auto m = Modulus::catalog("linear", {{"c", 1.0}});
    CHECK_THROWS_AS(delta_omega_full(m, {0.5, 0.5, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(delta_omega_full(m, {0.5, -0.1, 0.01}), std::invalid_argument);
}

TEST_CASE("osgood heuristic on the reference integrands") {
    // omega(r) = r (0.5 + |log r|): reciprocal integral diverges like log log
    auto osgood_log = osgood_divergence(Modulus::catalog("log", {{"L", 0.5}}));
    CHECK(osgood_log.verdict == Verdict::holds);

    // omega(r) = sqrt r: integral of r^(-1/2) converges
    auto osgood_sqrt =
        osgood_divergence(Modulus::custom("sqrt", [](double r) { return std::sqrt(r); }));
    CHECK(osgood_sqrt.verdict == Verdict::fails);

    // omega(r) = r^2: closed form of the truncated integral is 1/eps - 1
    auto r2 = Modulus::custom("r^2", [](double r) { return r * r; });
    auto osgood_r2 = osgood_divergence(r2, {1e-1, 1e-2, 1e-3, 1e-4});
    CHECK(osgood_r2.verdict == Verdict::holds);
    for (std::size_t k = 0; k < osgood_r2.eps.size(); ++k) {
        const double closed_form = 1.0 / osgood_r2.eps[k] - 1.0;
        CHECK(osgood_r2.integral[k] == doctest::Approx(closed_form).epsilon(1e-6));
    }

    // vanishing inside (0,1] is rejected
    CHECK_THROWS_AS(osgood_divergence(Modulus::catalog("zero-at-one", {{"c", 1.0}})),
                    std::invalid_argument);
}

TEST_CASE("check_properties: sqrt2 satisfies the divergence condition") {
    auto rep = check_properties(Modulus::catalog("sqrt2"), 0.0);
    CHECK(rep.omega2.holds());
    CHECK(rep.subadditive.holds());  // concave nondecreasing with omega(0)=0
    CHECK(rep.concave.holds());
    CHECK(rep.nondecreasing_near_0.holds());
    CHECK(rep.omega4.fails());  // slope blows up at 0
}

TEST_CASE("check_properties: linear modulus at c = 1 - L") {
    const double L = 0.3;
    auto rep = check_properties(Modulus::catalog("linear", {{"c", 1.0 - L}}), L);
    CHECK(rep.omega4.holds());  // equality case
    CHECK(rep.omega2.fails());  // constant ratio
    CHECK(rep.omega3.holds());
    CHECK(rep.subadditive.holds());
}

TEST_CASE("check_properties: alog satisfies omega_1 to omega_3") {
    auto rep = check_properties(Modulus::catalog("alog", {{"alpha", 1.0}}), 0.0);
    CHECK(rep.omega1.holds());
    CHECK(rep.omega2.holds());
    CHECK(rep.omega3.holds());
    CHECK(rep.nondecreasing_near_0.holds());
    CHECK(rep.omega4.fails());
    CHECK(rep.osgood.holds());
}

TEST_CASE("check_properties: verdicts are grid-permutation insensitive") {
    auto m = Modulus::catalog("ratio", {{"L", 0.3}});
    std::vector<double> pts = GridSpec::geometric(1e-6, 1.0, 400).materialize();
    auto rep1 = check_properties(m, 0.3, GridSpec::explicit_points(pts));
    Rng rng(55);
    for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.index(i)]);
    auto rep2 = check_properties(m, 0.3, GridSpec::explicit_points(pts));
    CHECK(rep1.omega1.verdict == rep2.omega1.verdict);
    CHECK(rep1.omega2.verdict == rep2.omega2.verdict);
    CHECK(rep1.omega3.verdict == rep2.omega3.verdict);
    CHECK(rep1.omega4.verdict == rep2.omega4.verdict);
    CHECK(rep1.subadditive.verdict == rep2.subadditive.verdict);
    CHECK(rep1.concave.verdict == rep2.concave.verdict);
    CHECK(rep1.nondecreasing_near_0.verdict == rep2.nondecreasing_near_0.verdict);
}

TEST_CASE("check_properties: failing verdicts carry reproducing witnesses") {
    // a tabulated zig-zag that decreases right away near 0
    auto zig = Modulus::tabulated({0.0, 1e-6, 2e-6, 1.0}, {0.0, 1e-3, 1e-7, 1e-3});
    auto rep = check_properties(zig, 0.0, GridSpec::geometric(1e-8, 1.0, 2000));
    CHECK(rep.nondecreasing_near_0.fails());
    REQUIRE(rep.nondecreasing_near_0.witness_a.has_value());
    REQUIRE(rep.nondecreasing_near_0.witness_b.has_value());
    CHECK(zig(*rep.nondecreasing_near_0.witness_a) > zig(*rep.nondecreasing_near_0.witness_b));

    // superadditive example: omega(d) = d^2 scaled onto [0,2]
    auto sq = Modulus::custom("d^2", [](double d) { return d * d; });
    auto rep2 = check_properties(sq, 0.0, GridSpec::geometric(1e-4, 2.0, 500));
    CHECK(rep2.subadditive.fails());
    REQUIRE(rep2.subadditive.witness_a.has_value());
    const double a = *rep2.subadditive.witness_a, b = *rep2.subadditive.witness_b;
    CHECK(sq(a + b) > sq(a) + sq(b));
}

TEST_CASE("concave nondecreasing catalog moduli are reported subadditive") {
    for (const auto& m :
         {Modulus::catalog("sqrt2"), Modulus::catalog("ratio", {{"L", 0.2}}),
          Modulus::catalog("linear", {{"c", 1.0}})}) {
        auto rep = check_properties(m, 0.0);
        CHECK(rep.subadditive.holds());
    }
}

TEST_CASE("scaled modulus wrappers") {
    auto m = Modulus::catalog("linear", {{"c", 1.0}});
    CHECK(m.scaled_values(0.5)(0.4) == doctest::Approx(0.2));
    CHECK(m.scaled_argument(0.5)(0.4) == doctest::Approx(0.2));
}
