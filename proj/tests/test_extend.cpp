#include <doctest.h>

#include <cmath>

#include "lomega/extend.hpp"

using namespace lomega;

TEST_CASE("mcshane on two nodes with the linear majorant is the segment") {
    auto rep = mcshane_extend({0.0, 1.0}, {0.0, 1.0}, Modulus::catalog("linear", {{"c", 1.0}}),
                              1.0);
    // inf(x, 1 + (1-x)) = x
    for (double x = 0.0; x <= 1.0; x += 1.0 / 64)
        CHECK(rep.f(x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(rep.f.value_bound() == 1.0);
}

TEST_CASE("mcshane rejects data that violates the majorant, with a witness") {
    CHECK_THROWS_WITH_AS(
        mcshane_extend({0.0, 1.0}, {0.0, 2.0}, Modulus::catalog("linear", {{"c", 1.0}}), 1.0),
        doctest::Contains("violates its modulus"), std::invalid_argument);
}

TEST_CASE("mcshane rejects a non-subadditive majorant") {
    auto sq = Modulus::custom("d^2 scaled", [](double d) { return 4.0 * d * d; });
    Fn1D f0{"flat", 0.0, 0.5, [](double) { return 0.0; }};
    CHECK_THROWS_WITH_AS(mcshane_extend(f0, sq, 1.0, 65), doctest::Contains("not subadditive"),
                         std::invalid_argument);
}

TEST_CASE("mcshane of the radial profile: exact on D, dominated, range-bounded") {
    const double lam = 0.4;
    Fn1D phi{"phi", 0.0, 2.0 / 3.0,
             [lam](double r) { return lam * r * std::sqrt(std::max(1.0 - r, 0.0)); }};
    auto wt = Modulus::catalog("radial-majorant", {{"lambda", lam}});
    auto rep = mcshane_extend(phi, wt, 1.0, 1025);

    // exact agreement on the stored nodes
    for (double node : {0.0, 2.0 / 3.0, 1.0 / 3.0}) {
        // nearest stored node
        const auto& nodes = rep.f.nodes();
        auto it = std::min_element(nodes.begin(), nodes.end(), [&](double a, double b) {
            return std::abs(a - node) < std::abs(b - node);
        });
        CHECK(rep.f(*it) == doctest::Approx(phi(*it)).epsilon(1e-12));
    }
    // range stays inside [0, max phi]
    const double M = phi(2.0 / 3.0);
    CHECK(rep.f.value_bound() == doctest::Approx(M));
    for (double x = 0.0; x <= 1.0; x += 1.0 / 256) {
        CHECK(rep.f(x) >= 0.0);
        CHECK(rep.f(x) <= M + 1e-12);
    }
    // sampled minimal modulus dominated by the majorant
    auto cert = verify_domination(rep.f.as_fn("radial extension"), wt, 40000, 5);
    CHECK(cert.pass);
}

TEST_CASE("mcshane route for a subadditive nondecreasing generator") {
    // f0 = omega on [0, eta]; the capped majorant extends it with the same
    // modulus
    const double eta = 0.25;
    auto omega = Modulus::catalog("sqrt2");
    auto wt = Modulus::custom("capped sqrt2", [omega, eta](double t) {
        return omega(std::min(t, eta));
    });
    Fn1D f0 = fn1d_of(omega, 0.0, eta);
    auto rep = mcshane_extend(f0, wt, 1.0, 1025);
    auto cert = verify_domination(rep.f.as_fn("sqrt extension"), wt, 40000, 6);
    CHECK(cert.pass);
    // the divergence condition transfers to the extension on probe scales
    double prev_ratio = 0.0;
    for (double d : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double ratio = rep.f(d) / d;
        CHECK(ratio >= prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio > 100.0);
}

TEST_CASE("breneis with a linear generator collapses in one interval") {
    // omega(d) = d has exact slope 1 at 0; the membership test accepts
    // everything and x_1 = 0
    auto [f, st] = breneis_construct(Modulus::catalog("linear", {{"c", 1.0}}), 0.25, 200);
    CHECK(st.M == 1.0);
    REQUIRE(st.x_seq.size() == 2);
    CHECK(st.x_seq[0] == 1.0);
    CHECK(st.x_seq[1] == 0.0);
    CHECK(st.reached_zero);
    // midpoint of the default majorant (0.75 min(h,1)) is at 1/2
    CHECK(st.y_seq[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(f(0.5) == doctest::Approx(0.375).epsilon(1e-9));
    CHECK(f(0.0) == 0.0);
    CHECK(f(1.0) == doctest::Approx(0.0).epsilon(1e-9));
    for (double z = 0.0; z <= 1.0; z += 1.0 / 128) CHECK(f(z) <= st.M + 1e-12);
}

namespace {

// plateau generator: slope M up to h0, constant afterwards; drives a genuine
// multi-interval cascade (members need y_x - x <= M h0 / (M - eps))
Modulus plateau_omega(double h0) {
    return Modulus::custom("plateau", [h0](double h) { return std::min(h, h0); },
                           Modulus::kUnbounded);
}

}  // namespace

TEST_CASE("breneis cascade on the plateau generator") {
    const double h0 = 0.01, eps = 0.25;
    auto [f, st] = breneis_construct(plateau_omega(h0), eps, 200, 1e-10);
    CHECK(st.M == doctest::Approx(1.0));
    CHECK(st.x_seq.size() > 10);

    SUBCASE("state invariants at every depth") {
        for (std::size_t n = 0; n + 1 < st.x_seq.size(); ++n) {
            CHECK(st.x_seq[n + 1] < st.x_seq[n]);  // strictly decreasing
            // y solves the omega-tilde midpoint equation
            const double lhs = 0.75 * std::min(st.y_seq[n], 1.0);
            const double rhs =
                0.5 * (0.75 * std::min(st.x_seq[n + 1], 1.0) + 0.75 * std::min(st.x_seq[n], 1.0));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            CHECK(st.y_seq[n] >= st.x_seq[n + 1] - 1e-12);
            CHECK(st.y_seq[n] <= st.x_seq[n] + 1e-12);
            // f vanishes at the breakpoints, peaks at the midpoints
            CHECK(f(st.x_seq[n]) == doctest::Approx(0.0).epsilon(1e-9));
            const double peak = 0.5 * 0.75 * (std::min(st.x_seq[n], 1.0) - std::min(st.x_seq[n + 1], 1.0));
            CHECK(f(st.y_seq[n]) == doctest::Approx(peak).epsilon(1e-8));
        }
    }

    SUBCASE("cascade reaches the stopping band within the budget") {
        CHECK(st.x_seq.back() < 1e-3);
    }

    SUBCASE("range bound and domination") {
        for (double z = 0.0; z <= 1.0; z += 1.0 / 512) {
            CHECK(f(z) >= 0.0);
            CHECK(f(z) <= st.M + 1e-12);
        }
        auto cert = verify_domination(f.as_fn("breneis plateau"), plateau_omega(h0), 40000, 8);
        CHECK(cert.pass);
    }

    SUBCASE("oracle: interval shrink matches the plateau geometry") {
        // membership boundary solves (x_n - x)/2 = M h0 / (M - eps), so the
        // steps are close to 2 h0 / 0.75 once x_n is away from 0
        const double step = 2.0 * h0 / 0.75;
        for (std::size_t n = 1; n + 1 < st.x_seq.size(); ++n) {
            if (st.x_seq[n + 1] == 0.0) break;
            CHECK(st.x_seq[n] - st.x_seq[n + 1] == doctest::Approx(step).epsilon(0.05));
        }
    }
}

TEST_CASE("breneis refinement stability in the bisection tolerance") {
    const double tol_a = 1e-8;
    auto [fa, sa] = breneis_construct(plateau_omega(0.01), 0.25, 40, tol_a);
    auto [fb, sb] = breneis_construct(plateau_omega(0.01), 0.25, 40, tol_a / 2);
    const std::size_t n = std::min(sa.x_seq.size(), sb.x_seq.size());
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(sa.x_seq[i] - sb.x_seq[i]) < 10.0 * tol_a + 10 * i * tol_a);
}

TEST_CASE("breneis input validation") {
    // divergent slope at zero is rejected
    CHECK_THROWS_AS(breneis_construct(Modulus::catalog("sqrt2"), 0.25, 10), std::invalid_argument);
    // epsilon outside (0, M)
    CHECK_THROWS_AS(breneis_construct(Modulus::catalog("linear", {{"c", 1.0}}), 1.5, 10),
                    std::invalid_argument);
    // omega living on [0,1] only cannot support the construction
    auto short_omega = Modulus::custom("short", [](double d) { return d; }, 1.0);
    CHECK_THROWS_AS(breneis_construct(short_omega, 0.25, 10), std::invalid_argument);
}

TEST_CASE("verify_domination catches a scaled-up violation with a witness") {
    auto omega = Modulus::catalog("sqrt2");
    Fn1D doubled{"2 omega", 0.0, 1.0, [omega](double d) { return 2.0 * omega(d); }};
    auto cert = verify_domination(doubled, omega, 20000, 9);
    CHECK(!cert.pass);
    REQUIRE(cert.worst.r.has_value());
    CHECK(cert.worst.lhs > cert.worst.rhs + tol::cert);
}

TEST_CASE("log-profile function is dominated by the matching log modulus") {
    constexpr double kLn10 = 2.302585092994045684;
    Fn1D f{"r|log r|", 0.0, 1.0,
           [](double r) { return r == 0.0 ? 0.0 : r * std::abs(std::log10(r)); }};
    auto omega = Modulus::catalog("log", {{"L", 2.0 / kLn10}});
    auto cert = verify_domination(f, omega, 40000, 10);
    CHECK(cert.pass);
}

TEST_CASE("piecewise function serialization survives evaluation round trips") {
    auto [f, st] = breneis_construct(plateau_omega(0.01), 0.25, 20, 1e-9);
    auto fn = f.as_fn();
    for (double z : {0.0, 0.1, 0.33, 0.5, 0.99, 1.0}) CHECK(fn(z) == f(z));
    CHECK(f.breakpoints().size() >= st.x_seq.size());
}
