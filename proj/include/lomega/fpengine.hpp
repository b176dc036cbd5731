#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lomega/maps.hpp"
#include "lomega/minmod.hpp"
#include "lomega/spaces.hpp"

namespace lomega {

enum class IterScheme { picard, krasnoselskii };
std::string to_string(IterScheme s);

struct StartRecord {
    Point start;
    double initial_residual = 0.0;
    double best_residual = 0.0;
};

// Displacement estimates are always upper bounds for d(T, K) plus search
// metadata, never a claim about the true infimum.
struct DisplacementReport {
    Point best_point;
    double best_residual = 0.0;
    long long iterations = 0;
    std::string scheme;
    bool converged = false;
    bool escaped = false;
    std::vector<std::pair<long long, double>> history;  // (iter, residual)
    std::vector<StartRecord> starts;
    std::string note;
};

DisplacementReport iterate_displacement(const MapInstance& map, const Point& x0, IterScheme scheme,
                                        double lambda, long long max_iter, double tolerance);

// Multistart iteration plus a local shrinking-neighborhood refinement. Starts
// include uniform and boundary samples and, on coordinate-vector domains,
// scaled basis vectors.
DisplacementReport displacement_search(const MapInstance& map, int multistart, std::uint64_t seed,
                                       long long budget, bool include_basis_starts = true);

struct AFPSequence {
    std::vector<Point> points;
    std::vector<double> residuals;
    std::string construction;
    std::vector<double> aux;    // solved t_i, or the mu schedule
    std::vector<double> bound;  // displacement transfer bound per mu (mu schedule only)
    std::vector<double> closed_form;  // reference residuals where a closed form exists
    std::string note;
};

// Solves g_i(t) = (1-beta_i) f(eps t) + beta_i eta = t on [beta_i eta, eta]
// by bisection and assembles the approximate fixed points y_n.
AFPSequence afp_thm510(const MapInstance& map, int n_max, double bisect_tol = 1e-12);

// Displacement runs on the argument-scaled maps F_mu along an increasing
// mu schedule, with the transfer bound
//   d(T,K) <= residual(F_mu) + (1-mu) L diam K + sup_{r <= diam K} omega((1-mu) r)
// evaluated on a grid. The omega_4-type premise on the declared pair is
// checked; set require_slope_condition = false to run diagnostically anyway.
AFPSequence afp_mu_schedule(const MapInstance& map, const std::vector<double>& mu_schedule,
                            long long inner_budget, std::uint64_t seed,
                            bool require_slope_condition = true);
std::vector<double> default_mu_schedule();

// Premise: the map certifies as 0-omega-nonexpansive for an omega with
// omega(1) = 0 on a ball (dim >= 2) or the positive part of one. Then all
// sampled images must coincide with T(0). A failed premise is returned as a
// non-issued certificate (pass = false) with the premise noted.
Certificate constancy_certify(const MapInstance& map, const Modulus& omega, int samples,
                              std::uint64_t seed);

struct DiametralProfile {
    double diameter = 0.0;
    std::vector<double> radii;        // r(y) = max_x ||x - y||
    std::vector<bool> diametral;      // r(y) == diameter (within tolerance)
};

DiametralProfile diametral_profile(const std::vector<Point>& points);

}  // namespace lomega
