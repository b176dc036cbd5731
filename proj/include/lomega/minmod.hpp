#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lomega/modulus.hpp"
#include "lomega/spaces.hpp"
#include "lomega/types.hpp"

namespace lomega {

class MapInstance;

// one evaluated pair: d = rho(x, y), v = rho(Tx, Ty)
struct PairSample {
    double d = 0.0;
    double v = 0.0;
};

// Sampled lower bound of the minimal modulus of continuity: for every grid
// delta, the max of rho(Tx,Ty) over sampled pairs with rho(x,y) <= delta.
// sup_values is nondecreasing by construction (sup over a growing set).
struct EmpiricalModulus {
    std::vector<double> delta_grid;
    std::vector<double> sup_values;
    long long pair_count = 0;
    std::string source;

    // convert to an evaluable modulus (linear interpolation)
    Modulus as_modulus() const;
};

EmpiricalModulus empirical_from_samples(std::vector<PairSample> samples, const GridSpec& grid,
                                        std::string source);

std::vector<PairSample> sample_fn_pairs(const Fn1D& f, long long pairs, std::uint64_t seed);
std::vector<PairSample> sample_map_pairs(const MapInstance& map, long long pairs,
                                         std::uint64_t seed);

EmpiricalModulus empirical_min_modulus(const Fn1D& f, const GridSpec& grid, long long pairs,
                                       std::uint64_t seed);
EmpiricalModulus empirical_min_modulus(const MapInstance& map, const GridSpec& grid,
                                       long long pairs, std::uint64_t seed);

Fn1D fn1d_of(const Modulus& m, double lo, double hi);

// Tightest (or violating) instance behind a certificate verdict.
struct WorstPair {
    std::optional<Point> x, y;   // map-level certificates
    std::optional<double> r, s;  // 1-D / moduli-level certificates
    double dist = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct Certificate {
    bool pass = true;
    double margin = 0.0;  // min over samples of rhs - lhs
    WorstPair worst;
    long long samples = 0;
    std::uint64_t seed = 0;
    double tolerance = tol::cert;
    long long skipped = 0;  // pairs beyond the modulus' domain end
    std::string note;
};

// Checks rho(Tx,Ty) <= L rho(x,y) + omega(rho(x,y)) + tol over sampled pairs.
Certificate certify_L_omega(const MapInstance& map, double L, const Modulus& omega,
                            long long pairs, std::uint64_t seed, double tolerance = tol::cert);
Certificate certify_fn_L_omega(const Fn1D& f, double L, const Modulus& omega, long long pairs,
                               std::uint64_t seed, double tolerance = tol::cert);

// Moduli-level inequality L*delta + omega(delta) <= delta on grid points
// <= 1. A pass certifies that any map with the (L, omega) certificate is
// 1-Lipschitz on pairs with distance <= 1 (chaining extends this to all
// pairs on convex domains). On failure the worst pair records the smallest
// violating delta.
Certificate nonexpansive_upgrade_check(double L, const Modulus& omega, const GridSpec& grid);

// Estimate of the lower derivative of the map at x toward y: per probe scale
// eps, the infimum of rho(Tz,Tx)/rho(z,x) over segment points z with
// rho(z,x) < eps. value is the min over recorded scale-infima; the running
// minima are recorded, nonincreasing, as a liminf estimator contract.
struct DerivativeEstimate {
    double value = 0.0;  // +inf sentinel when no valid probe exists
    std::vector<double> scales;
    std::vector<double> infima;        // per-scale infimum
    std::vector<double> running_min;   // nonincreasing
    std::vector<double> segment_points;  // parameters t of probes z = x + t(y-x)
    bool diverging = false;  // scale-infima increase monotonically without settling
};

DerivativeEstimate lower_derivative(const MapInstance& map, const Point& x, const Point& y,
                                    const std::vector<double>& scales);
std::vector<double> default_derivative_scales();

}  // namespace lomega
