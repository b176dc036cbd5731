#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lomega/minmod.hpp"
#include "lomega/modulus.hpp"
#include "lomega/types.hpp"

namespace lomega {

// Constructed nonnegative function on [0, hi] with a hard range bound M.
// Three representations: the inf-form extension over stored nodes, the
// two-sided omega-tilde segments of the inductive construction, and a plain
// interpolation table.
class PiecewiseFunction {
public:
    enum class Repr { inf_extension, omega_segments, interp };

    PiecewiseFunction() = default;

    static PiecewiseFunction inf_extension(std::vector<double> nodes, std::vector<double> values,
                                           Modulus omega_tilde, double hi, double value_bound);
    // segments between consecutive breakpoints of the inductive construction:
    // rising  f(z) = wt(z) - wt(x_{n+1}) on [x_{n+1}, y_{n+1}],
    // falling f(z) = wt(x_n) - wt(z)     on [y_{n+1}, x_n];
    // f == 0 below the last reached breakpoint.
    static PiecewiseFunction omega_segments(std::vector<double> x_seq, std::vector<double> y_seq,
                                            Modulus omega_tilde, double value_bound);
    static PiecewiseFunction interp(std::vector<double> xs, std::vector<double> ys);

    double operator()(double z) const;
    double hi() const { return hi_; }
    double value_bound() const { return bound_; }
    Repr repr() const { return repr_; }
    std::vector<double> breakpoints() const;
    Fn1D as_fn(std::string name = "piecewise") const;

    // accessors used by serialization
    const std::vector<double>& nodes() const { return xs_; }
    const std::vector<double>& node_values() const { return ys_; }
    const std::vector<double>& x_seq() const { return xs_; }
    const std::vector<double>& y_seq() const { return ys_; }
    const Modulus& omega_tilde() const { return omega_tilde_; }

private:
    Repr repr_ = Repr::interp;
    std::vector<double> xs_, ys_;  // nodes/values, or x_seq/y_seq for segments
    Modulus omega_tilde_;
    double hi_ = 1.0;
    double bound_ = 1.0;
};

// McShane inf-extension f(x) = min(M, inf_y (f0(y) + wt(|x - y|))) of f0 given
// on sample nodes; exact on the nodes whenever f0 admits wt there. The upper
// truncation at M = max f0 keeps the range bound without changing the
// modulus domination.
struct McShaneReport {
    PiecewiseFunction f;
    Flag monotone_check;     // failure downgraded to a warning
    Flag subadditive_check;  // failure rejects the construction
    std::string warnings;
};

McShaneReport mcshane_extend(const std::vector<double>& d_nodes,
                             const std::vector<double>& f0_values, const Modulus& omega_tilde,
                             double target_hi);
// interval domain [f0.lo, f0.hi] discretized with `nodes` sample points
McShaneReport mcshane_extend(const Fn1D& f0, const Modulus& omega_tilde, double target_hi,
                             int nodes = 2049);

// State of the inductive interval construction: x_0 = 1, x_seq strictly
// decreasing, y_{n+1} the omega-tilde midpoint between x_{n+1} and x_n.
struct BreneisState {
    std::vector<double> x_seq;
    std::vector<double> y_seq;  // y_seq[n] matches the interval [x_seq[n+1], x_seq[n]]
    int depth = 0;
    double epsilon = 0.0;
    double delta0 = 0.0;  // scale below which (M-eps) d <= omega(d) <= (M+eps) d holds
    double M = 0.0;
    bool reached_zero = false;
    double root_tol = 0.0;
};

std::pair<PiecewiseFunction, BreneisState> breneis_construct(const Modulus& omega,
                                                             const Modulus& omega_tilde,
                                                             double epsilon, int depth,
                                                             double root_tol = 1e-10);
// uses the default majorant wt(h) = (M - eps) * min(h, 1)
std::pair<PiecewiseFunction, BreneisState> breneis_construct(const Modulus& omega, double epsilon,
                                                             int depth, double root_tol = 1e-10);

// Empirical domination check: pass iff the sampled minimal modulus of f stays
// below omega on the grid.
Certificate verify_domination(const Fn1D& f, const Modulus& omega, long long pairs,
                              std::uint64_t seed);

}  // namespace lomega
