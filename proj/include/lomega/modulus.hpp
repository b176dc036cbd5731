#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lomega/types.hpp"

namespace lomega {

// Base-10 logarithm is used throughout the catalog.
inline double log10_abs(double x) { return std::abs(std::log10(x)); }

// Evaluable modulus of continuity on [0, domain_end]. eval(0) == 0 exactly
// and eval >= 0 on the domain; catalog entries validate their parameters.
class Modulus {
public:
    Modulus() = default;

    // Catalog ids: log, alog, sqrt2, radial-majorant, ratio, linear,
    // tabulated, zero-at-one.
    static Modulus catalog(const std::string& id, const std::map<std::string, double>& params = {});
    static Modulus tabulated(std::vector<double> xs, std::vector<double> ys);
    static Modulus custom(std::string name, std::function<double(double)> eval,
                          double domain_end = kUnbounded);

    static constexpr double kUnbounded = 1e300;

    double operator()(double delta) const;
    const std::string& id() const { return id_; }
    const std::map<std::string, double>& params() const { return params_; }
    double domain_end() const { return domain_end_; }
    bool is_tabulated() const { return !tab_x_.empty(); }
    const std::vector<double>& tab_x() const { return tab_x_; }
    const std::vector<double>& tab_y() const { return tab_y_; }

    // pointwise rescalings used by the map combinators
    Modulus scaled_values(double c) const;    // delta -> c * omega(delta)
    Modulus scaled_argument(double mu) const; // delta -> omega(mu * delta)

    // dense tabulation (used to serialize custom moduli)
    Modulus tabulate(const GridSpec& grid) const;

private:
    std::string id_ = "zero";
    std::map<std::string, double> params_;
    double domain_end_ = kUnbounded;
    std::function<double(double)> eval_ = [](double) { return 0.0; };
    std::vector<double> tab_x_, tab_y_;
};

GridSpec default_grid(const Modulus& m);

// Result of the limsup_{delta->0} omega(delta)/delta estimator.
struct DeltaOmegaResult {
    double value = 0.0;       // +inf when divergent
    bool divergent = false;   // tail window maxima grow without stabilizing
    bool stabilized = false;  // successive window maxima agree to tolerance
    std::vector<double> scales;        // probe scales, decreasing
    std::vector<double> window_max;    // max ratio per window
    std::vector<double> tail_sequence; // suffix maxima (nonincreasing)
};

// Probe scales must be strictly decreasing inside (0, domain_end]. The
// default probes are dyadic so the ratio evaluation is exact for homogeneous
// (linear) moduli.
DeltaOmegaResult delta_omega_full(const Modulus& m, const std::vector<double>& probe_scales);
DeltaOmegaResult delta_omega_full(const Modulus& m);
double delta_omega(const Modulus& m);
std::vector<double> default_probe_scales(const Modulus& m);

// Divergence heuristic for the reciprocal integral of omega near 0.
// verdict: holds = integral diverges (the Osgood condition), fails =
// integral converges, undetermined otherwise.
struct OsgoodResult {
    Verdict verdict = Verdict::undetermined;
    std::vector<double> eps;
    std::vector<double> integral;  // cumulative integral of 1/omega from eps to 1
    std::string note;
};

// Integrates 1/omega on [eps, 1] along the schedule and classifies the decay
// of the per-step increments. Explicitly a heuristic: slowly decaying
// increments are reported as divergence, geometric decay as convergence.
OsgoodResult osgood_divergence(const Modulus& m, const std::vector<double>& eps_schedule);
OsgoodResult osgood_divergence(const Modulus& m);

// Structural property report for a modulus at a given L.
struct ModulusReport {
    Flag omega1;  // nondecreasing on [1, inf)
    Flag omega2;  // omega(delta)/delta -> inf
    Flag omega3;  // delta -> omega(delta)/delta nonincreasing on (0,1]
    Flag omega4;  // limsup omega(delta)/delta <= 1 - L
    Flag subadditive;
    Flag concave;
    Flag nondecreasing_near_0;
    DeltaOmegaResult delta_omega;
    Flag osgood;
    GridSpec grid;
    double L = 0.0;
};

ModulusReport check_properties(const Modulus& m, double L, const GridSpec& grid);
ModulusReport check_properties(const Modulus& m, double L);

}  // namespace lomega
