#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lomega/extend.hpp"
#include "lomega/minmod.hpp"
#include "lomega/modulus.hpp"
#include "lomega/spaces.hpp"

namespace lomega {

// Parameter bag for the map catalog. Unset values take per-id defaults and
// every id hard-checks its own constraint set at build time.
struct MapParams {
    std::optional<double> L;
    std::optional<double> sigma;
    std::optional<double> theta;
    std::optional<double> eta;
    std::optional<double> eps;
    std::optional<double> lambda;
    int dim = 64;
    std::vector<double> beta;  // schedule; default beta_n = 2^-(n+1)
    std::optional<Rational> alpha;            // alspach slice level
    bool full_set = false;                    // alspach: use all of C instead of a slice
    int level = 8;                            // alspach: dyadic level of sampled slices
    std::shared_ptr<Fn1D> f_handle;           // 1-D function plugged into thm51/thm510/c0shift
    std::shared_ptr<Modulus> omega_handle;    // generator modulus for thm510
    std::optional<Norm> norm_tag;             // radial: ball norm

    std::map<std::string, double> resolved;   // filled by build for reporting
};

enum class FpStatus {
    has_fixed_point,
    fixed_point_free,           // argument valid for the truncated model as well
    fixed_point_free_infinite,  // infinite-dimensional argument; truncation may admit one
};

std::string to_string(FpStatus s);

struct MapMetadata {
    double claimed_L = 1.0;
    Modulus claimed_omega;
    FpStatus fp_status = FpStatus::has_fixed_point;
    std::string fp_note;
    std::string displacement_note;
    std::string source;  // short description of where the construction comes from
};

class MapInstance {
public:
    MapInstance() = default;
    MapInstance(std::string id, MapParams params, DomainSpec domain, MapMetadata metadata,
                std::function<Point(const Point&)> fn)
        : id_(std::move(id)),
          params_(std::move(params)),
          domain_(std::move(domain)),
          metadata_(std::move(metadata)),
          fn_(std::move(fn)) {}

    const std::string& id() const { return id_; }
    const MapParams& params() const { return params_; }
    const DomainSpec& domain() const { return domain_; }
    const MapMetadata& metadata() const { return metadata_; }

    // domain-checked application
    Point apply(const Point& x) const;
    Point apply_unchecked(const Point& x) const { return fn_(x); }

private:
    std::string id_;
    MapParams params_;
    DomainSpec domain_ = DomainSpec::ball(1.0, Norm::l2, 64);
    MapMetadata metadata_;
    std::function<Point(const Point&)> fn_;
};

// Catalog ids: ex44, ex45, ex46, thm51, prop59, thm510, alspach, radial,
// c0shift, identity, constant.
MapInstance build_map(const std::string& catalog_id, MapParams params = {});
// diagnostic hook: same formula on a caller-supplied domain
MapInstance build_map_with_domain(const std::string& catalog_id, MapParams params,
                                  DomainSpec domain);
std::vector<std::string> map_catalog_ids();

MapInstance make_identity(DomainSpec domain);
MapInstance make_constant(DomainSpec domain, Point value);

// T = delta * S + (1 - delta) * id; fixed points preserved, Lipschitz data
// updated to (1 - delta + delta L, delta * omega).
MapInstance krasnoselskii_average(const MapInstance& S, double delta);
// largest admissible averaging weight for a target epsilon
double krasnoselskii_delta_for(const MapInstance& S, double epsilon);

// F_mu(x) = T(mu x); metadata gains the displacement transfer bound terms.
MapInstance mu_scale(const MapInstance& T, double mu);

// T(u) = eta * P(u / eta) on the shrunk domain eta * C.
MapInstance shrink_scale(const MapInstance& P, double eta);

// pass iff apply(x) stays in the domain for all sampled x
Certificate check_invariance(const MapInstance& map, int n, std::uint64_t seed);

// Witness that the coordinate recursion behind a fixed-point-freeness claim
// admits no admissible limit (solves the limit equation, then checks the
// exclusion rule of the ambient space).
struct FpfWitness {
    bool applicable = false;
    bool consistent = false;
    double limit_value = 0.0;
    std::string note;
};
FpfWitness fixed_point_free_witness(const MapInstance& map);

}  // namespace lomega
