#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lomega/rational.hpp"
#include "lomega/rng.hpp"
#include "lomega/types.hpp"

namespace lomega {

enum class Norm { l1, l2, sup };

std::string to_string(Norm n);
Norm norm_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Finite-truncation coordinate vector with a tagged norm.
struct Vec {
    std::vector<double> coords;
    Norm norm_tag = Norm::l2;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

double norm(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double c);
double dist(const Vec& a, const Vec& b);
Vec zero_vec(std::size_t dim, Norm n);
Vec basis_vec(std::size_t dim, std::size_t k, Norm n, double value = 1.0);

// Coordinate-wise absolute value. Norm-preserving, idempotent and
// nonexpansive for every tagged norm.
Vec positive_retraction(const Vec& v);

// ---------------------------------------------------------------------------
// Eventually-constant bounded sequence: finite prefix followed by a constant
// tail. Linear operations and the Banach limit are exact on this class.
struct TailSeq {
    std::vector<double> prefix;
    double tail = 0.0;

    double coord(std::size_t i) const { return i < prefix.size() ? prefix[i] : tail; }
};

double norm(const TailSeq& s);                         // sup norm
double dist(const TailSeq& a, const TailSeq& b);       // sup norm of difference
TailSeq combine(double a, const TailSeq& x, double b, const TailSeq& y);  // a*x + b*y, exact
TailSeq right_shift(const TailSeq& s);                 // (0, s_1, s_2, ...)

// Banach limit. On eventually-constant sequences every Banach limit takes the
// tail value; linearity, positivity, shift-invariance and |L(x)| <= ||x||_inf
// all hold exactly for this representation.
double banach_limit(const TailSeq& s);

// ---------------------------------------------------------------------------
// Dyadic step function on [0,1): constant rational value on each interval
// [j 2^-k, (j+1) 2^-k). Values are kept in [0,1] (membership in C).
class StepFn {
public:
    StepFn() = default;
    StepFn(int level, std::vector<Rational> values);

    static StepFn constant(const Rational& value, int level = 0);

    int level() const { return level_; }
    const std::vector<Rational>& values() const { return values_; }

    // same function, represented on the finer dyadic mesh of `level >= level_`
    StepFn refined(int level) const;

    Rational l1_norm() const;

    // value at a point in [0,1)
    Rational at(double x) const;

    friend bool operator==(const StepFn& f, const StepFn& g);

private:
    int level_ = 0;
    std::vector<Rational> values_;
};

// exact integral of |f - g| (levels unified by refinement)
Rational l1_distance_exact(const StepFn& f, const StepFn& g);
StepFn lerp_exact(const StepFn& f, const StepFn& g, const Rational& t);  // f + t(g-f)

// ---------------------------------------------------------------------------
// A point of one of the three represented spaces.
using Point = std::variant<Vec, TailSeq, StepFn>;

enum class PointClass { vec, tailseq, stepfn };

PointClass point_class(const Point& p);
double norm(const Point& p);
double dist(const Point& a, const Point& b);
// a + t(b-a); exact for TailSeq, dyadic-rounded t (denominator 2^30) for StepFn
Point lerp(const Point& a, const Point& b, double t);
// c * p (dyadic-rounded c for StepFn, which requires c in [0,1])
Point scale_point(const Point& p, double c);
std::string describe(const Point& p);
// drop trailing prefix entries that equal the tail bit-for-bit
TailSeq compact(TailSeq s);

// ---------------------------------------------------------------------------
// Convex domains used by the map catalog.
struct Strategy {
    enum class Kind { uniform, boundary, near };
    Kind kind = Kind::uniform;
    std::shared_ptr<Point> center;  // for `near`
    double radius = 0.0;

    static Strategy uniform() { return {}; }
    static Strategy boundary() { return {Kind::boundary, nullptr, 0.0}; }
    static Strategy near(Point c, double r) {
        return {Kind::near, std::make_shared<Point>(std::move(c)), r};
    }
};

class DomainSpec {
public:
    enum class Kind {
        ball,        // { ||x|| <= r } in the tagged norm (Vec)
        simplex,     // { t_n >= 0, sum t_n <= eps } in l1 (Vec)
        box,         // { 0 <= t_n <= eta } in sup norm (Vec)
        tail_ball,   // { ||x||_inf <= r } over TailSeq
        step_cube,   // C = { 0 <= f <= 1 } over StepFn
        step_slice,  // C_alpha = { f in C : ||f||_1 = alpha } over StepFn
        scaled,      // center + factor * inner
    };

    static DomainSpec ball(double radius, Norm n, int dim);
    static DomainSpec positive_ball(Norm n, int dim);  // positive part of the unit ball (l1 or sup)
    static DomainSpec simplex(double eps, int dim);
    static DomainSpec box(double eta, int dim);
    static DomainSpec tail_ball(double radius, int prefix_len);
    static DomainSpec step_cube(int level);
    static DomainSpec step_slice(const Rational& alpha, int level);
    static DomainSpec scaled(DomainSpec inner, Point center, double factor);

    Kind kind() const { return kind_; }
    PointClass point_class() const;
    int dim() const { return dim_; }
    double radius() const { return radius_; }
    Norm norm_tag() const { return norm_; }
    const Rational& alpha() const { return alpha_; }
    double factor() const { return factor_; }
    const DomainSpec& inner() const { return *inner_; }
    const Point& center() const { return *center_; }

    bool contains(const Point& p, double tolerance = tol::domain) const;
    // how far p sits outside the domain (0 when inside)
    double violation(const Point& p) const;
    std::vector<Point> sample(int n, std::uint64_t seed, const Strategy& strategy) const;
    double diameter() const;
    // a canonical interior point (the origin where the domain contains it)
    Point base_point() const;
    bool contains_origin() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::ball;
    int dim_ = 64;
    double radius_ = 1.0;  // radius / eps / eta depending on kind
    Norm norm_ = Norm::l2;
    Rational alpha_;       // for step_slice
    double factor_ = 1.0;  // for scaled
    std::shared_ptr<DomainSpec> inner_;
    std::shared_ptr<Point> center_;

    Point sample_one(Rng& rng, const Strategy& strategy) const;
};

// Points emitted by sample() always satisfy contains(); this helper projects
// a candidate back into the domain and is also used by `near` sampling.
Point project_into(const DomainSpec& dom, const Point& p);

}  // namespace lomega
