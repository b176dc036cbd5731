#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lomega {

// Central numeric tolerances.
namespace tol {
// absolute slack on certificate margins (double-precision noise floor for the
// catalog maps' arithmetic depth)
inline constexpr double cert = 1e-9;
// relative tolerance when re-evaluating reported residuals
inline constexpr double residual_rel = 1e-12;
// membership slack for domain containment checks
inline constexpr double domain = 1e-9;
// ratio growth beyond which delta_omega declares divergence outright
inline constexpr double divergence_threshold = 1e6;
}  // namespace tol

enum class Verdict { holds, fails, undetermined };

std::string to_string(Verdict v);

// Tri-state verdict with an optional witness. A "fails" verdict always
// carries a concrete witness point (or pair) reproducing the violation.
struct Flag {
    Verdict verdict = Verdict::undetermined;
    std::optional<double> witness_a;
    std::optional<double> witness_b;
    std::string note;

    static Flag pass(std::string note = {}) { return {Verdict::holds, {}, {}, std::move(note)}; }
    static Flag fail(double a, std::string note = {}) {
        return {Verdict::fails, a, {}, std::move(note)};
    }
    static Flag fail(double a, double b, std::string note = {}) {
        return {Verdict::fails, a, b, std::move(note)};
    }
    static Flag unknown(std::string note = {}) {
        return {Verdict::undetermined, {}, {}, std::move(note)};
    }
    bool holds() const { return verdict == Verdict::holds; }
    bool fails() const { return verdict == Verdict::fails; }
};

// Evaluation grid. Points are materialized in increasing order; an explicit
// point list may be supplied instead of lo/hi/n (it is sorted on use, so
// verdicts are insensitive to input permutations).
struct GridSpec {
    enum class Kind { geometric, linear, explicit_points };
    Kind kind = Kind::geometric;
    double lo = 1e-8;
    double hi = 1.0;
    int points = 10000;
    std::vector<double> given;  // used when kind == explicit_points

    static GridSpec geometric(double lo, double hi, int points) {
        return {Kind::geometric, lo, hi, points, {}};
    }
    static GridSpec linear(double lo, double hi, int points) {
        return {Kind::linear, lo, hi, points, {}};
    }
    static GridSpec explicit_points(std::vector<double> pts) {
        return {Kind::explicit_points, 0, 0, 0, std::move(pts)};
    }

    std::vector<double> materialize() const;
};

// A named scalar function on an interval, the common currency of the 1-D
// construction/estimation operations.
struct Fn1D {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> f;

    double operator()(double x) const { return f(x); }
};

}  // namespace lomega
