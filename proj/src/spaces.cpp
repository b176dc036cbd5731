#include "lomega/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lomega {

std::string to_string(Norm n) {
    switch (n) {
        case Norm::l1: return "l1";
        case Norm::l2: return "l2";
        case Norm::sup: return "sup";
    }
    return "?";
}

Norm norm_from_string(const std::string& s) {
    if (s == "l1") return Norm::l1;
    if (s == "l2") return Norm::l2;
    if (s == "sup" || s == "linf") return Norm::sup;
    throw std::invalid_argument("unknown norm tag: " + s);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

std::vector<double> GridSpec::materialize() const {
    std::vector<double> pts;
    if (kind == Kind::explicit_points) {
        pts = given;
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.empty()) throw std::invalid_argument("GridSpec: empty grid");
        return pts;
    }
    if (points < 2) throw std::invalid_argument("GridSpec: need at least 2 points");
    if (!(lo < hi)) throw std::invalid_argument("GridSpec: lo must be < hi");
    pts.reserve(static_cast<std::size_t>(points));
    if (kind == Kind::geometric) {
        if (lo <= 0) throw std::invalid_argument("GridSpec: geometric grid needs lo > 0");
        const double ratio = std::log(hi / lo) / (points - 1);
        for (int i = 0; i < points; ++i) pts.push_back(lo * std::exp(ratio * i));
    } else {
        const double step = (hi - lo) / (points - 1);
        for (int i = 0; i < points; ++i) pts.push_back(lo + step * i);
    }
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

// --------------------------------------------------------------------- Vec

double norm(const Vec& v) {
    double acc = 0.0;
    switch (v.norm_tag) {
        case Norm::l1:
            for (double c : v.coords) acc += std::abs(c);
            return acc;
        case Norm::l2:
            for (double c : v.coords) acc += c * c;
            return std::sqrt(acc);
        case Norm::sup:
            for (double c : v.coords) acc = std::max(acc, std::abs(c));
            return acc;
    }
    return 0.0;
}

static void check_same_shape(const Vec& a, const Vec& b) {
    if (a.coords.size() != b.coords.size() || a.norm_tag != b.norm_tag)
        throw std::invalid_argument("Vec: mismatched dimension or norm tag");
}

Vec add(const Vec& a, const Vec& b) {
    check_same_shape(a, b);
    Vec r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    check_same_shape(a, b);
    Vec r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
}

Vec scale(const Vec& a, double c) {
    Vec r = a;
    for (double& x : r.coords) x *= c;
    return r;
}

double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

Vec zero_vec(std::size_t dim, Norm n) { return Vec{std::vector<double>(dim, 0.0), n}; }

Vec basis_vec(std::size_t dim, std::size_t k, Norm n, double value) {
    Vec v = zero_vec(dim, n);
    if (k >= dim) throw std::out_of_range("basis_vec: index beyond truncation");
    v.coords[k] = value;
    return v;
}

Vec positive_retraction(const Vec& v) {
    Vec r = v;
    for (double& x : r.coords) x = std::abs(x);
    return r;
}

// ----------------------------------------------------------------- TailSeq

double norm(const TailSeq& s) {
    double acc = std::abs(s.tail);
    for (double c : s.prefix) acc = std::max(acc, std::abs(c));
    return acc;
}

double dist(const TailSeq& a, const TailSeq& b) {
    const std::size_t n = std::max(a.prefix.size(), b.prefix.size());
    double acc = std::abs(a.tail - b.tail);
    for (std::size_t i = 0; i < n; ++i) acc = std::max(acc, std::abs(a.coord(i) - b.coord(i)));
    return acc;
}

TailSeq combine(double a, const TailSeq& x, double b, const TailSeq& y) {
    const std::size_t n = std::max(x.prefix.size(), y.prefix.size());
    TailSeq r;
    r.prefix.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.prefix[i] = a * x.coord(i) + b * y.coord(i);
    r.tail = a * x.tail + b * y.tail;
    return r;
}

TailSeq right_shift(const TailSeq& s) {
    TailSeq r;
    r.prefix.reserve(s.prefix.size() + 1);
    r.prefix.push_back(0.0);
    r.prefix.insert(r.prefix.end(), s.prefix.begin(), s.prefix.end());
    r.tail = s.tail;
    return r;
}

double banach_limit(const TailSeq& s) { return s.tail; }

// ------------------------------------------------------------------ StepFn

StepFn::StepFn(int level, std::vector<Rational> values) : level_(level), values_(std::move(values)) {
    if (level_ < 0 || level_ > 30) throw std::invalid_argument("StepFn: level out of range");
    if (values_.size() != (std::size_t{1} << level_))
        throw std::invalid_argument("StepFn: need 2^level values");
    for (const auto& v : values_)
        if (v < Rational(0) || v > Rational(1))
            throw std::invalid_argument("StepFn: values must lie in [0,1]");
}

StepFn StepFn::constant(const Rational& value, int level) {
    return StepFn(level, std::vector<Rational>(std::size_t{1} << level, value));
}

StepFn StepFn::refined(int level) const {
    if (level < level_) throw std::invalid_argument("StepFn: refinement must not coarsen");
    const std::size_t reps = std::size_t{1} << (level - level_);
    std::vector<Rational> out;
    out.reserve(values_.size() * reps);
    for (const auto& v : values_)
        for (std::size_t r = 0; r < reps; ++r) out.push_back(v);
    return StepFn(level, std::move(out));
}

Rational StepFn::l1_norm() const {
    Rational acc(0);
    for (const auto& v : values_) acc = acc + v;
    return acc / Rational(std::int64_t{1} << level_);
}

Rational StepFn::at(double x) const {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("StepFn: argument outside [0,1)");
    auto j = static_cast<std::size_t>(x * static_cast<double>(std::size_t{1} << level_));
    return values_[std::min(j, values_.size() - 1)];
}

bool operator==(const StepFn& f, const StepFn& g) {
    const int k = std::max(f.level(), g.level());
    return f.refined(k).values_ == g.refined(k).values_;
}

Rational l1_distance_exact(const StepFn& f, const StepFn& g) {
    const int k = std::max(f.level(), g.level());
    const StepFn ff = f.refined(k), gg = g.refined(k);
    Rational acc(0);
    for (std::size_t j = 0; j < ff.values().size(); ++j)
        acc = acc + (ff.values()[j] - gg.values()[j]).abs();
    return acc / Rational(std::int64_t{1} << k);
}

StepFn lerp_exact(const StepFn& f, const StepFn& g, const Rational& t) {
    const int k = std::max(f.level(), g.level());
    const StepFn ff = f.refined(k), gg = g.refined(k);
    std::vector<Rational> out(ff.values().size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = ff.values()[j] + t * (gg.values()[j] - ff.values()[j]);
    return StepFn(k, std::move(out));
}

// ------------------------------------------------------------------- Point

PointClass point_class(const Point& p) {
    if (std::holds_alternative<Vec>(p)) return PointClass::vec;
    if (std::holds_alternative<TailSeq>(p)) return PointClass::tailseq;
    return PointClass::stepfn;
}

double norm(const Point& p) {
    return std::visit([](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StepFn>)
            return x.l1_norm().to_double();
        else
            return norm(x);
    }, p);
}

double dist(const Point& a, const Point& b) {
    if (point_class(a) != point_class(b))
        throw std::invalid_argument("dist: points from different spaces");
    if (const auto* va = std::get_if<Vec>(&a)) return dist(*va, std::get<Vec>(b));
    if (const auto* ta = std::get_if<TailSeq>(&a)) return dist(*ta, std::get<TailSeq>(b));
    return l1_distance_exact(std::get<StepFn>(a), std::get<StepFn>(b)).to_double();
}

Point lerp(const Point& a, const Point& b, double t) {
    if (point_class(a) != point_class(b))
        throw std::invalid_argument("lerp: points from different spaces");
    if (const auto* va = std::get_if<Vec>(&a))
        return add(*va, scale(sub(std::get<Vec>(b), *va), t));
    if (const auto* ta = std::get_if<TailSeq>(&a))
        return combine(1.0 - t, *ta, t, std::get<TailSeq>(b));
    // dyadic rounding keeps StepFn arithmetic exact
    const long long q = 1LL << 30;
    Rational rt(std::llround(t * static_cast<double>(q)), q);
    if (rt < Rational(0)) rt = Rational(0);
    if (rt > Rational(1)) rt = Rational(1);
    return lerp_exact(std::get<StepFn>(a), std::get<StepFn>(b), rt);
}

Point scale_point(const Point& p, double c) {
    if (const auto* v = std::get_if<Vec>(&p)) return Point{scale(*v, c)};
    if (const auto* t = std::get_if<TailSeq>(&p)) return Point{combine(c, *t, 0.0, TailSeq{})};
    const auto& f = std::get<StepFn>(p);
    if (c < 0.0 || c > 1.0)
        throw std::invalid_argument("scale_point: StepFn scaling requires c in [0,1]");
    return lerp(Point{StepFn::constant(Rational(0), f.level())}, p, c);
}

TailSeq compact(TailSeq s) {
    while (!s.prefix.empty() && s.prefix.back() == s.tail) s.prefix.pop_back();
    return s;
}

std::string describe(const Point& p) {
    std::ostringstream os;
    if (const auto* v = std::get_if<Vec>(&p)) {
        os << "vec[" << to_string(v->norm_tag) << "](";
        for (std::size_t i = 0; i < std::min<std::size_t>(v->coords.size(), 8); ++i)
            os << (i ? "," : "") << v->coords[i];
        if (v->coords.size() > 8) os << ",...";
        os << ")";
    } else if (const auto* t = std::get_if<TailSeq>(&p)) {
        os << "tailseq(prefix_len=" << t->prefix.size() << ", tail=" << t->tail << ")";
    } else {
        const auto& f = std::get<StepFn>(p);
        os << "stepfn(level=" << f.level() << ", l1=" << f.l1_norm().str() << ")";
    }
    return os.str();
}

// -------------------------------------------------------------- DomainSpec

DomainSpec DomainSpec::ball(double radius, Norm n, int dim) {
    if (radius <= 0) throw std::invalid_argument("ball: radius must be positive");
    DomainSpec d;
    d.kind_ = Kind::ball;
    d.radius_ = radius;
    d.norm_ = n;
    d.dim_ = dim;
    return d;
}

DomainSpec DomainSpec::positive_ball(Norm n, int dim) {
    if (n == Norm::l1) return simplex(1.0, dim);
    if (n == Norm::sup) return box(1.0, dim);
    throw std::invalid_argument("positive_ball: supported for l1 and sup norms");
}

DomainSpec DomainSpec::simplex(double eps, int dim) {
    if (eps <= 0) throw std::invalid_argument("simplex: eps must be positive");
    DomainSpec d;
    d.kind_ = Kind::simplex;
    d.radius_ = eps;
    d.norm_ = Norm::l1;
    d.dim_ = dim;
    return d;
}

DomainSpec DomainSpec::box(double eta, int dim) {
    if (eta <= 0) throw std::invalid_argument("box: eta must be positive");
    DomainSpec d;
    d.kind_ = Kind::box;
    d.radius_ = eta;
    d.norm_ = Norm::sup;
    d.dim_ = dim;
    return d;
}

DomainSpec DomainSpec::tail_ball(double radius, int prefix_len) {
    if (radius <= 0) throw std::invalid_argument("tail_ball: radius must be positive");
    DomainSpec d;
    d.kind_ = Kind::tail_ball;
    d.radius_ = radius;
    d.norm_ = Norm::sup;
    d.dim_ = prefix_len;
    return d;
}

DomainSpec DomainSpec::step_cube(int level) {
    DomainSpec d;
    d.kind_ = Kind::step_cube;
    d.norm_ = Norm::l1;
    d.dim_ = level;
    return d;
}

DomainSpec DomainSpec::step_slice(const Rational& alpha, int level) {
    if (alpha < Rational(0) || alpha > Rational(1))
        throw std::invalid_argument("step_slice: alpha must lie in [0,1]");
    DomainSpec d;
    d.kind_ = Kind::step_slice;
    d.norm_ = Norm::l1;
    d.dim_ = level;
    d.alpha_ = alpha;
    return d;
}

DomainSpec DomainSpec::scaled(DomainSpec inner, Point center, double factor) {
    if (factor == 0) throw std::invalid_argument("scaled: zero factor");
    DomainSpec d;
    d.kind_ = Kind::scaled;
    d.dim_ = inner.dim_;
    d.norm_ = inner.norm_;
    d.factor_ = factor;
    d.inner_ = std::make_shared<DomainSpec>(std::move(inner));
    d.center_ = std::make_shared<Point>(std::move(center));
    return d;
}

PointClass DomainSpec::point_class() const {
    switch (kind_) {
        case Kind::tail_ball: return PointClass::tailseq;
        case Kind::step_cube:
        case Kind::step_slice: return PointClass::stepfn;
        case Kind::scaled: return inner_->point_class();
        default: return PointClass::vec;
    }
}

bool DomainSpec::contains(const Point& p, double tolerance) const {
    if (lomega::point_class(p) != point_class()) return false;
    switch (kind_) {
        case Kind::ball:
            return norm(std::get<Vec>(p)) <= radius_ + tolerance &&
                   std::get<Vec>(p).norm_tag == norm_ &&
                   std::get<Vec>(p).dim() == static_cast<std::size_t>(dim_);
        case Kind::simplex: {
            const Vec& v = std::get<Vec>(p);
            if (v.norm_tag != Norm::l1 || v.dim() != static_cast<std::size_t>(dim_)) return false;
            double sum = 0.0;
            for (double c : v.coords) {
                if (c < -tolerance) return false;
                sum += c;
            }
            return sum <= radius_ + tolerance;
        }
        case Kind::box: {
            const Vec& v = std::get<Vec>(p);
            if (v.norm_tag != Norm::sup || v.dim() != static_cast<std::size_t>(dim_)) return false;
            for (double c : v.coords)
                if (c < -tolerance || c > radius_ + tolerance) return false;
            return true;
        }
        case Kind::tail_ball:
            return norm(std::get<TailSeq>(p)) <= radius_ + tolerance;
        case Kind::step_cube:
            return true;  // StepFn construction already enforces 0 <= f <= 1
        case Kind::step_slice:
            return std::get<StepFn>(p).l1_norm() == alpha_;
        case Kind::scaled: {
            // x = center + factor * y  =>  y = (x - center)/factor
            if (const auto* v = std::get_if<Vec>(&p)) {
                Vec y = scale(sub(*v, std::get<Vec>(*center_)), 1.0 / factor_);
                return inner_->contains(Point{y}, tolerance / std::abs(factor_));
            }
            throw std::invalid_argument("scaled domain: only Vec points supported");
        }
    }
    return false;
}

double DomainSpec::violation(const Point& p) const {
    if (lomega::point_class(p) != point_class())
        return std::numeric_limits<double>::infinity();
    switch (kind_) {
        case Kind::ball: return std::max(0.0, norm(std::get<Vec>(p)) - radius_);
        case Kind::simplex: {
            const Vec& v = std::get<Vec>(p);
            double worst = 0.0, sum = 0.0;
            for (double c : v.coords) {
                worst = std::max(worst, -c);
                sum += c;
            }
            return std::max(worst, sum - radius_);
        }
        case Kind::box: {
            const Vec& v = std::get<Vec>(p);
            double worst = 0.0;
            for (double c : v.coords) worst = std::max({worst, -c, c - radius_});
            return worst;
        }
        case Kind::tail_ball: return std::max(0.0, norm(std::get<TailSeq>(p)) - radius_);
        case Kind::step_cube: return 0.0;
        case Kind::step_slice:
            return std::abs((std::get<StepFn>(p).l1_norm() - alpha_).to_double());
        case Kind::scaled: {
            const Vec& v = std::get<Vec>(p);
            Vec y = scale(sub(v, std::get<Vec>(*center_)), 1.0 / factor_);
            return std::abs(factor_) * inner_->violation(Point{y});
        }
    }
    return 0.0;
}

double DomainSpec::diameter() const {
    switch (kind_) {
        case Kind::ball: return 2.0 * radius_;
        case Kind::simplex: return 2.0 * radius_;
        case Kind::box: return radius_;
        case Kind::tail_ball: return 2.0 * radius_;
        case Kind::step_cube: return 1.0;
        case Kind::step_slice: {
            // mass alpha vs. disjointly supported mass alpha
            const double a = alpha_.to_double();
            return 2.0 * std::min(a, 1.0 - a);
        }
        case Kind::scaled: return std::abs(factor_) * inner_->diameter();
    }
    return 0.0;
}

Point DomainSpec::base_point() const {
    switch (kind_) {
        case Kind::ball:
        case Kind::simplex: return Point{zero_vec(dim_, norm_)};
        case Kind::box: return Point{zero_vec(dim_, Norm::sup)};
        case Kind::tail_ball: return Point{TailSeq{{}, 0.0}};
        case Kind::step_cube: return Point{StepFn::constant(Rational(0), std::max(0, dim_))};
        case Kind::step_slice: return Point{StepFn::constant(alpha_, std::max(0, dim_))};
        case Kind::scaled: return *center_;
    }
    throw std::logic_error("base_point: unreachable");
}

bool DomainSpec::contains_origin() const {
    switch (kind_) {
        case Kind::ball:
        case Kind::simplex:
        case Kind::box:
        case Kind::tail_ball: return true;
        case Kind::step_cube: return true;
        case Kind::step_slice: return alpha_ == Rational(0);
        case Kind::scaled: return contains(Point{zero_vec(dim_, norm_)});
    }
    return false;
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::ball: os << "ball(r=" << radius_ << "," << to_string(norm_) << ",d=" << dim_ << ")"; break;
        case Kind::simplex: os << "simplex(eps=" << radius_ << ",d=" << dim_ << ")"; break;
        case Kind::box: os << "box(eta=" << radius_ << ",d=" << dim_ << ")"; break;
        case Kind::tail_ball: os << "tail_ball(r=" << radius_ << ",prefix=" << dim_ << ")"; break;
        case Kind::step_cube: os << "step_cube(level=" << dim_ << ")"; break;
        case Kind::step_slice: os << "step_slice(alpha=" << alpha_.str() << ",level=" << dim_ << ")"; break;
        case Kind::scaled: os << "scaled(factor=" << factor_ << "," << inner_->describe() << ")"; break;
    }
    return os.str();
}

// ------------------------------------------------------------- sampling

static Vec sample_ball_uniform(Rng& rng, double r, Norm n, int dim) {
    Vec v = zero_vec(dim, n);
    switch (n) {
        case Norm::l2: {
            double s = 0.0;
            for (auto& c : v.coords) {
                c = rng.normal();
                s += c * c;
            }
            const double scale_to = r * std::pow(rng.uniform01(), 1.0 / dim) / std::sqrt(std::max(s, 1e-300));
            for (auto& c : v.coords) c *= scale_to;
            break;
        }
        case Norm::l1: {
            double s = 0.0;
            for (auto& c : v.coords) {
                c = rng.exponential() * (rng.coin() ? 1.0 : -1.0);
                s += std::abs(c);
            }
            const double scale_to = r * std::pow(rng.uniform01(), 1.0 / dim) / std::max(s, 1e-300);
            for (auto& c : v.coords) c *= scale_to;
            break;
        }
        case Norm::sup:
            for (auto& c : v.coords) c = rng.uniform(-r, r);
            break;
    }
    return v;
}

static Vec sample_simplex_uniform(Rng& rng, double eps, int dim) {
    // Dirichlet(1,...,1) over dim+1 cells; the last cell is the slack.
    std::vector<double> e(dim + 1);
    double s = 0.0;
    for (auto& x : e) {
        x = rng.exponential();
        s += x;
    }
    Vec v = zero_vec(dim, Norm::l1);
    for (int i = 0; i < dim; ++i) v.coords[i] = eps * e[i] / s;
    return v;
}

static StepFn sample_step_uniform(Rng& rng, int level) {
    const long long q = 1 << 10;
    std::vector<Rational> vals(std::size_t{1} << level);
    for (auto& v : vals) v = Rational(static_cast<long long>(rng.index(q + 1)), q);
    return StepFn(level, std::move(vals));
}

// random mass-preserving perturbation of a slice member
static StepFn shuffle_slice_mass(Rng& rng, StepFn f, int moves) {
    const long long q = 1 << 12;
    auto vals = f.values();
    const std::size_t n = vals.size();
    for (int m = 0; m < moves; ++m) {
        const std::size_t i = rng.index(n), j = rng.index(n);
        if (i == j) continue;
        const Rational room = min(vals[i], Rational(1) - vals[j]);
        if (room <= Rational(0)) continue;
        const Rational amount =
            room * Rational(static_cast<long long>(rng.index(q + 1)), q);
        vals[i] = vals[i] - amount;
        vals[j] = vals[j] + amount;
    }
    return StepFn(f.level(), std::move(vals));
}

Point project_into(const DomainSpec& dom, const Point& p) {
    if (dom.contains(p)) return p;
    switch (dom.kind()) {
        case DomainSpec::Kind::ball: {
            Vec v = std::get<Vec>(p);
            const double n = norm(v);
            if (n > dom.radius()) v = scale(v, dom.radius() / n);
            return Point{v};
        }
        case DomainSpec::Kind::simplex: {
            Vec v = std::get<Vec>(p);
            double sum = 0.0;
            for (double& c : v.coords) {
                c = std::max(c, 0.0);
                sum += c;
            }
            if (sum > dom.radius() && sum > 0) v = scale(v, dom.radius() / sum);
            return Point{v};
        }
        case DomainSpec::Kind::box: {
            Vec v = std::get<Vec>(p);
            for (double& c : v.coords) c = std::clamp(c, 0.0, dom.radius());
            return Point{v};
        }
        case DomainSpec::Kind::tail_ball: {
            TailSeq t = std::get<TailSeq>(p);
            const double r = dom.radius();
            for (double& c : t.prefix) c = std::clamp(c, -r, r);
            t.tail = std::clamp(t.tail, -r, r);
            return Point{t};
        }
        case DomainSpec::Kind::step_cube:
            return p;
        case DomainSpec::Kind::step_slice:
            throw std::invalid_argument("project_into: cannot project onto a norm slice");
        case DomainSpec::Kind::scaled: {
            const Vec& c = std::get<Vec>(dom.center());
            Vec y = scale(sub(std::get<Vec>(p), c), 1.0 / dom.factor());
            Point yi = project_into(dom.inner(), Point{y});
            return Point{add(c, scale(std::get<Vec>(yi), dom.factor()))};
        }
    }
    throw std::logic_error("project_into: unreachable");
}

Point DomainSpec::sample_one(Rng& rng, const Strategy& strategy) const {
    switch (strategy.kind) {
        case Strategy::Kind::uniform:
            break;
        case Strategy::Kind::boundary: {
            switch (kind_) {
                case Kind::ball: {
                    Vec v = sample_ball_uniform(rng, radius_, norm_, dim_);
                    const double n = norm(v);
                    if (n > 1e-12) v = scale(v, radius_ / n);
                    else v = basis_vec(dim_, 0, norm_, radius_);
                    return Point{v};
                }
                case Kind::simplex: {
                    Vec v = sample_simplex_uniform(rng, radius_, dim_);
                    if (rng.coin()) {
                        // face sum = eps
                        double s = 0.0;
                        for (double c : v.coords) s += c;
                        if (s > 1e-15) v = scale(v, radius_ / s);
                    } else {
                        v.coords[rng.index(static_cast<std::size_t>(dim_))] = 0.0;
                    }
                    return Point{v};
                }
                case Kind::box: {
                    Vec v = zero_vec(dim_, Norm::sup);
                    for (auto& c : v.coords) c = rng.uniform(0.0, radius_);
                    v.coords[rng.index(static_cast<std::size_t>(dim_))] = rng.coin() ? 0.0 : radius_;
                    return Point{v};
                }
                case Kind::tail_ball: {
                    TailSeq t;
                    t.prefix.resize(dim_);
                    for (auto& c : t.prefix) c = rng.uniform(-radius_, radius_);
                    t.tail = rng.uniform(-radius_, radius_);
                    // pin one coordinate (or the tail) to the sphere
                    if (rng.coin(1.0 / (dim_ + 1.0)))
                        t.tail = rng.coin() ? radius_ : -radius_;
                    else
                        t.prefix[rng.index(static_cast<std::size_t>(dim_))] =
                            rng.coin() ? radius_ : -radius_;
                    return Point{t};
                }
                case Kind::step_cube: {
                    StepFn f = sample_step_uniform(rng, dim_);
                    auto vals = f.values();
                    vals[rng.index(vals.size())] = rng.coin() ? Rational(0) : Rational(1);
                    return Point{StepFn(dim_, std::move(vals))};
                }
                case Kind::step_slice: {
                    const int moves = std::min(4 << dim_, 4096);
                    return Point{shuffle_slice_mass(rng, StepFn::constant(alpha_, dim_), moves)};
                }
                case Kind::scaled: {
                    Point y = inner_->sample_one(rng, strategy);
                    return Point{add(std::get<Vec>(*center_), scale(std::get<Vec>(y), factor_))};
                }
            }
            break;
        }
        case Strategy::Kind::near: {
            const Point& c = *strategy.center;
            const double r = strategy.radius;
            switch (lomega::point_class(c)) {
                case PointClass::vec: {
                    const Vec& cv = std::get<Vec>(c);
                    Vec pert = sample_ball_uniform(rng, r, cv.norm_tag, static_cast<int>(cv.dim()));
                    return project_into(*this, Point{add(cv, pert)});
                }
                case PointClass::tailseq: {
                    TailSeq t = std::get<TailSeq>(c);
                    if (t.prefix.size() < static_cast<std::size_t>(dim_)) {
                        TailSeq padded = t;
                        padded.prefix.resize(dim_, t.tail);
                        t = padded;
                    }
                    for (auto& x : t.prefix) x += rng.uniform(-r, r);
                    t.tail += rng.uniform(-r, r);
                    return project_into(*this, Point{t});
                }
                case PointClass::stepfn: {
                    if (kind_ == Kind::step_slice) {
                        // small exact mass moves keep the slice norm
                        return Point{shuffle_slice_mass(rng, std::get<StepFn>(c), 4)};
                    }
                    StepFn f = std::get<StepFn>(c);
                    auto vals = f.values();
                    const long long q = 1 << 12;
                    for (auto& v : vals) {
                        const Rational d(static_cast<long long>(rng.index(2 * q + 1)) - q,
                                         static_cast<long long>(std::llround(q / std::max(r, 1e-9))));
                        v = max(Rational(0), min(Rational(1), v + d));
                    }
                    return Point{StepFn(f.level(), std::move(vals))};
                }
            }
            break;
        }
    }
    // uniform
    switch (kind_) {
        case Kind::ball: return Point{sample_ball_uniform(rng, radius_, norm_, dim_)};
        case Kind::simplex: return Point{sample_simplex_uniform(rng, radius_, dim_)};
        case Kind::box: {
            Vec v = zero_vec(dim_, Norm::sup);
            for (auto& c : v.coords) c = rng.uniform(0.0, radius_);
            return Point{v};
        }
        case Kind::tail_ball: {
            TailSeq t;
            t.prefix.resize(dim_);
            for (auto& c : t.prefix) c = rng.uniform(-radius_, radius_);
            t.tail = rng.uniform(-radius_, radius_);
            return Point{t};
        }
        case Kind::step_cube: return Point{sample_step_uniform(rng, dim_)};
        case Kind::step_slice:
            return Point{shuffle_slice_mass(rng, StepFn::constant(alpha_, dim_),
                                            std::min(8 << dim_, 8192))};
        case Kind::scaled: {
            Point y = inner_->sample_one(rng, strategy);
            return Point{add(std::get<Vec>(*center_), scale(std::get<Vec>(y), factor_))};
        }
    }
    throw std::logic_error("sample_one: unreachable");
}

std::vector<Point> DomainSpec::sample(int n, std::uint64_t seed, const Strategy& strategy) const {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Point p = sample_one(rng, strategy);
        if (!contains(p))
            throw std::runtime_error("sample: emitted point failed containment for " + describe());
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace lomega
