#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lomega {

// Exact rational arithmetic on int64 numerator/denominator, reduced after
// every operation. Intermediates use __int128; a result that does not fit in
// int64 after reduction throws instead of silently overflowing.
class Rational {
public:
    Rational() = default;
    Rational(long long num, long long den = 1) { assign(num, den); }

    static Rational from_int128(__int128 num, __int128 den) {
        Rational r;
        r.assign128(num, den);
        return r;
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_int128(static_cast<__int128>(a.num_) * b.den_ +
                               static_cast<__int128>(b.num_) * a.den_,
                           static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_int128(static_cast<__int128>(a.num_) * b.num_,
                           static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_int128(static_cast<__int128>(a.num_) * b.den_,
                           static_cast<__int128>(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    std::string str() const {
        return std::to_string(num_) + (den_ == 1 ? "" : "/" + std::to_string(den_));
    }

private:
    void assign(long long num, long long den) { assign128(num, den); }

    void assign128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 a = num < 0 ? -num : num;
        __int128 g = gcd128(a, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr __int128 lo = std::numeric_limits<long long>::min();
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (num < lo || num > hi || den > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range after reduction");
        num_ = static_cast<long long>(num);
        den_ = static_cast<long long>(den);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace lomega
