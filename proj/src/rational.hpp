#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace mediankit {

// Exact rational number in canonical reduced form (den > 0, gcd(num,den) == 1).
// Arithmetic is overflow-checked through 128-bit intermediates and throws
// std::overflow_error instead of wrapping; all comparisons are exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // "p" for integers, "p/q" otherwise.
    std::string str() const;

    // Accepts "p" and "p/q"; throws std::invalid_argument on anything else.
    static Rational parse(const std::string& text);

private:
    long long num_;
    long long den_;
};

} // namespace mediankit

template <>
struct std::hash<mediankit::Rational> {
    std::size_t operator()(const mediankit::Rational& r) const noexcept {
        std::size_t h = std::hash<long long>()(r.num());
        return h * 1000003u ^ std::hash<long long>()(r.den());
    }
};
