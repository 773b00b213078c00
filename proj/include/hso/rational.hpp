#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hso {

// Exact rational on int64 with gcd normalization. Every value in the
// classification layer is tiny (polytope coordinates, multiplicity sums,
// table entries), so a fixed-width kernel suffices; intermediates go through
// __int128 and anything that would not fit back into int64 throws instead of
// wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        normalize_(n, d);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128_((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                        (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128_((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                        (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128_((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return from128_((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return (double)num_ / (double)den_; }

    // "p/q" with the slash omitted for integers; the inverse of parse().
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("rational: empty string");
        auto slash = s.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                std::int64_t n = std::stoll(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return Rational(n);
            }
            std::int64_t n = std::stoll(s.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(s);
            std::int64_t d = std::stoll(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1) throw std::invalid_argument(s);
            return Rational(n, d);
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("rational: out of range: " + s);
        }
    }

private:
    static Rational from128_(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128_(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: overflow");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }
    static __int128 gcd128_(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a ? a : 1;
    }
    void normalize_(std::int64_t n, std::int64_t d) {
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace hso
