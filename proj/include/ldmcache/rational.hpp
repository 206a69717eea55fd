#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ldmcache {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. All latency values, cache fractions and bounds in this
/// library are rationals; nothing in the analytic core touches floating
/// point. Intermediate products run through 128-bit integers so the small
/// magnitudes used here can never overflow silently.
class Rational {
  public:
    constexpr Rational() = default;

    Rational(long long num, long long den = 1) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        normalize(num, den);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Lowest-terms text form: "p/q", or just "p" for integers.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p/q" or "p" with optional sign. Anything else (in particular
    /// decimal notation) yields nullopt, keeping the toolchain exact
    /// end-to-end.
    static std::optional<Rational> parse(std::string_view text) {
        auto parse_int = [](std::string_view s, long long* out) -> bool {
            if (s.empty()) return false;
            std::size_t i = 0;
            bool neg = false;
            if (s[0] == '+' || s[0] == '-') {
                neg = s[0] == '-';
                i = 1;
            }
            if (i == s.size()) return false;
            long long v = 0;
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') return false;
                v = v * 10 + (s[i] - '0');
                if (v < 0) return false;
            }
            *out = neg ? -v : v;
            return true;
        };
        const auto slash = text.find('/');
        long long p = 0, q = 1;
        if (slash == std::string_view::npos) {
            if (!parse_int(text, &p)) return std::nullopt;
        } else {
            if (!parse_int(text.substr(0, slash), &p)) return std::nullopt;
            if (!parse_int(text.substr(slash + 1), &q)) return std::nullopt;
            if (q == 0) return std::nullopt;
        }
        return Rational(p, q);
    }

  private:
    using i128 = __int128;

    static Rational from_i128(i128 num, i128 den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr i128 kMax = INT64_MAX;
        if (num > kMax || num < -kMax || den > kMax)
            throw std::overflow_error("Rational: value out of range");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize(long long num, long long den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        num_ = g ? num / g : num;
        den_ = g ? den / g : den;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace ldmcache
