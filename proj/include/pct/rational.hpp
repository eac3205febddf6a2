#ifndef PCT_RATIONAL_HPP
#define PCT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "error.hpp"

namespace pct {

/// Exact fraction with a 64-bit numerator and positive denominator, always
/// kept in lowest terms. Intermediate products use 128-bit integers; a result
/// that does not fit back into 64 bits throws std::overflow_error.
class Rational {
public:
    using int_type = std::int64_t;

    constexpr Rational() = default;
    constexpr Rational(int_type value) : num_(value) {}  // NOLINT: implicit by intent
    Rational(int_type num, int_type den) { assign(num, den); }

    constexpr int_type num() const noexcept { return num_; }
    constexpr int_type den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }

    int_type floor() const noexcept {
        int_type q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    int_type ceil() const noexcept {
        int_type q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ArgumentError("rational division by zero");
        return from_wide(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
    }

    /// Canonical exact form: "p" for integers, otherwise "p/q".
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Fixed-point rendering with `places` digits after the point, rounding
    /// halves away from zero. Computed exactly.
    std::string to_fixed(int places) const {
        if (places < 0) places = 0;
        if (places > 18) places = 18;
        wide scale = 1;
        for (int i = 0; i < places; ++i) scale *= 10;
        wide n = num_ < 0 ? -static_cast<wide>(num_) : num_;
        wide scaled = n * scale;
        wide q = scaled / den_;
        wide r = scaled % den_;
        if (2 * r >= den_) ++q;
        std::string digits = wide_to_string(q);
        if (places > 0) {
            if (digits.size() <= static_cast<std::size_t>(places))
                digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
            digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
        }
        bool zero = q == 0;
        return (num_ < 0 && !zero ? "-" : "") + digits;
    }

    /// Rendering with `digits` significant digits (at least one).
    std::string to_significant(int digits) const {
        if (digits < 1) digits = 1;
        if (num_ == 0) return to_fixed(digits - 1);
        // magnitude: largest e with 10^e <= |x|
        Rational a = abs();
        int e = 0;
        Rational p(1);
        if (a >= 1) {
            while (p * 10 <= a) { p *= 10; ++e; }
        } else {
            while (p > a) { p /= 10; --e; }
        }
        int places = digits - 1 - e;
        return to_fixed(places < 0 ? 0 : places);
    }

    /// Parses "p/q", an integer, or an exact decimal such as "0.125"; a
    /// trailing '%' divides by 100. Never goes through binary floating point.
    static Rational parse(std::string_view text) {
        auto fail = [&]() -> ArgumentError {
            return ArgumentError("not an exact number: '" + std::string(text) + "'");
        };
        std::string_view s = trim(text);
        bool percent = false;
        if (!s.empty() && s.back() == '%') {
            percent = true;
            s = trim(s.substr(0, s.size() - 1));
        }
        if (s.empty()) throw fail();

        Rational value;
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            int_type n = 0, d = 0;
            if (!parse_int(trim(s.substr(0, slash)), n, true) || !parse_int(trim(s.substr(slash + 1)), d, false))
                throw fail();
            if (d == 0) throw fail();
            value = Rational(n, d);
        } else {
            bool neg = false;
            if (s.front() == '-' || s.front() == '+') {
                neg = s.front() == '-';
                s.remove_prefix(1);
            }
            auto dot = s.find('.');
            std::string_view whole = s.substr(0, dot);
            std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
            if (whole.empty() && frac.empty()) throw fail();
            if (frac.size() > 18) throw fail();
            wide n = 0;
            for (char c : whole) {
                if (c < '0' || c > '9') throw fail();
                n = n * 10 + (c - '0');
                if (n > INT64_MAX) throw fail();
            }
            wide d = 1;
            for (char c : frac) {
                if (c < '0' || c > '9') throw fail();
                n = n * 10 + (c - '0');
                d *= 10;
                if (n > static_cast<wide>(INT64_MAX) * 10) throw fail();
            }
            value = from_wide(neg ? -n : n, d);
        }
        return percent ? value / 100 : value;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using wide = __int128;

    int_type num_ = 0;
    int_type den_ = 1;

    void assign(int_type num, int_type den) {
        if (den == 0) throw ArgumentError("rational with zero denominator");
        *this = from_wide(num, den);
    }

    static wide gcd(wide a, wide b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(wide num, wide den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        wide g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<int_type>(num);
        r.den_ = static_cast<int_type>(den);
        return r;
    }

    static std::string wide_to_string(wide v) {
        if (v == 0) return "0";
        std::string out;
        while (v > 0) {
            out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return out;
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    static bool parse_int(std::string_view s, int_type& out, bool allow_sign) {
        bool neg = false;
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) return false;
        wide v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
            v = v * 10 + (c - '0');
            if (v > INT64_MAX) return false;
        }
        out = static_cast<int_type>(neg ? -v : v);
        return true;
    }
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}

template <>
struct std::hash<pct::Rational> {
    std::size_t operator()(const pct::Rational& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 31 + std::hash<std::int64_t>{}(r.den());
    }
};

#endif
