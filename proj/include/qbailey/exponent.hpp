#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qb {

/// Exponent on the half-integer grid (1/2)Z, stored as half-units.
/// All exponent arithmetic in the library is exact; there is no floating
/// point anywhere in the system.
class Exponent {
public:
    constexpr Exponent() : half_(0) {}

    static constexpr Exponent from_int(std::int64_t n) { return Exponent(2 * n); }
    static constexpr Exponent from_half(std::int64_t h) { return Exponent(h); }

    /// Saturation sentinel used as "truncation order of an exact polynomial".
    static constexpr Exponent infinity() {
        return Exponent(std::numeric_limits<std::int64_t>::max() / 4);
    }

    std::int64_t half_units() const { return half_; }
    bool is_integer() const { return half_ % 2 == 0; }
    std::int64_t int_value() const {
        if (!is_integer()) throw std::logic_error("Exponent: not an integer");
        return half_ / 2;
    }
    bool is_infinite() const { return half_ >= infinity().half_ || half_ <= -infinity().half_; }

    friend Exponent operator+(Exponent a, Exponent b) {
        if (a.is_infinite() || b.is_infinite()) {
            std::int64_t s = (a.half_ < 0 || b.half_ < 0) && !(a.half_ > 0 || b.half_ > 0)
                                 ? -1
                                 : 1;
            // saturate toward the sign of the infinite operand
            std::int64_t inf = infinity().half_;
            std::int64_t v = (a.is_infinite() ? a.half_ : b.half_) > 0 ? inf : -inf;
            (void)s;
            return Exponent(v);
        }
        return Exponent(a.half_ + b.half_);
    }
    friend Exponent operator-(Exponent a, Exponent b) { return a + Exponent(-b.half_); }
    Exponent operator-() const { return Exponent(-half_); }
    friend Exponent operator*(Exponent a, std::int64_t n) {
        if (a.is_infinite()) return n >= 0 ? a : Exponent(-a.half_);
        return Exponent(a.half_ * n);
    }
    friend Exponent operator*(std::int64_t n, Exponent a) { return a * n; }

    Exponent& operator+=(Exponent b) { *this = *this + b; return *this; }
    Exponent& operator-=(Exponent b) { *this = *this - b; return *this; }

    friend bool operator==(Exponent a, Exponent b) { return a.half_ == b.half_; }
    friend bool operator!=(Exponent a, Exponent b) { return a.half_ != b.half_; }
    friend bool operator<(Exponent a, Exponent b) { return a.half_ < b.half_; }
    friend bool operator<=(Exponent a, Exponent b) { return a.half_ <= b.half_; }
    friend bool operator>(Exponent a, Exponent b) { return a.half_ > b.half_; }
    friend bool operator>=(Exponent a, Exponent b) { return a.half_ >= b.half_; }

    /// "3", "-2" for integers, "7/2" otherwise.
    std::string str() const {
        if (is_integer()) return std::to_string(half_ / 2);
        return std::to_string(half_) + "/2";
    }

    /// Serialization with fixed denominator 2 (used by the JSON reports).
    std::string str_halves() const { return std::to_string(half_) + "/2"; }

private:
    explicit constexpr Exponent(std::int64_t h) : half_(h) {}
    std::int64_t half_;
};

inline Exponent min(Exponent a, Exponent b) { return a < b ? a : b; }
inline Exponent max(Exponent a, Exponent b) { return a < b ? b : a; }

} // namespace qb
