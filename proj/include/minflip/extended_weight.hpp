#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "minflip/errors.hpp"

namespace minflip {

// An integer extended with -inf and +inf.
//
// Addition saturates at the infinities; adding +inf and -inf has no
// meaningful value and throws. Comparison is total with
// -inf < every integer < +inf.
class ExtendedWeight {
  public:
    constexpr ExtendedWeight() = default;
    constexpr ExtendedWeight(long long v) : kind_(Kind::Finite), value_(v) {}

    static constexpr ExtendedWeight pos_infinity() { return ExtendedWeight(Kind::PosInf); }
    static constexpr ExtendedWeight neg_infinity() { return ExtendedWeight(Kind::NegInf); }

    constexpr bool is_finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_pos_infinity() const { return kind_ == Kind::PosInf; }
    constexpr bool is_neg_infinity() const { return kind_ == Kind::NegInf; }
    constexpr bool is_infinite() const { return kind_ != Kind::Finite; }

    // Finite value; throws on an infinity.
    long long value() const {
        if (!is_finite()) throw ValidationError("ExtendedWeight: value() on an infinity");
        return value_;
    }

    ExtendedWeight operator+(ExtendedWeight rhs) const {
        if (is_finite() && rhs.is_finite()) {
            long long sum = 0;
            if (__builtin_add_overflow(value_, rhs.value_, &sum))
                throw ValidationError("ExtendedWeight: finite addition overflow");
            return ExtendedWeight(sum);
        }
        if (is_finite()) return rhs;
        if (rhs.is_finite()) return *this;
        if (kind_ != rhs.kind_)
            throw ValidationError("ExtendedWeight: (+inf) + (-inf) is undefined");
        return *this;
    }
    ExtendedWeight& operator+=(ExtendedWeight rhs) { return *this = *this + rhs; }

    ExtendedWeight abs() const {
        if (is_finite()) return ExtendedWeight(value_ < 0 ? -value_ : value_);
        return pos_infinity();
    }

    // Multiplication by a positive integer; infinities are absorbing.
    ExtendedWeight scaled(long long m) const {
        if (m <= 0) throw ValidationError("ExtendedWeight: scale factor must be positive");
        if (!is_finite()) return *this;
        long long prod = 0;
        if (__builtin_mul_overflow(value_, m, &prod))
            throw ValidationError("ExtendedWeight: finite multiplication overflow");
        return ExtendedWeight(prod);
    }

    // Kind is declared in comparison order, so member-wise default works.
    friend constexpr auto operator<=>(const ExtendedWeight&, const ExtendedWeight&) = default;

    // Decimal integer, "inf" or "-inf".
    static std::optional<ExtendedWeight> parse(std::string_view text);
    std::string str() const;

  private:
    enum class Kind : std::int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
    constexpr explicit ExtendedWeight(Kind k) : kind_(k), value_(0) {}

    Kind kind_ = Kind::Finite;
    long long value_ = 0;
};

}  // namespace minflip
