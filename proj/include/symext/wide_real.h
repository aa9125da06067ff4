#pragma once

#include <compare>
#include <cstdint>

namespace symext {

/// A double mantissa with a 64-bit binary exponent: value = frac · 2^exp.
///
/// Repeated distillation squares small parity weights every round, which
/// leaves the double range after about ten rounds. This keeps the exponent
/// separately so that signs and ratios of such weights stay exact to
/// relative machine precision.
class WideReal {
  public:
    WideReal() = default;
    WideReal(double x);  // NOLINT(google-explicit-constructor)

    /// x · 2^e
    static WideReal scaled(double x, std::int64_t e);

    /// Nearest double; underflows to ±0 and overflows to ±inf.
    double to_double() const;
    /// log2 |x|, −inf for zero.
    double log2_abs() const;
    int sign() const;
    bool is_zero() const { return frac_ == 0; }
    bool is_finite() const;

    WideReal operator-() const;
    friend WideReal operator+(const WideReal& a, const WideReal& b);
    friend WideReal operator-(const WideReal& a, const WideReal& b);
    friend WideReal operator*(const WideReal& a, const WideReal& b);
    /// Throws DomainError on division by zero.
    friend WideReal operator/(const WideReal& a, const WideReal& b);
    friend std::partial_ordering operator<=>(const WideReal& a, const WideReal& b);
    friend bool operator==(const WideReal& a, const WideReal& b);

  private:
    void normalize();

    double frac_ = 0;  // 0 or |frac_| in [0.5, 1)
    std::int64_t exp_ = 0;
};

WideReal abs(const WideReal& x);
/// Throws DomainError for negative input.
WideReal sqrt(const WideReal& x);
WideReal pow(const WideReal& x, int n);

}  // namespace symext
