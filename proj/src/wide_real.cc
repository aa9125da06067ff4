#include "symext/wide_real.h"

#include <cmath>
#include <limits>

#include "symext/errors.h"

namespace symext {

namespace {

// beyond this many binades apart the smaller addend cannot change the sum
constexpr std::int64_t kAlignLimit = 64;

}  // namespace

WideReal::WideReal(double x) : frac_(x) { normalize(); }

WideReal WideReal::scaled(double x, std::int64_t e) {
    WideReal w(x);
    if (!w.is_zero() && w.is_finite()) w.exp_ += e;
    return w;
}

void WideReal::normalize() {
    if (frac_ == 0 || !std::isfinite(frac_)) {
        exp_ = 0;
        return;
    }
    int k = 0;
    frac_ = std::frexp(frac_, &k);
    exp_ += k;
}

double WideReal::to_double() const {
    if (frac_ == 0 || !std::isfinite(frac_)) return frac_;
    if (exp_ > 4096) return std::copysign(std::numeric_limits<double>::infinity(), frac_);
    if (exp_ < -4096) return std::copysign(0.0, frac_);
    return std::ldexp(frac_, static_cast<int>(exp_));
}

double WideReal::log2_abs() const {
    if (frac_ == 0) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(frac_)) + static_cast<double>(exp_);
}

int WideReal::sign() const { return (frac_ > 0) - (frac_ < 0); }

bool WideReal::is_finite() const { return std::isfinite(frac_); }

WideReal WideReal::operator-() const {
    WideReal w = *this;
    w.frac_ = -w.frac_;
    return w;
}

WideReal operator+(const WideReal& a, const WideReal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (!a.is_finite() || !b.is_finite()) return WideReal(a.frac_ + b.frac_);
    const std::int64_t diff = a.exp_ - b.exp_;
    if (diff > kAlignLimit) return a;
    if (diff < -kAlignLimit) return b;
    WideReal w;
    if (diff >= 0) {
        w.frac_ = a.frac_ + std::ldexp(b.frac_, static_cast<int>(-diff));
        w.exp_ = a.exp_;
    } else {
        w.frac_ = std::ldexp(a.frac_, static_cast<int>(diff)) + b.frac_;
        w.exp_ = b.exp_;
    }
    w.normalize();
    return w;
}

WideReal operator-(const WideReal& a, const WideReal& b) { return a + (-b); }

WideReal operator*(const WideReal& a, const WideReal& b) {
    WideReal w;
    w.frac_ = a.frac_ * b.frac_;
    w.exp_ = a.exp_ + b.exp_;
    w.normalize();
    return w;
}

WideReal operator/(const WideReal& a, const WideReal& b) {
    if (b.is_zero()) throw DomainError("WideReal: division by zero");
    WideReal w;
    w.frac_ = a.frac_ / b.frac_;
    w.exp_ = a.exp_ - b.exp_;
    w.normalize();
    return w;
}

std::partial_ordering operator<=>(const WideReal& a, const WideReal& b) {
    const WideReal d = a - b;
    if (std::isnan(d.frac_)) return std::partial_ordering::unordered;
    return d.frac_ <=> 0.0;
}

bool operator==(const WideReal& a, const WideReal& b) { return a.frac_ == b.frac_ && a.exp_ == b.exp_; }

WideReal abs(const WideReal& x) { return x.sign() < 0 ? -x : x; }

WideReal sqrt(const WideReal& x) {
    if (x.sign() < 0) throw DomainError("WideReal: sqrt of a negative number");
    if (x.is_zero()) return x;
    // split off an even exponent so the mantissa stays in range
    const double l = x.log2_abs();
    const auto half = static_cast<std::int64_t>(std::floor(l / 2));
    const double m = (x / WideReal::scaled(1, 2 * half)).to_double();
    return WideReal::scaled(std::sqrt(m), half);
}

WideReal pow(const WideReal& x, int n) {
    if (n < 0) return WideReal(1) / pow(x, -n);
    WideReal result(1), base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

}  // namespace symext
