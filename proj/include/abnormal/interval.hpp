#pragma once

// Closed real intervals with MPFR endpoints. Every operation rounds the lower
// endpoint toward -inf and the upper endpoint toward +inf, so the result
// always contains the exact image of the operands.

#include "abnormal/exact_arith.hpp"

#include <mpfr.h>

#include <optional>
#include <string>

namespace abnormal {

// Bits of working precision for a requested number of significant decimals.
mpfr_prec_t bits_for_digits(long digits);

class Interval {
public:
    explicit Interval(mpfr_prec_t precision = 128);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval point(long value, mpfr_prec_t precision);
    static Interval from_integer(const Integer& value, mpfr_prec_t precision);
    static Interval from_rational(const Rational& value, mpfr_prec_t precision);
    static Interval hull(const Interval& a, const Interval& b);
    static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi);
    // [-w, w] with w = max|numerator| / lo(denominator); denominator > 0.
    static Interval symmetric_ratio(const Interval& numerator, const Interval& denominator);
    static Interval log10_of(const Integer& value, mpfr_prec_t precision);
    static Interval log10_of(const Rational& value, mpfr_prec_t precision);

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
    bool certainly_greater(const Interval& other) const { return other.certainly_less(*this); }
    bool contains(const Rational& value) const;
    bool contains(const Interval& other) const;

    Interval operator+(const Interval& other) const;
    Interval operator-(const Interval& other) const;
    Interval operator*(const Interval& other) const;
    Interval operator/(const Interval& other) const;
    Interval operator-() const;

    Interval log10() const;   // requires lo > 0
    Interval exp10() const;   // overflow saturates: lo to the largest finite value, hi to +inf
    Interval abs_upper() const; // [0, max |x|]
    Interval widen(const Interval& radius) const; // [lo - r.hi, hi + r.hi]

    // floor(lo), floor(hi); equal iff the interval contains no integer in its interior.
    Integer floor_lo() const;
    Integer floor_hi() const;
    std::optional<Integer> exact_floor() const;

    // Upper bound of hi - lo.
    Interval width() const;
    // Overlap of two enclosures of the same quantity.
    Interval intersect(const Interval& other) const;

    std::string lo_string(int digits = 0) const;
    std::string hi_string(int digits = 0) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

// Sets the MPFR exponent range to its maximum. Called by every Interval
// constructor; idempotent.
void ensure_wide_exponent_range();

} // namespace abnormal
