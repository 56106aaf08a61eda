#pragma once

#include "abnormal/interval.hpp"

#include <optional>

namespace abnormal {

// A positive real x known only through a certified enclosure of an iterated
// logarithm: log10^level(x) lies in value(), where log10^0(x) = x.
//
// Level 0 may hold any sign; level h >= 1 implies log10^(h-1)(x) > 0.
// The canonical level is the smallest h with |log10^h(x)| <= 2^64; values
// far beyond the MPFR exponent range are only ever handled at h >= 1.
class LevelReal {
public:
    LevelReal(int level, Interval value);

    static LevelReal from_interval(Interval value) { return LevelReal(0, std::move(value)); }
    static LevelReal from_integer(const Integer& value, mpfr_prec_t precision);

    int level() const { return level_; }
    const Interval& value() const { return value_; }
    mpfr_prec_t precision() const { return value_.precision(); }

    LevelReal normalized() const;

    // Enclosure of log10^h(x). Lowering saturates on overflow (upper end
    // becomes +inf), which keeps the enclosure sound.
    Interval at_level(int h) const;
    // at_level(0) when it is finite.
    std::optional<Interval> as_value() const;

    LevelReal log10() const;
    LevelReal exp10() const;
    LevelReal add(const Interval& delta) const;
    LevelReal add(const LevelReal& other) const;       // both operands positive
    LevelReal scale(const Interval& factor) const;      // factor > 0
    LevelReal multiply(const LevelReal& other) const;   // both operands positive
    LevelReal pow(const Interval& exponent) const;      // exponent > 0

private:
    int level_;
    Interval value_;
};

struct LevelComparison {
    int verdict = 0;     // -1 less, +1 greater, 0 undecided at this precision
    int level = 0;       // iterated-log level at which the enclosures separated
    Interval margin{64}; // lower bound of the gap at that level
};

LevelComparison compare(const LevelReal& a, const LevelReal& b);

} // namespace abnormal
