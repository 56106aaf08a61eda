#include "abnormal/level_real.hpp"

#include "abnormal/error.hpp"

#include <algorithm>

namespace abnormal {

namespace {

// Canonical-level thresholds: raise above 2^64, lower once the log is <= 19.
bool above_raise_threshold(const Interval& v) { return mpfr_cmp_ui_2exp(v.lo(), 1, 64) > 0; }
bool below_lower_threshold(const Interval& v) { return mpfr_cmp_ui(v.hi(), 19) <= 0; }

Interval raise_once(const Interval& v) {
    if (!v.certainly_positive()) fail(ErrorKind::Level, "iterated logarithm of a value not certainly above 1");
    return v.log10();
}

Interval pointwise_max(const Interval& a, const Interval& b) {
    mpfr_t lo, hi;
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_max(lo, a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(hi, a.hi(), b.hi(), MPFR_RNDU);
    Interval r = Interval::from_endpoints(lo, hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

} // namespace

LevelReal::LevelReal(int level, Interval value) : level_(level), value_(std::move(value)) {
    require(level >= 0, "negative iterated-log level");
}

LevelReal LevelReal::from_integer(const Integer& value, mpfr_prec_t precision) {
    return LevelReal(0, Interval::from_integer(value, precision)).normalized();
}

LevelReal LevelReal::normalized() const {
    int level = level_;
    Interval v = value_;
    while (v.is_finite() && above_raise_threshold(v)) {
        v = v.log10();
        ++level;
    }
    while (level > 0 && below_lower_threshold(v)) {
        v = v.exp10();
        --level;
    }
    return LevelReal(level, std::move(v));
}

Interval LevelReal::at_level(int h) const {
    require(h >= 0, "negative iterated-log level");
    int level = level_;
    Interval v = value_;
    while (level < h) {
        v = raise_once(v);
        ++level;
    }
    while (level > h) {
        v = v.exp10();
        --level;
    }
    return v;
}

std::optional<Interval> LevelReal::as_value() const {
    Interval v = at_level(0);
    if (!v.is_finite()) return std::nullopt;
    return v;
}

LevelReal LevelReal::log10() const {
    if (level_ >= 1) return LevelReal(level_ - 1, value_).normalized();
    return LevelReal(0, raise_once(value_)).normalized();
}

LevelReal LevelReal::exp10() const { return LevelReal(level_ + 1, value_).normalized(); }

LevelReal LevelReal::add(const Interval& delta) const {
    if (auto v = as_value()) return LevelReal(0, *v + delta).normalized();
    // x lies beyond the exponent range; its saturated lower end is still a
    // valid lower bound. For |delta| <= x/2 and x >= 1,
    //   |log10(x + delta) - log10(x)| <= |delta| / x,
    // and the same radius bounds the shift at every deeper level since each
    // of those levels is itself >= 1.
    Interval x = at_level(0);
    Interval radius = Interval::symmetric_ratio(delta, x);
    return log10().add(radius).exp10();
}

LevelReal LevelReal::add(const LevelReal& other) const {
    auto a = as_value();
    auto b = other.as_value();
    if (a && b) return LevelReal(0, *a + *b).normalized();
    if (b) return add(*b);
    if (a) return other.add(*a);
    // Both huge: max(x, y) <= x + y <= 2 max(x, y).
    int h = std::max(level_, other.level_);
    Interval upper = pointwise_max(at_level(h), other.at_level(h));
    mpfr_prec_t p = std::max(precision(), other.precision());
    Interval shift = Interval::hull(Interval::point(0, p), Interval::log10_of(Integer(2), p));
    return LevelReal(h, upper).log10().add(shift).exp10();
}

LevelReal LevelReal::scale(const Interval& factor) const {
    require(factor.certainly_positive(), "scale requires a positive factor");
    if (auto v = as_value()) return LevelReal(0, *v * factor).normalized();
    return log10().add(factor.log10()).exp10();
}

LevelReal LevelReal::multiply(const LevelReal& other) const {
    auto a = as_value();
    auto b = other.as_value();
    if (a && b) return LevelReal(0, *a * *b).normalized();
    return log10().add(other.log10()).exp10();
}

LevelReal LevelReal::pow(const Interval& exponent) const {
    require(exponent.certainly_positive(), "pow requires a positive exponent");
    return log10().scale(exponent).exp10();
}

LevelComparison compare(const LevelReal& a, const LevelReal& b) {
    LevelReal x = a.normalized();
    LevelReal y = b.normalized();
    int h = std::min(x.level(), y.level());
    Interval xa = x.at_level(h);
    Interval yb = y.at_level(h);
    LevelComparison out;
    out.level = h;
    if (xa.certainly_less(yb)) {
        out.verdict = -1;
        out.margin = Interval::from_endpoints(yb.lo(), yb.lo()) - Interval::from_endpoints(xa.hi(), xa.hi());
    } else if (xa.certainly_greater(yb)) {
        out.verdict = 1;
        out.margin = Interval::from_endpoints(xa.lo(), xa.lo()) - Interval::from_endpoints(yb.hi(), yb.hi());
    }
    return out;
}

} // namespace abnormal
