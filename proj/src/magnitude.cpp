#include "abnormal/magnitude.hpp"

#include "abnormal/error.hpp"

#include <cmath>

namespace abnormal {

TowerMagnitude TowerMagnitude::exact(Integer value) {
    require(value >= 1, "tower magnitudes are positive integers");
    return TowerMagnitude(std::move(value));
}

TowerMagnitude TowerMagnitude::power(unsigned long base, TowerMagnitude exponent, MaterializationBudget budget,
                                     Integer coefficient, long shift) {
    require(base >= 2, "tower power base must be >= 2");
    require(coefficient >= 1, "tower power coefficient must be >= 1");
    if (exponent.is_exact()) {
        Integer e = exponent.exact_value() + shift;
        require(e >= 0, "tower power exponent must be non-negative");
        double bits = e.get_d() * std::log2(static_cast<double>(base)) + static_cast<double>(bit_length(coefficient));
        if (bits <= static_cast<double>(budget.bits) && e.fits_ulong_p()) {
            Integer v;
            mpz_pow_ui(v.get_mpz_t(), Integer(base).get_mpz_t(), e.get_ui());
            return TowerMagnitude(Integer(v * coefficient));
        }
    }
    Power p{std::move(coefficient), base, std::make_shared<const TowerMagnitude>(std::move(exponent)), shift};
    return TowerMagnitude(std::move(p));
}

const Integer& TowerMagnitude::exact_value() const {
    if (!is_exact()) fail(ErrorKind::Budget, "magnitude " + to_string() + " is not materialized");
    return std::get<Integer>(rep_);
}

const TowerMagnitude::Power& TowerMagnitude::as_power() const {
    if (is_exact()) fail(ErrorKind::Level, "magnitude is exact, not a symbolic power");
    return std::get<Power>(rep_);
}

LevelReal TowerMagnitude::enclose(mpfr_prec_t precision) const {
    if (is_exact()) return LevelReal::from_integer(std::get<Integer>(rep_), precision);
    const Power& p = std::get<Power>(rep_);
    LevelReal e = p.exponent->enclose(precision);
    if (p.shift != 0) e = e.add(Interval::point(p.shift, precision));
    LevelReal log_value = e.scale(Interval::log10_of(Integer(p.base), precision));
    if (p.coefficient != 1) log_value = log_value.add(Interval::log10_of(p.coefficient, precision));
    return log_value.exp10();
}

std::string TowerMagnitude::to_string() const {
    if (is_exact()) {
        const Integer& v = std::get<Integer>(rep_);
        std::size_t digits = mpz_sizeinbase(v.get_mpz_t(), 10);
        if (digits <= 80) return v.get_str();
        return "<" + std::to_string(digits) + "-digit integer>";
    }
    const Power& p = std::get<Power>(rep_);
    std::string s;
    if (p.coefficient != 1) s += p.coefficient.get_str() + "*";
    s += std::to_string(p.base) + "^";
    std::string inner = p.exponent->to_string();
    if (p.shift == 0 && p.exponent->is_exact()) return s + inner;
    if (p.shift > 0) inner += "+" + std::to_string(p.shift);
    if (p.shift < 0) inner += std::to_string(p.shift);
    return s + "(" + inner + ")";
}

bool operator==(const TowerMagnitude& a, const TowerMagnitude& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) return std::get<Integer>(a.rep_) == std::get<Integer>(b.rep_);
    const auto& x = std::get<TowerMagnitude::Power>(a.rep_);
    const auto& y = std::get<TowerMagnitude::Power>(b.rep_);
    return x.coefficient == y.coefficient && x.base == y.base && x.shift == y.shift && *x.exponent == *y.exponent;
}

Quantity Quantity::of(const TowerMagnitude& m) {
    Quantity q;
    if (m.is_exact()) q.exact = m.exact_value();
    q.enclose = [m](mpfr_prec_t p) { return m.enclose(p); };
    q.label = m.to_string();
    return q;
}

Quantity Quantity::of(const Integer& n) { return of(TowerMagnitude::exact(n)); }

Quantity twice_square(const TowerMagnitude& d, MaterializationBudget budget) {
    Quantity q;
    if (d.is_exact() && 2 * bit_length(d.exact_value()) + 1 <= budget.bits)
        q.exact = Integer(2 * d.exact_value() * d.exact_value());
    q.enclose = [d](mpfr_prec_t p) {
        return d.enclose(p).pow(Interval::point(2, p)).scale(Interval::point(2, p));
    };
    q.label = "2*(" + d.to_string() + ")^2";
    return q;
}

Quantity power_of(const TowerMagnitude& base, const TowerMagnitude& exponent, MaterializationBudget budget) {
    Quantity q;
    if (base.is_exact() && exponent.is_exact() && exponent.exact_value().fits_ulong_p()) {
        double bits = static_cast<double>(bit_length(base.exact_value())) * exponent.exact_value().get_d();
        if (bits <= static_cast<double>(budget.bits)) {
            Integer v;
            mpz_pow_ui(v.get_mpz_t(), base.exact_value().get_mpz_t(), exponent.exact_value().get_ui());
            q.exact = v;
        }
    }
    q.enclose = [base, exponent](mpfr_prec_t p) {
        return base.enclose(p).log10().multiply(exponent.enclose(p)).exp10();
    };
    q.label = "(" + base.to_string() + ")^(" + exponent.to_string() + ")";
    return q;
}

std::string_view to_string(Ordering o) {
    switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    }
    return "?";
}

std::string CertifiedOrdering::level_name() const {
    if (exact) return "exact";
    switch (level) {
    case 0: return "value";
    case 1: return "log";
    case 2: return "log-log";
    default: return "log^" + std::to_string(level);
    }
}

CertifiedOrdering compare(const Quantity& a, const Quantity& b, PrecisionPolicy policy) {
    if (a.exact && b.exact) {
        int c = cmp(*a.exact, *b.exact);
        CertifiedOrdering out;
        out.verdict = c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
        out.exact = true;
        Integer gap = abs(*a.exact - *b.exact);
        // Large gaps are reported as a rounded-down decimal rather than in full.
        if (mpz_sizeinbase(gap.get_mpz_t(), 10) <= 80) out.margin = gap.get_str();
        else out.margin = Interval::from_integer(gap, 64).lo_string(12);
        return out;
    }
    for (long digits = policy.start_digits;; digits *= 2) {
        mpfr_prec_t p = bits_for_digits(digits);
        LevelReal x = a.exact ? LevelReal::from_integer(*a.exact, p) : a.enclose(p);
        LevelReal y = b.exact ? LevelReal::from_integer(*b.exact, p) : b.enclose(p);
        LevelComparison c = compare(x, y);
        if (c.verdict != 0) {
            CertifiedOrdering out;
            out.verdict = c.verdict < 0 ? Ordering::Less : Ordering::Greater;
            out.level = c.level;
            out.digits = digits;
            out.margin = c.margin.lo_string(12);
            return out;
        }
        if (digits >= policy.max_digits)
            fail(ErrorKind::Precision, "enclosures of " + a.label + " and " + b.label + " did not separate at " +
                                           std::to_string(digits) + " digits");
    }
}

CertifiedOrdering compare(const TowerMagnitude& a, const TowerMagnitude& b, PrecisionPolicy policy) {
    if (!a.is_exact() && !b.is_exact() && a == b) {
        CertifiedOrdering out;
        out.verdict = Ordering::Equal;
        out.exact = true;
        out.margin = "0";
        return out;
    }
    return compare(Quantity::of(a), Quantity::of(b), policy);
}

namespace {

bool width_at_most(const Interval& v, long digits) {
    Interval w = v.width();
    mpfr_t bound;
    mpfr_init2(bound, v.precision());
    mpfr_set_si(bound, -digits, MPFR_RNDN);
    mpfr_exp10(bound, bound, MPFR_RNDD);
    bool ok = mpfr_lessequal_p(w.hi(), bound) != 0;
    mpfr_clear(bound);
    return ok;
}

} // namespace

Interval log_in_base(const TowerMagnitude& d, unsigned long base, long digits) {
    require(base >= 2, "log_in_base requires base >= 2");
    if (d.is_exact()) {
        Integer rest, b(base);
        long e = static_cast<long>(mpz_remove(rest.get_mpz_t(), d.exact_value().get_mpz_t(), b.get_mpz_t()));
        if (rest == 1) return Interval::point(e, bits_for_digits(digits + 4));
    }
    for (mpfr_prec_t p = bits_for_digits(digits + 40);; p *= 2) {
        LevelReal log_value = d.enclose(p).log10();
        if (log_value.level() != 0)
            fail(ErrorKind::Level, "log10 of " + d.to_string() + " exceeds 2^64; use the iterated-log accessor");
        Interval v = log_value.value() / Interval::log10_of(Integer(base), p);
        if (width_at_most(v, digits)) return v;
        if (p > bits_for_digits(digits + 40) * 64)
            fail(ErrorKind::Precision, "log_in_base could not reach the requested width");
    }
}

Interval iterated_log10(const TowerMagnitude& d, int level, long digits) {
    Interval v = d.enclose(bits_for_digits(digits)).at_level(level);
    if (!v.is_finite())
        fail(ErrorKind::Level, "log10^" + std::to_string(level) + " of " + d.to_string() + " is out of range");
    return v;
}

CertifiedOrdering growth_check_square(const DAccessor& d, unsigned long j, MaterializationBudget budget,
                                      PrecisionPolicy policy) {
    require(j >= 3, "growth_check_square requires j >= 3");
    return compare(Quantity::of(d(j)), twice_square(d(j - 1), budget), policy);
}

CertifiedOrdering growth_check_tower(const DAccessor& d, unsigned long j, MaterializationBudget budget,
                                     PrecisionPolicy policy) {
    require(j >= 3, "growth_check_tower requires j >= 3");
    return compare(Quantity::of(d(j + 1)), power_of(d(j), d(j - 1), budget), policy);
}

} // namespace abnormal
