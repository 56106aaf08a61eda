#include "abnormal/interval.hpp"

#include "abnormal/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace abnormal {

void ensure_wide_exponent_range() {
    thread_local bool done = false;
    if (done) return;
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    done = true;
}

mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 8;
}

Interval::Interval(mpfr_prec_t precision) {
    ensure_wide_exponent_range();
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
    mpfr_init2(lo_, other.precision());
    mpfr_init2(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
    mpfr_init2(lo_, other.precision());
    mpfr_init2(hi_, other.precision());
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this == &other) return *this;
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::point(long value, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_si(r.lo_, value, MPFR_RNDD);
    mpfr_set_si(r.hi_, value, MPFR_RNDU);
    return r;
}

Interval Interval::from_integer(const Integer& value, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_rational(const Rational& value, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_q(r.lo_, value.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, value.mpq().get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi) {
    Interval r(std::max(mpfr_get_prec(lo), mpfr_get_prec(hi)));
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    require(mpfr_lessequal_p(r.lo_, r.hi_), "interval endpoints out of order");
    return r;
}

Interval Interval::symmetric_ratio(const Interval& numerator, const Interval& denominator) {
    require(denominator.certainly_positive(), "symmetric_ratio requires a positive denominator");
    Interval r(std::max(numerator.precision(), denominator.precision()));
    Interval a = numerator.abs_upper();
    mpfr_div(r.hi_, a.hi_, denominator.lo_, MPFR_RNDU);
    mpfr_neg(r.lo_, r.hi_, MPFR_RNDD);
    return r;
}

Interval Interval::log10_of(const Integer& value, mpfr_prec_t precision) {
    require(value > 0, "log10 of non-positive integer");
    return from_integer(value, precision).log10();
}

Interval Interval::log10_of(const Rational& value, mpfr_prec_t precision) {
    require(value.sign() > 0, "log10 of non-positive rational");
    // log10(p) - log10(q) keeps full relative precision for tiny values.
    return log10_of(value.numerator(), precision) - log10_of(value.denominator(), precision);
}

bool Interval::contains(const Rational& value) const {
    return mpfr_cmp_q(lo_, value.mpq().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.mpq().get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& other) const {
    return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

Interval Interval::operator+(const Interval& other) const {
    Interval r(std::max(precision(), other.precision()));
    mpfr_add(r.lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, other.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& other) const {
    Interval r(std::max(precision(), other.precision()));
    mpfr_sub(r.lo_, lo_, other.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, other.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& other) const {
    mpfr_prec_t p = std::max(precision(), other.precision());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr b[2] = {other.lo_, other.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : a) {
        for (auto y : b) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    }
    mpfr_clear(t);
    return r;
}

Interval Interval::operator/(const Interval& other) const {
    require(other.certainly_positive() || other.certainly_negative(), "interval division by an interval containing 0");
    mpfr_prec_t p = std::max(precision(), other.precision());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr b[2] = {other.lo_, other.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : a) {
        for (auto y : b) {
            mpfr_div(t, x, y, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    }
    mpfr_clear(t);
    return r;
}

Interval Interval::log10() const {
    require(certainly_positive(), "log10 of an interval that is not certainly positive");
    Interval r(precision());
    mpfr_log10(r.lo_, lo_, MPFR_RNDD);
    mpfr_log10(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::exp10() const {
    Interval r(precision());
    mpfr_exp10(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp10(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::abs_upper() const {
    Interval r(precision());
    mpfr_t a;
    mpfr_init2(a, precision());
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(r.hi_, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, a, MPFR_RNDU);
    mpfr_clear(a);
    return r;
}

Interval Interval::widen(const Interval& radius) const {
    Interval r(std::max(precision(), radius.precision()));
    mpfr_sub(r.lo_, lo_, radius.hi_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, radius.hi_, MPFR_RNDU);
    return r;
}

Integer Interval::floor_lo() const {
    require(mpfr_number_p(lo_), "floor of a non-finite endpoint");
    Integer z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
}

Integer Interval::floor_hi() const {
    require(mpfr_number_p(hi_), "floor of a non-finite endpoint");
    Integer z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDD);
    return z;
}

std::optional<Integer> Interval::exact_floor() const {
    if (!is_finite()) return std::nullopt;
    Integer a = floor_lo();
    Integer b = floor_hi();
    if (a != b) return std::nullopt;
    return a;
}

Interval Interval::width() const {
    Interval r(precision());
    mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    return r;
}

Interval Interval::intersect(const Interval& other) const {
    Interval r(std::max(precision(), other.precision()));
    mpfr_max(r.lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, hi_, other.hi_, MPFR_RNDU);
    require(mpfr_lessequal_p(r.lo_, r.hi_), "disjoint enclosures of the same quantity");
    return r;
}

namespace {

std::string render(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    if (mpfr_nan_p(x)) return "nan";
    if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(std::max<long>(10, static_cast<long>(mpfr_get_prec(x) / 3.33) - 2));
    char* buf = nullptr;
    // Scientific notation rounded in the endpoint's outward direction.
    std::string fmt = std::string("%.") + std::to_string(digits - 1) + (rnd == MPFR_RNDD ? "RDe" : "RUe");
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

} // namespace

std::string Interval::lo_string(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return render(hi_, digits, MPFR_RNDU); }

} // namespace abnormal
