#include "abnormal/digits.hpp"

#include "abnormal/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace abnormal {

namespace {

constexpr char kMagic[4] = {'A', 'D', 'G', '1'};

unsigned bits_per_digit(unsigned base) {
    unsigned w = 0;
    while ((1u << w) < base) ++w;
    return w;
}

void check_base(unsigned base) {
    require(base >= 2 && base <= 36, "digit bases must lie in 2..36");
}

Integer power_of_base(unsigned base, std::size_t exponent) {
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), base, exponent);
    return v;
}

// The `count` low-order base-b digits of x, most significant first.
DigitString low_digits(const Integer& x, unsigned base, std::size_t count) {
    std::vector<std::uint8_t> out(count, 0);
    if (count == 0 || x == 0) return DigitString(base, std::move(out));
    std::string s = x.get_str(static_cast<int>(base));
    require(s.size() <= count, "digit window overflow");
    std::size_t offset = count - s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        out[offset + i] = static_cast<std::uint8_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    return DigitString(base, std::move(out));
}

void require_unit_interval(const Rational& r) {
    require(r.sign() >= 0 && r < Rational(1), "expansion requires 0 <= r < 1");
}

} // namespace

char digit_char(unsigned d) {
    require(d < 36, "digit out of range");
    return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

DigitString::DigitString(unsigned base) : base_(base) { check_base(base); }

DigitString::DigitString(unsigned base, std::vector<std::uint8_t> digits) : base_(base), digits_(std::move(digits)) {
    check_base(base);
    for (auto d : digits_) require(d < base_, "digit out of range");
}

DigitString DigitString::from_text(std::string_view text, unsigned base) {
    DigitString s(base);
    s.digits_.reserve(text.size());
    for (char c : text) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'Z') v = c - 'A' + 10;
        if (v < 0 || static_cast<unsigned>(v) >= base)
            fail(ErrorKind::Parse, std::string("invalid base-") + std::to_string(base) + " digit '" + c + "'");
        s.digits_.push_back(static_cast<std::uint8_t>(v));
    }
    return s;
}

void DigitString::push_back(std::uint8_t d) {
    require(d < base_, "digit out of range");
    digits_.push_back(d);
}

void DigitString::append(const DigitString& other) {
    require(other.base_ == base_, "cannot append digit strings of different bases");
    digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
}

DigitString DigitString::substr(std::size_t pos, std::size_t count) const {
    require(pos <= digits_.size(), "substr position out of range");
    std::size_t n = std::min(count, digits_.size() - pos);
    return DigitString(base_, std::vector<std::uint8_t>(digits_.begin() + pos, digits_.begin() + pos + n));
}

std::string DigitString::to_string() const {
    std::string s;
    s.reserve(digits_.size());
    for (auto d : digits_) s.push_back(digit_char(d));
    return s;
}

std::vector<std::uint8_t> DigitString::pack() const {
    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    out.push_back(static_cast<std::uint8_t>(base_));
    std::uint64_t n = digits_.size();
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
    unsigned w = bits_per_digit(base_);
    std::size_t start = out.size();
    out.resize(start + (n * w + 7) / 8, 0);
    std::size_t bit = 0;
    for (auto d : digits_) {
        for (unsigned k = 0; k < w; ++k, ++bit)
            if (d >> k & 1u) out[start + bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
    }
    return out;
}

DigitString DigitString::unpack(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 13 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        fail(ErrorKind::Parse, "not a packed digit string");
    unsigned base = bytes[4];
    if (base < 2 || base > 36) fail(ErrorKind::Parse, "packed digit string has invalid base");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(bytes[5 + i]) << (8 * i);
    unsigned w = bits_per_digit(base);
    if ((bytes.size() - 13) * 8 < n * w) fail(ErrorKind::Parse, "packed digit string is truncated");
    std::vector<std::uint8_t> digits(n);
    std::size_t bit = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        unsigned d = 0;
        for (unsigned k = 0; k < w; ++k, ++bit)
            if (bytes[13 + bit / 8] >> (bit % 8) & 1u) d |= 1u << k;
        if (d >= base) fail(ErrorKind::Parse, "packed digit out of range");
        digits[i] = static_cast<std::uint8_t>(d);
    }
    return DigitString(base, std::move(digits));
}

Rational PeriodicExpansion::to_rational() const {
    auto value_of = [this](const DigitString& s) {
        Integer v = 0;
        for (std::size_t i = 0; i < s.size(); ++i) v = v * base + s[i];
        return v;
    };
    Rational x = Rational(value_of(preperiod));
    if (!period.empty()) x = x + Rational(value_of(period), power_of_base(base, period.size()) - 1);
    return Rational(integer_part) + x / Rational(power_of_base(base, preperiod.size()));
}

std::string PeriodicExpansion::to_string() const {
    std::string s = integer_part.get_str() + "." + preperiod.to_string();
    if (!period.empty()) s += "(" + period.to_string() + ")";
    if (preperiod.empty() && period.empty()) s += "0";
    return s;
}

PeriodicExpansion expand_rational(const Rational& r, unsigned base, std::size_t period_budget) {
    check_base(base);
    require_unit_interval(r);
    Integer q = r.denominator();
    Integer b(base);
    std::size_t pre = 0;
    for (const auto& f : factorize(b).factors) {
        unsigned long vq = p_adic_valuation(q, f.prime);
        std::size_t need = (vq + f.exponent - 1) / f.exponent;
        pre = std::max(pre, need);
    }
    Integer coprime = coprime_part(q, b);
    std::size_t period = 0;
    if (coprime > 1) {
        Integer ord = multiplicative_order(b, coprime);
        if (!ord.fits_ulong_p() || ord.get_ui() > period_budget)
            fail(ErrorKind::Budget, "period length " + ord.get_str() + " exceeds the budget of " +
                                        std::to_string(period_budget));
        period = ord.get_ui();
    }
    DigitString all = digits_prefix(r, base, pre + period);
    PeriodicExpansion e;
    e.base = base;
    e.preperiod = all.substr(0, pre);
    e.period = all.substr(pre);
    return e;
}

DigitString digits_window(const Rational& r, unsigned base, const Integer& first, std::size_t count) {
    check_base(base);
    require_unit_interval(r);
    require(first >= 1, "digit positions start at 1");
    const Integer& q = r.denominator();
    Integer rem = mod_pow(Integer(base), Integer(first - 1), q);
    rem = (rem * r.numerator()) % q;
    Integer x = rem * power_of_base(base, count);
    mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
    return low_digits(x, base, count);
}

DigitString digits_prefix(const Rational& r, unsigned base, std::size_t count) {
    return digits_window(r, base, Integer(1), count);
}

DigitStats digit_stats(const DigitString& digits) {
    DigitStats s;
    s.base = digits.base();
    s.length = digits.size();
    s.counts.assign(digits.base(), 0);
    for (auto d : digits.digits()) ++s.counts[d];
    return s;
}

std::size_t count_digit(const DigitString& digits, unsigned digit) {
    require(digit < digits.base(), "digit out of range");
    return static_cast<std::size_t>(std::count(digits.digits().begin(), digits.digits().end(), digit));
}

Rational frequency(const DigitString& digits, unsigned digit) {
    require(!digits.empty(), "frequency of an empty prefix");
    return Rational(Integer(count_digit(digits, digit)), Integer(digits.size()));
}

std::size_t count_string(const DigitString& digits, const DigitString& pattern) {
    require(!pattern.empty(), "pattern must be non-empty");
    require(pattern.base() == digits.base(), "pattern base differs from the digit string");
    const auto& hay = digits.digits();
    const auto& needle = pattern.digits();
    std::size_t n = 0;
    auto it = hay.begin();
    while (true) {
        it = std::search(it, hay.end(), needle.begin(), needle.end());
        if (it == hay.end()) break;
        ++n;
        ++it;
    }
    return n;
}

DigitString champernowne_prefix(std::size_t count) {
    if (count > kChampernowneBudget)
        fail(ErrorKind::Budget, "Champernowne prefixes are limited to " + std::to_string(kChampernowneBudget) + " digits");
    std::vector<std::uint8_t> out;
    out.reserve(count);
    char buf[24];
    for (std::uint64_t n = 1; out.size() < count; ++n) {
        int len = std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(n));
        for (int i = 0; i < len && out.size() < count; ++i) out.push_back(static_cast<std::uint8_t>(buf[i] - '0'));
    }
    return DigitString(10, std::move(out));
}

Rational liouville_partial(unsigned k) {
    require(k >= 1, "liouville_partial requires k >= 1");
    if (k > 8) fail(ErrorKind::Budget, "liouville_partial is limited to k <= 8");
    Rational sum = 0;
    unsigned long factorial = 1;
    for (unsigned n = 1; n <= k; ++n) {
        factorial *= n;
        sum = sum + Rational(Integer(1), power_of_base(10, factorial));
    }
    return sum;
}

Integer floor_log_half(const TowerMagnitude& d, unsigned base, bool* capped) {
    check_base(base);
    if (capped) *capped = false;
    if (d.is_exact()) {
        // Largest m with 2 b^m <= d.
        const Integer& v = d.exact_value();
        require(v >= 2, "floor_log_half requires d >= 2");
        std::size_t m = mpz_sizeinbase(v.get_mpz_t(), base);
        Integer bm = power_of_base(base, m);
        while (m > 0 && 2 * bm > v) {
            mpz_divexact_ui(bm.get_mpz_t(), bm.get_mpz_t(), base);
            --m;
        }
        return Integer(static_cast<unsigned long>(m));
    }
    for (long digits = 64; digits <= 4096; digits *= 2) {
        mpfr_prec_t p = bits_for_digits(digits);
        LevelReal e = d.enclose(p);
        if (e.level() >= 2) {
            if (capped) *capped = true;
            Integer cap;
            mpz_ui_pow_ui(cap.get_mpz_t(), 2, 64);
            return cap;
        }
        Interval v = (e.at_level(1) - Interval::log10_of(Integer(2), p)) / Interval::log10_of(Integer(base), p);
        if (auto f = v.exact_floor()) return *f;
    }
    fail(ErrorKind::Precision, "floor(log_b(d/2)) is not resolved at 4096 digits for " + d.to_string());
}

OracleDigits alpha_digit_oracle(const DSequence& seq, unsigned base, const Integer& first, const Integer& last,
                                std::optional<unsigned long> k) {
    check_base(base);
    require(first >= 1 && first <= last, "oracle range must satisfy 1 <= first <= last");
    OracleDigits out;
    OracleCertificate& cert = out.certificate;
    cert.k = k ? *k : seq.largest_materialized();
    require(cert.k >= 2, "oracle approximant index must be >= 2");
    Rational alpha = alpha_exact(seq, cert.k);
    TowerMagnitude next = seq.d(cert.k + 1);
    Integer mu = floor_log_half(next, base, &cert.safe_limit_capped);
    cert.safe_limit = mu - 2;
    if (last > cert.safe_limit)
        fail(ErrorKind::Precondition, "position " + last.get_str() + " is beyond the safe limit " +
                                          cert.safe_limit.get_str() + " of alpha_" + std::to_string(cert.k));
    Integer span = last - first + 1;
    require(span.fits_ulong_p() && span.get_ui() <= (std::size_t{1} << 30), "oracle window is too long");
    std::size_t count = span.get_ui();

    const Integer& p = alpha.numerator();
    const Integer& q = alpha.denominator();
    Integer rem = (mod_pow(Integer(base), last, q) * p) % q;
    // alpha_K - 2/d_{K+1} < alpha < alpha_K and 2/d_{K+1} <= b^-mu. With
    // rem = p b^last mod q, floor(alpha b^last) = floor(alpha_K b^last) when
    // rem b^(mu - last) >= q, and = alpha_K b^last - 1 when rem = 0.
    if (rem == 0) {
        cert.borrow = true;
    } else {
        Integer gap = mu - last;
        double needed = static_cast<double>(bit_length(q)) / std::log2(static_cast<double>(base));
        bool ok = gap.get_d() >= needed + 1;
        if (!ok) {
            Integer scaled = rem * power_of_base(base, gap.get_ui());
            ok = scaled >= q;
        }
        if (!ok)
            fail(ErrorKind::Ambiguity, "digit " + last.get_str() + " of alpha_" + std::to_string(cert.k) +
                                           " is too close to a boundary to certify; use a larger k");
    }

    Integer start = (mod_pow(Integer(base), first - 1, q) * p) % q;
    Integer x = start * power_of_base(base, count);
    mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
    if (cert.borrow) {
        if (x == 0) x = power_of_base(base, count);
        x -= 1;
    }
    out.digits = low_digits(x, base, count);
    return out;
}

} // namespace abnormal
