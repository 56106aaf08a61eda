#include "abnormal/construction.hpp"

#include "abnormal/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace abnormal {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

unsigned long parse_ulong(std::string_view s, std::string_view what) {
    s = trim(s);
    unsigned long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        fail(ErrorKind::Parse, "invalid " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

bool at_least(const TowerMagnitude& m, long bound) { return !m.is_exact() || m.exact_value() >= bound; }

Quantity doubled(const TowerMagnitude& d) {
    Quantity q;
    if (d.is_exact()) q.exact = Integer(2 * d.exact_value());
    q.enclose = [d](mpfr_prec_t p) { return d.enclose(p).scale(Interval::point(2, p)); };
    q.label = "2*" + d.to_string();
    return q;
}

// floor(2 / gap) for gap > 0.
Integer floor_two_over(const Rational& gap) {
    Integer num = 2 * gap.denominator();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), gap.numerator().get_mpz_t());
    return q;
}

} // namespace

unsigned long ExponentRule::n(unsigned long j) const {
    require(j >= 3, "n_j is defined for j >= 3");
    switch (kind) {
    case Kind::Ones: return 1;
    case Kind::Phi: return euler_phi(Integer(j - 1)).get_ui();
    case Kind::List: return j - 3 < values.size() ? values[j - 3] : 1;
    }
    return 1;
}

std::string ExponentRule::to_text() const {
    switch (kind) {
    case Kind::Ones: return "ones";
    case Kind::Phi: return "phi";
    case Kind::List: {
        std::string s = "list:";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(values[i]);
        }
        return s;
    }
    }
    return "ones";
}

ExponentRule ExponentRule::parse(std::string_view text) {
    text = trim(text);
    ExponentRule r;
    if (text == "ones") return r;
    if (text == "phi") {
        r.kind = Kind::Phi;
        return r;
    }
    if (text.substr(0, 5) != "list:") fail(ErrorKind::Parse, "unknown exponent rule '" + std::string(text) + "'");
    r.kind = Kind::List;
    std::string_view rest = text.substr(5);
    while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        unsigned long v = parse_ulong(item, "n_j");
        if (v == 0) fail(ErrorKind::Parse, "n_j must be >= 1");
        r.values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return r;
}

ConstructionParams ConstructionParams::standard() { return {}; }

ConstructionParams ConstructionParams::phi_variant() {
    ConstructionParams p;
    p.a = 1;
    p.n2 = 1;
    p.rule.kind = ExponentRule::Kind::Phi;
    return p;
}

ConstructionParams ConstructionParams::degenerate() {
    ConstructionParams p;
    p.a = 1;
    p.n2 = 1;
    return p;
}

Rational ConstructionParams::alpha2() const {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, n2);
    return Rational(a, den);
}

void ConstructionParams::validate() const {
    require(n2 >= 1, "n2 must be >= 1");
    require(n2 <= 4096, "n2 must be <= 4096");
    require(mpz_odd_p(a.get_mpz_t()) != 0, "a must be odd");
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, n2);
    require(a > 0 && a < bound, "a must satisfy 0 < a < 2^n2");
    for (unsigned long v : rule.values) require(v >= 1, "n_j must be >= 1");
}

std::string ConstructionParams::to_text() const {
    return "a=" + a.get_str() + "\nn2=" + std::to_string(n2) + "\nrule=" + rule.to_text() + "\n";
}

ConstructionParams ConstructionParams::parse(std::string_view text) {
    ConstructionParams p;
    bool seen_a = false, seen_n2 = false;
    while (!text.empty()) {
        std::size_t end = text.find_first_of("\n;");
        std::string_view line = trim(text.substr(0, end));
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(ErrorKind::Parse, "expected key=value, got '" + std::string(line) + "'");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "a") {
            p.a = parse_integer(value);
            seen_a = true;
        } else if (key == "n2") {
            p.n2 = parse_ulong(value, "n2");
            seen_n2 = true;
        } else if (key == "rule") {
            p.rule = ExponentRule::parse(value);
        } else {
            fail(ErrorKind::Parse, "unknown parameter '" + std::string(key) + "'");
        }
    }
    if (!seen_a || !seen_n2) fail(ErrorKind::Parse, "parameters need both a and n2");
    p.validate();
    return p;
}

std::optional<unsigned long> first_difference(const ConstructionParams& p1, const ConstructionParams& p2) {
    if (p1.alpha2() != p2.alpha2()) return 2;
    unsigned long limit = std::max(p1.rule.values.size(), p2.rule.values.size()) + 8;
    for (unsigned long j = 3; j <= limit; ++j)
        if (p1.n(j) != p2.n(j)) return j;
    return std::nullopt;
}

DSequence::DSequence(ConstructionParams params, MaterializationBudget budget)
    : params_(std::move(params)), budget_(budget) {
    params_.validate();
    Integer d2;
    mpz_ui_pow_ui(d2.get_mpz_t(), 2, params_.n2);
    d_.push_back(TowerMagnitude::exact(d2));
    e_.push_back(TowerMagnitude::exact(Integer(params_.n2)));
}

void DSequence::extend_to(unsigned long j) const {
    while (d_.size() + 1 < j) {
        unsigned long next = d_.size() + 2;
        const TowerMagnitude& prev = d_.back();
        unsigned long n = params_.n(next);
        TowerMagnitude e = TowerMagnitude::exact(1);
        if (prev.is_exact()) {
            const Integer& d = prev.exact_value();
            if (!mpz_divisible_ui_p(d.get_mpz_t(), next - 1))
                fail(ErrorKind::Precondition, "exponent e_" + std::to_string(next) + " is not an integer");
            Integer q;
            mpz_divexact_ui(q.get_mpz_t(), d.get_mpz_t(), next - 1);
            e = TowerMagnitude::exact(q * n);
            if (params_.rule.kind == ExponentRule::Kind::Phi && e_.back().is_exact() &&
                e_.back().exact_value().fits_ulong_p()) {
                FactoredInteger f = factorize(Integer(next - 1));
                f.value = d;
                for (auto& pp : f.factors) pp.exponent *= e_.back().exact_value().get_ui();
                if (euler_phi(f) != e.exact_value())
                    fail(ErrorKind::Precondition, "phi identity fails at j = " + std::to_string(next));
            }
        } else {
            // d_{j-1} = (j-1)^(e_{j-1}), so n_j d_{j-1} / (j-1) = n_j (j-1)^(e_{j-1} - 1).
            e = TowerMagnitude::power(next - 1, e_.back(), budget_, Integer(n), -1);
        }
        d_.push_back(TowerMagnitude::power(next, e, budget_));
        e_.push_back(std::move(e));
    }
}

TowerMagnitude DSequence::d(unsigned long j) const {
    require(j >= 2, "d_j is defined for j >= 2");
    std::lock_guard lock(mutex_);
    extend_to(j);
    return d_[j - 2];
}

TowerMagnitude DSequence::exponent(unsigned long j) const {
    require(j >= 2, "e_j is defined for j >= 2");
    std::lock_guard lock(mutex_);
    extend_to(j);
    return e_[j - 2];
}

DAccessor DSequence::accessor() const {
    return [this](unsigned long j) { return d(j); };
}

unsigned long DSequence::largest_materialized(unsigned long limit) const {
    unsigned long k = 2;
    while (k < limit && d(k + 1).is_exact()) ++k;
    return k;
}

Rational alpha_exact(const DSequence& seq, unsigned long k) {
    require(k >= 2, "alpha_k is defined for k >= 2");
    Rational alpha = seq.params().alpha2();
    for (unsigned long j = 3; j <= k; ++j) {
        TowerMagnitude d = seq.d(j);
        if (!d.is_exact())
            fail(ErrorKind::Budget, "alpha_" + std::to_string(k) + " needs d_" + std::to_string(j) + " = " +
                                        d.to_string() + "; largest materializable k is " +
                                        std::to_string(seq.largest_materialized(k)));
        alpha = alpha * Rational(d.exact_value() - 1, d.exact_value());
    }
    return alpha;
}

IntegralityResult integrality_check(const DSequence& seq, unsigned long k) {
    Rational alpha = alpha_exact(seq, k);
    IntegralityResult r;
    r.product = alpha * Rational(seq.d(k).exact_value());
    r.integral = r.product.is_integer();
    return r;
}

bool sandwich_check(const DSequence& seq, unsigned long k) {
    Rational ak = alpha_exact(seq, k);
    Rational next = alpha_exact(seq, k + 1);
    Rational lower = ak - Rational(Integer(2), seq.d(k + 1).exact_value());
    return ak > next && next > lower;
}

unsigned long certify_tail_domination(const DSequence& seq, unsigned long from, PrecisionPolicy policy) {
    require(from >= 2, "tail domination starts at j >= 2");
    for (unsigned long j = from; j < from + 64; ++j) {
        if (j >= 5 && at_least(seq.exponent(j), 2) && at_least(seq.d(j), 25)) return j;
        CertifiedOrdering c = compare(Quantity::of(seq.d(j + 1)), doubled(seq.d(j)), policy);
        if (c.verdict == Ordering::Less)
            fail(ErrorKind::Precondition, "tail domination fails: d_" + std::to_string(j + 1) + " < 2 d_" +
                                              std::to_string(j));
    }
    fail(ErrorKind::Precondition, "tail domination could not be certified from j = " + std::to_string(from));
}

LowerEnd lemma2_lower_end(const DSequence& seq, unsigned long k, mpfr_prec_t precision) {
    Rational ak = alpha_exact(seq, k);
    TowerMagnitude next = seq.d(k + 1);
    LowerEnd out;
    Interval two = Interval::point(2, precision);
    if (next.is_exact()) {
        out.exact = ak - Rational(Integer(2), next.exact_value());
        out.enclosure = Interval::from_rational(*out.exact, precision);
        return out;
    }
    Interval d = next.enclose(precision).at_level(0);
    out.enclosure = Interval::from_rational(ak, precision) - two / d;
    return out;
}

SeparationCertificate distinguish(const DSequence& first, const DSequence& second, PrecisionPolicy policy) {
    auto j = first_difference(first.params(), second.params());
    require(j.has_value(), "distinguish requires different parameters");
    SeparationCertificate cert;
    cert.k = *j;
    cert.alpha_first = alpha_exact(first, cert.k);
    cert.alpha_second = alpha_exact(second, cert.k);
    require(cert.alpha_first != cert.alpha_second, "approximants coincide at the first differing index");
    certify_tail_domination(first, cert.k + 1, policy);
    certify_tail_domination(second, cert.k + 1, policy);
    mpfr_prec_t p = bits_for_digits(policy.start_digits);
    cert.lower_first = lemma2_lower_end(first, cert.k, p);
    cert.lower_second = lemma2_lower_end(second, cert.k, p);
    bool first_larger = cert.alpha_first > cert.alpha_second;
    Rational gap = first_larger ? cert.alpha_first - cert.alpha_second : cert.alpha_second - cert.alpha_first;
    const DSequence& big = first_larger ? first : second;
    cert.separation = compare(Quantity::of(big.d(cert.k + 1)), Quantity::of(floor_two_over(gap)), policy);
    return cert;
}

ConstructionParams target_interval(const Rational& u, const Rational& v) {
    require(u >= Rational(0) && u < v && v <= Rational(1), "target interval needs 0 <= u < v <= 1");
    Rational w = v - u;
    ConstructionParams p;
    p.n2 = 1;
    Integer scale = 2;
    while (Rational(scale) * w < Rational(4)) {
        scale *= 2;
        ++p.n2;
    }
    // Smallest integer strictly above (u + w/4) * 2^n2, bumped to odd.
    Rational low = (u + w / Rational(4)) * Rational(scale);
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), low.numerator().get_mpz_t(), low.denominator().get_mpz_t());
    a += 1;
    if (mpz_even_p(a.get_mpz_t())) a += 1;
    p.a = a;
    require(Rational(a, scale) < v, "no odd numerator fits the target interval");
    p.validate();
    return p;
}

TargetCertificate certify_target(const DSequence& seq, const Rational& u, const Rational& v,
                                 PrecisionPolicy policy) {
    TargetCertificate t;
    t.alpha2 = seq.params().alpha2();
    if (!(t.alpha2 > u && t.alpha2 < v)) return t;
    certify_tail_domination(seq, 3, policy);
    t.lower_margin = compare(Quantity::of(seq.d(3)), Quantity::of(floor_two_over(t.alpha2 - u)), policy);
    t.certified = t.lower_margin.verdict == Ordering::Greater;
    return t;
}

DegenerateReport degenerate_check(const ConstructionParams& params) {
    DegenerateReport r;
    bool ones = params.rule.kind == ExponentRule::Kind::Ones ||
                (params.rule.kind == ExponentRule::Kind::List &&
                 std::all_of(params.rule.values.begin(), params.rule.values.end(), [](unsigned long v) { return v == 1; }));
    r.degenerate = params.a == 1 && params.n2 == 1 && ones;
    if (!r.degenerate) return r;
    DSequence seq(params);
    for (unsigned long k = 2; k <= 10; ++k) {
        Rational alpha = alpha_exact(seq, k);
        if (alpha != Rational(Integer(1), Integer(k))) fail(ErrorKind::Precondition, "degenerate witness mismatch");
        r.alphas.push_back(alpha);
    }
    return r;
}

} // namespace abnormal
