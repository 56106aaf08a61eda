#include "abnormal/approximation.hpp"

#include "abnormal/error.hpp"

#include <algorithm>

namespace abnormal {

namespace {

// max over p | k of ceil(e * v_p(k) / v_p(b)) for exact e.
Integer expansion_bound(const Integer& e, unsigned long k, unsigned base) {
    Integer best = 0;
    for (const auto& f : factorize(Integer(k)).factors) {
        unsigned long vb = p_adic_valuation(Integer(base), f.prime);
        Integer num = e * f.exponent;
        Integer c;
        mpz_cdiv_q_ui(c.get_mpz_t(), num.get_mpz_t(), vb);
        if (c > best) best = c;
    }
    return best;
}

// Upper bound of ceil(v_p(k) / v_p(b)) over p | k, for a symbolic exponent.
unsigned long ratio_ceiling(unsigned long k, unsigned base) {
    unsigned long best = 0;
    for (const auto& f : factorize(Integer(k)).factors) {
        unsigned long vb = p_adic_valuation(Integer(base), f.prime);
        best = std::max(best, (f.exponent + vb - 1) / vb);
    }
    return best;
}

void require_adic(unsigned long k, unsigned base) {
    if (coprime_part(Integer(k), Integer(base)) != 1)
        fail(ErrorKind::Precondition, "every prime factor of k = " + std::to_string(k) + " must divide b = " +
                                          std::to_string(base));
}

// log10 alpha_k, from the exact approximant or from the largest materialized one.
Interval log10_alpha(const DSequence& seq, unsigned long k, mpfr_prec_t p) {
    unsigned long kk = std::min(k, seq.largest_materialized(k));
    Rational ak = alpha_exact(seq, kk);
    if (kk == k) return Interval::log10_of(ak, p);
    LowerEnd lower = lemma2_lower_end(seq, kk, p);
    require(lower.enclosure.certainly_positive(), "lower bound of alpha is not positive");
    return Interval::hull(lower.enclosure.log10(), Interval::log10_of(ak, p));
}

struct NegLogEps {
    std::optional<Interval> value;     // -log_b eps when log10 d_{k+1} <= 2^64
    std::optional<LevelReal> magnitude; // otherwise
};

// -log_b eps with alpha_k/d_{k+1} <= eps <= alpha_k (1/d_{k+1} + 2/d_{k+2}).
NegLogEps neg_log_eps(const DSequence& seq, unsigned long k, unsigned base, mpfr_prec_t p) {
    Interval la = log10_alpha(seq, k, p);
    Interval lb = Interval::log10_of(Integer(base), p);
    LevelReal d1 = seq.d(k + 1).enclose(p);
    NegLogEps out;
    if (d1.level() >= 2) {
        // Only the size matters at this scale: -log10 eps = log10 d_{k+1} - log10 alpha_k - [0, 1].
        Interval shift = Interval::hull(-la, -la - Interval::point(1, p));
        out.magnitude = d1.log10().add(shift).scale(Interval::point(1, p) / lb);
        return out;
    }
    Interval l1 = d1.at_level(1);
    Interval l2 = seq.d(k + 2).enclose(p).at_level(1);
    // The correction term log10(1 + x) with x = 2 d_{k+1} / d_{k+2}.
    Interval lx_hi = Interval::log10_of(Integer(2), p) + Interval::from_endpoints(l1.hi(), l1.hi()) -
                     Interval::from_endpoints(l2.lo(), l2.lo());
    Interval x = Interval::from_endpoints(lx_hi.hi(), lx_hi.hi()).exp10();
    Interval one_plus = Interval::point(1, p) + Interval::from_endpoints(x.hi(), x.hi());
    Interval correction = Interval::hull(Interval::point(0, p), one_plus.log10());
    Interval log_eps = la - l1 + correction;
    out.value = (-log_eps) / lb;
    return out;
}

Integer floor_of_lo(const Interval& v) { return v.floor_lo(); }

} // namespace

Position Position::of(Integer value) {
    Position p;
    p.exact = std::move(value);
    return p;
}

Position Position::of(const TowerMagnitude& tower, Integer coefficient, long offset) {
    if (tower.is_exact()) return of(Integer(coefficient * tower.exact_value() + offset));
    Position p;
    p.tower = tower;
    p.coefficient = std::move(coefficient);
    p.offset = offset;
    return p;
}

Position Position::of(LevelReal magnitude) {
    Position p;
    p.magnitude = std::move(magnitude);
    return p;
}

std::string Position::to_string() const {
    if (exact) return exact->get_str();
    if (tower) {
        std::string s = coefficient == 1 ? tower->to_string() : coefficient.get_str() + "*" + tower->to_string();
        if (offset > 0) s += "+" + std::to_string(offset);
        if (offset < 0) s += std::to_string(offset);
        return s;
    }
    if (magnitude) {
        const LevelReal& m = *magnitude;
        return "log10^" + std::to_string(m.level()) + " in [" + m.value().lo_string(12) + ", " +
               m.value().hi_string(12) + "]";
    }
    return "?";
}

std::string_view to_string(RunReport::Certification c) {
    switch (c) {
    case RunReport::Certification::Exact: return "Exact";
    case RunReport::Certification::LogCertified: return "LogCertified";
    case RunReport::Certification::Bound: return "Bound";
    }
    return "?";
}

std::size_t terminating_length(const Rational& r, unsigned base) {
    const Integer& q = r.denominator();
    require(coprime_part(q, Integer(base)) == 1, "rational is not a b-adic fraction");
    std::size_t len = 0;
    for (const auto& f : factorize(Integer(base)).factors) {
        unsigned long v = p_adic_valuation(q, f.prime);
        len = std::max<std::size_t>(len, (v + f.exponent - 1) / f.exponent);
    }
    return len;
}

std::vector<DigitRun> empirical_runs(const DigitString& digits) {
    std::vector<DigitRun> runs;
    std::uint8_t top = static_cast<std::uint8_t>(digits.base() - 1);
    std::size_t i = 0, n = digits.size();
    while (i < n) {
        if (digits[i] != top) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && digits[j] == top) ++j;
        runs.push_back({i + 1, j - i});
        i = j;
    }
    return runs;
}

RunReport run_window(const DSequence& seq, unsigned base, unsigned long k, RunOptions options) {
    require(base >= 2 && base <= 36, "run_window bases lie in 2..36");
    require(k >= 2, "run_window requires k >= 2");
    require_adic(k, base);
    certify_tail_domination(seq, k + 2, options.policy);

    RunReport report;
    report.base = base;
    report.k = k;
    TowerMagnitude e = seq.exponent(k);
    if (e.is_exact()) report.start_bound = Position::of(Integer(expansion_bound(e.exact_value(), k, base) + 1));
    else report.start_bound = Position::of(e, Integer(ratio_ceiling(k, base)), 1);

    bool start_exact = seq.d(k).is_exact();
    if (start_exact) {
        Rational ak = alpha_exact(seq, k);
        report.start_at_latest = Position::of(Integer(static_cast<unsigned long>(terminating_length(ak, base)) + 1));
    } else {
        report.start_at_latest = report.start_bound;
    }

    for (long digits = options.policy.start_digits;; digits *= 2) {
        NegLogEps t = neg_log_eps(seq, k, base, bits_for_digits(digits));
        if (t.magnitude) {
            report.end_at_least = Position::of(*t.magnitude);
            report.certification = RunReport::Certification::LogCertified;
            return report;
        }
        report.neg_log_eps = *t.value;
        auto f = t.value->exact_floor();
        if (f || digits >= options.policy.max_digits) {
            report.end_is_exact = f.has_value();
            report.end_at_least = Position::of(floor_of_lo(*t.value));
            break;
        }
    }

    Integer end = *report.end_at_least.exact;
    if (report.start_at_latest.exact && end < *report.start_at_latest.exact - 1)
        report.end_at_least = Position::of(Integer(*report.start_at_latest.exact - 1));

    if (start_exact && report.end_is_exact) report.certification = RunReport::Certification::Exact;
    else if (report.start_at_latest.exact) report.certification = RunReport::Certification::Bound;
    else report.certification = RunReport::Certification::LogCertified;

    if (options.confirm && report.start_at_latest.exact && end + 2 <= Integer(static_cast<unsigned long>(options.confirm_max_digits))) {
        try {
            Integer last = end + 2;
            OracleDigits od = alpha_digit_oracle(seq, base, Integer(1), last);
            std::size_t s = report.start_at_latest.exact->get_ui();
            for (const DigitRun& run : empirical_runs(od.digits)) {
                if (run.start <= s && s < run.start + run.length) {
                    report.empirical = MeasuredRun{Integer(static_cast<unsigned long>(run.start)),
                                                   Integer(static_cast<unsigned long>(run.start + run.length - 1))};
                    break;
                }
            }
        } catch (const Error&) {
            // No certified digits this far out; the report stands without confirmation.
        }
    }
    return report;
}

RunReport theorem_window(const DSequence& seq, unsigned base, unsigned long r) {
    require(base >= 2 && base <= 36, "theorem_window bases lie in 2..36");
    require(r >= 1, "theorem_window requires r >= 1");
    Integer kk;
    mpz_ui_pow_ui(kk.get_mpz_t(), base, r);
    require(kk.fits_ulong_p() && kk <= 64, "b^r beyond the supported index range");
    unsigned long k = kk.get_ui();

    RunReport report;
    report.base = base;
    report.k = k;
    report.certification = RunReport::Certification::LogCertified;
    TowerMagnitude e = seq.exponent(k);
    report.start_at_latest = Position::of(e, Integer(r), 1);
    report.start_bound = report.start_at_latest;
    // d_k / k = k^(e_k - 1).
    TowerMagnitude dk_over_k = TowerMagnitude::power(k, e, seq.budget(), 1, -1);
    report.end_at_least = Position::of(dk_over_k, Integer(r), -1);
    if (report.start_at_latest.exact && report.end_at_least.exact &&
        *report.end_at_least.exact < *report.start_at_latest.exact - 1)
        report.end_at_least = Position::of(Integer(*report.start_at_latest.exact - 1));

    if (k > 2) {
        // 1 - 2 d_{k-1} / d_k
        mpfr_prec_t p = bits_for_digits(64);
        TowerMagnitude a = seq.d(k - 1), b = seq.d(k);
        if (a.is_exact() && b.is_exact()) {
            Rational v = Rational(1) - Rational(Integer(2 * a.exact_value()), b.exact_value());
            report.density_bound = Interval::from_rational(v, p);
        } else {
            Interval la = a.enclose(p).at_level(1);
            Interval lb = b.enclose(p).at_level(1);
            Interval lr = Interval::log10_of(Integer(2), p) + la - lb;
            Interval ratio = Interval::hull(Interval::point(0, p),
                                            Interval::from_endpoints(lr.hi(), lr.hi()).exp10());
            Interval bound = Interval::point(1, p) - ratio;
            if (bound.is_finite()) {
                report.density_bound = bound;
            } else if (growth_check_square(seq.accessor(), k, seq.budget()).verdict == Ordering::Greater) {
                // d_k > 2 d_{k-1}^2 gives 2 d_{k-1} / d_k < 1 / d_{k-1}.
                Interval l = a.enclose(p).at_level(1);
                Interval neg = -Interval::from_endpoints(l.lo(), l.lo());
                Interval tail = Interval::hull(Interval::point(0, p), neg.exp10());
                report.density_bound = Interval::point(1, p) - tail;
            }
        }
    }
    return report;
}

NineRunReport nine_run_report(const DSequence& seq, unsigned base, unsigned long k, std::size_t post_digits,
                              PrecisionPolicy policy) {
    require(base >= 2 && base <= 36, "nine_run_report bases lie in 2..36");
    require_adic(k, base);
    certify_tail_domination(seq, k + 2, policy);
    NineRunReport out;
    out.base = base;
    out.k = k;
    Rational ak = alpha_exact(seq, k);
    std::size_t m = terminating_length(ak, base);
    out.leading = alpha_digit_oracle(seq, base, Integer(1), Integer(static_cast<unsigned long>(m)), k).digits;
    out.run_start = static_cast<unsigned long>(m + 1);

    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), base, post_digits);
    for (long digits = std::max(policy.start_digits, 50L);; digits *= 2) {
        mpfr_prec_t p = bits_for_digits(digits);
        NegLogEps t = neg_log_eps(seq, k, base, p);
        if (!t.value) fail(ErrorKind::Level, "run end beyond 2^64 digits; no exact count is available");
        auto n = t.value->exact_floor();
        if (n) {
            // Past the run, alpha b^N = (alpha_k b^N - 1) + (1 - b^-(t - N)).
            Interval frac = *t.value - Interval::from_integer(*n, p);
            Interval y = Interval::point(1, p) - (-(frac * Interval::log10_of(Integer(base), p))).exp10();
            Interval scaled = y * Interval::from_integer(scale, p);
            auto block = scaled.exact_floor();
            if (block) {
                out.t = *t.value;
                out.count = *n - static_cast<unsigned long>(m);
                out.first_deviant = *n + 1;
                out.digits_used = digits;
                std::string s = block->get_str(static_cast<int>(base));
                s.insert(0, post_digits - std::min(post_digits, s.size()), '0');
                out.post_run = DigitString::from_text(s, base);
                return out;
            }
        }
        if (digits >= policy.max_digits)
            fail(ErrorKind::Precision, "run boundary straddles an integer at " + std::to_string(digits) + " digits");
    }
}

LiouvilleWitness liouville_witness(const DSequence& seq, unsigned long k, PrecisionPolicy policy) {
    require(k >= 5, "liouville_witness requires k >= 5");
    LiouvilleWitness w;
    w.k = k;
    w.tail_from = certify_tail_domination(seq, k + 1, policy);
    w.growth = growth_check_tower(seq.accessor(), k, seq.budget(), policy);
    if (w.growth.verdict != Ordering::Greater)
        fail(ErrorKind::Precondition, "d_{k+1} > d_k^(d_{k-1}) fails at k = " + std::to_string(k));
    w.q = seq.d(k);
    if (w.q.is_exact()) {
        IntegralityResult integral = integrality_check(seq, k);
        require(integral.integral, "d_k alpha_k is not an integer");
        w.p = integral.product.numerator();
    }
    w.m = Position::of(seq.d(k - 1), Integer(1), -1);
    return w;
}

} // namespace abnormal
