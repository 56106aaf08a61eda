#include "abnormal/normality.hpp"

#include "abnormal/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace abnormal {

namespace {

std::size_t preperiod_length(const Integer& q, const Integer& base) {
    std::size_t pre = 0;
    for (const auto& f : factorize(base).factors) {
        unsigned long vq = p_adic_valuation(q, f.prime);
        pre = std::max<std::size_t>(pre, (vq + f.exponent - 1) / f.exponent);
    }
    return pre;
}

// Digit counts over `length` steps of long division starting from remainder r.
std::vector<std::size_t> period_counts(Integer r, const Integer& q, const Integer& base, std::size_t length) {
    require(base <= Integer(static_cast<unsigned long>(kPeriodBudget)), "base too large for a digit histogram");
    std::vector<std::size_t> counts(base.get_ui(), 0);
    if (q.fits_ulong_p() && base.fits_ulong_p() && q < Integer(1UL << 32) && base < Integer(1UL << 32)) {
        std::uint64_t qq = q.get_ui(), bb = base.get_ui(), rr = Integer(r % q).get_ui();
        for (std::size_t i = 0; i < length; ++i) {
            std::uint64_t t = rr * bb;
            ++counts[t / qq];
            rr = t % qq;
        }
        return counts;
    }
    Integer t, d;
    for (std::size_t i = 0; i < length; ++i) {
        t = r * base;
        mpz_fdiv_qr(d.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
        ++counts[d.get_ui()];
    }
    return counts;
}

bool balanced(const std::vector<std::size_t>& counts, std::size_t length) {
    if (length % counts.size() != 0) return false;
    std::size_t target = length / counts.size();
    for (auto c : counts)
        if (c != target) return false;
    return true;
}

} // namespace

std::string_view to_string(NormalityReason reason) {
    switch (reason) {
    case NormalityReason::Terminating: return "Terminating";
    case NormalityReason::OrderNotDivisible: return "OrderNotDivisible";
    case NormalityReason::FrequencyImbalance: return "FrequencyImbalance";
    case NormalityReason::Balanced: return "Balanced";
    }
    return "?";
}

NecessaryCondition necessary_condition(const Integer& base, const Integer& q) {
    require(base >= 2, "base must be >= 2");
    require(q >= 1, "denominator must be >= 1");
    NecessaryCondition nc;
    nc.coprime_part = coprime_part(q, base);
    if (nc.coprime_part == 1) {
        nc.reason = NormalityReason::Terminating;
        return nc;
    }
    nc.order = multiplicative_order(base, nc.coprime_part);
    if (!mpz_divisible_p(nc.order.get_mpz_t(), base.get_mpz_t())) {
        nc.reason = NormalityReason::OrderNotDivisible;
        return nc;
    }
    nc.survives = true;
    return nc;
}

NormalityVerdict simply_normal_rational(const Rational& r, const Integer& base) {
    require(r.sign() > 0 && r < Rational(1), "simple normality of rationals requires 0 < r < 1");
    NormalityVerdict v;
    v.r = r;
    v.base = base;
    const Integer& q = r.denominator();
    NecessaryCondition nc = necessary_condition(base, q);
    if (nc.coprime_part == 1) {
        require(base <= Integer(static_cast<unsigned long>(kPeriodBudget)), "base too large for a digit histogram");
        v.reason = NormalityReason::Terminating;
        v.period_length = 1;
        v.period_frequencies.assign(base.get_ui(), 0);
        v.period_frequencies[0] = 1;
        return v;
    }
    if (!nc.order.fits_ulong_p() || nc.order.get_ui() > kPeriodBudget)
        fail(ErrorKind::Budget, "period length " + nc.order.get_str() + " exceeds the budget");
    std::size_t len = nc.order.get_ui();
    std::size_t pre = preperiod_length(q, base);
    Integer rem = (mod_pow(base, Integer(static_cast<unsigned long>(pre)), q) * r.numerator()) % q;
    v.period_length = nc.order;
    v.period_frequencies = period_counts(rem, q, base, len);
    if (!nc.survives) v.reason = nc.reason;
    else v.reason = balanced(v.period_frequencies, len) ? NormalityReason::Balanced : NormalityReason::FrequencyImbalance;
    v.simply_normal = v.reason == NormalityReason::Balanced;
    return v;
}

std::string ASAReport::to_table() const {
    std::ostringstream os;
    os << "# q=" << q;
    if (numerator) os << " numerator=" << *numerator;
    os << " bases=2.." << candidate_bound << " numerators=" << numerators_checked
       << " absolutely_simply_abnormal=" << (absolutely_simply_abnormal ? "true" : "false") << "\n";
    os << "base\treason\torder\tbalanced_numerators\n";
    for (const auto& row : bases) {
        os << row.base << '\t' << to_string(row.reason) << '\t' << (row.order == 0 ? "-" : row.order.get_str()) << '\t';
        if (row.balanced_numerators.empty()) os << '-';
        for (std::size_t i = 0; i < row.balanced_numerators.size(); ++i)
            os << (i ? "," : "") << row.balanced_numerators[i];
        os << '\n';
    }
    return os.str();
}

ASAReport classify_absolutely_simply_abnormal(unsigned long q, std::optional<unsigned long> numerator) {
    require(q >= 2, "classification requires q >= 2");
    if (q > kClassifyBudget)
        fail(ErrorKind::Budget, "classification is limited to q <= " + std::to_string(kClassifyBudget));
    Integer qq(q);
    if (numerator) {
        require(*numerator >= 1 && *numerator < q, "numerator must satisfy 0 < a < q");
        Integer g;
        mpz_gcd_ui(g.get_mpz_t(), qq.get_mpz_t(), *numerator);
        require(g == 1, "numerator must be coprime to q");
    }
    ASAReport report;
    report.q = q;
    report.numerator = numerator;
    report.candidate_bound = euler_phi(qq).get_ui();

    std::vector<unsigned long> numerators;
    if (numerator) {
        numerators.push_back(*numerator);
    } else {
        for (unsigned long a = 1; a < q; ++a)
            if (std::gcd(a, q) == 1) numerators.push_back(a);
    }
    report.numerators_checked = numerators.size();

    // Remainder cycles under r -> r b mod q; every numerator whose post-preperiod
    // remainder lies on the same cycle has a rotated period with equal counts.
    std::vector<signed char> cycle_state(q);
    for (unsigned long b = 2; b <= report.candidate_bound; ++b) {
        BaseRow row;
        row.base = b;
        NecessaryCondition nc = necessary_condition(Integer(b), qq);
        row.order = nc.order;
        if (!nc.survives) {
            row.reason = nc.reason;
            report.bases.push_back(std::move(row));
            continue;
        }
        std::size_t pre = preperiod_length(qq, Integer(b));
        std::uint64_t shift = mod_pow(Integer(b), Integer(static_cast<unsigned long>(pre)), qq).get_ui();
        std::size_t len = nc.order.get_ui();
        std::fill(cycle_state.begin(), cycle_state.end(), 0);
        for (unsigned long a : numerators) {
            std::uint64_t r = (a % q) * shift % q;
            if (cycle_state[r] == 0) {
                std::vector<std::size_t> counts(b, 0);
                std::uint64_t x = r;
                for (std::size_t i = 0; i < len; ++i) {
                    std::uint64_t t = x * b;
                    ++counts[t / q];
                    x = t % q;
                }
                signed char verdict = balanced(counts, len) ? 1 : -1;
                x = r;
                for (std::size_t i = 0; i < len; ++i) {
                    cycle_state[x] = verdict;
                    x = x * b % q;
                }
            }
            if (cycle_state[r] == 1) row.balanced_numerators.push_back(a);
        }
        row.reason = row.balanced_numerators.empty() ? NormalityReason::FrequencyImbalance : NormalityReason::Balanced;
        if (!row.balanced_numerators.empty()) report.absolutely_simply_abnormal = false;
        report.bases.push_back(std::move(row));
    }
    return report;
}

std::vector<unsigned long> simply_normal_bases(const Rational& r) {
    require(r.sign() > 0 && r < Rational(1), "simply_normal_bases requires 0 < r < 1");
    const Integer& q = r.denominator();
    if (q > Integer(static_cast<unsigned long>(kClassifyBudget) * 10))
        fail(ErrorKind::Budget, "denominator " + q.get_str() + " exceeds the base-sweep budget");
    unsigned long bound = euler_phi(q).get_ui();
    std::vector<unsigned long> out;
    for (unsigned long b = 2; b <= bound; ++b) {
        if (!necessary_condition(Integer(b), q).survives) continue;
        if (simply_normal_rational(r, Integer(b)).simply_normal) out.push_back(b);
    }
    return out;
}

AbnormalityWitness abnormality_witness(const Rational& r, unsigned base) {
    PeriodicExpansion e = expand_rational(r, base);
    AbnormalityWitness w;
    w.preperiod = e.preperiod.size();
    if (e.period.empty()) {
        w.k = 1;
        w.digit = 0;
        return w;
    }
    w.k = e.period.size();
    // Blocks of k digits from the radix point settle on the period rotated by -pre mod k.
    std::size_t offset = (w.k - w.preperiod % w.k) % w.k;
    w.digit = 0;
    for (std::size_t i = 0; i < w.k; ++i) w.digit = w.digit * base + e.period[(offset + i) % w.k];
    return w;
}

} // namespace abnormal
