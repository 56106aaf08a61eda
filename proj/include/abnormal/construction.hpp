#pragma once

// The generalized construction: alpha_2 = a / 2^n2, and for j >= 3
//
//     d_j = j^(e_j),   e_j = n_j * d_{j-1} / (j-1),   alpha_k = alpha_2 * prod_{j=3..k} (1 - 1/d_j).
//
// The standard number uses a = 3, n2 = 2 and n_j = 1 throughout.

#include "abnormal/magnitude.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace abnormal {

struct ExponentRule {
    enum class Kind { Ones, Phi, List };
    Kind kind = Kind::Ones;
    // n_3, n_4, ... for Kind::List; indices past the end default to 1.
    std::vector<unsigned long> values;

    unsigned long n(unsigned long j) const;
    std::string to_text() const;
    static ExponentRule parse(std::string_view text);
};

struct ConstructionParams {
    Integer a = 3;
    unsigned long n2 = 2;
    ExponentRule rule;

    static ConstructionParams standard();
    // a = 1, n2 = 1, n_j = phi(j - 1): d_j = j^phi(d_{j-1}).
    static ConstructionParams phi_variant();
    // a = 1, n2 = 1, all n_j = 1: d_j = j and alpha_k = 1/k.
    static ConstructionParams degenerate();

    Rational alpha2() const;
    unsigned long n(unsigned long j) const { return rule.n(j); }

    // Throws ErrorKind::Precondition unless a is odd and 0 < a < 2^n2.
    void validate() const;

    // Key/value text: "a=3", "n2=2", "rule=ones|phi|list:2,1,3", one per line
    // (';' also separates). Unknown keys are a parse error.
    std::string to_text() const;
    static ConstructionParams parse(std::string_view text);
};

// First index where the two parameter sets differ: 2 for alpha_2, j >= 3 for n_j.
std::optional<unsigned long> first_difference(const ConstructionParams& p1, const ConstructionParams& p2);

// The d_j sequence with an append-only cache; safe for concurrent readers.
class DSequence {
public:
    explicit DSequence(ConstructionParams params, MaterializationBudget budget = {});
    DSequence(const DSequence&) = delete;
    DSequence& operator=(const DSequence&) = delete;

    const ConstructionParams& params() const { return params_; }
    MaterializationBudget budget() const { return budget_; }

    // d_j for j >= 2.
    TowerMagnitude d(unsigned long j) const;
    // e_j with d_j = j^(e_j); e_2 = n2.
    TowerMagnitude exponent(unsigned long j) const;
    DAccessor accessor() const;

    // Largest k <= limit such that d_2..d_k are all exact.
    unsigned long largest_materialized(unsigned long limit = 64) const;

private:
    void extend_to(unsigned long j) const;

    ConstructionParams params_;
    MaterializationBudget budget_;
    mutable std::mutex mutex_;
    mutable std::vector<TowerMagnitude> d_;   // index j - 2
    mutable std::vector<TowerMagnitude> e_;
};

// alpha_k in lowest terms. Throws ErrorKind::Budget (naming the largest
// materializable k) if some d_j, j <= k, is not exact.
Rational alpha_exact(const DSequence& seq, unsigned long k);

struct IntegralityResult {
    bool integral = false;
    Rational product;  // d_k * alpha_k
};
IntegralityResult integrality_check(const DSequence& seq, unsigned long k);

// Exact check of alpha_k > alpha_{k+1} > alpha_k - 2/d_{k+1}.
bool sandwich_check(const DSequence& seq, unsigned long k);

// Certifies d_{j+1} >= 2 d_j for every j >= from, so that
// sum_{j >= from} 1/d_j <= 2/d_from. Explicit comparisons cover the indices
// below the first j0 >= 5 with e_j0 >= 2 and d_j0 >= 25; an induction on the
// recursive rule covers everything after j0. Returns j0.
unsigned long certify_tail_domination(const DSequence& seq, unsigned long from, PrecisionPolicy policy = {});

// Lower end of the certified interval alpha_k - 2/d_{k+1} < alpha < alpha_k.
struct LowerEnd {
    std::optional<Rational> exact;
    Interval enclosure{64};
};

struct SeparationCertificate {
    unsigned long k = 0;
    Rational alpha_first;
    Rational alpha_second;
    LowerEnd lower_first;
    LowerEnd lower_second;
    CertifiedOrdering separation;  // d_{k+1} of the larger approximant vs floor(2 / gap)
};

// Throws ErrorKind::Precondition for identical parameters.
SeparationCertificate distinguish(const DSequence& first, const DSequence& second, PrecisionPolicy policy = {});

// Smallest n2 with 2^n2 >= 4/(v-u), smallest odd a with u + (v-u)/4 < a/2^n2 < v, n_j = 1.
ConstructionParams target_interval(const Rational& u, const Rational& v);

struct TargetCertificate {
    bool certified = false;
    Rational alpha2;
    CertifiedOrdering lower_margin;  // d_3 vs floor(2 / (alpha_2 - u))
};
// Certifies u < alpha_2 - 2/d_3 and alpha_2 < v (with the tail bound from index 3).
TargetCertificate certify_target(const DSequence& seq, const Rational& u, const Rational& v,
                                 PrecisionPolicy policy = {});

struct DegenerateReport {
    bool degenerate = false;
    std::vector<Rational> alphas;  // alpha_2..alpha_10 when degenerate
};
DegenerateReport degenerate_check(const ConstructionParams& params);

LowerEnd lemma2_lower_end(const DSequence& seq, unsigned long k, mpfr_prec_t precision);

} // namespace abnormal
