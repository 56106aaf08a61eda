#pragma once

// Simple normality of rationals. A rational r = p/q is simply normal to the
// base b iff every digit occurs exactly period/b times in one period of its
// base-b expansion. That needs q' > 1 (q' = part of q coprime to b) and
// b | ord_{q'}(b). Since ord_{q'}(b) <= phi(q') <= phi(q), only bases
// b <= phi(q) can qualify.

#include "abnormal/digits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abnormal {

enum class NormalityReason { Terminating, OrderNotDivisible, FrequencyImbalance, Balanced };
std::string_view to_string(NormalityReason reason);

struct NormalityVerdict {
    Rational r;
    Integer base;
    bool simply_normal = false;
    Integer period_length;               // 1 for terminating expansions (the repeating 0)
    std::vector<std::size_t> period_frequencies; // per digit over one minimal period
    NormalityReason reason = NormalityReason::Terminating;
};

struct NecessaryCondition {
    bool survives = false;
    NormalityReason reason = NormalityReason::Terminating; // when eliminated
    Integer coprime_part;
    Integer order;                       // ord_{q'}(b) when q' > 1
};

inline constexpr std::size_t kPeriodBudget = std::size_t{1} << 26;

// 0 < r < 1, any base b >= 2 with b * q' below 2^64 or a period within kPeriodBudget.
NormalityVerdict simply_normal_rational(const Rational& r, const Integer& base);

NecessaryCondition necessary_condition(const Integer& base, const Integer& q);

struct BaseRow {
    unsigned long base = 2;
    NormalityReason reason = NormalityReason::Terminating; // Balanced if some numerator is balanced
    Integer order;
    std::vector<unsigned long> balanced_numerators;
};

struct ASAReport {
    unsigned long q = 1;
    std::optional<unsigned long> numerator;  // single-numerator mode
    unsigned long candidate_bound = 0;       // bases 2..candidate_bound were swept
    std::size_t numerators_checked = 0;
    std::vector<BaseRow> bases;
    bool absolutely_simply_abnormal = true;

    // One line per base: "base reason order balanced-numerators".
    std::string to_table() const;
};

inline constexpr unsigned long kClassifyBudget = 100'000;

// Every base in 2..phi(q), every numerator coprime to q (or just `numerator`).
ASAReport classify_absolutely_simply_abnormal(unsigned long q, std::optional<unsigned long> numerator = std::nullopt);

// The exact set of bases to which r is simply normal.
std::vector<unsigned long> simply_normal_bases(const Rational& r);

struct AbnormalityWitness {
    std::size_t preperiod = 0;
    std::size_t k = 1;     // period length in base b
    Integer digit;         // repeating digit in base b^k
};
AbnormalityWitness abnormality_witness(const Rational& r, unsigned base);

} // namespace abnormal
