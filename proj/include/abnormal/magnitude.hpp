#pragma once

// Tower-sized positive integers. A TowerMagnitude is either an exact GMP
// integer or a symbolic power
//
//     coefficient * base^(exponent + shift)
//
// whose exponent is itself a TowerMagnitude. The coefficient and shift carry
// the n_j multipliers and the "-1" of d_{j-1}/(j-1) = (j-1)^(e_{j-1} - 1).
// Powers that fit the materialization budget collapse to exact integers.

#include "abnormal/level_real.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>

namespace abnormal {

struct MaterializationBudget {
    std::size_t bits = std::size_t{1} << 26;
};

struct PrecisionPolicy {
    long start_digits = 64;
    long max_digits = 4096;
};

class TowerMagnitude {
public:
    struct Power {
        Integer coefficient;
        unsigned long base = 2;
        std::shared_ptr<const TowerMagnitude> exponent;
        long shift = 0;
    };

    static TowerMagnitude exact(Integer value);
    static TowerMagnitude power(unsigned long base, TowerMagnitude exponent, MaterializationBudget budget = {},
                                Integer coefficient = 1, long shift = 0);

    bool is_exact() const { return std::holds_alternative<Integer>(rep_); }
    // Throws ErrorKind::Budget when the value is only known symbolically.
    const Integer& exact_value() const;
    const Power& as_power() const;

    // Certified enclosure of the value as an iterated-log real.
    LevelReal enclose(mpfr_prec_t precision) const;

    // "152587890625", "6^30517578125", "7^(6^(30517578125-1))", "2*5^(...)".
    std::string to_string() const;

    friend bool operator==(const TowerMagnitude& a, const TowerMagnitude& b);

private:
    explicit TowerMagnitude(std::variant<Integer, Power> rep) : rep_(std::move(rep)) {}
    std::variant<Integer, Power> rep_;
};

// A positive quantity derived from magnitudes (for example 2*d^2 or d^e):
// exact when it fits the budget, otherwise known through enclosures.
struct Quantity {
    std::optional<Integer> exact;
    std::function<LevelReal(mpfr_prec_t)> enclose;
    std::string label;

    static Quantity of(const TowerMagnitude& m);
    static Quantity of(const Integer& n);
};

Quantity twice_square(const TowerMagnitude& d, MaterializationBudget budget = {});
Quantity power_of(const TowerMagnitude& base, const TowerMagnitude& exponent, MaterializationBudget budget = {});

enum class Ordering { Less, Equal, Greater };
std::string_view to_string(Ordering o);

struct CertifiedOrdering {
    Ordering verdict = Ordering::Equal;
    bool exact = false;         // decided by exact integer (or structural) comparison
    int level = 0;              // otherwise: iterated-log level of the separating enclosures
    long digits = 0;            // working precision, significant decimals
    std::string margin;         // lower bound of the separation at that level

    // "exact", "value", "log", "log-log", then "log^k".
    std::string level_name() const;
};

// Escalates precision from policy.start_digits, doubling up to max_digits;
// throws ErrorKind::Precision if the enclosures never separate.
CertifiedOrdering compare(const Quantity& a, const Quantity& b, PrecisionPolicy policy = {});
CertifiedOrdering compare(const TowerMagnitude& a, const TowerMagnitude& b, PrecisionPolicy policy = {});

// Enclosure of log_b(d) with width <= 10^-digits. Throws ErrorKind::Level if
// log10(d) itself exceeds 2^64 (use iterated_log10 instead).
Interval log_in_base(const TowerMagnitude& d, unsigned long base, long digits);

// Enclosure of log10^level(d) at the given working precision.
Interval iterated_log10(const TowerMagnitude& d, int level, long digits);

using DAccessor = std::function<TowerMagnitude(unsigned long)>;

// d_j > 2 d_{j-1}^2, reported honestly (Less when the inequality fails).
CertifiedOrdering growth_check_square(const DAccessor& d, unsigned long j, MaterializationBudget budget = {},
                                      PrecisionPolicy policy = {});
// d_{j+1} > d_j^(d_{j-1}).
CertifiedOrdering growth_check_tower(const DAccessor& d, unsigned long j, MaterializationBudget budget = {},
                                     PrecisionPolicy policy = {});

} // namespace abnormal
