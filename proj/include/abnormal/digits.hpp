#pragma once

// Base-b digit strings, exact expansions of rationals, and the digit oracle
// for the constructed number.

#include "abnormal/construction.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace abnormal {

// Digit values 0..b-1 for 2 <= b <= 36, one per byte. Text uses 0-9 then a-z.
class DigitString {
public:
    explicit DigitString(unsigned base = 10);
    DigitString(unsigned base, std::vector<std::uint8_t> digits);
    static DigitString from_text(std::string_view text, unsigned base);

    unsigned base() const { return base_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<std::uint8_t>& digits() const { return digits_; }

    void push_back(std::uint8_t d);
    void append(const DigitString& other);
    DigitString substr(std::size_t pos, std::size_t count = std::string::npos) const;

    std::string to_string() const;

    // Compact binary form: "ADG1", one byte base, little-endian u64 length,
    // then digits packed LSB-first in ceil(log2 b) bits each.
    std::vector<std::uint8_t> pack() const;
    static DigitString unpack(std::span<const std::uint8_t> bytes);

    friend bool operator==(const DigitString&, const DigitString&) = default;

private:
    unsigned base_;
    std::vector<std::uint8_t> digits_;
};

char digit_char(unsigned d);

struct PeriodicExpansion {
    unsigned base = 10;
    Integer integer_part = 0;
    DigitString preperiod{10};
    DigitString period{10};   // empty for terminating expansions (trailing zeros)

    Rational to_rational() const;
    // "0.10101", "0.(01)", "0.1(6)".
    std::string to_string() const;
};

// 0 <= r < 1. Preperiod length is max over p | gcd(q, b) of ceil(v_p(q) / v_p(b));
// the period length is the multiplicative order of b modulo the part of q
// coprime to b. Throws ErrorKind::Budget when the period exceeds period_budget.
PeriodicExpansion expand_rational(const Rational& r, unsigned base, std::size_t period_budget = std::size_t{1} << 24);

// Digits first .. first+count-1 after the radix point (1-indexed) of r in [0, 1).
DigitString digits_window(const Rational& r, unsigned base, const Integer& first, std::size_t count);
DigitString digits_prefix(const Rational& r, unsigned base, std::size_t count);

struct DigitStats {
    unsigned base = 10;
    std::size_t length = 0;
    std::vector<std::size_t> counts;
};
DigitStats digit_stats(const DigitString& digits);

std::size_t count_digit(const DigitString& digits, unsigned digit);
Rational frequency(const DigitString& digits, unsigned digit);
// Overlapping occurrences.
std::size_t count_string(const DigitString& digits, const DigitString& pattern);

inline constexpr std::size_t kChampernowneBudget = 100'000'000;
DigitString champernowne_prefix(std::size_t count);

// sum_{n=1..k} 10^(-n!), k <= 8.
Rational liouville_partial(unsigned k);

struct OracleCertificate {
    unsigned long k = 0;      // approximant index K
    Integer safe_limit;       // floor(log_b(d_{K+1}/2)) - 2
    bool safe_limit_capped = false; // log10 d_{K+1} beyond 2^64; safe_limit is then 2^64
    bool borrow = false;      // alpha_K b^last was an integer, so one unit was borrowed
};

struct OracleDigits {
    DigitString digits{10};
    OracleCertificate certificate;
};

// Digits of alpha itself at positions [first, last] from the exact approximant
// alpha_K (largest materializable K unless given). Uses alpha_K - 2/d_{K+1} < alpha < alpha_K.
// Throws Precondition past safe_limit and Ambiguity when the remainder of
// alpha_K b^last is too small to absorb the tail.
OracleDigits alpha_digit_oracle(const DSequence& seq, unsigned base, const Integer& first, const Integer& last,
                                std::optional<unsigned long> k = std::nullopt);

// floor(log_b(d/2)) for d = d_{K+1}; capped at 2^64 when out of range.
Integer floor_log_half(const TowerMagnitude& d, unsigned base, bool* capped = nullptr);

} // namespace abnormal
