#pragma once

// Runs of the digit b-1 in the expansion of alpha, and its Liouville property.
//
// When every prime of k divides b, alpha_k terminates after M base-b digits.
// Since alpha = alpha_k - eps with eps tiny, the digits M+1 .. floor(-log_b eps)
// of alpha are all b-1. The tail satisfies
//     alpha_k / d_{k+1} <= eps <= alpha_k (1/d_{k+1} + 2/d_{k+2}).

#include "abnormal/digits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abnormal {

// A digit position: an exact integer, coefficient * tower + offset, or only
// an enclosure of its size.
struct Position {
    std::optional<Integer> exact;
    std::optional<TowerMagnitude> tower;
    Integer coefficient = 1;
    long offset = 0;
    std::optional<LevelReal> magnitude;

    static Position of(Integer value);
    static Position of(const TowerMagnitude& tower, Integer coefficient, long offset);
    static Position of(LevelReal magnitude);

    std::string to_string() const;
};

struct MeasuredRun {
    Integer start;
    Integer end;
};

struct RunReport {
    enum class Certification { Exact, LogCertified, Bound };

    unsigned base = 10;
    unsigned long k = 0;
    Position start_at_latest;
    Position start_bound;       // max_p ceil(e_k v_p(k) / v_p(b)) + 1
    Position end_at_least;
    bool end_is_exact = false;  // the enclosure of -log_b eps has a unique floor
    Certification certification = Certification::Bound;
    std::optional<Interval> neg_log_eps; // -log_b eps when it is below 2^64
    std::optional<MeasuredRun> empirical;
    std::optional<Interval> density_bound; // theorem_window only
};

std::string_view to_string(RunReport::Certification c);

struct RunOptions {
    bool confirm = true;                       // measure the run with the digit oracle when cheap
    std::size_t confirm_max_digits = 1u << 20;
    PrecisionPolicy policy;
};

// Requires every prime factor of k to divide b.
RunReport run_window(const DSequence& seq, unsigned base, unsigned long k, RunOptions options = {});

// Symbolic window for k = b^r: start <= r e_k + 1, end >= r d_k / k - 1, and
// density bound 1 - 2 d_{k-1} / d_k (omitted for k = 2).
RunReport theorem_window(const DSequence& seq, unsigned base, unsigned long r);

struct NineRunReport {
    unsigned base = 10;
    unsigned long k = 5;
    DigitString leading{10};     // digits 1..M of alpha
    Integer run_start;           // M + 1
    Integer count;               // digits M+1 .. floor(t) equal to b-1
    Integer first_deviant;       // floor(t) + 1
    DigitString post_run{10};    // digits floor(t)+1 .. floor(t)+post_digits
    Interval t{64};              // -log_b(alpha_k - alpha)
    long digits_used = 0;
};

// Defaults reproduce the decimal display of the standard number (k = 5).
NineRunReport nine_run_report(const DSequence& seq, unsigned base = 10, unsigned long k = 5,
                              std::size_t post_digits = 16, PrecisionPolicy policy = {});

struct LiouvilleWitness {
    unsigned long k = 0;
    std::optional<Integer> p;     // alpha_k d_k when materializable
    TowerMagnitude q = TowerMagnitude::exact(1); // d_k
    Position m;                   // d_{k-1} - 1
    CertifiedOrdering growth;     // d_{k+1} vs d_k^(d_{k-1})
    unsigned long tail_from = 0;  // index from which domination was certified
};

// 0 < alpha_k - alpha < 2/d_{k+1} < 2/d_k^(d_{k-1}) <= 1/d_k^m, k >= 5.
LiouvilleWitness liouville_witness(const DSequence& seq, unsigned long k, PrecisionPolicy policy = {});

struct DigitRun {
    std::size_t start = 0;  // 1-indexed
    std::size_t length = 0;
};
// All maximal runs of the digit b-1.
std::vector<DigitRun> empirical_runs(const DigitString& digits);

// Length of the terminating base-b expansion of a b-adic fraction.
std::size_t terminating_length(const Rational& r, unsigned base);

} // namespace abnormal
