#include "abnormal/approximation.hpp"
#include "abnormal/error.hpp"

#include "doctest.h"

#include <algorithm>
#include <functional>

using namespace abnormal;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

bool primes_divide(unsigned long k, unsigned long b) {
    for (unsigned long p = 2; p <= k; ++p) {
        if (k % p) continue;
        if (b % p) return false;
        while (k % p == 0) k /= p;
    }
    return true;
}

// Checks a window against oracle digits: [start, end] are all b-1 and, when
// the start is sharp, the digit before the window is not.
void check_window(const DSequence& seq, unsigned b, const RunReport& r, bool sharp_start = true) {
    REQUIRE(r.start_at_latest.exact);
    REQUIRE(r.end_at_least.exact);
    Integer start = *r.start_at_latest.exact, end = *r.end_at_least.exact;
    if (end < start) return;
    INFO("base ", b, " k ", r.k, " window ", start.get_str(), "..", end.get_str());
    Integer first = start > 1 ? start - 1 : start;
    OracleDigits o = alpha_digit_oracle(seq, b, first, end);
    std::size_t offset = start > 1 ? 1 : 0;
    if (offset && sharp_start) CHECK(o.digits[0] != b - 1);
    for (std::size_t i = offset; i < o.digits.size(); ++i) CHECK(o.digits[i] == b - 1);
}

} // namespace

TEST_CASE("run windows for the standard number") {
    DSequence s(ConstructionParams::standard());
    RunReport r = run_window(s, 10, 4);
    CHECK(*r.start_at_latest.exact == 6);
    CHECK(*r.end_at_least.exact == 11);
    CHECK(r.end_is_exact);
    CHECK(r.certification == RunReport::Certification::Exact);
    REQUIRE(r.empirical);
    CHECK(r.empirical->start == 6);
    CHECK(r.empirical->end == 11);

    r = run_window(s, 2, 4);
    CHECK(*r.start_at_latest.exact == 6);
    CHECK(*r.end_at_least.exact == 37);
    REQUIRE(r.empirical);
    CHECK(r.empirical->end == 37);

    r = run_window(s, 3, 3);
    CHECK(*r.start_at_latest.exact == 2);
    CHECK(*r.end_at_least.exact == 4);

    r = run_window(s, 2, 2);
    CHECK(*r.start_at_latest.exact == 3);
    CHECK(*r.end_at_least.exact == 3);

    RunOptions quick;
    quick.confirm = false;
    r = run_window(s, 10, 5, quick);
    CHECK(*r.start_at_latest.exact == 17);
    CHECK(*r.end_at_least.exact == Integer("23747291576"));
    CHECK(r.end_is_exact);
    CHECK_FALSE(r.empirical);

    CHECK(throws_kind(ErrorKind::Precondition, [&] { run_window(s, 10, 3); }));
}

TEST_CASE("run windows are contained in runs of the oracle digits") {
    DSequence s(ConstructionParams::standard());
    for (unsigned b : {2U, 3U, 4U, 5U, 6U, 8U, 9U, 10U, 12U, 16U}) {
        for (unsigned long k = 2; k <= 5; ++k) {
            if (!primes_divide(k, b)) continue;
            RunOptions o;
            o.confirm = false;
            RunReport r = run_window(s, b, k, o);
            if (r.end_at_least.exact && *r.end_at_least.exact <= 20000) check_window(s, b, r);
        }
    }
    DSequence phi(ConstructionParams::phi_variant());
    for (unsigned b : {2U, 3U, 4U, 5U, 6U, 8U, 9U, 10U, 12U, 16U}) {
        for (unsigned long k = 2; k <= 6; ++k) {
            if (!primes_divide(k, b)) continue;
            RunOptions o;
            o.confirm = false;
            RunReport r = run_window(phi, b, k, o);
            if (r.end_at_least.exact && *r.end_at_least.exact <= 20000) check_window(phi, b, r);
        }
    }
}

TEST_CASE("theorem windows") {
    DSequence s(ConstructionParams::standard());
    RunReport w = theorem_window(s, 2, 2);
    CHECK(*w.start_at_latest.exact == 7);
    CHECK(*w.end_at_least.exact == 31);
    REQUIRE(w.density_bound);
    CHECK(w.density_bound->contains(Rational::parse("23/32")));
    check_window(s, 2, w, false);

    RunReport t = theorem_window(s, 2, 1);
    CHECK(*t.start_at_latest.exact == 3);
    CHECK(*t.end_at_least.exact == 2);
    CHECK_FALSE(t.density_bound);

    // k = 9 and k = 8: symbolic positions whose density bound is essentially 1.
    for (auto [b, r] : {std::pair{3U, 2UL}, std::pair{2U, 3UL}, std::pair{8U, 1UL}}) {
        RunReport x = theorem_window(s, b, r);
        CHECK_FALSE(x.end_at_least.exact);
        REQUIRE(x.density_bound);
        CHECK(x.density_bound->certainly_greater(Interval::from_rational(Rational::parse("9999/10000"), 64)));
    }
}

TEST_CASE("nine-run report reproduces the decimal display") {
    DSequence s(ConstructionParams::standard());
    NineRunReport n = nine_run_report(s);
    CHECK(n.leading.to_string() == "6562499999956991");
    CHECK(n.run_start == 17);
    CHECK(n.count == Integer("23747291560"));
    CHECK(n.first_deviant == Integer("23747291577"));
    CHECK(n.post_run.to_string() == "8528404201690728");

    // Independent oracle: alpha_5 - alpha = alpha_5 / d_6 up to a relative 2/d_6,
    // so t = log10(d_6) - log10(alpha_5) to far more than 30 digits.
    mpfr_t t, x, y;
    mpfr_inits2(256, t, x, y, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(x, 6, MPFR_RNDN);
    mpfr_log10(x, x, MPFR_RNDN);
    mpfr_mul_ui(t, x, 30517578125UL, MPFR_RNDN);
    mpfr_set_q(y, alpha_exact(s, 5).mpq().get_mpq_t(), MPFR_RNDN);
    mpfr_log10(y, y, MPFR_RNDN);
    mpfr_sub(t, t, y, MPFR_RNDN);
    mpfr_t lo, hi;
    mpfr_inits2(256, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_sub_d(lo, t, 1e-20, MPFR_RNDD);
    mpfr_add_d(hi, t, 1e-20, MPFR_RNDU);
    CHECK(Interval::from_endpoints(lo, hi).contains(n.t));
    // Post-run digits are those of 1 - 10^(-frac t).
    mpfr_frac(x, t, MPFR_RNDN);
    mpfr_neg(x, x, MPFR_RNDN);
    mpfr_exp10(x, x, MPFR_RNDN);
    mpfr_ui_sub(x, 1, x, MPFR_RNDN);
    mpfr_mul_ui(x, x, 10000000000000000UL, MPFR_RNDN);
    mpfr_floor(x, x);
    Integer post;
    mpfr_get_z(post.get_mpz_t(), x, MPFR_RNDN);
    CHECK(post.get_str() == n.post_run.to_string());
    mpfr_clears(t, x, y, lo, hi, static_cast<mpfr_ptr>(nullptr));
}

TEST_CASE("nine-run for the phi variant matches its full expansion") {
    DSequence phi(ConstructionParams::phi_variant());
    NineRunReport n = nine_run_report(phi);
    CHECK(n.count == 243165);
    CHECK(n.post_run.to_string() == "8305256326921304");
    Integer end = n.first_deviant - 1;
    OracleDigits o = alpha_digit_oracle(phi, 10, Integer(1), end + 16);
    CHECK(o.certificate.k == 6);
    std::vector<DigitRun> runs = empirical_runs(o.digits);
    REQUIRE_FALSE(runs.empty());
    const DigitRun& longest = *std::max_element(runs.begin(), runs.end(),
                                                [](const DigitRun& a, const DigitRun& b) { return a.length < b.length; });
    CHECK(longest.start == n.run_start);
    CHECK(longest.length == n.count);
    CHECK(o.digits.substr(end.get_ui()).to_string() == n.post_run.to_string());
    // Density of 9s up to the end of the run.
    std::size_t nines = count_digit(o.digits.substr(0, end.get_ui()), 9);
    CHECK(static_cast<double>(nines) / end.get_d() >= 0.9999);
}

TEST_CASE("Liouville witnesses") {
    DSequence s(ConstructionParams::standard());
    LiouvilleWitness w5 = liouville_witness(s, 5);
    CHECK(*w5.m.exact == 63);
    REQUIRE(w5.p);
    CHECK(Rational(*w5.p, w5.q.exact_value()) == alpha_exact(s, 5));
    CHECK(w5.growth.verdict == Ordering::Greater);
    LiouvilleWitness w6 = liouville_witness(s, 6);
    CHECK(*w6.m.exact == Integer("152587890624"));
    CHECK(w6.growth.level_name() == "log-log");
    LiouvilleWitness w7 = liouville_witness(s, 7);
    CHECK_FALSE(w7.m.exact);
    CHECK(w7.m.to_string() == "6^30517578125-1");
    CHECK(w7.growth.verdict == Ordering::Greater);

    DSequence phi(ConstructionParams::phi_variant());
    LiouvilleWitness p5 = liouville_witness(phi, 5);
    CHECK(*p5.m.exact == 15);
    CHECK(p5.q.exact_value() == 390625);
    CHECK(throws_kind(ErrorKind::Precondition, [&] { liouville_witness(s, 4); }));
}

TEST_CASE("empirical runs and terminating length") {
    DigitString d = DigitString::from_text("9919990099", 10);
    std::vector<DigitRun> runs = empirical_runs(d);
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].start == 1);
    CHECK(runs[0].length == 2);
    CHECK(runs[1].start == 4);
    CHECK(runs[1].length == 3);
    CHECK(runs[2].start == 9);
    CHECK(empirical_runs(DigitString::from_text("0101", 2)).size() == 2);
    CHECK(terminating_length(Rational::parse("21/32"), 10) == 5);
    CHECK(terminating_length(Rational::parse("21/32"), 2) == 5);
    CHECK(terminating_length(Rational::parse("1/2"), 16) == 1);
}
