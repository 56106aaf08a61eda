#include "abnormal/error.hpp"
#include "abnormal/normality.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace abnormal;

namespace {

struct BruteVerdict {
    bool normal = false;
    std::size_t period = 0;
    std::vector<std::size_t> counts;
};

// Long division until a remainder repeats; counts digits over the cycle.
BruteVerdict brute(unsigned long p, unsigned long q, unsigned long b) {
    std::map<unsigned long, std::size_t> seen;
    std::vector<unsigned> digits;
    unsigned long r = p % q;
    while (!seen.count(r)) {
        seen[r] = digits.size();
        r *= b;
        digits.push_back(static_cast<unsigned>(r / q));
        r %= q;
    }
    BruteVerdict v;
    v.counts.assign(b, 0);
    for (std::size_t i = seen[r]; i < digits.size(); ++i) ++v.counts[digits[i]];
    v.period = digits.size() - seen[r];
    v.normal = std::all_of(v.counts.begin(), v.counts.end(), [&](std::size_t c) { return c * b == v.period; });
    return v;
}

} // namespace

TEST_CASE("simple normality agrees with cycle detection for q <= 200, b <= 12") {
    for (unsigned long q = 2; q <= 200; ++q) {
        for (unsigned long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (unsigned long b = 2; b <= 12; ++b) {
                BruteVerdict e = brute(p, q, b);
                NormalityVerdict v = simply_normal_rational(Rational{Integer(p), Integer(q)}, Integer(b));
                CHECK(v.simply_normal == e.normal);
                CHECK(v.period_length == e.period);
                CHECK(v.period_frequencies == e.counts);
            }
        }
    }
}

TEST_CASE("quoted examples") {
    auto normal = [](const char* r, unsigned long b) {
        return simply_normal_rational(Rational::parse(r), Integer(b)).simply_normal;
    };
    CHECK(normal("1/3", 2));
    CHECK(normal("1/7", 3));
    CHECK_FALSE(normal("1/63", 2));
    CHECK(normal("11/63", 2));
    CHECK(expand_rational(Rational::parse("1/7"), 3).period.to_string() == "010212");
    CHECK(expand_rational(Rational::parse("1/63"), 2).period.to_string() == "000001");
    CHECK(expand_rational(Rational::parse("11/63"), 2).period.to_string() == "001011");
    for (const char* r : {"1/14", "1/19", "1/21", "1/31"}) CHECK(normal(r, 3));
    NormalityVerdict t = simply_normal_rational(Rational::parse("3/8"), Integer(2));
    CHECK(t.reason == NormalityReason::Terminating);
    CHECK(t.period_length == 1);
}

TEST_CASE("fractions with a factor of 5 in a power-of-ten denominator are simply normal to base 2") {
    std::mt19937_64 rng(10);
    for (unsigned n = 1; n <= 6; ++n) {
        unsigned long scale = 1;
        for (unsigned i = 0; i < n; ++i) scale *= 10;
        auto check = [&](unsigned long a) {
            Rational r{Integer(a), Integer(scale)};
            if (mpz_popcount(r.denominator().get_mpz_t()) == 1) return;  // a 2-adic fraction
            CHECK(simply_normal_rational(r, Integer(2)).simply_normal);
        };
        if (n <= 3)
            for (unsigned long a = 1; a < scale; ++a) check(a);
        else
            for (int i = 0; i < 300; ++i) check(1 + rng() % (scale - 1));
    }
    for (unsigned k = 1; k <= 3; ++k) CHECK(simply_normal_rational(liouville_partial(k), Integer(2)).simply_normal);
}

TEST_CASE("necessary condition") {
    NecessaryCondition c = necessary_condition(Integer(10), Integer(40));
    CHECK_FALSE(c.survives);
    CHECK(c.reason == NormalityReason::Terminating);
    c = necessary_condition(Integer(2), Integer(7));
    CHECK_FALSE(c.survives);
    CHECK(c.reason == NormalityReason::OrderNotDivisible);
    CHECK(c.order == 3);
    c = necessary_condition(Integer(3), Integer(7));
    CHECK(c.survives);
    CHECK(c.order == 6);
}

TEST_CASE("absolute simple abnormality") {
    for (unsigned long q : {8UL, 15UL, 28UL, 16UL, 64UL}) {
        ASAReport r = classify_absolutely_simply_abnormal(q);
        CHECK(r.absolutely_simply_abnormal);
        CHECK(r.candidate_bound == euler_phi(Integer(q)));
    }
    ASAReport r63 = classify_absolutely_simply_abnormal(63);
    CHECK_FALSE(r63.absolutely_simply_abnormal);
    CHECK(classify_absolutely_simply_abnormal(63, 11).absolutely_simply_abnormal == false);
    CHECK(classify_absolutely_simply_abnormal(7).absolutely_simply_abnormal == false);

    // Exhaustiveness: bases beyond the candidate bound never qualify.
    for (unsigned long q : {15UL, 28UL, 63UL, 7UL}) {
        unsigned long bound = euler_phi(Integer(q)).get_ui();
        for (unsigned long b = bound + 1; b <= bound + 20; ++b)
            for (unsigned long p = 1; p < q; ++p)
                if (std::gcd(p, q) == 1) CHECK_FALSE(brute(p, q, b).normal);
    }
}

TEST_CASE("simply_normal_bases is exact") {
    CHECK(simply_normal_bases(Rational::parse("1/3")) == std::vector<unsigned long>{2});
    CHECK(simply_normal_bases(Rational::parse("1/7")) == std::vector<unsigned long>{3});
    CHECK(simply_normal_bases(Rational::parse("1/63")) == std::vector<unsigned long>{3});
    CHECK(simply_normal_bases(Rational::parse("11/63")) == std::vector<unsigned long>{2, 3});
    std::mt19937_64 rng(8);
    for (int i = 0; i < 60; ++i) {
        unsigned long q = 2 + rng() % 150, p = 1 + rng() % (q - 1);
        Rational r{Integer(p), Integer(q)};
        std::vector<unsigned long> expect;
        for (unsigned long b = 2; b <= q + 1; ++b)
            if (brute(r.numerator().get_ui(), r.denominator().get_ui(), b).normal) expect.push_back(b);
        CHECK(simply_normal_bases(r) == expect);
    }
}

TEST_CASE("abnormality witness") {
    AbnormalityWitness w = abnormality_witness(Rational::parse("1/7"), 10);
    CHECK(w.k == 6);
    CHECK(w.digit == 142857);
    // 1/6 = 0.1(6): after the preperiod every base-10 digit is 6.
    AbnormalityWitness s = abnormality_witness(Rational::parse("1/6"), 10);
    CHECK(s.preperiod == 1);
    CHECK(s.k == 1);
    CHECK(s.digit == 6);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        unsigned long q = 2 + rng() % 300, p = 1 + rng() % (q - 1);
        unsigned b = 2 + static_cast<unsigned>(rng() % 11);
        Rational r{Integer(p), Integer(q)};
        AbnormalityWitness x = abnormality_witness(r, b);
        // Digits in base b^k from block index ceil(pre/k) on are all equal to x.digit.
        std::size_t start = (x.preperiod + x.k - 1) / x.k * x.k;
        DigitString d = digits_prefix(r, b, start + 4 * x.k);
        for (std::size_t blk = start; blk < d.size(); blk += x.k) {
            Integer v = 0;
            for (std::size_t j = 0; j < x.k; ++j) v = v * b + d[blk + j];
            CHECK(v == x.digit);
        }
    }
}
