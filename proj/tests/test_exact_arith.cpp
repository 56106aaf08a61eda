#include "abnormal/error.hpp"
#include "abnormal/exact_arith.hpp"

#include "doctest.h"

#include <functional>
#include <numeric>
#include <random>

using namespace abnormal;

namespace {

std::vector<bool> sieve(unsigned n) {
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) prime[1] = false;
    for (unsigned i = 2; i * i <= n; ++i)
        if (prime[i])
            for (unsigned j = i * i; j <= n; j += i) prime[j] = false;
    return prime;
}

unsigned long brute_phi(unsigned long n) {
    unsigned long c = 0;
    for (unsigned long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

unsigned long brute_order(unsigned long b, unsigned long q) {
    if (q == 1) return 1;
    unsigned long x = b % q;
    for (unsigned long t = 1;; ++t) {
        if (x == 1) return t;
        x = x * b % q;
    }
}

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

} // namespace

TEST_CASE("rationals are kept in lowest terms") {
    Rational r(Integer(6), Integer(-4));
    CHECK(r.to_string() == "-3/2");
    CHECK(r.denominator() == 2);
    CHECK(Rational::parse("10/4") == Rational(Integer(5), Integer(2)));
    CHECK(Rational::parse("3").is_integer());
    CHECK(Rational::parse("0/7").to_string() == "0");
    CHECK(throws_kind(ErrorKind::Parse, [] { Rational::parse("1/0"); }));
    CHECK(throws_kind(ErrorKind::Parse, [] { Rational::parse("x/3"); }));
    CHECK(Rational(Integer(2), Integer(3)) * Rational(Integer(9), Integer(4)) == Rational(Integer(3), Integer(2)));
}

TEST_CASE("factorize matches trial division for small n") {
    for (unsigned long n = 1; n <= 3000; ++n) {
        FactoredInteger f = factorize(Integer(n));
        CHECK(f.product() == n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            CHECK(is_prime(f.factors[i].prime));
            if (i) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
        }
    }
}

TEST_CASE("factorize reports a composite cofactor beyond the bound") {
    Integer p1("1000000007"), p2("1000000009");
    CHECK(throws_kind(ErrorKind::Budget, [&] { factorize(p1 * p2, 1000); }));
    FactoredInteger f = factorize(p1 * 8, 1000);
    CHECK(f.factors.size() == 2);
    CHECK(f.factors[1].prime == p1);
}

TEST_CASE("is_prime agrees with a sieve") {
    auto prime = sieve(20000);
    for (unsigned n = 0; n <= 20000; ++n) CHECK(is_prime(Integer(n)) == prime[n]);
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));
    CHECK_FALSE(is_prime(Integer("3317044064679887385961981")));
}

TEST_CASE("euler_phi and multiplicative_order agree with brute force") {
    for (unsigned long n = 1; n <= 400; ++n) CHECK(euler_phi(Integer(n)) == brute_phi(n));
    for (unsigned long q = 1; q <= 200; ++q)
        for (unsigned long b = 2; b <= 12; ++b)
            if (std::gcd(b, q) == 1) CHECK(multiplicative_order(Integer(b), Integer(q)) == brute_order(b, q));
    CHECK(multiplicative_order(Integer(4), Integer(15)) == 2);
    CHECK(multiplicative_order(Integer(3), Integer(32)) == 8);
    CHECK(throws_kind(ErrorKind::Precondition, [] { multiplicative_order(Integer(2), Integer(6)); }));
}

TEST_CASE("primitive roots") {
    for (unsigned long n : {7UL, 11UL, 13UL, 49UL, 50UL}) {
        unsigned long phi = brute_phi(n);
        for (unsigned long g = 1; g < n; ++g) {
            bool expect = std::gcd(g, n) == 1 && brute_order(g, n) == phi;
            CHECK(is_primitive_root(Integer(g), Integer(n)) == expect);
        }
    }
}

TEST_CASE("mod_pow, valuations, coprime part") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 300; ++i) {
        unsigned long b = rng() % 1000, e = rng() % 40, m = 1 + rng() % 5000;
        unsigned long naive = 1 % m;
        for (unsigned long k = 0; k < e; ++k) naive = naive * b % m;
        CHECK(mod_pow(Integer(b), Integer(e), Integer(m)) == naive);
    }
    CHECK(p_adic_valuation(Integer(96), Integer(2)) == 5);
    CHECK(p_adic_valuation(Integer(7), Integer(3)) == 0);
    CHECK(coprime_part(Integer(360), Integer(10)) == 9);
    CHECK(coprime_part(Integer(63), Integer(2)) == 63);
    CHECK(coprime_part(Integer(8), Integer(6)) == 1);
}

TEST_CASE("divisibility lemmas against direct big-integer evaluation") {
    // p^(r+1) | (k+1)^p - 1 whenever p^r | k.
    for (unsigned long k = 2; k <= 120; ++k) {
        for (const auto& f : factorize(Integer(k)).factors) {
            for (unsigned long r = 1; r <= f.exponent; ++r) {
                Integer v;
                mpz_pow_ui(v.get_mpz_t(), Integer(k + 1).get_mpz_t(), f.prime.get_ui());
                v -= 1;
                Integer mod;
                mpz_pow_ui(mod.get_mpz_t(), f.prime.get_mpz_t(), r + 1);
                CHECK(v % mod == 0);
                CHECK(lemma3_check(Integer(k), f.prime, r));
            }
        }
    }
    CHECK(throws_kind(ErrorKind::Precondition, [] { lemma3_check(Integer(6), Integer(4), 1); }));
    CHECK(throws_kind(ErrorKind::Precondition, [] { lemma3_check(Integer(6), Integer(2), 2); }));
    // k^(m+1) | (k+1)^(k^m) - 1 for small cases evaluated in full.
    for (unsigned long k = 2; k <= 9; ++k) {
        for (unsigned long m = 1; m <= 3; ++m) {
            Integer e, v, mod;
            mpz_ui_pow_ui(e.get_mpz_t(), k, m);
            mpz_pow_ui(v.get_mpz_t(), Integer(k + 1).get_mpz_t(), e.get_ui());
            v -= 1;
            mpz_ui_pow_ui(mod.get_mpz_t(), k, m + 1);
            CHECK(v % mod == 0);
            CHECK(lemma4_check(Integer(k), m));
        }
    }
}
