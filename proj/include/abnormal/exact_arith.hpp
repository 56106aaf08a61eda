#pragma once

// Arbitrary-precision integers and rationals (GMP) plus the elementary
// number theory used throughout: modular powers, Euler phi, multiplicative
// order, valuations, and the two divisibility lemmas behind the integrality
// of the approximants.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abnormal {

using Integer = mpz_class;

// Fraction in lowest terms with a positive denominator. Zero is 0/1.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : value_(n) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer& numerator, const Integer& denominator);
    explicit Rational(mpq_class q);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }
    const mpq_class& mpq() const { return value_; }

    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    // "p/q" or "p"; always in lowest terms.
    std::string to_string() const;
    static Rational parse(std::string_view text);

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Integer parse_integer(std::string_view text);
std::size_t bit_length(const Integer& n);

struct PrimePower {
    Integer prime;
    unsigned long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// value = prod prime^exponent, primes strictly increasing.
struct FactoredInteger {
    Integer value;
    std::vector<PrimePower> factors;

    Integer product() const;
};

inline constexpr unsigned long kDefaultTrialBound = 10'000'000;

// Trial division up to `trial_bound`, then a primality test on the cofactor.
// Throws ErrorKind::Budget if a composite cofactor remains.
FactoredInteger factorize(const Integer& n, unsigned long trial_bound = kDefaultTrialBound);

// Deterministic Miller-Rabin below 3.3e24; GMP's BPSW-based test above.
bool is_prime(const Integer& n);

Integer mod_pow(const Integer& base, const Integer& exponent, const Integer& modulus);

Integer euler_phi(const Integer& n, unsigned long trial_bound = kDefaultTrialBound);
Integer euler_phi(const FactoredInteger& n);
FactoredInteger factorize_phi(const FactoredInteger& n, unsigned long trial_bound = kDefaultTrialBound);

// Least t >= 1 with b^t = 1 (mod q); requires gcd(b, q) = 1.
Integer multiplicative_order(const Integer& b, const Integer& q,
                             unsigned long trial_bound = kDefaultTrialBound);

bool is_primitive_root(const Integer& g, const Integer& n);

unsigned long p_adic_valuation(const Integer& n, const Integer& p);

// Largest divisor of q that is coprime to b.
Integer coprime_part(const Integer& q, const Integer& b);

// p^(r+1) | (k+1)^p - 1 whenever p^r | k.  Precondition violations throw
// ErrorKind::Precondition.
bool lemma3_check(const Integer& k, const Integer& p, unsigned long r);

// k^(m+1) | (k+1)^(k^m) - 1.  The exponent k^m must fit within
// `exponent_budget_bits`; the check itself runs modulo k^(m+1).
bool lemma4_check(const Integer& k, unsigned long m, std::size_t exponent_budget_bits = 1u << 26);

} // namespace abnormal
