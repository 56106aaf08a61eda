#include "abnormal/exact_arith.hpp"

#include "abnormal/error.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace abnormal {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Level: return "level";
    case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

Rational::Rational(const Integer& numerator, const Integer& denominator) {
    require(denominator != 0, "rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

Rational operator/(const Rational& a, const Rational& b) {
    require(b.sign() != 0, "division by zero rational");
    return Rational(mpq_class(a.value_ / b.value_));
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Integer parse_integer(std::string_view text) {
    std::string s(text);
    s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
    if (s.empty()) fail(ErrorKind::Parse, "empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size() ||
        !std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(ErrorKind::Parse, "malformed integer '" + std::string(text) + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::size_t bit_length(const Integer& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Integer FactoredInteger::product() const {
    Integer result = 1;
    for (const auto& f : factors) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        result *= pk;
    }
    return result;
}

namespace {

bool miller_rabin_round(const Integer& n, const Integer& a, const Integer& d, unsigned long s) {
    Integer x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static constexpr unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    // The first 13 prime bases are a deterministic witness set below this bound.
    static const Integer deterministic_limit("3317044064679887385961981", 10);
    if (n >= deterministic_limit) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
    Integer d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    for (unsigned long p : small)
        if (!miller_rabin_round(n, Integer(p), d, s)) return false;
    return true;
}

FactoredInteger factorize(const Integer& n, unsigned long trial_bound) {
    require(n >= 1, "factorize requires n >= 1");
    FactoredInteger out{n, {}};
    Integer rest = n;
    auto strip = [&](unsigned long p) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) return;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        out.factors.push_back({Integer(p), e});
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel
    for (unsigned long p = 5; p <= trial_bound; p += 6) {
        if (rest == 1) break;
        if (Integer(p) * p > rest) break;
        strip(p);
        if (p + 2 <= trial_bound) strip(p + 2);
    }
    if (rest > 1) {
        Integer bound_sq = Integer(trial_bound) * trial_bound;
        if (rest >= bound_sq && !is_prime(rest))
            fail(ErrorKind::Budget, "factorization budget exceeded: composite cofactor " + rest.get_str() +
                                        " has no factor below " + std::to_string(trial_bound));
        out.factors.push_back({rest, 1});
    }
    return out;
}

Integer mod_pow(const Integer& base, const Integer& exponent, const Integer& modulus) {
    require(modulus >= 1, "mod_pow modulus must be >= 1");
    require(exponent >= 0, "mod_pow exponent must be non-negative");
    if (modulus == 1) return 0;
    Integer result;
    mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return result;
}

Integer euler_phi(const FactoredInteger& n) {
    Integer phi = 1;
    for (const auto& f : n.factors) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), f.prime.get_mpz_t(), f.exponent - 1);
        phi *= pk * (f.prime - 1);
    }
    return phi;
}

Integer euler_phi(const Integer& n, unsigned long trial_bound) {
    require(n >= 1, "euler_phi requires n >= 1");
    return euler_phi(factorize(n, trial_bound));
}

FactoredInteger factorize_phi(const FactoredInteger& n, unsigned long trial_bound) {
    std::map<Integer, unsigned long> acc;
    for (const auto& f : n.factors) {
        if (f.exponent > 1) acc[f.prime] += f.exponent - 1;
        for (const auto& g : factorize(f.prime - 1, trial_bound).factors) acc[g.prime] += g.exponent;
    }
    FactoredInteger out{euler_phi(n), {}};
    for (auto& [p, e] : acc) out.factors.push_back({p, e});
    return out;
}

Integer multiplicative_order(const Integer& b, const Integer& q, unsigned long trial_bound) {
    require(q >= 1, "multiplicative_order requires q >= 1");
    Integer g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), q.get_mpz_t());
    require(g == 1, "multiplicative_order requires gcd(b, q) = 1 (b=" + b.get_str() + ", q=" + q.get_str() + ")");
    if (q == 1) return 1;
    FactoredInteger phi = factorize_phi(factorize(q, trial_bound), trial_bound);
    Integer t = phi.value;
    for (const auto& f : phi.factors) {
        for (unsigned long i = 0; i < f.exponent; ++i) {
            Integer candidate = t / f.prime;
            if (mod_pow(b, candidate, q) != 1) break;
            t = candidate;
        }
    }
    return t;
}

bool is_primitive_root(const Integer& g, const Integer& n) {
    if (gcd(g, n) != 1) return false;
    return multiplicative_order(g, n) == euler_phi(n);
}

unsigned long p_adic_valuation(const Integer& n, const Integer& p) {
    require(n >= 1, "p_adic_valuation requires n >= 1");
    require(p >= 2, "p_adic_valuation requires p >= 2");
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Integer coprime_part(const Integer& q, const Integer& b) {
    require(q >= 1, "coprime_part requires q >= 1");
    Integer rest = q;
    Integer g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t());
        if (g == 1) return rest;
        mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), g.get_mpz_t());
    }
}

bool lemma3_check(const Integer& k, const Integer& p, unsigned long r) {
    require(k >= 1, "lemma3_check requires k >= 1");
    require(r >= 1, "lemma3_check requires r >= 1");
    require(is_prime(p), "lemma3_check requires p prime");
    Integer pr;
    mpz_pow_ui(pr.get_mpz_t(), p.get_mpz_t(), r);
    require(mpz_divisible_p(k.get_mpz_t(), pr.get_mpz_t()) != 0, "lemma3_check requires p^r | k");
    Integer modulus = pr * p;
    return mod_pow(k + 1, p, modulus) == 1 % modulus;
}

bool lemma4_check(const Integer& k, unsigned long m, std::size_t exponent_budget_bits) {
    require(k >= 2, "lemma4_check requires k >= 2");
    require(m >= 1, "lemma4_check requires m >= 1");
    if (static_cast<double>(bit_length(k)) * static_cast<double>(m) > static_cast<double>(exponent_budget_bits))
        fail(ErrorKind::Budget, "lemma4_check exponent k^m exceeds the budget");
    Integer exponent;
    mpz_pow_ui(exponent.get_mpz_t(), k.get_mpz_t(), m);
    Integer modulus;
    mpz_pow_ui(modulus.get_mpz_t(), k.get_mpz_t(), m + 1);
    return mod_pow(k + 1, exponent, modulus) == 1;
}

} // namespace abnormal
