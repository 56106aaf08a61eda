#include "abnormal/construction.hpp"
#include "abnormal/error.hpp"

#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

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

Integer ipow(const Integer& b, unsigned long e) {
    Integer v;
    mpz_pow_ui(v.get_mpz_t(), b.get_mpz_t(), e);
    return v;
}

unsigned long naive_phi(unsigned long n) {
    unsigned long c = 0;
    for (unsigned long a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

// Direct recursion d_j = j^(n_j d_{j-1} / (j-1)), stopping before values get large.
std::vector<Integer> naive_d(const ConstructionParams& p, unsigned long last) {
    std::vector<Integer> d{0, 0, ipow(Integer(2), p.n2)};
    for (unsigned long j = 3; j <= last; ++j) {
        Integer prev = d[j - 1];
        REQUIRE(prev % (j - 1) == 0);
        unsigned long n = p.rule.kind == ExponentRule::Kind::Phi ? naive_phi(j - 1) : p.n(j);
        Integer e = n * prev / (j - 1);
        REQUIRE(e.fits_ulong_p());
        d.push_back(ipow(Integer(j), e.get_ui()));
    }
    return d;
}

Rational naive_alpha(const ConstructionParams& p, const std::vector<Integer>& d, unsigned long k) {
    Rational a = p.alpha2();
    for (unsigned long j = 3; j <= k; ++j) a = a * Rational(d[j] - 1, d[j]);
    return a;
}

} // namespace

TEST_CASE("presets and their first terms") {
    DSequence s(ConstructionParams::standard());
    CHECK(s.d(2).exact_value() == 4);
    CHECK(s.d(3).exact_value() == 9);
    CHECK(s.d(4).exact_value() == 64);
    CHECK(s.d(5).exact_value() == Integer("152587890625"));
    CHECK(s.d(6).to_string() == "6^30517578125");
    CHECK_FALSE(s.d(6).is_exact());
    CHECK(s.largest_materialized() == 5);

    DSequence phi(ConstructionParams::phi_variant());
    CHECK(phi.d(4).exact_value() == 16);
    CHECK(phi.d(5).exact_value() == 390625);
    REQUIRE(phi.d(6).is_exact());
    CHECK(ipow(Integer(6), 312500) == phi.d(6).exact_value());
    CHECK(alpha_exact(phi, 5) == Rational(Integer(24414), Integer(78125)));
}

TEST_CASE("alpha_k matches a direct product") {
    std::vector<ConstructionParams> cases{ConstructionParams::standard(), ConstructionParams::phi_variant()};
    ConstructionParams listed;
    listed.a = 5;
    listed.n2 = 3;
    listed.rule = ExponentRule::parse("list:2,1");
    cases.push_back(listed);
    for (const auto& p : cases) {
        DSequence s(p);
        unsigned long last = std::min(5UL, s.largest_materialized());
        CHECK(last >= 3);
        auto d = naive_d(p, last);
        for (unsigned long k = 2; k <= last; ++k) {
            CHECK(s.d(k).exact_value() == d[k]);
            CHECK(alpha_exact(s, k) == naive_alpha(p, d, k));
        }
    }
    CHECK(throws_kind(ErrorKind::Budget, [] { alpha_exact(DSequence(ConstructionParams::standard()), 6); }));
}

TEST_CASE("parameter text round-trips and validation") {
    ConstructionParams p;
    p.a = 11;
    p.n2 = 5;
    p.rule = ExponentRule::parse("list:3,1,2");
    ConstructionParams q = ConstructionParams::parse(p.to_text());
    CHECK(q.a == 11);
    CHECK(q.n2 == 5);
    CHECK(q.rule.to_text() == p.rule.to_text());
    CHECK(q.n(3) == 3);
    CHECK(q.n(5) == 2);
    CHECK(q.n(9) == 1);
    CHECK(ConstructionParams::parse("a=1;n2=1;rule=phi").rule.kind == ExponentRule::Kind::Phi);
    CHECK(throws_kind(ErrorKind::Parse, [] { ConstructionParams::parse("a=3;n2=2;colour=red"); }));
    CHECK(throws_kind(ErrorKind::Parse, [] { ConstructionParams::parse("n2=2"); }));
    auto invalid = [](const char* text) {
        return throws_kind(ErrorKind::Precondition, [&] { ConstructionParams::parse(text).validate(); });
    };
    CHECK(invalid("a=4;n2=3"));
    CHECK(invalid("a=9;n2=3"));
    CHECK(invalid("a=1;n2=0"));
    CHECK_NOTHROW(ConstructionParams::parse("a=7;n2=3").validate());
}

TEST_CASE("first_difference") {
    auto s = ConstructionParams::standard();
    CHECK_FALSE(first_difference(s, s).has_value());
    CHECK(first_difference(s, ConstructionParams::phi_variant()) == 2UL);
    auto t = s;
    t.rule = ExponentRule::parse("list:1,1,3");
    CHECK(first_difference(s, t) == 5UL);
}

TEST_CASE("integrality and sandwich") {
    // d_k alpha_k is an integer; checked against the direct product on random parameters.
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 30; ++i) {
        ConstructionParams p;
        p.n2 = 1 + rng() % 6;
        p.a = 2 * (rng() % (1UL << (p.n2 - 1))) + 1;
        p.rule.kind = ExponentRule::Kind::List;
        p.rule.values = {1 + rng() % 2, 1};
        DSequence s(p);
        unsigned long last = std::min(4UL, s.largest_materialized());
        auto d = naive_d(p, last);
        for (unsigned long k = 2; k <= last; ++k) {
            IntegralityResult r = integrality_check(s, k);
            Rational expect = naive_alpha(p, d, k) * Rational(d[k]);
            CHECK(r.product == expect);
            CHECK(r.integral == expect.is_integer());
            CHECK(r.integral);
        }
        for (unsigned long k = 2; k < last; ++k) CHECK(sandwich_check(s, k));
    }
    DSequence std_seq(ConstructionParams::standard());
    for (unsigned long k = 2; k <= 4; ++k) CHECK(sandwich_check(std_seq, k));
}

TEST_CASE("tail domination") {
    CHECK(certify_tail_domination(DSequence(ConstructionParams::standard()), 3) == 5);
    CHECK(certify_tail_domination(DSequence(ConstructionParams::phi_variant()), 3) >= 5);
    CHECK(throws_kind(ErrorKind::Precondition,
                      [] { certify_tail_domination(DSequence(ConstructionParams::degenerate()), 3); }));
}

TEST_CASE("lower ends of the certified interval") {
    DSequence s(ConstructionParams::standard());
    LowerEnd e4 = lemma2_lower_end(s, 4, 128);
    REQUIRE(e4.exact.has_value());
    CHECK(*e4.exact == alpha_exact(s, 4) - Rational(Integer(2), s.d(5).exact_value()));
    LowerEnd e5 = lemma2_lower_end(s, 5, 256);
    CHECK_FALSE(e5.exact.has_value());
    CHECK_FALSE(e5.enclosure.certainly_greater(Interval::from_rational(alpha_exact(s, 5), 256)));
    // 2/d_6 is far below 10^-40, so the enclosure is pinned to alpha_5.
    Interval gap = Interval::from_rational(alpha_exact(s, 5), 256) - e5.enclosure;
    CHECK(gap.certainly_less(Interval::from_rational(Rational(Integer(1), ipow(Integer(10), 40)), 256)));
}

TEST_CASE("target interval parameters match a brute-force search") {
    std::mt19937_64 rng(555);
    for (int i = 0; i < 300; ++i) {
        long den = 1 + static_cast<long>(rng() % 200);
        long x = static_cast<long>(rng() % (den + 1)), y = static_cast<long>(rng() % (den + 1));
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        Rational u{Integer(x), Integer(den)}, v{Integer(y), Integer(den)};
        Rational w = v - u;
        unsigned long n2 = 1;
        while (Rational(ipow(Integer(2), n2)) * w < Rational(4)) ++n2;
        Integer scale = ipow(Integer(2), n2);
        Rational low = u + w / Rational(4);
        Integer a = 1;
        while (!(Rational(a, scale) > low)) a += 2;
        ConstructionParams p = target_interval(u, v);
        CHECK(p.n2 == n2);
        CHECK(p.a == a);
        CHECK(p.alpha2() < v);
        TargetCertificate c = certify_target(DSequence(p), u, v);
        CHECK(c.certified);
    }
    CHECK(throws_kind(ErrorKind::Precondition, [] { target_interval(Rational(1), Rational(1)); }));
}

TEST_CASE("distinguish separates different parameter sets") {
    auto check = [](const ConstructionParams& p1, const ConstructionParams& p2) {
        DSequence s1(p1), s2(p2);
        SeparationCertificate c = distinguish(s1, s2);
        CHECK(c.alpha_first != c.alpha_second);
        CHECK(c.separation.verdict == Ordering::Greater);
        // The larger approximant's lower end clears the smaller approximant.
        bool first_larger = c.alpha_first > c.alpha_second;
        const LowerEnd& low = first_larger ? c.lower_first : c.lower_second;
        const Rational& small = first_larger ? c.alpha_second : c.alpha_first;
        if (low.exact) CHECK(*low.exact > small);
        else CHECK(low.enclosure.certainly_greater(Interval::from_rational(small, low.enclosure.precision())));
        return c.k;
    };
    CHECK(check(ConstructionParams::standard(), ConstructionParams::phi_variant()) == 2);
    auto t = ConstructionParams::standard();
    t.rule = ExponentRule::parse("list:2");
    CHECK(check(ConstructionParams::standard(), t) >= 3);
    CHECK(throws_kind(ErrorKind::Precondition, [] {
        DSequence a(ConstructionParams::standard()), b(ConstructionParams::standard());
        distinguish(a, b);
    }));
}

TEST_CASE("degenerate parameters") {
    DegenerateReport r = degenerate_check(ConstructionParams::degenerate());
    REQUIRE(r.degenerate);
    REQUIRE(r.alphas.size() == 9);
    for (unsigned long k = 2; k <= 10; ++k) CHECK(r.alphas[k - 2] == Rational(Integer(1), Integer(k)));
    CHECK_FALSE(degenerate_check(ConstructionParams::standard()).degenerate);
}
