#include "abnormal/serialize.hpp"

#include <cstdio>

namespace abnormal {

namespace {

constexpr mpfr_prec_t kJsonPrecision = 128;

Json ordering_name(Ordering o) { return std::string(to_string(o)); }

} // namespace

Json to_json(const Integer& n) {
    if (n.fits_slong_p()) return n.get_si();
    return n.get_str();
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const Interval& v, int digits) {
    return Json{{"lo", v.lo_string(digits)}, {"hi", v.hi_string(digits)}};
}

Json to_json(const LevelReal& v, int digits) {
    return Json{{"level", v.level()}, {"lo", v.value().lo_string(digits)}, {"hi", v.value().hi_string(digits)}};
}

Json to_json(const TowerMagnitude& m, std::size_t max_digits) {
    if (m.is_exact()) {
        const Integer& v = m.exact_value();
        std::size_t digits = mpz_sizeinbase(v.get_mpz_t(), 10);
        if (digits <= max_digits) return Json{{"value", to_json(v)}};
        return Json{{"decimal_digits", mpz_sizeinbase(v.get_mpz_t(), 10)},
                    {"fnv64", hex64(fnv1a64(canonical_text(m)))},
                    {"log10", to_json(m.enclose(kJsonPrecision).log10())}};
    }
    const auto& p = m.as_power();
    return Json{{"base", p.base},
                {"exponent", to_json(*p.exponent, max_digits)},
                {"coefficient", to_json(p.coefficient)},
                {"shift", p.shift},
                {"log10", to_json(m.enclose(kJsonPrecision).log10())}};
}

Json to_json(const CertifiedOrdering& c) {
    return Json{{"verdict", ordering_name(c.verdict)},
                {"level", c.level_name()},
                {"digits", c.digits},
                {"margin", c.margin}};
}

Json to_json(const ConstructionParams& p) {
    return Json{{"a", to_json(p.a)}, {"n2", p.n2}, {"rule", p.rule.to_text()}, {"alpha2", to_json(p.alpha2())}};
}

Json to_json(const Position& p) {
    if (p.exact) return to_json(*p.exact);
    Json j{{"expression", p.to_string()}};
    if (p.tower) {
        j["tower"] = to_json(*p.tower);
        j["coefficient"] = to_json(p.coefficient);
        j["offset"] = p.offset;
    }
    if (p.magnitude) j["magnitude"] = to_json(*p.magnitude);
    return j;
}

Json to_json(const RunReport& r) {
    Json j{{"base", r.base},
           {"k", r.k},
           {"digit", std::string(1, digit_char(r.base - 1))},
           {"start_at_latest", to_json(r.start_at_latest)},
           {"start_bound", to_json(r.start_bound)},
           {"end_at_least", to_json(r.end_at_least)},
           {"end_is_exact", r.end_is_exact},
           {"certification", std::string(to_string(r.certification))}};
    if (r.neg_log_eps) j["neg_log_eps"] = to_json(*r.neg_log_eps, 24);
    if (r.empirical)
        j["empirical"] = Json{{"start", to_json(r.empirical->start)}, {"end", to_json(r.empirical->end)}};
    if (r.density_bound) j["density_bound"] = to_json(*r.density_bound, 12);
    return j;
}

Json to_json(const NineRunReport& r) {
    return Json{{"base", r.base},
                {"k", r.k},
                {"leading_digits", r.leading.to_string()},
                {"run_start", to_json(r.run_start)},
                {"run_count", to_json(r.count)},
                {"first_deviant", to_json(r.first_deviant)},
                {"post_run_digits", r.post_run.to_string()},
                {"t", to_json(r.t, 30)},
                {"working_digits", r.digits_used}};
}

Json to_json(const LiouvilleWitness& w) {
    Json j{{"k", w.k}, {"q", to_json(w.q)}, {"m", to_json(w.m)}, {"growth", to_json(w.growth)},
           {"tail_domination_from", w.tail_from}};
    j["p"] = w.p ? to_json(*w.p) : Json(nullptr);
    return j;
}

Json to_json(const NormalityVerdict& v) {
    return Json{{"rational", to_json(v.r)},
                {"base", to_json(v.base)},
                {"simply_normal", v.simply_normal},
                {"reason", std::string(to_string(v.reason))},
                {"period_length", to_json(v.period_length)},
                {"period_frequencies", v.period_frequencies}};
}

Json to_json(const ASAReport& r) {
    Json bases = Json::array();
    for (const auto& row : r.bases) {
        bases.push_back(Json{{"base", row.base},
                             {"reason", std::string(to_string(row.reason))},
                             {"order", row.order == 0 ? Json(nullptr) : to_json(row.order)},
                             {"balanced_numerators", row.balanced_numerators}});
    }
    Json j{{"denominator", r.q},
           {"candidate_bound", r.candidate_bound},
           {"numerators_checked", r.numerators_checked},
           {"absolutely_simply_abnormal", r.absolutely_simply_abnormal},
           {"bases", std::move(bases)}};
    if (r.numerator) j["numerator"] = *r.numerator;
    return j;
}

Json to_json(const PeriodicExpansion& e) {
    return Json{{"base", e.base},
                {"preperiod", e.preperiod.to_string()},
                {"period", e.period.to_string()},
                {"text", e.to_string()}};
}

Json to_json(const DigitStats& s) {
    return Json{{"base", s.base}, {"length", s.length}, {"counts", s.counts}};
}

Json to_json(const OracleDigits& d) {
    const auto& c = d.certificate;
    return Json{{"digits", d.digits.to_string()},
                {"k", c.k},
                {"safe_limit", to_json(c.safe_limit)},
                {"safe_limit_capped", c.safe_limit_capped},
                {"borrow", c.borrow}};
}

namespace {

Json lower_end_json(const LowerEnd& e) {
    if (e.exact) return to_json(*e.exact);
    return to_json(e.enclosure, 24);
}

} // namespace

Json to_json(const SeparationCertificate& c) {
    return Json{{"k", c.k},
                {"alpha_first", to_json(c.alpha_first)},
                {"alpha_second", to_json(c.alpha_second)},
                {"interval_first", {{"lower", lower_end_json(c.lower_first)}, {"upper", to_json(c.alpha_first)}}},
                {"interval_second", {{"lower", lower_end_json(c.lower_second)}, {"upper", to_json(c.alpha_second)}}},
                {"separation", to_json(c.separation)}};
}

Json to_json(const TargetCertificate& c) {
    return Json{{"certified", c.certified}, {"alpha2", to_json(c.alpha2)}, {"lower_margin", to_json(c.lower_margin)}};
}

std::string canonical_text(const TowerMagnitude& m) {
    if (m.is_exact()) return "x" + m.exact_value().get_str(16);
    const auto& p = m.as_power();
    return p.coefficient.get_str(16) + "*" + std::to_string(p.base) + "^(" + canonical_text(*p.exponent) + "+" +
           std::to_string(p.shift) + ")";
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t d_sequence_hash(const DSequence& seq, unsigned long last) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned long j = 2; j <= last; ++j) {
        h = fnv1a64(canonical_text(seq.d(j)), h);
        h = fnv1a64(";", h);
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace abnormal
