#pragma once

// JSON views of the library's result types. Integers that fit in 64 bits are
// JSON numbers; larger ones are decimal strings. Rationals are "p/q" strings.

#include "abnormal/approximation.hpp"
#include "abnormal/normality.hpp"

#include "json.hpp"

#include <cstdint>

namespace abnormal {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& n);
Json to_json(const Rational& r);
Json to_json(const Interval& v, int digits = 20);
Json to_json(const LevelReal& v, int digits = 20);
// Exact values up to `max_digits` decimal digits are written in full; longer
// ones as {"decimal_digits", "fnv64", "log10"}.
Json to_json(const TowerMagnitude& m, std::size_t max_digits = 100000);
Json to_json(const CertifiedOrdering& c);
Json to_json(const ConstructionParams& p);
Json to_json(const Position& p);
Json to_json(const RunReport& r);
Json to_json(const NineRunReport& r);
Json to_json(const LiouvilleWitness& w);
Json to_json(const NormalityVerdict& v);
Json to_json(const ASAReport& r);
Json to_json(const PeriodicExpansion& e);
Json to_json(const DigitStats& s);
Json to_json(const OracleDigits& d);
Json to_json(const SeparationCertificate& c);
Json to_json(const TargetCertificate& c);

// Canonical, lossless text of a magnitude (exact values in hex).
std::string canonical_text(const TowerMagnitude& m);
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
// Hash of d_2..d_last.
std::uint64_t d_sequence_hash(const DSequence& seq, unsigned long last);
std::string hex64(std::uint64_t v);

} // namespace abnormal
