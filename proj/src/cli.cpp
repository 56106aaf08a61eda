#include "abnormal/cli.hpp"

#include "abnormal/error.hpp"
#include "abnormal/serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace abnormal {

namespace {

constexpr int kSchemaVersion = 1;
constexpr std::size_t kInlineDigits = 100000;

ConstructionParams resolve_params(const std::string& text) {
    if (text == "standard") return ConstructionParams::standard();
    if (text == "phi") return ConstructionParams::phi_variant();
    if (text == "degenerate") return ConstructionParams::degenerate();
    if (text.find('=') != std::string::npos) return ConstructionParams::parse(text);
    std::ifstream in(text);
    if (!in) fail(ErrorKind::Parse, "cannot open params file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ConstructionParams::parse(ss.str());
}

Json rational_json(const Rational& r) {
    std::size_t digits = mpz_sizeinbase(r.numerator().get_mpz_t(), 10) + mpz_sizeinbase(r.denominator().get_mpz_t(), 10);
    if (digits <= kInlineDigits) return to_json(r);
    return Json{{"numerator_digits", mpz_sizeinbase(r.numerator().get_mpz_t(), 10)},
                {"denominator_digits", mpz_sizeinbase(r.denominator().get_mpz_t(), 10)},
                {"fnv64", hex64(fnv1a64(r.numerator().get_str(16) + "/" + r.denominator().get_str(16)))}};
}

Json digits_json(const DigitString& d) {
    if (d.size() <= kInlineDigits) return d.to_string();
    std::string text = d.to_string();
    return Json{{"length", d.size()}, {"head", text.substr(0, 64)}, {"fnv64", hex64(fnv1a64(text))}};
}

Json frequencies_json(const DigitString& d) {
    Json f = Json::array();
    if (d.empty()) return f;
    for (const auto c : digit_stats(d).counts) f.push_back(Rational(Integer(c), Integer(d.size())).to_string());
    return f;
}

Json runs_json(const DigitString& d) {
    Json runs = Json::array();
    for (const auto& r : empirical_runs(d)) runs.push_back(Json{{"start", r.start}, {"length", r.length}});
    return runs;
}

void write_packed(const DigitString& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    auto bytes = d.pack();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::string scalar_text(const Json& v) {
    if (!v.is_string()) return v.dump();
    std::string s = v.get<std::string>();
    while (!s.empty() && s.back() == '\n') s.pop_back();
    for (char& c : s)
        if (c == '\n') c = ';';
    return s;
}

void render_pretty(const Json& j, std::ostream& os, const std::string& indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        std::string key = j.is_object() ? it.key() : "-";
        bool scalar_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
        if (v.is_object() || (v.is_array() && !scalar_array)) {
            os << indent << key << ":\n";
            render_pretty(v, os, indent + "  ");
        } else if (scalar_array) {
            os << indent << key << ": ";
            bool first = true;
            for (const auto& x : v) {
                os << (first ? "" : ", ") << scalar_text(x);
                first = false;
            }
            os << "\n";
        } else {
            os << indent << key << ": " << scalar_text(v) << "\n";
        }
    }
}

struct Options {
    std::string params = "standard";
    std::string other;
    std::string rational;
    std::string digits;
    std::string pattern;
    std::string packed;
    std::string suite = "all";
    std::string lower, upper;
    unsigned base = 10;
    unsigned long k = 5;
    unsigned long r = 0;
    long digit = -1;
    std::size_t prefix = 0;
    std::size_t length = 0;
    std::size_t post_digits = 16;
    std::string first, last;
    std::size_t count = 0;
    unsigned long q = 0;
    unsigned long numerator = 0;
    unsigned long from = 0, to = 0;
    unsigned long k_max = 0, m_max = 0;
    bool alpha = false;
    bool nine_run = false;
    bool no_confirm = false;
    bool all_bases = false;
    bool witness = false;
    bool table = false;
    std::size_t champernowne = 0;
    std::optional<unsigned long> oracle_k;
};

MaterializationBudget g_budget;

Json cmd_construct(const Options& o) {
    ConstructionParams params = resolve_params(o.params);
    DSequence seq(params, g_budget);
    require(o.k >= 2 && o.k <= 64, "--k must lie in 2..64");
    Json d = Json::array();
    for (unsigned long j = 2; j <= o.k + 1; ++j)
        d.push_back(Json{{"j", j}, {"e", to_json(seq.exponent(j), kInlineDigits)}, {"d", to_json(seq.d(j), kInlineDigits)}});
    unsigned long largest = seq.largest_materialized(o.k);
    Json alphas = Json::array();
    for (unsigned long j = 2; j <= largest; ++j) {
        Rational a = alpha_exact(seq, j);
        bool integral = j >= 3 ? integrality_check(seq, j).integral : true;
        alphas.push_back(Json{{"k", j}, {"alpha", rational_json(a)}, {"d_k_alpha_k_integral", integral}});
    }
    Json payload{{"params", to_json(params)},
                 {"params_text", params.to_text()},
                 {"k", o.k},
                 {"largest_materialized", largest},
                 {"d", std::move(d)},
                 {"alpha", std::move(alphas)},
                 {"d_hash", hex64(d_sequence_hash(seq, o.k + 1))}};
    if (largest >= o.k) payload["alpha_k"] = rational_json(alpha_exact(seq, o.k));
    return payload;
}

Json cmd_expand(const Options& o) {
    Json payload{{"base", o.base}};
    DigitString out(o.base);
    if (o.alpha) {
        DSequence seq(resolve_params(o.params), g_budget);
        require(!o.first.empty() && !o.last.empty(), "--alpha needs --first and --last");
        OracleDigits d = alpha_digit_oracle(seq, o.base, parse_integer(o.first), parse_integer(o.last), o.oracle_k);
        payload["oracle"] = to_json(d);
        payload["first"] = to_json(parse_integer(o.first));
        payload["last"] = to_json(parse_integer(o.last));
        out = d.digits;
    } else {
        require(!o.rational.empty(), "expand needs --rational or --alpha");
        Rational r = Rational::parse(o.rational);
        payload["rational"] = to_json(r);
        if (o.prefix) {
            out = digits_prefix(r, o.base, o.prefix);
            payload["prefix"] = digits_json(out);
        } else if (!o.first.empty()) {
            require(o.count > 0, "--first needs --count");
            out = digits_window(r, o.base, parse_integer(o.first), o.count);
            payload["first"] = to_json(parse_integer(o.first));
            payload["window"] = digits_json(out);
        } else {
            PeriodicExpansion e = expand_rational(r, o.base);
            payload["expansion"] = to_json(e);
            out = e.preperiod;
            out.append(e.period);
        }
    }
    if (!o.packed.empty()) {
        write_packed(out, o.packed);
        payload["packed_file"] = o.packed;
        payload["packed_bytes"] = out.pack().size();
    }
    return payload;
}

Json cmd_stats(const Options& o) {
    DigitString d(o.base);
    Json payload;
    if (!o.digits.empty()) {
        d = DigitString::from_text(o.digits, o.base);
        payload["source"] = "digits";
    } else if (o.champernowne) {
        d = champernowne_prefix(o.champernowne);
        payload["source"] = "champernowne";
    } else if (o.alpha) {
        require(o.length > 0, "--alpha needs --length");
        DSequence seq(resolve_params(o.params), g_budget);
        d = alpha_digit_oracle(seq, o.base, Integer(1), Integer(static_cast<unsigned long>(o.length))).digits;
        payload["source"] = "alpha";
    } else {
        require(!o.rational.empty() && o.length > 0, "stats needs --digits, --champernowne, --alpha or --rational with --length");
        d = digits_prefix(Rational::parse(o.rational), o.base, o.length);
        payload["source"] = "rational";
        payload["rational"] = o.rational;
    }
    DigitStats s = digit_stats(d);
    payload["stats"] = to_json(s);
    payload["frequencies"] = frequencies_json(d);
    if (o.digit >= 0) {
        payload["digit"] = o.digit;
        payload["count"] = count_digit(d, static_cast<unsigned>(o.digit));
        payload["frequency"] = to_json(frequency(d, static_cast<unsigned>(o.digit)));
    }
    if (!o.pattern.empty()) {
        payload["pattern"] = o.pattern;
        payload["pattern_count"] = count_string(d, DigitString::from_text(o.pattern, d.base()));
    }
    payload["runs_of_top_digit"] = runs_json(d);
    return payload;
}

Json cmd_normality(const Options& o) {
    Rational r = Rational::parse(o.rational);
    Json payload{{"rational", to_json(r)}};
    if (o.all_bases) {
        payload["simply_normal_bases"] = simply_normal_bases(r);
    } else {
        payload["verdict"] = to_json(simply_normal_rational(r, Integer(o.base)));
        NecessaryCondition nc = necessary_condition(Integer(o.base), r.denominator());
        payload["necessary_condition"] = Json{{"survives", nc.survives},
                                              {"reason", nc.survives ? "Survives" : std::string(to_string(nc.reason))},
                                              {"coprime_part", to_json(nc.coprime_part)},
                                              {"order", to_json(nc.order)}};
    }
    if (o.witness) {
        AbnormalityWitness w = abnormality_witness(r, o.base);
        payload["abnormality_witness"] = Json{{"preperiod", w.preperiod}, {"k", w.k}, {"digit", to_json(w.digit)}};
        Integer bk;
        mpz_ui_pow_ui(bk.get_mpz_t(), o.base, w.k);
        payload["abnormality_witness"]["digit_base"] = to_json(bk);
    }
    return payload;
}

Json cmd_classify(const Options& o) {
    std::optional<unsigned long> a;
    if (o.numerator) a = o.numerator;
    ASAReport rep = classify_absolutely_simply_abnormal(o.q, a);
    Json payload = to_json(rep);
    if (o.table) payload["table"] = rep.to_table();
    return payload;
}

Json cmd_predict(const Options& o) {
    DSequence seq(resolve_params(o.params), g_budget);
    if (o.nine_run) return Json{{"nine_run", to_json(nine_run_report(seq, o.base, o.k, o.post_digits))}};
    if (o.r) return Json{{"theorem_window", to_json(theorem_window(seq, o.base, o.r))}};
    RunOptions opts;
    opts.confirm = !o.no_confirm;
    return Json{{"run_window", to_json(run_window(seq, o.base, o.k, opts))}};
}

Json cmd_witness(const Options& o) {
    DSequence seq(resolve_params(o.params), g_budget);
    return Json{{"liouville", to_json(liouville_witness(seq, o.k))}};
}

Json suite_result(std::size_t checked, const Json& failures) {
    return Json{{"checked", checked}, {"passed", checked - failures.size()}, {"failures", failures},
                {"all_passed", failures.empty()}};
}

Json cmd_verify(const Options& o) {
    DSequence seq(resolve_params(o.params), g_budget);
    Json payload{{"params", to_json(seq.params())}};
    auto want = [&](const char* name) { return o.suite == "all" || o.suite == name; };
    bool known = false;
    bool all_passed = true;
    auto record = [&](const char* name, Json result) {
        known = true;
        all_passed = all_passed && result["all_passed"].get<bool>();
        payload[name] = std::move(result);
    };
    unsigned long from = o.from ? o.from : 5, to = o.to ? o.to : 12;
    if (want("lemma1") || want("growth")) {
        Json squares = Json::array(), towers = Json::array(), fail_sq = Json::array(), fail_tw = Json::array();
        for (unsigned long j = from; j <= to; ++j) {
            if (want("lemma1")) {
                CertifiedOrdering c = growth_check_square(seq.accessor(), j, g_budget);
                Json row = to_json(c);
                row["j"] = j;
                if (c.verdict != Ordering::Greater) fail_sq.push_back(row);
                squares.push_back(row);
            }
            if (want("growth")) {
                CertifiedOrdering c = growth_check_tower(seq.accessor(), j, g_budget);
                Json row = to_json(c);
                row["j"] = j;
                if (c.verdict != Ordering::Greater) fail_tw.push_back(row);
                towers.push_back(row);
            }
        }
        if (want("lemma1")) {
            Json r = suite_result(squares.size(), fail_sq);
            r["rows"] = squares;
            record("lemma1", r);
        }
        if (want("growth")) {
            Json r = suite_result(towers.size(), fail_tw);
            r["rows"] = towers;
            record("growth", r);
        }
    }
    if (want("lemma3")) {
        unsigned long kmax = o.k_max ? o.k_max : 500;
        std::size_t checked = 0;
        Json failures = Json::array();
        for (unsigned long k = 2; k <= kmax; ++k) {
            for (const auto& f : factorize(Integer(k)).factors) {
                for (unsigned long r = 1; r <= f.exponent; ++r) {
                    ++checked;
                    if (!lemma3_check(Integer(k), f.prime, r))
                        failures.push_back(Json{{"k", k}, {"p", to_json(f.prime)}, {"r", r}});
                }
            }
        }
        record("lemma3", suite_result(checked, failures));
    }
    if (want("lemma4")) {
        unsigned long kmax = o.k_max ? std::min(o.k_max, 30UL) : 30, mmax = o.m_max ? o.m_max : 4;
        std::size_t checked = 0;
        Json failures = Json::array();
        for (unsigned long k = 2; k <= kmax; ++k)
            for (unsigned long m = 1; m <= mmax; ++m) {
                ++checked;
                if (!lemma4_check(Integer(k), m)) failures.push_back(Json{{"k", k}, {"m", m}});
            }
        record("lemma4", suite_result(checked, failures));
    }
    unsigned long largest = seq.largest_materialized(o.to ? o.to : 12);
    if (want("lemma5")) {
        std::size_t checked = 0;
        Json failures = Json::array();
        for (unsigned long k = 3; k <= largest; ++k) {
            ++checked;
            if (!integrality_check(seq, k).integral) failures.push_back(Json{{"k", k}});
        }
        record("lemma5", suite_result(checked, failures));
    }
    if (want("sandwich")) {
        std::size_t checked = 0;
        Json failures = Json::array();
        for (unsigned long k = 2; k + 1 <= largest; ++k) {
            ++checked;
            if (!sandwich_check(seq, k)) failures.push_back(Json{{"k", k}});
        }
        record("sandwich", suite_result(checked, failures));
    }
    if (!known) fail(ErrorKind::Parse, "unknown suite '" + o.suite + "'");
    payload["all_passed"] = all_passed;
    return payload;
}

Json cmd_champernowne(const Options& o) {
    require(o.length > 0, "--length must be positive");
    DigitString d = champernowne_prefix(o.length);
    Json payload{{"length", o.length}, {"digits", digits_json(d)}, {"stats", to_json(digit_stats(d))},
                 {"frequencies", frequencies_json(d)}};
    if (!o.pattern.empty()) {
        payload["pattern"] = o.pattern;
        payload["pattern_count"] = count_string(d, DigitString::from_text(o.pattern, 10));
    }
    return payload;
}

Json cmd_target(const Options& o) {
    Rational u = Rational::parse(o.lower), v = Rational::parse(o.upper);
    ConstructionParams p = target_interval(u, v);
    DSequence seq(p, g_budget);
    return Json{{"lower", to_json(u)},
                {"upper", to_json(v)},
                {"params", to_json(p)},
                {"params_text", p.to_text()},
                {"certificate", to_json(certify_target(seq, u, v))}};
}

Json cmd_distinguish(const Options& o) {
    require(!o.other.empty(), "distinguish needs --other");
    DSequence a(resolve_params(o.params), g_budget), b(resolve_params(o.other), g_budget);
    return Json{{"first", to_json(a.params())},
                {"second", to_json(b.params())},
                {"certificate", to_json(distinguish(a, b))}};
}

} // namespace

std::size_t budget_from_environment() {
    MaterializationBudget def;
    const char* env = std::getenv("ABNORMAL_MATERIALIZE_BITS");
    if (!env || !*env) return def.bits;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) return def.bits;
    return static_cast<std::size_t>(v);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Absolutely abnormal numbers: construction, digits, normality and run prediction"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    std::size_t budget_bits = 0;
    app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");
    app.add_option("--budget-bits", budget_bits, "Materialization budget in bits (overrides ABNORMAL_MATERIALIZE_BITS)");
    Options o;

    std::map<std::string, std::function<Json(const Options&)>> handlers;
    auto sub = [&](const char* name, const char* help, std::function<Json(const Options&)> fn) {
        handlers[name] = std::move(fn);
        return app.add_subcommand(name, help);
    };

    auto* construct = sub("construct", "Emit the d-sequence and approximants", cmd_construct);
    construct->add_option("--params", o.params, "standard | phi | degenerate | key=value text | file");
    construct->add_option("--k", o.k, "Largest approximant index");

    auto* expand = sub("expand", "Digits of a rational, or certified digits of alpha", cmd_expand);
    expand->add_option("--rational", o.rational, "p/q with 0 <= p/q < 1");
    expand->add_option("--base", o.base, "Base 2..36");
    expand->add_option("--prefix", o.prefix, "Number of leading digits");
    expand->add_option("--first", o.first, "First digit position (1-indexed)");
    expand->add_option("--count", o.count, "Window length (with --first)");
    expand->add_option("--last", o.last, "Last digit position (with --alpha)");
    expand->add_flag("--alpha", o.alpha, "Digits of the constructed number");
    expand->add_option("--params", o.params, "Construction parameters (with --alpha)");
    expand->add_option("--k", o.oracle_k, "Approximant index for the oracle (default: largest materializable)");
    expand->add_option("--packed", o.packed, "Also write the digits in the packed binary format");

    auto* stats = sub("stats", "Digit and string counts", cmd_stats);
    stats->add_option("--digits", o.digits, "Literal digit string");
    stats->add_option("--rational", o.rational, "Rational source");
    stats->add_option("--champernowne", o.champernowne, "Champernowne prefix length");
    stats->add_flag("--alpha", o.alpha, "Certified digits of the constructed number");
    stats->add_option("--params", o.params, "Construction parameters (with --alpha)");
    stats->add_option("--base", o.base, "Base 2..36");
    stats->add_option("--length", o.length, "Prefix length");
    stats->add_option("--digit", o.digit, "Digit to count");
    stats->add_option("--pattern", o.pattern, "String to count (overlapping)");

    auto* normality = sub("normality", "Simple normality of a rational", cmd_normality);
    normality->add_option("--rational", o.rational, "p/q with 0 < p/q < 1")->required();
    normality->add_option("--base", o.base, "Base >= 2");
    normality->add_flag("--all-bases", o.all_bases, "Every base to which the rational is simply normal");
    normality->add_flag("--witness", o.witness, "Repeating digit in base b^k");

    auto* classify = sub("classify", "Absolute simple abnormality of a denominator", cmd_classify);
    classify->add_option("--denominator", o.q, "q >= 2")->required();
    classify->add_option("--numerator", o.numerator, "Check a single numerator");
    classify->add_flag("--table", o.table, "Include the tabular report");

    auto* predict = sub("predict", "Run windows and the run-length report", cmd_predict);
    predict->add_option("--params", o.params, "Construction parameters");
    predict->add_option("--base", o.base, "Base 2..36");
    predict->add_option("--k", o.k, "Approximant index");
    predict->add_option("--theorem", o.r, "Symbolic window for k = b^r");
    predict->add_flag("--nine-run", o.nine_run, "Exact run count, first deviant position and post-run digits");
    predict->add_option("--post-digits", o.post_digits, "Digits reported after the run");
    predict->add_flag("--no-confirm", o.no_confirm, "Skip the empirical check against oracle digits");

    auto* witness = sub("witness", "Liouville witness", cmd_witness);
    witness->add_option("--params", o.params, "Construction parameters");
    witness->add_option("--k", o.k, "Index k >= 5");

    auto* verify = sub("verify", "Lemma suites", cmd_verify);
    verify->add_option("--params", o.params, "Construction parameters");
    verify->add_option("--suite", o.suite, "lemma1 | lemma3 | lemma4 | lemma5 | growth | sandwich | all");
    verify->add_option("--from", o.from, "First index for growth checks (default 5)");
    verify->add_option("--to", o.to, "Last index for growth checks (default 12)");
    verify->add_option("--k-max", o.k_max, "Largest k for lemma3 (default 500) and lemma4 (default 30)");
    verify->add_option("--m-max", o.m_max, "Largest m for lemma4 (default 4)");

    auto* champ = sub("champernowne", "Champernowne prefix statistics", cmd_champernowne);
    champ->add_option("--length", o.length, "Prefix length")->required();
    champ->add_option("--pattern", o.pattern, "String to count (overlapping)");

    auto* target = sub("target", "Parameters placing alpha inside (u, v)", cmd_target);
    target->add_option("--lower", o.lower, "u")->required();
    target->add_option("--upper", o.upper, "v")->required();

    auto* dist = sub("distinguish", "Certify that two parameter sets give different numbers", cmd_distinguish);
    dist->add_option("--params", o.params, "First parameters");
    dist->add_option("--other", o.other, "Second parameters")->required();

    std::vector<std::string> argv_store;
    argv_store.push_back("abnormal");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "abnormal: " << e.what() << "\n" << "Run with --help for usage.\n";
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    std::string name = chosen->get_name();
    g_budget.bits = budget_bits ? budget_bits : budget_from_environment();

    Json result{{"command", name}, {"args", args}, {"version", kSchemaVersion}};
    int code = 0;
    try {
        result["status"] = "ok";
        result["payload"] = handlers.at(name)(o);
    } catch (const Error& e) {
        result["status"] = "error";
        result["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        code = 1;
    } catch (const std::exception& e) {
        result["status"] = "error";
        result["error"] = Json{{"kind", "Internal"}, {"message", e.what()}};
        code = 1;
    }
    if (pretty) {
        if (name == "classify" && code == 0 && o.table) {
            out << result["payload"]["table"].get<std::string>();
        } else {
            render_pretty(result, out, "");
        }
    } else {
        out << result.dump() << "\n";
    }
    return code;
}

} // namespace abnormal
