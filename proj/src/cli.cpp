#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "corpus.hpp"
#include "detpol/config.hpp"
#include "detpol/covering.hpp"
#include "detpol/ef.hpp"
#include "detpol/membership.hpp"
#include "detpol/word_structure.hpp"

namespace detpol {

namespace {

using json = nlohmann::json;

struct Outcome {
    int code = kExitTrue;
    std::string verdict;
    std::string certification = "exact";
    json report = json::object();
    std::string text;
};

struct Options {
    std::string alphabet;
    std::string config;
    bool quiet = false;
    bool as_json = false;
    Limits lim;
};

void load_config(const std::string& path, Limits& lim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    json j = json::parse(in);
    auto get = [&](const char* key, int& v) {
        if (j.contains(key)) v = j.at(key).get<int>();
    };
    get("enumeration_cap", lim.enumeration_cap);
    get("k_max", lim.k_max);
    get("ptk", lim.ptk);
    get("word_bound", lim.word_bound);
    get("monoid_cap", lim.monoid_cap);
    if (j.contains("full_enumeration")) lim.full_enumeration = j.at("full_enumeration").get<bool>();
}

json limits_json(const Limits& lim) {
    return {{"enumeration_cap", lim.enumeration_cap}, {"k_max", lim.k_max},         {"ptk", lim.ptk},
            {"word_bound", lim.word_bound},           {"monoid_cap", lim.monoid_cap}, {"full_enumeration", lim.full_enumeration}};
}

Alphabet alphabet_for(const Options& o, const std::vector<std::string>& regexes) {
    if (!o.alphabet.empty()) return make_alphabet(o.alphabet);
    Alphabet a;
    for (const auto& r : regexes) a = alphabet_union(a, parse_regex(r).alphabet());
    return a.empty() ? Alphabet("a") : a;
}

Alphabet alphabet_for_words(const Options& o, const std::vector<std::string>& words) {
    if (!o.alphabet.empty()) return make_alphabet(o.alphabet);
    Alphabet a;
    for (const auto& w : words) a = alphabet_union(a, w);
    return a.empty() ? Alphabet("a") : a;
}

std::string regex_of(const Dfa& d) { return to_string(to_regex(d)); }

std::vector<std::string> names_of(const FiniteMonoid& m, const std::vector<int>& xs) {
    std::vector<std::string> out;
    for (int x : xs) out.push_back(m.name(x));
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

Outcome cmd_syntactic(const Options& o, const std::string& regex) {
    Dfa d = compile(regex, alphabet_for(o, {regex}));
    RecognizedLanguage rl = syntactic_morphism(d, o.lim.monoid_cap);
    const FiniteMonoid& m = rl.alpha.target;
    GreenData g = green(m);
    std::vector<int> idem, acc;
    for (int s = 0; s < m.n; ++s) {
        if (m.idempotent(s)) idem.push_back(s);
        if (rl.accept[s]) acc.push_back(s);
    }
    json table = json::array();
    for (int s = 0; s < m.n; ++s) {
        json row = json::array();
        for (int t = 0; t < m.n; ++t) row.push_back(m.name(m.mul(s, t)));
        table.push_back(row);
    }
    json letters = json::object();
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) letters[std::string(1, d.alphabet[l])] = m.name(rl.alpha.letter_image[l]);
    Outcome out;
    out.verdict = std::to_string(m.n);
    out.report = {{"size", m.n},
                  {"elements", names_of(m, [&] {
                       std::vector<int> all(m.n);
                       for (int s = 0; s < m.n; ++s) all[s] = s;
                       return all;
                   }())},
                  {"letters", letters},
                  {"accepting", names_of(m, acc)},
                  {"idempotents", names_of(m, idem)},
                  {"j_classes", g.j_class_count()},
                  {"j_trivial", is_j_trivial(m)},
                  {"omega", omega(m)},
                  {"table", table}};
    std::ostringstream t;
    t << "size " << m.n << "\nj_classes " << g.j_class_count() << "\nj_trivial " << (is_j_trivial(m) ? "yes" : "no") << "\nomega "
      << omega(m) << "\nidempotents " << join(names_of(m, idem), " ") << "\naccepting " << join(names_of(m, acc), " ") << "\n";
    for (int s = 0; s < m.n; ++s) {
        std::vector<std::string> row;
        for (int t2 = 0; t2 < m.n; ++t2) row.push_back(m.name(m.mul(s, t2)));
        t << m.name(s) << ": " << join(row, " ") << "\n";
    }
    out.text = t.str();
    return out;
}

Outcome cmd_member(const Options& o, const std::string& cls, const std::string& regex, bool explain) {
    ClassExpr e = parse_class(cls);
    Dfa d = compile(regex, alphabet_for(o, {regex}));
    Outcome out;
    bool member;
    if (explain) {
        MembershipResult r = explain_membership(e, d, o.lim.equiv());
        member = r.member;
        if (r.report) out.report["equation"] = r.report->describe(r.syntactic_monoid);
        out.report["syntactic_size"] = r.syntactic_monoid.n;
    } else {
        member = decide_membership(e, d, o.lim.equiv());
    }
    out.report["class"] = to_string(e);
    out.verdict = member ? "true" : "false";
    out.code = member ? kExitTrue : kExitFalse;
    out.text = out.verdict + "\n";
    if (out.report.contains("equation")) out.text += out.report["equation"].get<std::string>() + "\n";
    return out;
}

Outcome cmd_equiv(const Options& o, const std::string& cls, const std::string& regex) {
    ClassExpr e = parse_class(cls);
    Dfa d = compile(regex, alphabet_for(o, {regex}));
    RecognizedLanguage rl = syntactic_morphism(d, o.lim.monoid_cap);
    ClassOracle oracle(rl.alpha, o.lim.equiv());
    Congruence c = oracle.equiv(e);
    const FiniteMonoid& m = rl.alpha.target;
    std::map<int, std::vector<int>> blocks;
    for (int s = 0; s < m.n; ++s) blocks[c.block[s]].push_back(s);
    Outcome out;
    json classes = json::array();
    for (const auto& [b, xs] : blocks) {
        classes.push_back(names_of(m, xs));
        out.text += "{" + join(names_of(m, xs), ", ") + "}\n";
    }
    out.verdict = std::to_string(blocks.size());
    out.report = {{"class", to_string(e)}, {"classes", classes}};
    return out;
}

json witness_json(const Separator& sep, const Dfa& l1, const Dfa& l2, std::string& text) {
    json prods = json::array();
    ProductFlags all{true, true, true, true};
    for (const auto& p : sep.products) {
        ProductFlags f = classify_product(p);
        all.left_det = all.left_det && f.left_det;
        all.right_det = all.right_det && f.right_det;
        all.mixed_det = all.mixed_det && f.mixed_det;
        all.unambiguous = all.unambiguous && f.unambiguous;
        prods.push_back(to_string(p));
        text += "  " + to_string(p) + "\n";
    }
    Dfa u = sep.language(l1.alphabet);
    bool covers = is_subset(l1, u), misses = disjoint(u, l2);
    text += std::string("  contains left: ") + (covers ? "yes" : "no") + ", disjoint from right: " + (misses ? "yes" : "no") + "\n";
    return {{"products", prods},
            {"k", sep.k},
            {"regex", regex_of(u)},
            {"contains_left", covers},
            {"disjoint_from_right", misses},
            {"flags", {{"left_det", all.left_det}, {"right_det", all.right_det}, {"mixed_det", all.mixed_det}, {"unambiguous", all.unambiguous}}}};
}

Outcome cover_outcome(const CoverReport& rep, bool separation) {
    Outcome out;
    out.certification = rep.exact ? "exact" : "approx-sound";
    switch (rep.verdict) {
    case CoverVerdict::Coverable:
        out.verdict = separation ? "separable" : "coverable";
        out.code = kExitTrue;
        break;
    case CoverVerdict::NotCoverable:
        out.verdict = separation ? "not_separable" : "not_coverable";
        out.code = kExitFalse;
        break;
    case CoverVerdict::Unknown:
        out.verdict = "unknown";
        out.code = kExitUnknown;
        break;
    }
    out.report = {{"class", to_string(rep.plan.computed)},
                  {"imprint_entries", rep.imprint_entries},
                  {"projection_size", rep.projection_size}};
    if (!rep.violating.empty()) out.report["violating"] = rep.violating;
    out.text = out.verdict + (rep.exact ? "" : " (approximation with " + to_string(rep.plan.base) + ")") + "\n";
    return out;
}

Outcome cmd_separate(const Options& o, const std::string& cls, const std::string& r1, const std::string& r2, bool witness) {
    ClassExpr e = parse_class(cls);
    Alphabet a = alphabet_for(o, {r1, r2});
    Dfa l1 = compile(r1, a), l2 = compile(r2, a);
    CoverReport rep = decide_separation(e, l1, l2, o.lim.cover());
    Outcome out = cover_outcome(rep, true);
    if (witness && rep.verdict == CoverVerdict::Coverable) {
        const TowerPlan& plan = rep.plan;
        std::optional<Separator> sep;
        bool supported = !plan.approximate && plan.ops.size() == 1;
        if (supported && plan.ops[0] == PolOp::MPol) {
            sep = extract_mpol_separator(plan.base, l1, l2, o.lim.k_max, o.lim.monoid_cap);
            if (!sep) out.report["witness"] = "not_found_at_k" + std::to_string(o.lim.k_max);
        } else if (supported) {
            sep = extract_lrpol_separator(e, l1, l2, o.lim.cover());
        } else {
            out.report["witness"] = "unsupported";
        }
        if (sep) {
            std::string t;
            out.report["witness"] = witness_json(*sep, l1, l2, t);
            out.text += t;
        } else {
            out.text += "  witness: " + out.report["witness"].get<std::string>() + "\n";
        }
    }
    return out;
}

Outcome cmd_cover(const Options& o, const std::string& cls, const std::string& target, const std::vector<std::string>& against) {
    ClassExpr e = parse_class(cls);
    std::vector<std::string> all{target};
    all.insert(all.end(), against.begin(), against.end());
    Alphabet a = alphabet_for(o, all);
    std::vector<Dfa> ls;
    for (const auto& r : against) ls.push_back(compile(r, a));
    return cover_outcome(decide_covering(e, compile(target, a), ls, o.lim.cover()), false);
}

Outcome cmd_classify(const Options& o, const std::vector<std::string>& parts, const std::string& letters) {
    std::vector<std::string> all = parts;
    all.push_back(letters);
    Alphabet a = alphabet_for(o, all);
    MarkedProduct p;
    p.letters = letters;
    for (const auto& r : parts) p.parts.push_back(compile(r, a));
    ProductFlags f = classify_product(p);
    Outcome out;
    out.verdict = std::string(f.left_det ? "1" : "0") + (f.right_det ? "1" : "0") + (f.mixed_det ? "1" : "0") + (f.unambiguous ? "1" : "0");
    out.report = {{"product", to_string(p)},
                  {"left_det", f.left_det},
                  {"right_det", f.right_det},
                  {"mixed_det", f.mixed_det},
                  {"unambiguous", f.unambiguous}};
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out.text = std::string("left_det ") + yn(f.left_det) + "\nright_det " + yn(f.right_det) + "\nmixed_det " + yn(f.mixed_det) +
               "\nunambiguous " + yn(f.unambiguous) + "\n";
    return out;
}

MonoidMorphism eta_named(const std::string& name, const Alphabet& a, const std::string& regex, const Limits& lim) {
    if (name == "trivial") return canonical_morphism(ClassExpr::base(ClassExpr::Kind::ST), a, lim.monoid_cap).eta;
    if (name == "at") return canonical_morphism(ClassExpr::base(ClassExpr::Kind::AT), a, lim.monoid_cap).eta;
    if (name == "syntactic") {
        if (regex.empty()) throw std::invalid_argument("--eta syntactic needs --regex");
        return syntactic_morphism(compile(regex, a), lim.monoid_cap).alpha;
    }
    throw std::invalid_argument("unknown morphism '" + name + "' (trivial, at, syntactic)");
}

Outcome cmd_word_class(const Options& o, const std::string& eta_name, const std::string& regex, int k, const std::string& mode_name,
                       const std::string& word) {
    Alphabet a = regex.empty() ? alphabet_for_words(o, {word}) : alphabet_for(o, {regex, word});
    MonoidMorphism eta = eta_named(eta_name, a, regex, o.lim);
    Mode mode = mode_name == "left" ? Mode::Left : mode_name == "right" ? Mode::Right : Mode::Mixed;
    if (mode_name != "left" && mode_name != "right" && mode_name != "mixed") throw std::invalid_argument("--mode must be left, right or mixed");
    PositionSet ps = marked_positions(eta, k, word, mode);
    Snapshot snap = snapshot(eta, word, ps);
    MarkedProduct p = class_as_product(eta, k, mode, word);
    Outcome out;
    out.verdict = to_string(snap, eta.target);
    out.report = {{"positions", ps}, {"snapshot", out.verdict}, {"product", to_string(p)}};
    std::vector<std::string> pos;
    for (int i : ps) pos.push_back(std::to_string(i));
    out.text = "positions {" + join(pos, ", ") + "}\nsnapshot " + out.verdict + "\nclass " + to_string(p) + "\n";
    return out;
}

Outcome cmd_ef(const Options& o, int k, int n, const std::string& w1, const std::string& w2, const std::string& eta_name,
               const std::string& saturate) {
    Outcome out;
    if (!saturate.empty()) {
        Alphabet a = alphabet_for(o, {saturate});
        MonoidMorphism eta = eta_named(eta_name, a, "", o.lim);
        SaturationReport rep = ef_class_saturation(eta, k, n, compile(saturate, a), o.lim.word_bound);
        out.verdict = rep.saturated ? "saturated" : "refuted";
        out.code = rep.saturated ? kExitTrue : kExitFalse;
        out.certification = "bounded";
        out.report = {{"pairs_checked", rep.pairs_checked}, {"word_bound", o.lim.word_bound}};
        out.text = out.verdict + " up to length " + std::to_string(o.lim.word_bound) + "\n";
        if (rep.refutation) {
            out.report["refutation"] = {rep.refutation->first, rep.refutation->second};
            out.text += "  '" + rep.refutation->first + "' ~ '" + rep.refutation->second + "'\n";
        }
        return out;
    }
    Alphabet a = alphabet_for_words(o, {w1, w2});
    MonoidMorphism eta = eta_named(eta_name, a, "", o.lim);
    EfPreorder p(eta, w1, w2);
    bool fwd = p.leq(0, 0, k, n, 0), bwd = p.leq(0, 0, k, n, 1);
    out.verdict = fwd ? "true" : "false";
    out.code = fwd ? kExitTrue : kExitFalse;
    out.report = {{"leq", fwd}, {"geq", bwd}, {"equivalent", fwd && bwd}};
    out.text = std::string("leq ") + (fwd ? "true" : "false") + "\ngeq " + (bwd ? "true" : "false") + "\n";
    return out;
}

int cmd_corpus(const Options& o, const std::string& path, int jobs, bool emit, std::ostream& os) {
    std::vector<Fixture> fixtures = load_corpus(path);
    CorpusSummary sum = run_corpus(fixtures, o.lim, jobs);
    const auto& classes = corpus_classes();
    if (emit) {
        for (std::size_t i = 0; i < fixtures.size(); ++i) {
            Fixture f = fixtures[i];
            if (sum.rows[i].failures.empty())
                for (const auto& c : classes) f.expected.emplace(to_string(parse_class(c)), sum.rows[i].member[c]);
            os << format_fixture(f) << "\n";
        }
    } else if (o.as_json) {
        for (const auto& r : sum.rows)
            os << json{{"schema", kReportSchema}, {"fixture", r.id}, {"member", r.member}, {"failures", r.failures}}.dump() << "\n";
        os << json{{"schema", kReportSchema},
                   {"command", "corpus"},
                   {"fixtures", fixtures.size()},
                   {"failures", sum.failure_count()},
                   {"verdict", sum.passed() ? "pass" : "fail"},
                   {"config", limits_json(o.lim)}}
                  .dump()
           << "\n";
    } else if (!o.quiet) {
        os << "id";
        for (const auto& c : classes) os << " " << c;
        os << " status\n";
        for (const auto& r : sum.rows) {
            os << r.id;
            for (const auto& c : classes) os << " " << (r.member.count(c) ? (r.member.at(c) ? "1" : "0") : "-");
            os << " " << (r.failures.empty() ? "ok" : "FAIL") << "\n";
            for (const auto& f : r.failures) os << "  " << r.id << ": " << f << "\n";
        }
        os << fixtures.size() << " fixtures, " << sum.failure_count() << " failures\n";
    }
    return sum.passed() ? kExitTrue : kExitFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic and mixed polynomial closure toolkit", "detpol"};
    app.require_subcommand(1);
    Options o;
    std::string class_expr, regex, left, right, target, letters, mode = "mixed", eta = "trivial", word, path = "corpus", saturate;
    std::vector<std::string> against, parts;
    bool explain = false, witness = false, emit = false;
    int k = 1, n = 1, jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::optional<int> enum_cap, k_max, ptk, word_bound, monoid_cap;

    auto common = [&](CLI::App* s) {
        s->add_option("--alphabet", o.alphabet, "Alphabet letters (default: letters of the inputs)");
        s->add_option("--config", o.config, "JSON file with caps");
        s->add_flag("--quiet", o.quiet, "Print nothing; report through the exit code");
        s->add_flag("--json", o.as_json, "Print a JSON-lines report");
        s->add_option("--enum-cap", enum_cap, "Largest monoid enumerated for canonical equivalences");
        s->add_option("--k-max", k_max, "Largest class index for witness extraction");
        s->add_option("--ptk", ptk, "PTK level standing in for PT bases in covering");
        s->add_option("--word-bound", word_bound, "Word-length bound for bounded scans");
        s->add_option("--monoid-cap", monoid_cap, "Largest monoid built");
    };

    std::function<Outcome()> action;
    std::function<int()> raw_action;

    auto* syn = app.add_subcommand("syntactic", "Syntactic monoid of a regular expression");
    common(syn);
    syn->add_option("--regex", regex)->required();
    syn->callback([&] { action = [&] { return cmd_syntactic(o, regex); }; });

    auto* mem = app.add_subcommand("member", "Class membership");
    common(mem);
    mem->add_option("--class", class_expr)->required();
    mem->add_option("--regex", regex)->required();
    mem->add_flag("--explain", explain, "Report the violated equation instance");
    mem->callback([&] { action = [&] { return cmd_member(o, class_expr, regex, explain); }; });

    auto* eq = app.add_subcommand("equiv", "Canonical equivalence on the syntactic monoid");
    common(eq);
    eq->add_option("--class", class_expr)->required();
    eq->add_option("--regex", regex)->required();
    eq->callback([&] { action = [&] { return cmd_equiv(o, class_expr, regex); }; });

    auto* sep = app.add_subcommand("separate", "Separation of two languages");
    common(sep);
    sep->add_option("--class", class_expr)->required();
    sep->add_option("--left", left)->required();
    sep->add_option("--right", right)->required();
    sep->add_flag("--witness", witness, "Extract a separator");
    sep->callback([&] { action = [&] { return cmd_separate(o, class_expr, left, right, witness); }; });

    auto* cov = app.add_subcommand("cover", "Covering of a language by a class against others");
    common(cov);
    cov->add_option("--class", class_expr)->required();
    cov->add_option("--target", target)->required();
    cov->add_option("--against", against)->required();
    cov->callback([&] { action = [&] { return cmd_cover(o, class_expr, target, against); }; });

    auto* cls = app.add_subcommand("classify-product", "Determinism and unambiguity of a marked product");
    common(cls);
    cls->add_option("--part", parts, "Component regex (one per component)")->required();
    cls->add_option("--letters", letters, "Marker letters between components");
    cls->callback([&] { action = [&] { return cmd_classify(o, parts, letters); }; });

    auto* wc = app.add_subcommand("word-class", "Distinguished positions and the class of a word");
    common(wc);
    wc->add_option("--eta", eta, "trivial, at or syntactic");
    wc->add_option("--regex", regex, "Language whose syntactic morphism is used");
    wc->add_option("--k", k);
    wc->add_option("--mode", mode, "left, right or mixed");
    wc->add_option("--word", word)->required();
    wc->callback([&] { action = [&] { return cmd_word_class(o, eta, regex, k, mode, word); }; });

    auto* ef = app.add_subcommand("ef", "Two-variable preorder between words");
    common(ef);
    ef->add_option("--k", k);
    ef->add_option("--n", n);
    ef->add_option("--left", left);
    ef->add_option("--right", right);
    ef->add_option("--eta", eta, "trivial or at");
    ef->add_option("--saturate", saturate, "Search equivalent words separated by this language");
    ef->callback([&] { action = [&] { return cmd_ef(o, k, n, left, right, eta, saturate); }; });

    auto* cor = app.add_subcommand("corpus", "Run every fixture through every engine");
    common(cor);
    cor->add_option("--path", path, "Corpus file or directory");
    cor->add_option("--jobs", jobs);
    cor->add_flag("--emit", emit, "Print the fixtures with computed expectations");
    cor->callback([&] { raw_action = [&] { return cmd_corpus(o, path, jobs, emit, out); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitTrue;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (!o.config.empty()) load_config(o.config, o.lim);
        if (enum_cap) o.lim.enumeration_cap = *enum_cap;
        if (k_max) o.lim.k_max = *k_max;
        if (ptk) o.lim.ptk = *ptk;
        if (word_bound) o.lim.word_bound = *word_bound;
        if (monoid_cap) o.lim.monoid_cap = *monoid_cap;
        if (raw_action) return raw_action();
        auto start = std::chrono::steady_clock::now();
        Outcome res = action();
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (o.quiet) return res.code;
        if (o.as_json) {
            json j = {{"schema", kReportSchema},
                      {"command", args},
                      {"verdict", res.verdict},
                      {"certification", res.certification},
                      {"config", limits_json(o.lim)},
                      {"timing_ms", ms}};
            j.update(res.report);
            out << j.dump() << "\n";
        } else {
            out << res.text;
        }
        return res.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace detpol
