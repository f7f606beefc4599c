#include "corpus.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "detpol/covering.hpp"
#include "detpol/membership.hpp"

namespace detpol {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

// (smaller, larger) pairs of the inclusion checks
const std::vector<std::pair<std::string, std::string>>& inclusions() {
    static const std::vector<std::pair<std::string, std::string>> v = {
        {"ST", "AT"},           {"AT", "PTK(2)"},       {"PTK(2)", "PT"},        {"AT", "LPOL(AT)"},
        {"AT", "RPOL(AT)"},     {"LPOL(AT)", "MPOL(AT)"}, {"RPOL(AT)", "MPOL(AT)"}, {"MPOL(AT)", "UPOL(AT)"},
        {"PT", "MPOL(PT)"},     {"MPOL(AT)", "MPOL(PT)"}, {"MPOL(PT)", "UPOL(AT)"},
    };
    return v;
}

// classes with equal membership
const std::vector<std::pair<std::string, std::string>>& identities() {
    static const std::vector<std::pair<std::string, std::string>> v = {
        {"PTK(1)", "AT"}, {"LPOL(PT)", "LPOL(AT)"}, {"RPOL(PT)", "RPOL(AT)"}, {"UPOL(PT)", "UPOL(AT)"},
    };
    return v;
}

}  // namespace

std::vector<Fixture> parse_corpus(std::istream& in, const std::string& source) {
    std::vector<Fixture> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = source + ":" + std::to_string(no);
        auto fields = split(t, ';');
        if (fields.size() < 3) throw CorpusError(where + ": expected 'id ; alphabet ; regex ; ...'");
        Fixture f;
        f.id = fields[0];
        f.alphabet = make_alphabet(fields[1]);
        f.regex = fields[2];
        f.source = where;
        if (f.id.empty() || f.alphabet.empty()) throw CorpusError(where + ": empty id or alphabet");
        for (std::size_t i = 3; i < fields.size(); ++i) {
            std::istringstream toks(fields[i]);
            std::string tok;
            while (toks >> tok) {
                auto eq = tok.rfind('=');
                if (eq == std::string::npos || (tok.substr(eq + 1) != "0" && tok.substr(eq + 1) != "1"))
                    throw CorpusError(where + ": bad expectation '" + tok + "'");
                f.expected[to_string(parse_class(tok.substr(0, eq)))] = tok.back() == '1';
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Fixture> load_corpus(const std::string& path) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (const auto& e : fs::directory_iterator(path))
            if (e.path().extension() == ".txt") files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    std::vector<Fixture> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw CorpusError("cannot open " + f);
        auto part = parse_corpus(in, f);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::string format_fixture(const Fixture& f) {
    std::string out = f.id + " ; " + f.alphabet + " ; " + f.regex;
    if (!f.expected.empty()) {
        out += " ;";
        for (const auto& [c, v] : f.expected) out += " " + c + "=" + (v ? "1" : "0");
    }
    return out;
}

const std::vector<std::string>& corpus_classes() {
    static const std::vector<std::string> v = {"ST",       "AT",       "PTK(1)",   "PTK(2)",   "PT",       "LPOL(AT)", "RPOL(AT)",
                                               "MPOL(AT)", "UPOL(AT)", "LPOL(PT)", "RPOL(PT)", "UPOL(PT)", "MPOL(PT)"};
    return v;
}

const std::vector<std::string>& corpus_bridge_classes() {
    static const std::vector<std::string> v = {"AT", "PTK(2)", "LPOL(AT)", "RPOL(AT)", "MPOL(AT)", "LPOL(PT)", "RPOL(PT)"};
    return v;
}

bool CorpusSummary::passed() const { return failure_count() == 0; }

std::size_t CorpusSummary::failure_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.failures.size();
    return n;
}

FixtureResult check_fixture(const Fixture& f, const Limits& lim) {
    FixtureResult res;
    res.id = f.id;
    try {
        Dfa l = compile(f.regex, f.alphabet);
        RecognizedLanguage rl = syntactic_morphism(l, lim.monoid_cap);
        ClassOracle oracle(rl.alpha, lim.equiv());
        for (const auto& c : corpus_classes()) res.member[c] = oracle.member(parse_class(c), rl.accept);
        for (const auto& [c, v] : f.expected) {
            bool got = res.member.count(c) ? res.member[c] : oracle.member(parse_class(c), rl.accept);
            if (got != v) res.failures.push_back("expected " + c + "=" + (v ? "1" : "0") + ", got " + (got ? "1" : "0"));
        }
        if (res.member["PT"] != is_j_trivial(rl.alpha.target)) res.failures.push_back("PT membership differs from J-triviality");
        for (const auto& [a, b] : inclusions())
            if (res.member[a] && !res.member[b]) res.failures.push_back("inclusion " + a + " <= " + b + " violated");
        for (const auto& [a, b] : identities())
            if (res.member[a] != res.member[b]) res.failures.push_back("identity " + a + " = " + b + " violated");
        Dfa co = complement(l);
        for (const auto& c : corpus_bridge_classes()) {
            CoverReport rep = decide_separation(parse_class(c), l, co, lim.cover());
            bool sep = rep.verdict == CoverVerdict::Coverable;
            if (rep.verdict == CoverVerdict::Unknown || sep != res.member[c])
                res.failures.push_back("separation from complement under " + c + " is " + to_string(rep.verdict) +
                                       " but membership is " + (res.member[c] ? "1" : "0"));
        }
    } catch (const std::exception& e) {
        res.failures.push_back(std::string("error: ") + e.what());
    }
    return res;
}

CorpusSummary run_corpus(const std::vector<Fixture>& fixtures, const Limits& lim, int jobs) {
    CorpusSummary sum;
    sum.rows.resize(fixtures.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < fixtures.size(); i = next++) sum.rows[i] = check_fixture(fixtures[i], lim);
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(fixtures.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return sum;
}

}  // namespace detpol
