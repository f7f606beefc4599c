#include "catch_amalgamated.hpp"
#include "detpol/canonical_equiv.hpp"
#include "detpol/membership.hpp"
#include "oracles.hpp"

using namespace detpol;
using K = ClassExpr::Kind;

namespace {

/// C-pairs from words: (alpha(u), alpha(v)) with eta(u) = eta(v) and |u|, |v| <= len.
PairRelation bounded_pairs(const MonoidMorphism& eta, const MonoidMorphism& alpha, int len) {
    std::map<int, std::set<int>> by_eta;
    for (const Word& w : words_up_to(alpha.alphabet, len)) by_eta[eta.eval(w)].insert(alpha.eval(w));
    PairRelation r(alpha.target.n);
    for (const auto& [n, ss] : by_eta)
        for (int s : ss)
            for (int t : ss) r.add(s, t);
    return r;
}

/// Atoms of the Boolean algebra of recognized base languages, by enumerating accepting sets.
Congruence atoms_by_subsets(const ClassExpr& base, const MonoidMorphism& alpha) {
    const int n = alpha.target.n;
    std::vector<std::vector<char>> sig(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        RecognizedLanguage rl{alpha, std::vector<char>(n)};
        for (int s = 0; s < n; ++s) rl.accept[s] = (mask >> s) & 1u;
        if (!base_membership(base, rl)) continue;
        for (int s = 0; s < n; ++s) sig[s].push_back(rl.accept[s]);
    }
    std::map<std::vector<char>, int> ids;
    std::vector<int> label;
    for (const auto& s : sig) label.push_back(ids.emplace(s, static_cast<int>(ids.size())).first->second);
    return normalize_partition(label);
}

const std::vector<std::string> kLangs = {"(ab)*", "a(a|b)*", "(a|b)*a", "(a|b)*ab(a|b)*", "b*a(a|b)*b", "(a|b)*aa(a|b)*",
                                         "a*b*", "(aa|b)*", "a(a|b)*a|b", "(a|b)*a(a|b)*"};

}  // namespace

TEST_CASE("C-pairs for finite bases") {
    RecognizedLanguage aa = syntactic_morphism(compile("(a|b)*a(a|b)*", "ab"));
    PairRelation st = c_pairs_finite(canonical_morphism(ClassExpr::base(K::ST), "ab"), aa.alpha);
    CHECK(st.count() == 4);
    PairRelation at = c_pairs_finite(canonical_morphism(ClassExpr::base(K::AT), "ab"), aa.alpha);
    CHECK(at.count() == 2);
    CHECK(at.has(0, 0));
    CHECK(at.has(1, 1));

    for (const auto& l : kLangs)
        for (const auto& b : {ClassExpr::base(K::AT), ClassExpr::base(K::PTK, 2)}) {
            RecognizedLanguage rl = syntactic_morphism(compile(l, "ab"));
            CanonicalMorphism c = canonical_morphism(b, "ab");
            INFO(l << " " << to_string(b));
            CHECK(c_pairs_finite(c, rl.alpha).rel == bounded_pairs(c.eta, rl.alpha, 9).rel);
        }
}

TEST_CASE("C-pairs are closed under multiplication") {
    for (const auto& l : kLangs) {
        RecognizedLanguage rl = syntactic_morphism(compile(l, "ab"));
        const FiniteMonoid& m = rl.alpha.target;
        PairRelation p = c_pairs_finite(canonical_morphism(ClassExpr::base(K::AT), "ab"), rl.alpha);
        for (int s = 0; s < m.n; ++s)
            for (int t = 0; t < m.n; ++t)
                for (int s2 = 0; s2 < m.n; ++s2)
                    for (int t2 = 0; t2 < m.n; ++t2)
                        if (p.has(s, t) && p.has(s2, t2)) CHECK(p.has(m.mul(s, s2), m.mul(t, t2)));
    }
}

TEST_CASE("canonical equivalence examples") {
    RecognizedLanguage aa = syntactic_morphism(compile("(a|b)*a(a|b)*", "ab"));
    CHECK(canonical_equiv(ClassExpr::base(K::ST), aa.alpha).blocks() == 1);
    CHECK(canonical_equiv(ClassExpr::base(K::AT), aa.alpha) == identity_congruence(2));
    CHECK(canonical_equiv(ClassExpr::base(K::PT), aa.alpha) == identity_congruence(2));
}

TEST_CASE("closure of C-pairs equals the atoms of recognized base languages") {
    for (const auto& l : kLangs)
        for (const auto& b : {ClassExpr::base(K::ST), ClassExpr::base(K::AT), ClassExpr::base(K::PTK, 2)}) {
            RecognizedLanguage rl = syntactic_morphism(compile(l, "ab"));
            if (rl.alpha.target.n > 14) continue;
            INFO(l << " " << to_string(b));
            Congruence c = canonical_equiv(b, rl.alpha);
            CHECK(c == atoms_by_subsets(b, rl.alpha));
            CHECK(is_congruence(rl.alpha.target, c));
        }
}

TEST_CASE("atom search agrees with full enumeration") {
    const std::vector<std::string> classes = {"PT", "LPOL(AT)", "RPOL(AT)", "MPOL(AT)", "UPOL(AT)", "LPOL(PTK(2))"};
    for (const auto& l : kLangs) {
        RecognizedLanguage rl = syntactic_morphism(compile(l, "ab"));
        if (rl.alpha.target.n > 12) continue;
        for (const auto& c : classes) {
            INFO(l << " " << c);
            EquivConfig full;
            full.full_enumeration = true;
            CHECK(canonical_equiv(parse_class(c), rl.alpha) == canonical_equiv(parse_class(c), rl.alpha, full));
        }
    }
}

TEST_CASE("larger classes give finer equivalences") {
    const std::vector<std::pair<std::string, std::string>> chains = {
        {"ST", "AT"}, {"AT", "PTK(2)"}, {"AT", "PT"}, {"AT", "LPOL(AT)"}, {"LPOL(AT)", "MPOL(AT)"}, {"RPOL(AT)", "MPOL(AT)"},
        {"MPOL(AT)", "UPOL(AT)"}};
    for (const auto& l : kLangs) {
        RecognizedLanguage rl = syntactic_morphism(compile(l, "ab"));
        if (rl.alpha.target.n > 12) continue;
        for (const auto& [small, big] : chains) {
            INFO(l << " " << small << " " << big);
            CHECK(refines(canonical_equiv(parse_class(big), rl.alpha), canonical_equiv(parse_class(small), rl.alpha)));
        }
    }
}

TEST_CASE("the C-quotient recognizes exactly the recognized C-languages") {
    RecognizedLanguage rl = syntactic_morphism(compile("(ab)*", "ab"));
    Congruence c = canonical_equiv(ClassExpr::base(K::AT), rl.alpha);
    MonoidMorphism q = quotient_c_morphism(rl.alpha, c);
    for (unsigned mask = 0; mask < (1u << q.target.n); ++mask) {
        std::vector<char> f(q.target.n);
        for (int s = 0; s < q.target.n; ++s) f[s] = (mask >> s) & 1u;
        CHECK(decide_membership(ClassExpr::base(K::AT), image_language(q, f)));
    }
    CHECK(quotient_c_morphism(rl.alpha, identity_congruence(rl.alpha.target.n)).target.n == rl.alpha.target.n);
    CHECK(quotient_c_morphism(rl.alpha, total_congruence(rl.alpha.target.n)).target.n == 1);
}

TEST_CASE("enumeration cap is enforced") {
    RecognizedLanguage rl = syntactic_morphism(compile("(a|b)*abba(a|b)*|(ab)*", "ab"));
    REQUIRE(rl.alpha.target.n > 4);
    EquivConfig tiny;
    tiny.enumeration_cap = 4;
    CHECK_THROWS_AS(canonical_equiv(parse_class("PT"), rl.alpha, tiny), SizeCapExceeded);
}
