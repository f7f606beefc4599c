#pragma once
/**
 * @brief Base classes ST, AT, PT, PTK(k): canonical morphisms of the finite
 * ones and membership tests on recognized languages.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "class_expr.hpp"
#include "morphism.hpp"

namespace detpol {

/// Canonical morphism of a finite base, recognizing exactly the languages of the base.
struct CanonicalMorphism {
    ClassExpr base;
    MonoidMorphism eta;
};

namespace detail {

struct BitsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = 0;
        for (auto x : v) h = h * 0x100000001b3ull ^ x;
        return h;
    }
};

}  // namespace detail

inline CanonicalMorphism canonical_morphism(const ClassExpr& base, const Alphabet& alphabet, int cap = kDefaultMonoidCap) {
    using K = ClassExpr::Kind;
    CanonicalMorphism c{base, {}};
    c.eta.alphabet = alphabet;
    if (base.kind == K::ST) {
        c.eta.target = trivial_monoid();
        c.eta.target.names = {""};
        c.eta.letter_image.assign(alphabet.size(), 0);
        return c;
    }
    int k = base.kind == K::AT ? 1 : base.kind == K::PTK ? base.param : 0;
    if (k < 1) throw std::invalid_argument("canonical_morphism: " + to_string(base) + " is not a finite base");
    // subwords of length <= k, indexed in shortlex order
    std::vector<Word> words = words_up_to(alphabet, k);
    std::map<Word, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
    const std::size_t nwords = (words.size() + 63) / 64;
    std::vector<std::uint64_t> unit(nwords, 0);
    unit[0] = 1;  // the empty word
    std::vector<std::vector<int>> extend(words.size(), std::vector<int>(alphabet.size(), -1));
    for (std::size_t i = 0; i < words.size(); ++i)
        if (static_cast<int>(words[i].size()) < k)
            for (std::size_t l = 0; l < alphabet.size(); ++l) extend[i][l] = index[words[i] + alphabet[l]];
    CayleyBuilder<std::vector<std::uint64_t>, detail::BitsHash> b(
        alphabet, unit,
        [&extend, &words](const std::vector<std::uint64_t>& s, int l) {
            std::vector<std::uint64_t> r = s;
            for (std::size_t i = 0; i < words.size(); ++i)
                if (((s[i >> 6] >> (i & 63)) & 1u) && extend[i][l] >= 0) {
                    int j = extend[i][l];
                    r[j >> 6] |= std::uint64_t{1} << (j & 63);
                }
            return r;
        },
        cap);
    c.eta = b.morphism();
    return c;
}

/**
 * Reachable pairs {(eta(w), alpha(w))} as a list; pair (n, m) is encoded n * |M| + m.
 */
inline std::vector<int> reachable_pairs(const MonoidMorphism& eta, const MonoidMorphism& alpha) {
    if (eta.alphabet != alpha.alphabet) throw std::invalid_argument("reachable_pairs: alphabet mismatch");
    const int m = alpha.target.n;
    std::vector<char> seen(static_cast<std::size_t>(eta.target.n) * m, 0);
    std::vector<int> out{eta.target.unit * m + alpha.target.unit};
    seen[out[0]] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t l = 0; l < eta.letter_image.size(); ++l) {
            int x = eta.target.mul(out[i] / m, eta.letter_image[l]) * m + alpha.target.mul(out[i] % m, alpha.letter_image[l]);
            if (!seen[x]) {
                seen[x] = 1;
                out.push_back(x);
            }
        }
    return out;
}

/// True iff alpha^{-1}(F) is recognized by eta (F saturated by the reachable-pair relation).
inline bool recognized_through(const MonoidMorphism& eta, const RecognizedLanguage& rl) {
    const int m = rl.alpha.target.n;
    std::vector<int> verdict(eta.target.n, -1);
    for (int p : reachable_pairs(eta, rl.alpha)) {
        int n = p / m, x = p % m;
        int v = rl.accept[x] ? 1 : 0;
        if (verdict[n] < 0) verdict[n] = v;
        else if (verdict[n] != v) return false;
    }
    return true;
}

inline bool is_j_trivial(const FiniteMonoid& m) { return green(m).j_class_count() == m.n; }

/// Membership of a recognized language in a base class.
inline bool base_membership(const ClassExpr& base, const RecognizedLanguage& rl) {
    using K = ClassExpr::Kind;
    switch (base.kind) {
    case K::ST: {
        // alpha is surjective: L is empty or full iff F is empty or full
        bool any = false, all = true;
        for (char c : rl.accept) {
            any = any || c;
            all = all && c;
        }
        return !any || all;
    }
    case K::AT:
    case K::PTK: return recognized_through(canonical_morphism(base, rl.alpha.alphabet).eta, rl);
    case K::PT: {
        // PT-membership is a property of the syntactic monoid
        Congruence c = syntactic_congruence_of_subset(rl.alpha.target, rl.accept);
        return is_j_trivial(quotient(rl.alpha.target, c).monoid);
    }
    default: throw std::invalid_argument("base_membership: " + to_string(base) + " is not a base");
    }
}

/// Largest finite base contained in the class (used to bound canonical-equivalence atoms).
inline ClassExpr lower_finite_base(const ClassExpr& e) {
    using K = ClassExpr::Kind;
    switch (e.kind) {
    case K::ST:
    case K::AT:
    case K::PTK: return e;
    case K::PT: return ClassExpr::base(K::AT);
    case K::INTER: {
        ClassExpr a = lower_finite_base(e.kids[0]), b = lower_finite_base(e.kids[1]);
        auto level = [](const ClassExpr& x) { return x.kind == K::ST ? 0 : x.kind == K::AT ? 1 : x.param; };
        int l = std::min(level(a), level(b));
        return l == 0 ? ClassExpr::base(K::ST) : l == 1 ? ClassExpr::base(K::AT) : ClassExpr::base(K::PTK, l);
    }
    case K::LP:
    case K::RP:
    case K::BSIGMA2: return lower_finite_base(expand_aliases(e));
    default: return lower_finite_base(e.kids[0]);
    }
}

}  // namespace detpol
