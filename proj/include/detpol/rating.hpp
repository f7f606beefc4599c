#pragma once
/**
 * @brief Nice multiplicative rating maps, pointed imprints stored as antichains,
 * the reduction of covering to imprints, and imprints of finite bases.
 */

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "prevariety.hpp"
#include "semiring.hpp"

namespace detpol {

/// A nice multiplicative rating map, determined by the images of the letters.
template <IdempotentSemiring S>
struct RatingMap {
    S sr;
    Alphabet alphabet;
    std::vector<typename S::Elem> letter;

    typename S::Elem of_letter(char c) const {
        auto p = alphabet.find(c);
        if (p == Alphabet::npos) throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
        return letter[p];
    }
    typename S::Elem of_word(const Word& w) const {
        typename S::Elem r = sr.one();
        for (char c : w) r = sr.mul(r, of_letter(c));
        return r;
    }
};

namespace detail {

template <IdempotentSemiring S>
struct ElemHash {
    const S* sr;
    std::size_t operator()(const typename S::Elem& e) const { return sr->hash(e); }
};

template <IdempotentSemiring S>
struct PairHash {
    const S* sr;
    std::size_t operator()(const std::pair<int, typename S::Elem>& p) const {
        return sr->hash(p.second) * 31u + static_cast<std::size_t>(p.first);
    }
};

}  // namespace detail

/// rho_alpha: the rating set 2^M, each word mapped to {alpha(w)}.
inline RatingMap<PowersetSemiring> rho_of_morphism(const MonoidMorphism& alpha) {
    RatingMap<PowersetSemiring> rho{PowersetSemiring({alpha.target}), alpha.alphabet, {}};
    for (int x : alpha.letter_image) rho.letter.push_back(rho.sr.singletons({x}));
    return rho;
}

/// rho(K): the sum of rho(w) over w in K, by a (state, value) reachability fixpoint.
template <IdempotentSemiring S>
typename S::Elem eval_nice(const RatingMap<S>& rho, const Dfa& k) {
    if (k.alphabet != rho.alphabet) throw std::invalid_argument("eval_nice: alphabet mismatch");
    using Elem = typename S::Elem;
    detail::PairHash<S> h{&rho.sr};
    std::unordered_set<std::pair<int, Elem>, detail::PairHash<S>> seen(16, h);
    std::vector<std::pair<int, Elem>> queue{{k.init, rho.sr.one()}};
    seen.insert(queue[0]);
    Elem sum = rho.sr.zero();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [q, v] = queue[i];
        if (k.accepting[q]) sum = rho.sr.add(sum, v);
        for (int l = 0; l < k.width(); ++l) {
            std::pair<int, Elem> nx{k.next(q, l), rho.sr.mul(v, rho.letter[l])};
            if (seen.insert(nx).second) queue.push_back(std::move(nx));
        }
    }
    return sum;
}

/// The monoid rho_*(A*) as a morphism, with the semiring element of every target index.
template <IdempotentSemiring S>
std::pair<MonoidMorphism, std::vector<typename S::Elem>> rating_morphism(const RatingMap<S>& rho,
                                                                        int cap = kDefaultMonoidCap) {
    using Elem = typename S::Elem;
    CayleyBuilder<Elem, detail::ElemHash<S>> b(
        rho.alphabet, rho.sr.one(), [&rho](const Elem& e, int l) { return rho.sr.mul(e, rho.letter[l]); }, cap,
        detail::ElemHash<S>{&rho.sr});
    return {b.morphism(), b.keys()};
}

/// Pairs (eta(w), rho(w)) over all words w.
template <IdempotentSemiring S>
std::vector<std::pair<int, typename S::Elem>> trivial_pairs(const MonoidMorphism& eta, const RatingMap<S>& rho) {
    if (eta.alphabet != rho.alphabet) throw std::invalid_argument("trivial_pairs: alphabet mismatch");
    using Elem = typename S::Elem;
    detail::PairHash<S> h{&rho.sr};
    std::unordered_set<std::pair<int, Elem>, detail::PairHash<S>> seen(16, h);
    std::vector<std::pair<int, Elem>> out{{eta.target.unit, rho.sr.one()}};
    seen.insert(out[0]);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t l = 0; l < eta.letter_image.size(); ++l) {
            std::pair<int, Elem> nx{eta.target.mul(out[i].first, eta.letter_image[l]), rho.sr.mul(out[i].second, rho.letter[l])};
            if (seen.insert(nx).second) out.push_back(std::move(nx));
        }
    return out;
}

/// How a maximal entry of a saturated set was obtained.
enum class Origin { Trivial, Base, Product, Rule91, Rule92, Chain };

inline const char* to_string(Origin o) {
    switch (o) {
    case Origin::Trivial: return "trivial";
    case Origin::Base: return "base";
    case Origin::Product: return "product";
    case Origin::Rule91: return "rule-9.1";
    case Origin::Rule92: return "rule-9.2";
    case Origin::Chain: return "rule-10.1";
    }
    return "?";
}

/**
 * A downset-closed subset of N x R, stored as the antichain of maximal values for each s in N.
 */
template <IdempotentSemiring S>
struct PointedImprint {
    using Elem = typename S::Elem;
    std::vector<std::vector<Elem>> maxima;
    std::vector<std::vector<Origin>> origin;

    PointedImprint() = default;
    explicit PointedImprint(int n) : maxima(n), origin(n) {}

    int n() const { return static_cast<int>(maxima.size()); }

    bool contains(const S& sr, int s, const Elem& r) const {
        for (const Elem& m : maxima[s])
            if (sr.leq(r, m)) return true;
        return false;
    }

    /// Adds (s, r) and drops the entries it dominates; false if already present.
    bool insert(const S& sr, int s, const Elem& r, Origin o) {
        if (contains(sr, s, r)) return false;
        auto& ms = maxima[s];
        auto& os = origin[s];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < ms.size(); ++i)
            if (!sr.leq(ms[i], r)) {
                if (keep != i) {
                    ms[keep] = std::move(ms[i]);
                    os[keep] = os[i];
                }
                ++keep;
            }
        ms.resize(keep);
        os.resize(keep);
        ms.push_back(r);
        os.push_back(o);
        return true;
    }

    std::size_t entries() const {
        std::size_t c = 0;
        for (const auto& m : maxima) c += m.size();
        return c;
    }

    /// Every entry of this set lies in other.
    bool included_in(const S& sr, const PointedImprint& other) const {
        for (int s = 0; s < n(); ++s)
            for (const Elem& r : maxima[s])
                if (!other.contains(sr, s, r)) return false;
        return true;
    }
};

/// Antichain of maximal elements of a downset given by generators.
template <IdempotentSemiring S>
std::vector<typename S::Elem> maximal_elements(const S& sr, const std::vector<typename S::Elem>& xs) {
    std::vector<typename S::Elem> out;
    for (const auto& x : xs) {
        bool dominated = false;
        for (const auto& y : out)
            if (sr.leq(x, y)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        std::erase_if(out, [&](const auto& y) { return sr.leq(y, x); });
        out.push_back(x);
    }
    return out;
}

/// The unpointed imprint {r : (s, r) in P for some s}, as maximal elements.
template <IdempotentSemiring S>
std::vector<typename S::Elem> projection(const S& sr, const PointedImprint<S>& p) {
    std::vector<typename S::Elem> all;
    for (const auto& ms : p.maxima) all.insert(all.end(), ms.begin(), ms.end());
    return maximal_elements(sr, all);
}

/// Downset inclusion between two antichains.
template <IdempotentSemiring S>
bool downset_included(const S& sr, const std::vector<typename S::Elem>& a, const std::vector<typename S::Elem>& b) {
    for (const auto& x : a) {
        bool ok = false;
        for (const auto& y : b)
            if (sr.leq(x, y)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

/**
 * Imprint of a finite base at its canonical morphism: the downset of (s, rho(eta^-1(s))).
 * Every language of the base containing a word of eta^-1(s) contains all of it, so
 * {eta^-1(s)} is an optimal cover of itself.
 */
template <IdempotentSemiring S>
PointedImprint<S> base_imprint_finite(const MonoidMorphism& eta_c, const RatingMap<S>& rho) {
    std::vector<typename S::Elem> sum(eta_c.target.n, rho.sr.zero());
    for (const auto& [s, r] : trivial_pairs(eta_c, rho)) sum[s] = rho.sr.add(sum[s], r);
    PointedImprint<S> p(eta_c.target.n);
    for (int s = 0; s < eta_c.target.n; ++s) p.insert(rho.sr, s, sum[s], Origin::Base);
    return p;
}

/// Sorted lines "(s, r)" for the maximal entries.
template <IdempotentSemiring S>
std::string dump(const S& sr, const FiniteMonoid& n, const PointedImprint<S>& p) {
    std::vector<std::string> lines;
    for (int s = 0; s < p.n(); ++s)
        for (const auto& r : p.maxima[s]) lines.push_back("(" + n.name(s) + ", " + sr.format(r) + ")");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

/// Rating map and goal set for an instance (L0, {L1, ..., Ln}) of covering.
struct CoveringInput {
    PowersetSemiring sr{{}};
    RatingMap<PowersetSemiring> rho{PowersetSemiring({}), {}, {}};
    std::vector<RecognizedLanguage> parts;  ///< L0, ..., Ln with their syntactic morphisms

    /// Every component meets its accepting set.
    bool in_goal(const Bits& x) const {
        for (int i = 0; i < sr.components(); ++i) {
            bool meets = false;
            for (int m = 0; m < sr.component(i).n && !meets; ++m)
                meets = parts[i].accept[m] && x.test(sr.offset(i) + m);
            if (!meets) return false;
        }
        return true;
    }
};

inline CoveringInput covering_input(const Dfa& l0, const std::vector<Dfa>& ls, int cap = kDefaultMonoidCap) {
    CoveringInput in;
    std::vector<FiniteMonoid> comps;
    in.parts.push_back(syntactic_morphism(l0, cap));
    for (const Dfa& l : ls) {
        require_same_alphabet(l0, l);
        in.parts.push_back(syntactic_morphism(l, cap));
    }
    for (const auto& p : in.parts) comps.push_back(p.alpha.target);
    in.sr = PowersetSemiring(comps);
    in.rho = RatingMap<PowersetSemiring>{in.sr, l0.alphabet, {}};
    for (std::size_t l = 0; l < l0.alphabet.size(); ++l) {
        std::vector<int> xs;
        for (const auto& p : in.parts) xs.push_back(p.alpha.letter_image[l]);
        in.rho.letter.push_back(in.sr.singletons(xs));
    }
    return in;
}

/// Coverability for a finite base: every atom of eta_c meeting L0 must miss some Li.
inline bool finite_base_coverable(const MonoidMorphism& eta_c, const Dfa& l0, const std::vector<Dfa>& ls) {
    for (int s = 0; s < eta_c.target.n; ++s) {
        std::vector<char> f(eta_c.target.n, 0);
        f[s] = 1;
        Dfa atom = image_language(eta_c, f);
        if (disjoint(atom, l0)) continue;
        bool misses = false;
        for (const Dfa& l : ls) misses = misses || disjoint(atom, l);
        if (!misses) return false;
    }
    return true;
}

/**
 * Optimal imprint on L from a covering oracle: the downset of the sums over Q such that
 * (L, {rho_*^-1(q) : q in Q}) is not coverable. Q ranges over subsets of rho_*(A*).
 */
template <IdempotentSemiring S>
std::vector<typename S::Elem> imprint_from_covering(const std::function<bool(const Dfa&, const std::vector<Dfa>&)>& coverable,
                                                    const Dfa& l, const RatingMap<S>& rho, int max_image = 16) {
    auto [mor, values] = rating_morphism(rho);
    const int m = mor.target.n;
    if (m > max_image) throw SizeCapExceeded("imprint_from_covering: rating image has " + std::to_string(m) + " elements");
    std::vector<Dfa> pre;
    for (int q = 0; q < m; ++q) {
        std::vector<char> f(m, 0);
        f[q] = 1;
        pre.push_back(image_language(mor, f));
    }
    std::vector<typename S::Elem> gens;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<Dfa> ls;
        typename S::Elem sum = rho.sr.zero();
        for (int q = 0; q < m; ++q)
            if ((mask >> q) & 1u) {
                ls.push_back(pre[q]);
                sum = rho.sr.add(sum, values[q]);
            }
        if (!coverable(l, ls)) gens.push_back(sum);
    }
    return maximal_elements(rho.sr, gens);
}

}  // namespace detpol
