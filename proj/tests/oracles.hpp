#pragma once
/**
 * @brief Independent reference implementations used only by the tests: a backtracking
 * regex matcher, brute-force Green relations and syntactic classes, an existential
 * snapshot search, a bottom-up two-variable preorder, and bounded separator search.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "detpol/dfa.hpp"
#include "detpol/monoid.hpp"
#include "detpol/morphism.hpp"
#include "detpol/rating.hpp"
#include "detpol/word_structure.hpp"

namespace oracle {

using detpol::Dfa;
using detpol::FiniteMonoid;
using detpol::MonoidMorphism;
using detpol::Word;

// ---- backtracking regex matcher over the source text ----

struct Node {
    enum Kind { Lit, Eps, Empty, Alt, Cat, Star, Plus } kind;
    char c = 0;
    std::vector<std::shared_ptr<Node>> kids;
};
using NodeP = std::shared_ptr<Node>;

class Parser {
public:
    explicit Parser(std::string s) : s_(std::move(s)) {}
    NodeP parse() {
        NodeP n = alt();
        if (i_ != s_.size()) throw std::runtime_error("oracle regex: trailing input");
        return n;
    }

private:
    std::string s_;
    std::size_t i_ = 0;
    void skip() {
        while (i_ < s_.size() && s_[i_] == ' ') ++i_;
    }
    NodeP alt() {
        NodeP l = cat();
        skip();
        while (i_ < s_.size() && s_[i_] == '|') {
            ++i_;
            NodeP r = cat();
            l = std::make_shared<Node>(Node{Node::Alt, 0, {l, r}});
            skip();
        }
        return l;
    }
    NodeP cat() {
        std::vector<NodeP> parts;
        skip();
        while (i_ < s_.size() && s_[i_] != '|' && s_[i_] != ')') {
            parts.push_back(post());
            skip();
        }
        if (parts.empty()) return std::make_shared<Node>(Node{Node::Eps, 0, {}});
        NodeP n = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) n = std::make_shared<Node>(Node{Node::Cat, 0, {n, parts[k]}});
        return n;
    }
    NodeP post() {
        NodeP n = atom();
        while (i_ < s_.size() && (s_[i_] == '*' || s_[i_] == '+')) {
            n = std::make_shared<Node>(Node{s_[i_] == '*' ? Node::Star : Node::Plus, 0, {n}});
            ++i_;
        }
        return n;
    }
    NodeP atom() {
        char c = s_.at(i_++);
        if (c == '(') {
            NodeP n = alt();
            if (i_ >= s_.size() || s_[i_] != ')') throw std::runtime_error("oracle regex: missing ')'");
            ++i_;
            return n;
        }
        if (c == '%') return std::make_shared<Node>(Node{Node::Eps, 0, {}});
        if (c == '@') return std::make_shared<Node>(Node{Node::Empty, 0, {}});
        return std::make_shared<Node>(Node{Node::Lit, c, {}});
    }
};

/// Calls k on every end position of a match of n starting at i.
inline bool match_from(const Node& n, const Word& w, std::size_t i, const std::function<bool(std::size_t)>& k) {
    switch (n.kind) {
    case Node::Lit: return i < w.size() && w[i] == n.c && k(i + 1);
    case Node::Eps: return k(i);
    case Node::Empty: return false;
    case Node::Alt: return match_from(*n.kids[0], w, i, k) || match_from(*n.kids[1], w, i, k);
    case Node::Cat: return match_from(*n.kids[0], w, i, [&](std::size_t j) { return match_from(*n.kids[1], w, j, k); });
    case Node::Star:
    case Node::Plus: {
        // iterations must consume input to avoid looping
        std::function<bool(std::size_t, bool)> loop = [&](std::size_t j, bool may_stop) -> bool {
            if (may_stop && k(j)) return true;
            return match_from(*n.kids[0], w, j, [&](std::size_t m) { return m > j && loop(m, true); });
        };
        if (n.kind == Node::Plus && match_from(*n.kids[0], w, i, [&](std::size_t m) { return m == i && k(i); })) return true;
        return loop(i, n.kind == Node::Star);
    }
    }
    return false;
}

inline bool regex_match(const std::string& pattern, const Word& w) {
    NodeP n = Parser(pattern).parse();
    return match_from(*n, w, 0, [&](std::size_t j) { return j == w.size(); });
}

// ---- monoid brute force ----

/// s <=_R t iff s = t x for some x (likewise for L and J).
struct BruteGreen {
    std::vector<std::vector<char>> r, l, j;
};

inline BruteGreen brute_green(const FiniteMonoid& m) {
    BruteGreen g;
    g.r.assign(m.n, std::vector<char>(m.n, 0));
    g.l = g.j = g.r;
    for (int t = 0; t < m.n; ++t)
        for (int x = 0; x < m.n; ++x) {
            g.r[m.mul(t, x)][t] = 1;
            g.l[m.mul(x, t)][t] = 1;
        }
    // s <=_J t iff s = (x t) y for some x, y; below[u] is the set u M as a bitset
    const int words = (m.n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> below(m.n, std::vector<std::uint64_t>(words, 0));
    for (int u = 0; u < m.n; ++u)
        for (int y = 0; y < m.n; ++y) {
            int s = m.mul(u, y);
            below[u][s / 64] |= std::uint64_t{1} << (s % 64);
        }
    std::vector<std::uint64_t> acc(words);
    for (int t = 0; t < m.n; ++t) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int u = 0; u < m.n; ++u)
            if (g.l[u][t])
                for (int i = 0; i < words; ++i) acc[i] |= below[u][i];
        for (int s = 0; s < m.n; ++s) g.j[s][t] = (acc[s / 64] >> (s % 64)) & 1u;
    }
    return g;
}

/// Least k >= 1 with s^k idempotent for every s.
inline int brute_omega(const FiniteMonoid& m) {
    for (int k = 1;; ++k) {
        bool ok = true;
        for (int s = 0; s < m.n && ok; ++s) {
            int p = m.power(s, k);
            ok = m.mul(p, p) == p;
        }
        if (ok) return k;
    }
}

/// Syntactic classes of L from words alone: u ~ v iff x u y in L <=> x v y in L for all
/// contexts x among access words of the DFA states and y of length < states.
struct BruteSyntactic {
    std::vector<Word> reps;
    std::map<std::vector<char>, int> index;
    std::vector<std::vector<char>> sig;
    std::vector<std::vector<int>> step;  ///< reps[i] + letter -> class
    std::vector<Word> xs, ys;

    std::vector<char> signature(const Dfa& d, const Word& u) const {
        std::vector<char> s;
        for (const auto& x : xs)
            for (const auto& y : ys) s.push_back(d.accepts(x + u + y));
        return s;
    }
};

inline BruteSyntactic brute_syntactic(const Dfa& d, int cap = 5000) {
    BruteSyntactic b;
    std::map<int, Word> access;
    for (const Word& w : detpol::words_up_to(d.alphabet, std::max(0, d.states - 1)))
        access.emplace(d.run(d.init, w), w);
    for (const auto& [q, w] : access) b.xs.push_back(w);
    b.ys = detpol::words_up_to(d.alphabet, std::max(0, d.states - 1));
    auto add = [&](const Word& w) {
        auto s = b.signature(d, w);
        auto it = b.index.find(s);
        if (it != b.index.end()) return it->second;
        int id = static_cast<int>(b.reps.size());
        b.index.emplace(s, id);
        b.reps.push_back(w);
        b.sig.push_back(s);
        return id;
    };
    add("");
    for (std::size_t i = 0; i < b.reps.size(); ++i) {
        if (static_cast<int>(b.reps.size()) > cap) throw std::runtime_error("brute_syntactic: too many classes");
        std::vector<int> row;
        for (char c : d.alphabet) row.push_back(add(b.reps[i] + c));
        b.step.push_back(row);
    }
    return b;
}

// ---- word structure ----

/// Every subset of labeled positions of w2 whose snapshot equals target.
inline bool exists_matching_subset(const MonoidMorphism& eta, const Word& w2, const detpol::Snapshot& target) {
    const int n = static_cast<int>(w2.size());
    if (static_cast<int>(target.letters.size()) > n) return false;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != static_cast<int>(target.letters.size())) continue;
        detpol::PositionSet p;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) p.push_back(i + 1);
        if (detpol::snapshot(eta, w2, p) == target) return true;
    }
    return false;
}

/// Recomputes the position sets level by level from scratch, with eta of infixes by direct evaluation.
inline detpol::PositionSet naive_positions(const MonoidMorphism& eta, int k, const Word& w, detpol::Mode mode) {
    const FiniteMonoid& m = eta.target;
    BruteGreen g = brute_green(m);
    auto lt_r = [&](int s, int t) { return g.r[s][t] && !g.r[t][s]; };
    auto lt_l = [&](int s, int t) { return g.l[s][t] && !g.l[t][s]; };
    const int len = static_cast<int>(w.size());
    auto infix = [&](int i, int j) { return eta.eval(w.substr(i, j - i - 1)); };
    std::set<int> left, right;
    for (int h = 0; h < k; ++h) {
        std::set<int> nl, nr;
        for (int i = 1; i <= len; ++i) {
            int a = eta.image(w[i - 1]);
            for (int j = 0; j < i; ++j)
                if ((j == 0 || left.count(j)) && lt_r(m.mul(infix(j, i), a), infix(j, i))) nl.insert(i);
            for (int j = i + 1; j <= len + 1; ++j)
                if ((j == len + 1 || right.count(j)) && lt_l(m.mul(a, infix(i, j)), infix(i, j))) nr.insert(i);
        }
        left = nl;
        right = nr;
    }
    std::set<int> out;
    if (mode != detpol::Mode::Right) out.insert(left.begin(), left.end());
    if (mode != detpol::Mode::Left) out.insert(right.begin(), right.end());
    return {out.begin(), out.end()};
}

// ---- bounded separator search ----

/// Every product of eta-classes with at most max_letters marked letters, with its flags.
struct AtomProducts {
    std::vector<detpol::MarkedProduct> products;
    std::vector<detpol::ProductFlags> flags;
    std::vector<Dfa> languages;
};

inline AtomProducts atom_products(const MonoidMorphism& eta, int max_letters) {
    AtomProducts out;
    std::vector<Dfa> atoms;
    for (int s = 0; s < eta.target.n; ++s) {
        std::vector<char> f(eta.target.n, 0);
        f[s] = 1;
        atoms.push_back(detpol::image_language(eta, f));
    }
    std::function<void(detpol::MarkedProduct&)> grow = [&](detpol::MarkedProduct& p) {
        out.products.push_back(p);
        if (static_cast<int>(p.letters.size()) == max_letters) return;
        for (char c : eta.alphabet)
            for (const Dfa& a : atoms) {
                p.letters.push_back(c);
                p.parts.push_back(a);
                grow(p);
                p.letters.pop_back();
                p.parts.pop_back();
            }
    };
    for (const Dfa& a : atoms) {
        detpol::MarkedProduct p{{a}, ""};
        grow(p);
    }
    for (const auto& p : out.products) {
        out.flags.push_back(detpol::classify_product(p));
        out.languages.push_back(p.language());
    }
    return out;
}

enum class ProductKind { Left, Right, Mixed };

/// Union of every admissible product disjoint from l2, if it contains l1.
inline std::optional<Dfa> bounded_separator(const AtomProducts& ap, ProductKind kind, const Dfa& l1, const Dfa& l2) {
    Dfa u = detpol::empty_language(l1.alphabet);
    for (std::size_t i = 0; i < ap.products.size(); ++i) {
        const auto& f = ap.flags[i];
        bool ok = kind == ProductKind::Left ? f.left_det : kind == ProductKind::Right ? f.right_det : f.mixed_det;
        if (ok && detpol::disjoint(ap.languages[i], l2)) u = detpol::unite(u, ap.languages[i]);
    }
    if (detpol::is_subset(l1, u)) return u;
    return std::nullopt;
}

// ---- two-variable preorder as a bottom-up table ----

/// table[k][n][d][i][i2] for k <= kmax, 1 <= n <= nmax, computed in increasing (k, n).
inline bool ef_table(const MonoidMorphism& eta, const Word& u, const Word& v, int kmax, int nmax) {
    const Word w[2] = {u, v};
    const int e[2] = {static_cast<int>(u.size()) + 1, static_cast<int>(v.size()) + 1};
    auto img = [&](int side, int i, int j) { return eta.eval(w[side].substr(i, j - i - 1)); };
    auto eq = [&](int d, int i, int i2) {
        const int a = d, b = 1 - d;
        if (i == 0 && i2 == 0) return eta.eval(w[a]) == eta.eval(w[b]);
        if (i == e[a] && i2 == e[b]) return eta.eval(w[a]) == eta.eval(w[b]);
        if (i < 1 || i >= e[a] || i2 < 1 || i2 >= e[b]) return false;
        return w[a][i - 1] == w[b][i2 - 1] && img(a, 0, i) == img(b, 0, i2) && img(a, i, e[a]) == img(b, i2, e[b]);
    };
    // t[k][n][d] is a matrix over positions of w[d] x w[1-d]
    using Mat = std::vector<std::vector<char>>;
    std::vector<std::vector<std::array<Mat, 2>>> t(kmax + 1, std::vector<std::array<Mat, 2>>(nmax + 1));
    for (int k = 0; k <= kmax; ++k)
        for (int n = 1; n <= nmax; ++n)
            for (int d = 0; d < 2; ++d) {
                const int a = d, b = 1 - d;
                Mat m(e[a] + 1, std::vector<char>(e[b] + 1, 0));
                for (int i = 0; i <= e[a]; ++i)
                    for (int i2 = 0; i2 <= e[b]; ++i2) {
                        bool ok = eq(d, i, i2);
                        if (ok && n >= 2) ok = t[k][n - 1][b][i2][i];
                        if (ok && k >= 1) {
                            for (int j = 0; j <= e[a] && ok; ++j) {
                                if (j == i) continue;
                                bool found = false;
                                for (int j2 = 0; j2 <= e[b] && !found; ++j2) {
                                    if (j > i && j2 > i2) found = img(a, i, j) == img(b, i2, j2) && t[k - 1][n][d][j][j2];
                                    if (j < i && j2 < i2) found = img(a, j, i) == img(b, j2, i2) && t[k - 1][n][d][j][j2];
                                }
                                ok = found;
                            }
                        }
                        m[i][i2] = ok;
                    }
                t[k][n][d] = std::move(m);
            }
    return t[kmax][nmax][0][0][0];
}

// ---- optimal imprints of a finite base by enumerating covers ----

/// Sums of rho(w) over each eta-class, by closure over (eta(w), rho(w)).
template <class S>
std::vector<typename S::Elem> class_ratings(const MonoidMorphism& eta, const detpol::RatingMap<S>& rho) {
    using Elem = typename S::Elem;
    std::vector<std::pair<int, Elem>> seen{{eta.target.unit, rho.sr.one()}};
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (std::size_t l = 0; l < eta.alphabet.size(); ++l) {
            std::pair<int, Elem> nx{eta.target.mul(seen[i].first, eta.letter_image[l]), rho.sr.mul(seen[i].second, rho.letter[l])};
            if (std::find(seen.begin(), seen.end(), nx) == seen.end()) seen.push_back(nx);
        }
    std::vector<Elem> sum(eta.target.n, rho.sr.zero());
    for (const auto& [s, r] : seen) sum[s] = rho.sr.add(sum[s], r);
    return sum;
}

/**
 * For each s, the least imprint over all covers of eta^-1(s) by languages recognized by eta
 * (finite families of unions of classes). Empty optional if no least imprint exists.
 */
template <class S>
std::optional<std::vector<std::vector<typename S::Elem>>> optimal_imprints_by_covers(const MonoidMorphism& eta,
                                                                                    const detpol::RatingMap<S>& rho) {
    using Elem = typename S::Elem;
    const int n = eta.target.n;
    if (n > 4) throw std::invalid_argument("optimal_imprints_by_covers: at most 4 classes");
    const int langs = 1 << n;
    std::vector<Elem> cls = class_ratings(eta, rho);
    std::vector<Elem> val(langs, rho.sr.zero());
    for (int t = 0; t < langs; ++t)
        for (int x = 0; x < n; ++x)
            if ((t >> x) & 1) val[t] = rho.sr.add(val[t], cls[x]);
    auto leq_down = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        for (const auto& x : a) {
            bool ok = false;
            for (const auto& y : b) ok = ok || rho.sr.leq(x, y);
            if (!ok) return false;
        }
        return true;
    };
    std::vector<std::vector<Elem>> out;
    for (int s = 0; s < n; ++s) {
        std::set<std::vector<Elem>> imprints;
        for (std::uint32_t fam = 1; fam < (std::uint64_t{1} << langs); ++fam) {
            bool covers = false;
            std::vector<Elem> gens;
            for (int t = 0; t < langs; ++t)
                if ((fam >> t) & 1u) {
                    covers = covers || ((t >> s) & 1);
                    gens.push_back(val[t]);
                }
            if (!covers) continue;
            auto anti = detpol::maximal_elements(rho.sr, gens);
            std::sort(anti.begin(), anti.end());
            imprints.insert(anti);
        }
        std::optional<std::vector<Elem>> least;
        for (const auto& c : imprints) {
            bool below_all = true;
            for (const auto& d : imprints) below_all = below_all && leq_down(c, d);
            if (below_all) least = c;
        }
        if (!least) return std::nullopt;
        out.push_back(*least);
    }
    return out;
}

// ---- random generators ----

inline Dfa random_dfa(std::mt19937& rng, int max_states, const std::string& alphabet) {
    Dfa d;
    d.alphabet = alphabet;
    d.states = 1 + static_cast<int>(rng() % max_states);
    d.init = 0;
    d.delta.resize(static_cast<std::size_t>(d.states) * alphabet.size());
    for (auto& x : d.delta) x = static_cast<int>(rng() % d.states);
    d.accepting.resize(d.states);
    for (auto&& a : d.accepting) a = rng() % 2;
    return detpol::minimize(d);
}

/// A surjective morphism onto a random small syntactic monoid.
inline MonoidMorphism random_small_morphism(std::mt19937& rng, int max_size, const std::string& alphabet) {
    while (true) {
        Dfa d = random_dfa(rng, 4, alphabet);
        MonoidMorphism m = detpol::syntactic_morphism(d).alpha;
        if (m.target.n <= max_size) return m;
    }
}

}  // namespace oracle
