#pragma once
/**
 * @brief Distinguished positions, snapshots, the equivalences they induce, and
 * determinism/unambiguity tests for marked products.
 */

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "morphism.hpp"

namespace detpol {

/// Which recurrence selects positions: left (R-drops), right (L-drops) or both.
enum class Mode { Left, Right, Mixed };

inline const char* to_string(Mode m) {
    switch (m) {
    case Mode::Left: return "left";
    case Mode::Right: return "right";
    case Mode::Mixed: return "mixed";
    }
    return "?";
}

/// Sorted labeled positions of a word, numbered 1..|w|.
using PositionSet = std::vector<int>;

/// Images under eta of every infix w(i, j), for 0 <= i < j <= |w| + 1.
class InfixTable {
public:
    InfixTable(const MonoidMorphism& eta, const Word& w) : n_(static_cast<int>(w.size()) + 2), img_(n_ * n_, -1) {
        for (int i = 0; i + 1 < n_; ++i) {
            int cur = eta.target.unit;
            img_[i * n_ + i + 1] = cur;
            for (int j = i + 2; j < n_; ++j) {
                cur = eta.target.mul(cur, eta.image(w[j - 2]));
                img_[i * n_ + j] = cur;
            }
        }
    }
    /// eta(w(i, j)): the letters strictly between positions i and j.
    int at(int i, int j) const { return img_[i * n_ + j]; }

private:
    int n_;
    std::vector<int> img_;
};

namespace detail {

inline PositionSet marked_one_side(const MonoidMorphism& eta, const GreenData& g, int k, const Word& w, bool left,
                                   const InfixTable& tab) {
    const int len = static_cast<int>(w.size());
    const int end = len + 1;
    std::vector<char> in(len + 2, 0), prev(len + 2, 0);
    for (int h = 1; h <= k; ++h) {
        prev = in;
        prev[left ? 0 : end] = 1;
        std::vector<char> next(len + 2, 0);
        for (int i = 1; i <= len; ++i) {
            const int a = eta.image(w[i - 1]);
            if (left) {
                for (int j = 0; j < i && !next[i]; ++j)
                    if (prev[j]) {
                        int q = tab.at(j, i);
                        if (g.lt_r(eta.target.mul(q, a), q)) next[i] = 1;
                    }
            } else {
                for (int j = i + 1; j <= end && !next[i]; ++j)
                    if (prev[j]) {
                        int q = tab.at(i, j);
                        if (g.lt_l(eta.target.mul(a, q), q)) next[i] = 1;
                    }
            }
        }
        if (next == in) break;
        in = std::move(next);
    }
    PositionSet out;
    for (int i = 1; i <= len; ++i)
        if (in[i]) out.push_back(i);
    return out;
}

}  // namespace detail

/// P(eta, k, w) for the given mode, with Green data of the target precomputed.
inline PositionSet marked_positions(const MonoidMorphism& eta, const GreenData& g, int k, const Word& w, Mode mode) {
    InfixTable tab(eta, w);
    if (mode == Mode::Left) return detail::marked_one_side(eta, g, k, w, true, tab);
    if (mode == Mode::Right) return detail::marked_one_side(eta, g, k, w, false, tab);
    PositionSet l = detail::marked_one_side(eta, g, k, w, true, tab);
    PositionSet r = detail::marked_one_side(eta, g, k, w, false, tab);
    PositionSet out;
    std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
    return out;
}

inline PositionSet marked_positions(const MonoidMorphism& eta, int k, const Word& w, Mode mode) {
    return marked_positions(eta, green(eta.target), k, w, mode);
}

/// (s0, a1, s1, ..., am, sm): gap images and the labels of the chosen positions.
struct Snapshot {
    std::vector<int> gaps;
    std::string letters;
    bool operator==(const Snapshot&) const = default;
    bool operator<(const Snapshot& o) const { return gaps != o.gaps ? gaps < o.gaps : letters < o.letters; }
};

inline Snapshot snapshot(const MonoidMorphism& eta, const Word& w, const PositionSet& p) {
    Snapshot s;
    int prev = 0;
    InfixTable tab(eta, w);
    for (int i : p) {
        if (i < 1 || i > static_cast<int>(w.size()) || i <= prev) throw std::invalid_argument("snapshot: bad position set");
        s.gaps.push_back(tab.at(prev, i));
        s.letters.push_back(w[i - 1]);
        prev = i;
    }
    s.gaps.push_back(tab.at(prev, static_cast<int>(w.size()) + 1));
    return s;
}

inline std::string to_string(const Snapshot& s, const FiniteMonoid& m) {
    std::string out = "(" + m.name(s.gaps[0]);
    for (std::size_t i = 0; i < s.letters.size(); ++i) out += std::string(", ") + s.letters[i] + ", " + m.name(s.gaps[i + 1]);
    return out + ")";
}

/// Snapshot over the canonical position set; equal keys mean equivalent words.
inline Snapshot class_key(const MonoidMorphism& eta, const GreenData& g, int k, Mode mode, const Word& w) {
    return snapshot(eta, w, marked_positions(eta, g, k, w, mode));
}

inline bool equivalent(const MonoidMorphism& eta, int k, Mode mode, const Word& u, const Word& v) {
    GreenData g = green(eta.target);
    return class_key(eta, g, k, mode, u) == class_key(eta, g, k, mode, v);
}

/// L0 a1 L1 ... an Ln over a common alphabet.
struct MarkedProduct {
    std::vector<Dfa> parts;
    std::string letters;

    std::size_t size() const { return letters.size(); }
    Dfa language() const { return marked_concat(parts, letters); }
};

/// The equivalence class of w as the product eta^-1(s0) a1 eta^-1(s1) ... an eta^-1(sn).
inline MarkedProduct class_as_product(const MonoidMorphism& eta, int k, Mode mode, const Word& w) {
    Snapshot s = snapshot(eta, w, marked_positions(eta, k, w, mode));
    MarkedProduct p;
    p.letters = s.letters;
    for (int x : s.gaps) {
        std::vector<char> f(eta.target.n, 0);
        f[x] = 1;
        p.parts.push_back(image_language(eta, f));
    }
    return p;
}

struct ProductFlags {
    bool left_det = false;
    bool right_det = false;
    bool mixed_det = false;
    bool unambiguous = false;
};

namespace detail {

/// True iff some word has two distinct decompositions along the product.
inline bool ambiguous(const MarkedProduct& p) {
    const Alphabet& a = p.parts[0].alphabet;
    const int layers = static_cast<int>(p.parts.size());
    std::vector<int> offset(layers + 1, 0);
    for (int h = 0; h < layers; ++h) offset[h + 1] = offset[h] + p.parts[h].states;
    const int n = offset[layers];
    auto succ = [&](int st, int li, std::vector<int>& out) {
        out.clear();
        int h = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), st) - offset.begin()) - 1;
        int q = st - offset[h];
        out.push_back(offset[h] + p.parts[h].next(q, li));
        if (h + 1 < layers && p.parts[h].accepting[q] && a[li] == p.letters[h]) out.push_back(offset[h + 1] + p.parts[h + 1].init);
    };
    auto final_state = [&](int st) { return st >= offset[layers - 1] && p.parts[layers - 1].accepting[st - offset[layers - 1]]; };
    // states (x, y, diverged)
    auto enc = [n](int x, int y, int d) { return (x * n + y) * 2 + d; };
    std::vector<char> seen(static_cast<std::size_t>(n) * n * 2, 0);
    int start = offset[0] + p.parts[0].init;
    std::vector<int> queue{enc(start, start, 0)};
    seen[queue[0]] = 1;
    std::vector<int> sx, sy;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int code = queue[i], d = code % 2, x = (code / 2) / n, y = (code / 2) % n;
        if (d && final_state(x) && final_state(y)) return true;
        for (std::size_t li = 0; li < a.size(); ++li) {
            succ(x, static_cast<int>(li), sx);
            succ(y, static_cast<int>(li), sy);
            for (int nx : sx)
                for (int ny : sy) {
                    int c = enc(nx, ny, d || nx != ny);
                    if (!seen[c]) {
                        seen[c] = 1;
                        queue.push_back(c);
                    }
                }
        }
    }
    return false;
}

}  // namespace detail

inline ProductFlags classify_product(const MarkedProduct& p) {
    if (p.parts.size() != p.letters.size() + 1) throw std::invalid_argument("classify_product: parts and letters do not match");
    const Alphabet& a = p.parts[0].alphabet;
    for (const Dfa& d : p.parts)
        if (d.alphabet != a) throw std::invalid_argument("classify_product: alphabet mismatch");
    for (char c : p.letters)
        if (a.find(c) == std::string::npos) throw std::invalid_argument("classify_product: marker outside the alphabet");
    const int n = static_cast<int>(p.letters.size());
    const Dfa all = universal_language(a);
    ProductFlags f;
    f.left_det = f.right_det = f.mixed_det = true;
    for (int i = 1; i <= n; ++i) {
        std::vector<Dfa> lp(p.parts.begin(), p.parts.begin() + i), rp(p.parts.begin() + i, p.parts.end());
        Dfa li = marked_concat(lp, p.letters.substr(0, i - 1));
        Dfa ri = marked_concat(rp, p.letters.substr(i));
        bool left = disjoint(li, marked_concat({li, all}, std::string(1, p.letters[i - 1])));
        bool right = disjoint(ri, marked_concat({all, ri}, std::string(1, p.letters[i - 1])));
        f.left_det = f.left_det && left;
        f.right_det = f.right_det && right;
        f.mixed_det = f.mixed_det && (left || right);
    }
    f.unambiguous = !detail::ambiguous(p);
    return f;
}

/// Components as regular expressions, interleaved with the marker letters.
inline std::string to_string(const MarkedProduct& p) {
    std::string out;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) out += ' ' + std::string(1, p.letters[i - 1]) + ' ';
        out += to_string(to_regex(p.parts[i]));
    }
    return out;
}

}  // namespace detpol
