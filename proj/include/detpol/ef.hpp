#pragma once
/**
 * @brief The preorders w, i <= w', i' for two-variable formulas of bounded rank and
 * alternation over infix predicates of a morphism, by their inductive characterization.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfa.hpp"
#include "word_structure.hpp"

namespace detpol {

/// Evaluates w, i <= w', i' at rank k and alternation n for one fixed pair of words.
class EfPreorder {
public:
    EfPreorder(const MonoidMorphism& eta, Word w, Word w2)
        : eta_(eta), w_{std::move(w), std::move(w2)}, tab_{InfixTable(eta, w_[0]), InfixTable(eta, w_[1])} {
        if (w_[0].size() > 60 || w_[1].size() > 60) throw std::invalid_argument("ef: words longer than 60 letters");
    }

    /// (w, i) <= (w', i') when dir is 0, (w', i) <= (w, i') when dir is 1.
    bool leq(int i, int i2, int k, int n, int dir = 0) {
        if (n < 1 || k < 0 || n > 60 || k > 60) throw std::invalid_argument("ef: need 0 <= k <= 60 and 1 <= n <= 60");
        const Word& a = w_[dir];
        const Word& b = w_[1 - dir];
        if (i < 0 || i > static_cast<int>(a.size()) + 1 || i2 < 0 || i2 > static_cast<int>(b.size()) + 1)
            throw std::invalid_argument("ef: position out of range");
        const long long key = ((((static_cast<long long>(dir) * 64 + i) * 64 + i2) * 64 + k) * 64) + n;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool r = compute(i, i2, k, n, dir);
        memo_[key] = r;
        return r;
    }

private:
    const MonoidMorphism& eta_;
    Word w_[2];
    InfixTable tab_[2];
    std::unordered_map<long long, bool> memo_;

    bool eta_equivalent(int i, int i2, int dir) const {
        const Word& a = w_[dir];
        const Word& b = w_[1 - dir];
        const int ea = static_cast<int>(a.size()) + 1, eb = static_cast<int>(b.size()) + 1;
        const InfixTable& ta = tab_[dir];
        const InfixTable& tb = tab_[1 - dir];
        if (i == 0 && i2 == 0) return ta.at(0, ea) == tb.at(0, eb);
        if (i == ea && i2 == eb) return ta.at(0, ea) == tb.at(0, eb);
        if (i < 1 || i >= ea || i2 < 1 || i2 >= eb) return false;
        return a[i - 1] == b[i2 - 1] && ta.at(0, i) == tb.at(0, i2) && ta.at(i, ea) == tb.at(i2, eb);
    }

    bool compute(int i, int i2, int k, int n, int dir) {
        if (!eta_equivalent(i, i2, dir)) return false;
        if (n >= 2 && !leq(i2, i, k, n - 1, 1 - dir)) return false;
        if (k == 0) return true;
        const int ea = static_cast<int>(w_[dir].size()) + 1, eb = static_cast<int>(w_[1 - dir].size()) + 1;
        const InfixTable& ta = tab_[dir];
        const InfixTable& tb = tab_[1 - dir];
        for (int j = i + 1; j <= ea; ++j) {
            bool found = false;
            for (int j2 = i2 + 1; j2 <= eb && !found; ++j2)
                found = ta.at(i, j) == tb.at(i2, j2) && leq(j, j2, k - 1, n, dir);
            if (!found) return false;
        }
        for (int j = 0; j < i; ++j) {
            bool found = false;
            for (int j2 = 0; j2 < i2 && !found; ++j2)
                found = ta.at(j, i) == tb.at(j2, i2) && leq(j, j2, k - 1, n, dir);
            if (!found) return false;
        }
        return true;
    }
};

inline bool ef_leq(const MonoidMorphism& eta, const Word& w, int i, const Word& w2, int i2, int k, int n) {
    return EfPreorder(eta, w, w2).leq(i, i2, k, n);
}

/// w <= w' on words (pointed at 0).
inline bool ef_leq(const MonoidMorphism& eta, const Word& w, const Word& w2, int k, int n) {
    return ef_leq(eta, w, 0, w2, 0, k, n);
}

inline bool ef_equiv(const MonoidMorphism& eta, const Word& w, const Word& w2, int k, int n) {
    EfPreorder p(eta, w, w2);
    return p.leq(0, 0, k, n, 0) && p.leq(0, 0, k, n, 1);
}

struct SaturationReport {
    bool saturated = true;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<Word, Word>> refutation;  ///< equivalent words, first in L, second not
};

/// Looks for two equivalent words of length at most bound that L separates.
inline SaturationReport ef_class_saturation(const MonoidMorphism& eta, int k, int n, const Dfa& l, int length_bound) {
    if (eta.alphabet != l.alphabet) throw std::invalid_argument("ef: alphabet mismatch");
    SaturationReport rep;
    std::vector<Word> in, out;
    for (const Word& w : words_up_to(l.alphabet, length_bound)) (l.accepts(w) ? in : out).push_back(w);
    for (const Word& u : in)
        for (const Word& v : out) {
            ++rep.pairs_checked;
            if (ef_equiv(eta, u, v, k, n)) {
                rep.saturated = false;
                rep.refutation = std::make_pair(u, v);
                return rep;
            }
        }
    return rep;
}

}  // namespace detpol
