#pragma once
/**
 * @brief C-pairs and the canonical equivalence ~C for a morphism, together
 * with the recursive class oracle shared with membership.
 */

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "equations.hpp"
#include "prevariety.hpp"

namespace detpol {

/// C-pairs for a finite base: (s, t) with (n, s) and (n, t) both reachable.
inline PairRelation c_pairs_finite(const CanonicalMorphism& c, const MonoidMorphism& alpha) {
    const int m = alpha.target.n;
    std::vector<std::vector<int>> by_class(c.eta.target.n);
    for (int p : reachable_pairs(c.eta, alpha)) by_class[p / m].push_back(p % m);
    PairRelation rel(m);
    for (const auto& cls : by_class)
        for (int s : cls)
            for (int t : cls) rel.add(s, t);
    return rel;
}

/// The C-morphism [.]_C o alpha.
inline MonoidMorphism quotient_c_morphism(const MonoidMorphism& alpha, const Congruence& c) { return compose_quotient(alpha, c); }

struct EquivConfig {
    int enumeration_cap = 16;       ///< largest monoid on which subsets are enumerated
    bool full_enumeration = false;  ///< test every subset instead of searching atoms
    int monoid_cap = kDefaultMonoidCap;
};

/**
 * Answers "is alpha^{-1}(G) in E?" for subsets G of a fixed target, with memoization.
 * Inner canonical equivalences of composite classes are computed on syntactic quotients,
 * whose subsets pull back to subsets of the fixed target, so one memo serves the recursion.
 */
class ClassOracle {
public:
    ClassOracle(MonoidMorphism alpha, EquivConfig cfg = {}) : alpha_(std::move(alpha)), cfg_(cfg) {}

    const MonoidMorphism& morphism() const { return alpha_; }
    const EquivConfig& config() const { return cfg_; }

    /// Membership of alpha^{-1}(G).
    bool member(const ClassExpr& expr, const std::vector<char>& g) {
        ClassExpr e = expand_aliases(expr);
        std::string key = to_string(e) + '|' + std::string(g.begin(), g.end());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool v = compute_member(e, g);
        memo_[key] = v;
        return v;
    }

    /// ~E on the target of alpha itself.
    Congruence equiv(const ClassExpr& expr) {
        Sub sub;
        sub.beta = alpha_;
        sub.projection.resize(alpha_.target.n);
        for (int s = 0; s < alpha_.target.n; ++s) sub.projection[s] = s;
        return equiv(expand_aliases(expr), sub);
    }

    /// Equation report for an operator class on the syntactic quotient of G.
    EquationReport explain(const ClassExpr& expr, const std::vector<char>& g, Congruence* eq_out = nullptr,
                           FiniteMonoid* monoid_out = nullptr) {
        ClassExpr e = expand_aliases(expr);
        if (!e.is_polynomial_op()) throw std::invalid_argument("explain: not an operator class");
        Sub sub = syntactic_sub(g);
        Congruence eq = equiv(e.kids[0], sub);
        EquationReport rep = check_equation(sub.beta.target, op_of(e), eq);
        if (eq_out) *eq_out = eq;
        if (monoid_out) *monoid_out = sub.beta.target;
        return rep;
    }

    const CanonicalMorphism& canonical(const ClassExpr& base) {
        std::string key = to_string(base);
        auto it = canon_.find(key);
        if (it == canon_.end()) it = canon_.emplace(key, canonical_morphism(base, alpha_.alphabet, cfg_.monoid_cap)).first;
        return it->second;
    }

    static PolOp op_of(const ClassExpr& e) {
        using K = ClassExpr::Kind;
        switch (e.kind) {
        case K::LPOL: return PolOp::LPol;
        case K::RPOL: return PolOp::RPol;
        case K::MPOL: return PolOp::MPol;
        case K::UPOL: return PolOp::UPol;
        default: throw std::invalid_argument("not an operator class");
        }
    }

private:
    /// beta = pi o alpha with pi the projection from the fixed target.
    struct Sub {
        MonoidMorphism beta;
        std::vector<int> projection;
    };

    MonoidMorphism alpha_;
    EquivConfig cfg_;
    std::map<std::string, bool> memo_;
    std::map<std::string, Congruence> equiv_memo_;
    std::map<std::string, CanonicalMorphism> canon_;

    Sub syntactic_sub(const std::vector<char>& g) {
        Congruence c = syntactic_congruence_of_subset(alpha_.target, g);
        Sub sub;
        sub.beta = compose_quotient(alpha_, c);
        sub.projection = c.block;
        return sub;
    }

    bool compute_member(const ClassExpr& e, const std::vector<char>& g) {
        using K = ClassExpr::Kind;
        if (e.kind == K::INTER) return member(e.kids[0], g) && member(e.kids[1], g);
        Sub sub = syntactic_sub(g);
        if (e.is_base()) {
            RecognizedLanguage rl{sub.beta, std::vector<char>(sub.beta.target.n, 0)};
            for (int s = 0; s < alpha_.target.n; ++s)
                if (g[s]) rl.accept[sub.projection[s]] = 1;
            if (e.is_finite_base() && e.kind != K::ST) return recognized_through(canonical(e).eta, rl);
            return base_membership(e, rl);
        }
        Congruence eq = equiv(e.kids[0], sub);
        return check_equation(sub.beta.target, op_of(e), eq).holds;
    }

    Congruence equiv(const ClassExpr& e, const Sub& sub) {
        std::string key = to_string(e) + '|';
        for (int b : sub.projection) key += std::to_string(b) + ',';
        if (auto it = equiv_memo_.find(key); it != equiv_memo_.end()) return it->second;
        Congruence c = compute_equiv(e, sub);
        equiv_memo_.emplace(std::move(key), c);
        return c;
    }

    Congruence compute_equiv(const ClassExpr& e, const Sub& sub) {
        const FiniteMonoid& q = sub.beta.target;
        if (e.is_finite_base()) return equivalence_closure(c_pairs_finite(canonical(e), sub.beta));
        if (q.n > cfg_.enumeration_cap)
            throw SizeCapExceeded("canonical equivalence for " + to_string(e) + " needs subset enumeration on " +
                                  std::to_string(q.n) + " elements (cap " + std::to_string(cfg_.enumeration_cap) + ")");
        auto in_class = [&](const std::vector<char>& h) {
            std::vector<char> g(alpha_.target.n, 0);
            for (int s = 0; s < alpha_.target.n; ++s) g[s] = h[sub.projection[s]];
            return member(e, g);
        };
        Congruence result = cfg_.full_enumeration ? atoms_by_enumeration(q.n, in_class) : atoms_by_search(e, sub, in_class);
        if (!is_congruence(q, result)) throw std::logic_error("canonical equivalence is not a congruence");
        return result;
    }

    template <class InClass>
    static Congruence atoms_by_enumeration(int n, InClass&& in_class) {
        // s ~ t iff no member subset separates them
        std::vector<std::vector<std::uint64_t>> sigs(n);
        std::vector<char> h(n);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            for (int i = 0; i < n; ++i) h[i] = (mask >> i) & 1u;
            if (!in_class(h)) continue;
            for (int i = 0; i < n; ++i) sigs[i].push_back(h[i]);
        }
        std::map<std::vector<std::uint64_t>, int> ids;
        std::vector<int> label(n);
        for (int i = 0; i < n; ++i) label[i] = ids.emplace(sigs[i], static_cast<int>(ids.size())).first->second;
        return normalize_partition(label);
    }

    /// The atom of x is the smallest member subset containing x; it lies inside x's atom for any
    /// smaller class: the operand of an operator class, or the finite lower base otherwise.
    template <class InClass>
    Congruence atoms_by_search(const ClassExpr& e, const Sub& sub, InClass&& in_class) {
        const int n = sub.beta.target.n;
        Congruence lower = e.is_polynomial_op() ? equiv(e.kids[0], sub)
                                                : equivalence_closure(c_pairs_finite(canonical(lower_finite_base(e)), sub.beta));
        std::vector<int> label(n, -1);
        int next = 0;
        for (int x = 0; x < n; ++x) {
            if (label[x] >= 0) continue;
            std::vector<int> others;
            for (int y = 0; y < n; ++y)
                if (y != x && label[y] < 0 && lower.related(x, y)) others.push_back(y);
            std::vector<int> atom;
            const int c = static_cast<int>(others.size());
            for (int size = 0; size <= c && atom.empty(); ++size) {
                std::vector<int> pick(size);
                for (int i = 0; i < size; ++i) pick[i] = i;
                while (true) {
                    std::vector<char> h(n, 0);
                    h[x] = 1;
                    for (int i : pick) h[others[i]] = 1;
                    if (in_class(h)) {
                        atom.push_back(x);
                        for (int i : pick) atom.push_back(others[i]);
                        break;
                    }
                    int i = size - 1;
                    while (i >= 0 && pick[i] == c - size + i) --i;
                    if (i < 0) break;
                    ++pick[i];
                    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
                }
            }
            if (atom.empty()) throw std::logic_error("atom search found no member subset");
            for (int y : atom) label[y] = next;
            ++next;
        }
        return normalize_partition(label);
    }
};

/// ~C,alpha for a class expression.
inline Congruence canonical_equiv(const ClassExpr& c, const MonoidMorphism& alpha, EquivConfig cfg = {}) {
    ClassOracle oracle(alpha, cfg);
    return oracle.equiv(c);
}

}  // namespace detpol
