#pragma once
/**
 * @brief Equations characterizing UPol, LPol, RPol and MPol over a class C,
 * quantified either over ~C or over C-pairs.
 */

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "monoid.hpp"

namespace detpol {

/// Relation on monoid elements (C-pairs for a morphism).
struct PairRelation {
    int n = 0;
    std::vector<char> rel;

    explicit PairRelation(int size = 0) : n(size), rel(static_cast<std::size_t>(size) * size, 0) {}
    bool has(int s, int t) const { return rel[static_cast<std::size_t>(s) * n + t]; }
    void add(int s, int t) { rel[static_cast<std::size_t>(s) * n + t] = 1; }
    int count() const {
        int c = 0;
        for (char x : rel) c += x;
        return c;
    }
    bool operator==(const PairRelation&) const = default;
};

inline PairRelation relation_of(const Congruence& c) {
    PairRelation r(c.size());
    for (int s = 0; s < c.size(); ++s)
        for (int t = 0; t < c.size(); ++t)
            if (c.related(s, t)) r.add(s, t);
    return r;
}

/// Equivalence generated by a relation (reflexive, symmetric, transitive closure).
inline Congruence equivalence_closure(const PairRelation& r) {
    std::vector<int> parent(r.n);
    for (int i = 0; i < r.n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int s = 0; s < r.n; ++s)
        for (int t = 0; t < r.n; ++t)
            if (r.has(s, t)) parent[find(s)] = find(t);
    std::vector<int> label(r.n);
    for (int i = 0; i < r.n; ++i) label[i] = find(i);
    return normalize_partition(label);
}

enum class PolOp { UPol, LPol, RPol, MPol };

inline const char* to_string(PolOp op) {
    switch (op) {
    case PolOp::UPol: return "UPOL";
    case PolOp::LPol: return "LPOL";
    case PolOp::RPol: return "RPOL";
    case PolOp::MPol: return "MPOL";
    }
    return "?";
}

/// Verdict with a violating instance when the equation fails.
struct EquationReport {
    bool holds = true;
    PolOp op = PolOp::UPol;
    int s = -1, t = -1, q = -1, r = -1;  ///< violating elements (q, r only for MPol)
    int lhs = -1, rhs = -1;              ///< the two differing sides
    std::string equation;

    std::string describe(const FiniteMonoid& m) const {
        if (holds) return "holds";
        std::ostringstream out;
        out << equation << " fails for s=" << m.name(s) << ", t=" << m.name(t);
        if (q >= 0) out << ", q=" << m.name(q) << ", r=" << m.name(r);
        out << ": " << m.name(lhs) << " != " << m.name(rhs);
        return out.str();
    }
};

namespace detail {

inline EquationReport check_equation(const FiniteMonoid& m, PolOp op, const std::function<bool(int, int)>& related) {
    EquationReport rep;
    rep.op = op;
    static const char* const names[] = {"s^(w+1) = s^w t s^w", "s^(w+1) = s^w t", "s^(w+1) = t s^w",
                                        "(sq)^w s (rs)^w = (sq)^w t (rs)^w"};
    rep.equation = names[static_cast<int>(op)];
    std::vector<int> om(m.n);
    for (int x = 0; x < m.n; ++x) om[x] = omega_power(m, x);
    for (int s = 0; s < m.n; ++s)
        for (int t = 0; t < m.n; ++t) {
            if (!related(s, t)) continue;
            const int sw = om[s];
            const int sw1 = m.mul(sw, s);
            int lhs = sw1, rhs = -1;
            switch (op) {
            case PolOp::UPol: rhs = m.mul(m.mul(sw, t), sw); break;
            case PolOp::LPol: rhs = m.mul(sw, t); break;
            case PolOp::RPol: rhs = m.mul(t, sw); break;
            case PolOp::MPol:
                for (int q = 0; q < m.n; ++q)
                    for (int r = 0; r < m.n; ++r) {
                        int left = om[m.mul(s, q)], right = om[m.mul(r, s)];
                        int a = m.mul(m.mul(left, s), right), b = m.mul(m.mul(left, t), right);
                        if (a != b) {
                            rep.holds = false;
                            rep.s = s, rep.t = t, rep.q = q, rep.r = r, rep.lhs = a, rep.rhs = b;
                            return rep;
                        }
                    }
                continue;
            }
            if (lhs != rhs) {
                rep.holds = false;
                rep.s = s, rep.t = t, rep.lhs = lhs, rep.rhs = rhs;
                return rep;
            }
        }
    return rep;
}

}  // namespace detail

/// Equation check quantified over s ~ t for a congruence.
inline EquationReport check_equation(const FiniteMonoid& m, PolOp op, const Congruence& eq) {
    return detail::check_equation(m, op, [&eq](int s, int t) { return eq.related(s, t); });
}

/// Equation check quantified over the pairs of a relation.
inline EquationReport check_equation(const FiniteMonoid& m, PolOp op, const PairRelation& pairs) {
    return detail::check_equation(m, op, [&pairs](int s, int t) { return pairs.has(s, t); });
}

inline EquationReport check_upol(const FiniteMonoid& m, const Congruence& eq) { return check_equation(m, PolOp::UPol, eq); }
inline EquationReport check_lpol(const FiniteMonoid& m, const Congruence& eq) { return check_equation(m, PolOp::LPol, eq); }
inline EquationReport check_rpol(const FiniteMonoid& m, const Congruence& eq) { return check_equation(m, PolOp::RPol, eq); }
inline EquationReport check_mpol(const FiniteMonoid& m, const Congruence& eq) { return check_equation(m, PolOp::MPol, eq); }

/// Recomputes a failure witness against the table.
inline bool witness_valid(const FiniteMonoid& m, const EquationReport& rep) {
    if (rep.holds) return true;
    int sw = omega_power(m, rep.s);
    int lhs = m.mul(sw, rep.s), rhs = -1;
    switch (rep.op) {
    case PolOp::UPol: rhs = m.mul(m.mul(sw, rep.t), sw); break;
    case PolOp::LPol: rhs = m.mul(sw, rep.t); break;
    case PolOp::RPol: rhs = m.mul(rep.t, sw); break;
    case PolOp::MPol: {
        int left = omega_power(m, m.mul(rep.s, rep.q)), right = omega_power(m, m.mul(rep.r, rep.s));
        lhs = m.mul(m.mul(left, rep.s), right);
        rhs = m.mul(m.mul(left, rep.t), right);
        break;
    }
    }
    return lhs == rep.lhs && rhs == rep.rhs && lhs != rhs;
}

}  // namespace detpol
