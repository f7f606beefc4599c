#pragma once
/**
 * @brief Top-level membership decisions for class expressions.
 */

#include <optional>

#include "canonical_equiv.hpp"

namespace detpol {

struct MembershipResult {
    bool member = false;
    /// Equation report when the outermost operator is a polynomial closure.
    std::optional<EquationReport> report;
    FiniteMonoid syntactic_monoid;
};

/// Membership of the language of rl in the class.
inline bool decide_membership(const ClassExpr& c, const RecognizedLanguage& rl, EquivConfig cfg = {}) {
    ClassOracle oracle(rl.alpha, cfg);
    return oracle.member(c, rl.accept);
}

inline bool decide_membership(const ClassExpr& c, const Dfa& l, EquivConfig cfg = {}) {
    return decide_membership(c, syntactic_morphism(l, cfg.monoid_cap), cfg);
}

/// Membership with the violating equation instance, if any.
inline MembershipResult explain_membership(const ClassExpr& c, const Dfa& l, EquivConfig cfg = {}) {
    RecognizedLanguage rl = syntactic_morphism(l, cfg.monoid_cap);
    ClassOracle oracle(rl.alpha, cfg);
    MembershipResult res;
    res.syntactic_monoid = rl.alpha.target;
    res.member = oracle.member(c, rl.accept);
    ClassExpr e = expand_aliases(c);
    if (e.is_polynomial_op()) {
        res.report = oracle.explain(e, rl.accept);
        if (!witness_valid(rl.alpha.target, *res.report)) throw std::logic_error("equation witness failed to re-verify");
    }
    return res;
}

}  // namespace detpol
