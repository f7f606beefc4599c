#pragma once
/**
 * @brief Saturation fixpoints computing pointed optimal imprints for towers of
 * LPOL, RPOL and MPOL over a finite base, covering and separation decisions,
 * and separator extraction.
 */

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "equations.hpp"
#include "rating.hpp"
#include "word_structure.hpp"

namespace detpol {

struct UnsupportedClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A class expression as operators stacked on a finite base.
struct TowerPlan {
    ClassExpr base;            ///< finite base actually used
    std::vector<PolOp> ops;    ///< innermost first
    bool approximate = false;  ///< PT replaced by PTK(k), which is contained in it
    ClassExpr computed;        ///< the class whose imprints are computed
};

/**
 * PT directly under LPOL or RPOL is replaced by AT (the two bases give the same
 * deterministic hierarchies); any other PT is approximated from below by PTK(ptk).
 */
inline TowerPlan plan_tower(const ClassExpr& expr, int ptk) {
    using K = ClassExpr::Kind;
    ClassExpr e = expand_aliases(expr);
    TowerPlan plan;
    std::vector<PolOp> top_down;
    const ClassExpr* cur = &e;
    while (!cur->is_base()) {
        switch (cur->kind) {
        case K::LPOL: top_down.push_back(PolOp::LPol); break;
        case K::RPOL: top_down.push_back(PolOp::RPol); break;
        case K::MPOL: top_down.push_back(PolOp::MPol); break;
        default: throw UnsupportedClass("covering: " + to_string(expr) + " is not a tower of LPOL/RPOL/MPOL over a base");
        }
        cur = &cur->kids[0];
    }
    plan.ops.assign(top_down.rbegin(), top_down.rend());
    plan.base = *cur;
    if (cur->kind == K::PT) {
        if (!plan.ops.empty() && plan.ops[0] != PolOp::MPol) {
            plan.base = ClassExpr::base(K::AT);
        } else {
            if (ptk < 1) throw UnsupportedClass("covering: PT base needs a PTK level");
            plan.base = ClassExpr::base(K::PTK, ptk);
            plan.approximate = true;
        }
    }
    ClassExpr c = plan.base;
    for (PolOp op : plan.ops) {
        K k = op == PolOp::LPol ? K::LPOL : op == PolOp::RPol ? K::RPOL : K::MPOL;
        c = ClassExpr::unary(k, std::move(c));
    }
    plan.computed = c;
    return plan;
}

/// eta_C with its Green data and the rating map; shared by every level of a tower.
template <IdempotentSemiring S>
struct ImprintContext {
    MonoidMorphism eta;
    GreenData green;
    RatingMap<S> rho;
    std::vector<std::pair<int, typename S::Elem>> trivial;

    ImprintContext(MonoidMorphism e, RatingMap<S> r)
        : eta(std::move(e)), green(detpol::green(eta.target)), rho(std::move(r)), trivial(trivial_pairs(eta, rho)) {}

    const FiniteMonoid& n() const { return eta.target; }
    const S& sr() const { return rho.sr; }
};

enum class SatRule { None, Left, Right };

/// Worklist closure under downset and multiplication, optionally with rule (9.1) or (9.2).
template <IdempotentSemiring S>
class Saturator {
public:
    using Elem = typename S::Elem;

    Saturator(const ImprintContext<S>& ctx) : ctx_(ctx), set_(ctx.n().n) {}

    void add(int s, const Elem& r, Origin o) {
        if (set_.insert(ctx_.sr(), s, r, o)) work_.emplace_back(s, r);
    }

    void add_trivial() {
        for (const auto& [s, r] : ctx_.trivial) add(s, r, Origin::Trivial);
    }

    PointedImprint<S> run(SatRule rule = SatRule::None, const PointedImprint<S>* p = nullptr) {
        const FiniteMonoid& n = ctx_.n();
        const S& sr = ctx_.sr();
        while (!work_.empty()) {
            auto [s, r] = std::move(work_.front());
            work_.pop_front();
            if (!is_maximal(s, r)) continue;
            for (int t = 0; t < n.n; ++t) {
                std::vector<Elem> qs = set_.maxima[t];
                for (const Elem& q : qs) {
                    add(n.mul(s, t), sr.mul(r, q), Origin::Product);
                    add(n.mul(t, s), sr.mul(q, r), Origin::Product);
                }
            }
            if (rule != SatRule::None && n.idempotent(s)) {
                const Elem f = omega_power(sr, r);
                for (int x = 0; x < n.n; ++x) {
                    bool ok = rule == SatRule::Left ? ctx_.green.leq_r(s, x) : ctx_.green.leq_l(s, x);
                    if (!ok) continue;
                    for (const Elem& pr : p->maxima[x]) {
                        if (rule == SatRule::Left) add(n.mul(s, x), sr.mul(f, pr), Origin::Rule91);
                        else add(n.mul(x, s), sr.mul(pr, f), Origin::Rule92);
                    }
                }
            }
        }
        return set_;
    }

private:
    const ImprintContext<S>& ctx_;
    PointedImprint<S> set_;
    std::deque<std::pair<int, Elem>> work_;

    bool is_maximal(int s, const Elem& r) const {
        for (const Elem& m : set_.maxima[s])
            if (m == r) return true;
        return false;
    }
};

/// Least (LPol, P)- or (RPol, P)-saturated set.
template <IdempotentSemiring S>
PointedImprint<S> saturate_lrpol(Side mode, const PointedImprint<S>& p, const ImprintContext<S>& ctx) {
    Saturator<S> sat(ctx);
    sat.add_trivial();
    return sat.run(mode == Side::Left ? SatRule::Left : SatRule::Right, &p);
}

/// A block (s, r) = (s1 e1 s3 e2 s2, r1 f1 r3 f2 r2) with its factors.
template <IdempotentSemiring S>
struct Block {
    using Elem = typename S::Elem;
    int s = 0;
    Elem r;
    int s1 = 0, e1 = 0, s3 = 0, e2 = 0, s2 = 0;
    Elem r1, f1, r3, f2, r2;
};

template <IdempotentSemiring S>
struct BlockSet {
    std::vector<Block<S>> blocks;  ///< maximal blocks for each s

    /// Blocks as a downset-closed pair set.
    PointedImprint<S> as_set(const S& sr, int n) const {
        PointedImprint<S> p(n);
        for (const auto& b : blocks) p.insert(sr, b.s, b.r, Origin::Chain);
        return p;
    }
};

template <IdempotentSemiring S>
BlockSet<S> compute_blocks(const PointedImprint<S>& p1, const PointedImprint<S>& p, const PointedImprint<S>& p2,
                           const ImprintContext<S>& ctx) {
    using Elem = typename S::Elem;
    const FiniteMonoid& n = ctx.n();
    const S& sr = ctx.sr();
    const GreenData& g = ctx.green;
    struct Half {
        int x, j;
        Elem r;
        int a, e;  // factor and idempotent
        Elem ra, fe;
    };
    // left halves (s1 e1, r1 f1) and right halves (e2 s2, f2 r2), kept maximal per (x, J-class of e)
    auto halves = [&](const PointedImprint<S>& q, bool left) {
        std::map<std::pair<int, int>, std::vector<Half>> by_key;
        for (int e = 0; e < n.n; ++e) {
            if (!n.idempotent(e)) continue;
            for (const Elem& ge : q.maxima[e]) {
                Elem f = omega_power(sr, ge);
                for (int a = 0; a < n.n; ++a)
                    for (const Elem& ra : q.maxima[a]) {
                        Half h{left ? n.mul(a, e) : n.mul(e, a), g.j_class[e], left ? sr.mul(ra, f) : sr.mul(f, ra), a, e, ra, f};
                        auto& v = by_key[{h.x, h.j}];
                        bool dominated = false;
                        for (const Half& o : v)
                            if (sr.leq(h.r, o.r)) {
                                dominated = true;
                                break;
                            }
                        if (dominated) continue;
                        std::erase_if(v, [&](const Half& o) { return sr.leq(o.r, h.r); });
                        v.push_back(std::move(h));
                    }
            }
        }
        return by_key;
    };
    auto left = halves(p1, true);
    auto right = halves(p2, false);
    std::vector<std::vector<Block<S>>> by_s(n.n);
    for (const auto& [lk, lv] : left)
        for (const auto& [rk, rv] : right) {
            if (lk.second != rk.second) continue;
            const int j = lk.second;
            for (int s3 = 0; s3 < n.n; ++s3) {
                int s = n.mul(n.mul(lk.first, s3), rk.first);
                if (g.j_class[s] != j) continue;
                for (const Half& l : lv)
                    for (const Elem& r3 : p.maxima[s3])
                        for (const Half& r : rv) {
                            Elem val = sr.mul(sr.mul(l.r, r3), r.r);
                            auto& v = by_s[s];
                            bool dominated = false;
                            for (const auto& b : v)
                                if (sr.leq(val, b.r)) {
                                    dominated = true;
                                    break;
                                }
                            if (dominated) continue;
                            std::erase_if(v, [&](const Block<S>& b) { return sr.leq(b.r, val); });
                            v.push_back(Block<S>{s, val, l.a, l.e, s3, r.e, r.a, l.ra, l.fe, r3, r.fe, r.ra});
                        }
            }
        }
    BlockSet<S> out;
    for (auto& v : by_s)
        for (auto& b : v) out.blocks.push_back(std::move(b));
    return out;
}

/**
 * Products s0 s'1 s1 ... s'n sn of blocks si and elements s'i of P with
 * s(i-1) s'i J s(i-1) and s'i si J si, as a fixpoint over (accumulated pair, last block).
 */
template <IdempotentSemiring S>
PointedImprint<S> chain_closure(const BlockSet<S>& blocks, const PointedImprint<S>& p, const ImprintContext<S>& ctx) {
    using Elem = typename S::Elem;
    const FiniteMonoid& n = ctx.n();
    const S& sr = ctx.sr();
    const GreenData& g = ctx.green;
    std::map<std::pair<int, int>, std::vector<Elem>> states;
    std::deque<std::tuple<int, int, Elem>> work;
    PointedImprint<S> out(n.n);
    auto push = [&](int acc, int last, const Elem& r) {
        auto& v = states[{acc, last}];
        for (const Elem& o : v)
            if (sr.leq(r, o)) return;
        std::erase_if(v, [&](const Elem& o) { return sr.leq(o, r); });
        v.push_back(r);
        work.emplace_back(acc, last, r);
        out.insert(sr, acc, r, Origin::Chain);
    };
    for (const auto& b : blocks.blocks) push(b.s, b.s, b.r);
    while (!work.empty()) {
        auto [acc, last, r] = std::move(work.front());
        work.pop_front();
        for (int x = 0; x < n.n; ++x) {
            if (!g.j_equiv(n.mul(last, x), last)) continue;
            for (const Elem& rx : p.maxima[x])
                for (const auto& b : blocks.blocks) {
                    if (!g.j_equiv(n.mul(x, b.s), b.s)) continue;
                    push(n.mul(n.mul(acc, x), b.s), b.s, sr.mul(sr.mul(r, rx), b.r));
                }
        }
    }
    return out;
}

/// Least (MPol, P1, P, P2)-saturated set.
template <IdempotentSemiring S>
PointedImprint<S> saturate_mpol(const PointedImprint<S>& p1, const PointedImprint<S>& p, const PointedImprint<S>& p2,
                                const ImprintContext<S>& ctx) {
    BlockSet<S> blocks = compute_blocks(p1, p, p2, ctx);
    PointedImprint<S> chains = chain_closure(blocks, p, ctx);
    Saturator<S> sat(ctx);
    sat.add_trivial();
    for (int s = 0; s < chains.n(); ++s)
        for (const auto& r : chains.maxima[s]) sat.add(s, r, Origin::Chain);
    return sat.run();
}

/// Pointed imprints of every level of a tower, base first.
template <IdempotentSemiring S>
std::vector<PointedImprint<S>> imprint_levels(const TowerPlan& plan, const ImprintContext<S>& ctx) {
    std::vector<PointedImprint<S>> levels{base_imprint_finite(ctx.eta, ctx.rho)};
    for (PolOp op : plan.ops) {
        const PointedImprint<S>& p = levels.back();
        switch (op) {
        case PolOp::LPol: levels.push_back(saturate_lrpol(Side::Left, p, ctx)); break;
        case PolOp::RPol: levels.push_back(saturate_lrpol(Side::Right, p, ctx)); break;
        case PolOp::MPol: {
            PointedImprint<S> p1 = saturate_lrpol(Side::Left, p, ctx);
            PointedImprint<S> p2 = saturate_lrpol(Side::Right, p, ctx);
            levels.push_back(saturate_mpol(p1, p, p2, ctx));
            break;
        }
        default: throw UnsupportedClass("covering: UPOL layers are not supported");
        }
    }
    return levels;
}

template <IdempotentSemiring S>
PointedImprint<S> imprint_for_class(const TowerPlan& plan, const ImprintContext<S>& ctx) {
    return imprint_levels(plan, ctx).back();
}

struct CoverConfig {
    int ptk = 3;  ///< PTK level substituted for PT bases
    int monoid_cap = kDefaultMonoidCap;
};

enum class CoverVerdict { Coverable, NotCoverable, Unknown };

inline const char* to_string(CoverVerdict v) {
    switch (v) {
    case CoverVerdict::Coverable: return "coverable";
    case CoverVerdict::NotCoverable: return "not_coverable";
    case CoverVerdict::Unknown: return "unknown";
    }
    return "?";
}

struct CoverReport {
    CoverVerdict verdict = CoverVerdict::Unknown;
    bool exact = true;  ///< false when a PT base was approximated
    TowerPlan plan;
    std::size_t imprint_entries = 0;
    std::size_t projection_size = 0;
    std::string violating;  ///< an element of the imprint inside the goal set
};

/// Covering of (L0, {L1, ..., Ln}) through the imprint of the rating map of covering_input.
inline CoverReport decide_covering(const ClassExpr& e, const Dfa& l0, const std::vector<Dfa>& ls, CoverConfig cfg = {}) {
    CoverReport rep;
    rep.plan = plan_tower(e, cfg.ptk);
    rep.exact = !rep.plan.approximate;
    CoveringInput in = covering_input(l0, ls, cfg.monoid_cap);
    ImprintContext<PowersetSemiring> ctx(canonical_morphism(rep.plan.base, l0.alphabet, cfg.monoid_cap).eta, in.rho);
    PointedImprint<PowersetSemiring> p = imprint_for_class(rep.plan, ctx);
    std::vector<Bits> j = projection(in.sr, p);
    rep.imprint_entries = p.entries();
    rep.projection_size = j.size();
    for (const Bits& r : j)
        if (in.in_goal(r)) {
            rep.violating = in.sr.format(r);
            rep.verdict = rep.exact ? CoverVerdict::NotCoverable : CoverVerdict::Unknown;
            return rep;
        }
    rep.verdict = CoverVerdict::Coverable;
    return rep;
}

/// Separation of L1 from L2 as covering of (L1, {L2}).
inline CoverReport decide_separation(const ClassExpr& e, const Dfa& l1, const Dfa& l2, CoverConfig cfg = {}) {
    return decide_covering(e, l1, {l2}, cfg);
}

/// A product language with its rating.
template <IdempotentSemiring S>
struct RatedProduct {
    MarkedProduct product;
    typename S::Elem rating;
};

struct ExtractConfig {
    std::size_t max_products = 4000;
};

/**
 * Builds tight LPol(C)- or RPol(C)-covers of eta^-1(s) whose members K satisfy
 * (t s, q rho(K)) in S (left) or (s t, rho(K) q) in S (right), by induction on the
 * J-rank of s and on the R-index (L-index) of (t, q) in the monoid S.
 */
template <IdempotentSemiring S>
class LrpolCoverExtractor {
public:
    using Elem = typename S::Elem;

    LrpolCoverExtractor(Side side, const ImprintContext<S>& ctx, const PointedImprint<S>& sat, ExtractConfig cfg = {})
        : side_(side), ctx_(ctx), sat_(sat), cfg_(cfg), atom_rating_(ctx.n().n, ctx.sr().zero()) {
        for (const auto& [s, r] : ctx.trivial) atom_rating_[s] = ctx.sr().add(atom_rating_[s], r);
        for (int s = 0; s < ctx.n().n; ++s) {
            std::vector<char> f(ctx.n().n, 0);
            f[s] = 1;
            atoms_.push_back(image_language(ctx.eta, f));
        }
    }

    std::vector<RatedProduct<S>> cover(int s) { return extract(s, ctx_.n().unit, ctx_.sr().one()); }

private:
    Side side_;
    const ImprintContext<S>& ctx_;
    const PointedImprint<S>& sat_;
    ExtractConfig cfg_;
    std::vector<Elem> atom_rating_;
    std::vector<Dfa> atoms_;
    std::map<std::tuple<int, int, std::string>, std::vector<RatedProduct<S>>> memo_;
    std::size_t produced_ = 0;

    static std::string key_of(const Elem& e) {
        if constexpr (std::is_same_v<Elem, Bits>) {
            std::string k;
            for (auto w : e.w) k += std::to_string(w) + ',';
            return k;
        } else {
            return std::to_string(e);
        }
    }

    MarkedProduct concat_products(const MarkedProduct& u, char a, const MarkedProduct& v) const {
        MarkedProduct p = u;
        p.letters.push_back(a);
        p.letters += v.letters;
        p.parts.insert(p.parts.end(), v.parts.begin(), v.parts.end());
        return p;
    }

    std::vector<RatedProduct<S>> extract(int s, int t, const Elem& q) {
        auto key = std::make_tuple(s, t, key_of(q));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const FiniteMonoid& n = ctx_.n();
        const S& sr = ctx_.sr();
        const GreenData& g = ctx_.green;
        const bool left = side_ == Side::Left;
        std::vector<RatedProduct<S>> out;
        int ts = left ? n.mul(t, s) : n.mul(s, t);
        Elem qk = left ? sr.mul(q, atom_rating_[s]) : sr.mul(atom_rating_[s], q);
        if (sat_.contains(sr, ts, qk)) {
            out.push_back({MarkedProduct{{atoms_[s]}, ""}, atom_rating_[s]});
        } else {
            const Alphabet& a = ctx_.eta.alphabet;
            for (int s1 = 0; s1 < n.n; ++s1)
                for (std::size_t l = 0; l < a.size(); ++l)
                    for (int s2 = 0; s2 < n.n; ++s2) {
                        const int x = ctx_.eta.letter_image[l];
                        if (n.mul(n.mul(s1, x), s2) != s) continue;
                        const Elem& ra = ctx_.rho.letter[l];
                        if (left) {
                            int s1a = n.mul(s1, x);
                            if (!g.r_equiv(s, s1a) || !g.lt_r(s1a, s1)) continue;
                            for (const auto& u : extract(s1, n.unit, sr.one())) {
                                Elem qa = sr.mul(sr.mul(q, u.rating), ra);
                                for (const auto& v : extract(s2, n.mul(t, s1a), qa))
                                    emit(out, concat_products(u.product, a[l], v.product), sr.mul(sr.mul(u.rating, ra), v.rating));
                            }
                        } else {
                            int as2 = n.mul(x, s2);
                            if (!g.l_equiv(s, as2) || !g.lt_l(as2, s2)) continue;
                            for (const auto& v : extract(s2, n.unit, sr.one())) {
                                Elem aq = sr.mul(sr.mul(ra, v.rating), q);
                                for (const auto& u : extract(s1, n.mul(as2, t), aq))
                                    emit(out, concat_products(u.product, a[l], v.product), sr.mul(sr.mul(u.rating, ra), v.rating));
                            }
                        }
                    }
            if (out.empty()) throw std::logic_error("cover extraction: no decomposition for an unstabilized pair");
        }
        memo_[key] = out;
        return out;
    }

    void emit(std::vector<RatedProduct<S>>& out, MarkedProduct p, Elem r) {
        if (++produced_ > cfg_.max_products) throw SizeCapExceeded("cover extraction exceeds the product cap");
        out.push_back({std::move(p), std::move(r)});
    }
};

/// A separator as a union of marked products.
struct Separator {
    std::vector<MarkedProduct> products;
    int k = 0;  ///< class index used (MPol extraction)

    Dfa language(const Alphabet& a) const {
        Dfa u = empty_language(a);
        for (const auto& p : products) u = unite(u, p.language());
        return u;
    }
};

/**
 * LPOL(C)/RPOL(C) separator of L1 from L2 for a finite base C: the members of the
 * extracted covers of every eta_C-class whose rating misses L2.
 */
inline std::optional<Separator> extract_lrpol_separator(const ClassExpr& e, const Dfa& l1, const Dfa& l2,
                                                        CoverConfig cfg = {}, ExtractConfig xcfg = {}) {
    TowerPlan plan = plan_tower(e, cfg.ptk);
    if (plan.approximate || plan.ops.size() != 1 || plan.ops[0] == PolOp::MPol)
        throw UnsupportedClass("extraction: expected LPOL or RPOL over a finite base");
    CoveringInput in = covering_input(l1, {l2}, cfg.monoid_cap);
    ImprintContext<PowersetSemiring> ctx(canonical_morphism(plan.base, l1.alphabet, cfg.monoid_cap).eta, in.rho);
    auto levels = imprint_levels(plan, ctx);
    for (const Bits& r : projection(in.sr, levels.back()))
        if (in.in_goal(r)) return std::nullopt;
    Side side = plan.ops[0] == PolOp::LPol ? Side::Left : Side::Right;
    LrpolCoverExtractor<PowersetSemiring> ex(side, ctx, levels.back(), xcfg);
    Separator sep;
    for (int s = 0; s < ctx.n().n; ++s)
        for (auto& rp : ex.cover(s)) {
            bool meets_l2 = false;
            for (int m : in.sr.part(rp.rating, 1)) meets_l2 = meets_l2 || in.parts[1].accept[m];
            if (!meets_l2) sep.products.push_back(std::move(rp.product));
        }
    return sep;
}

/**
 * MPOL(C) separator from mixed equivalence classes of eta_C: for k = 0..k_max, collect
 * the classes of words of L1 until L1 is covered; fail at k if a class meets L2.
 */
inline std::optional<Separator> extract_mpol_separator(const ClassExpr& base, const Dfa& l1, const Dfa& l2, int k_max,
                                                       int monoid_cap = kDefaultMonoidCap, std::size_t max_classes = 2000) {
    if (!base.is_finite_base()) throw UnsupportedClass("extraction: expected a finite base");
    MonoidMorphism eta = canonical_morphism(base, l1.alphabet, monoid_cap).eta;
    GreenData g = green(eta.target);
    for (int k = 0; k <= k_max; ++k) {
        Separator sep;
        sep.k = k;
        Dfa covered = empty_language(l1.alphabet);
        bool failed = false;
        while (!failed) {
            auto w = shortest_word(difference(l1, covered));
            if (!w) break;
            MarkedProduct p = class_as_product(eta, k, Mode::Mixed, *w);
            Dfa cls = p.language();
            if (!disjoint(cls, l2) || sep.products.size() >= max_classes) {
                failed = true;
                break;
            }
            covered = unite(covered, cls);
            sep.products.push_back(std::move(p));
        }
        if (!failed) return sep;
    }
    return std::nullopt;
}

}  // namespace detpol
