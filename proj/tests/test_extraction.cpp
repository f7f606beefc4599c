#include "catch_amalgamated.hpp"
#include "detpol/covering.hpp"
#include "oracles.hpp"

using namespace detpol;
using K = ClassExpr::Kind;
using Ctx = ImprintContext<PowersetSemiring>;

namespace {

Dfa lang(const std::string& re) { return compile(re, "ab"); }

void check_separator(const Separator& sep, const Dfa& l1, const Dfa& l2, Mode mode) {
    Dfa u = sep.language("ab");
    CHECK(is_subset(l1, u));
    CHECK(disjoint(u, l2));
    for (const auto& p : sep.products) {
        ProductFlags f = classify_product(p);
        INFO(to_string(p));
        if (mode == Mode::Left) CHECK(f.left_det);
        if (mode == Mode::Right) CHECK(f.right_det);
        CHECK(f.mixed_det);
    }
}

}  // namespace

TEST_CASE("tight covers of content classes") {
    Dfa l1 = lang("a(a|b)*"), l2 = lang("b(a|b)*");
    CoveringInput in = covering_input(l1, {l2});
    Ctx ctx(canonical_morphism(ClassExpr::base(K::AT), "ab").eta, in.rho);
    auto base = base_imprint_finite(ctx.eta, ctx.rho);
    for (Side side : {Side::Left, Side::Right}) {
        auto sat = saturate_lrpol(side, base, ctx);
        LrpolCoverExtractor<PowersetSemiring> ex(side, ctx, sat);
        for (int s = 0; s < ctx.n().n; ++s) {
            auto cover = ex.cover(s);
            REQUIRE_FALSE(cover.empty());
            std::vector<char> f(ctx.n().n, 0);
            f[s] = 1;
            Dfa cls = image_language(ctx.eta, f);
            Dfa u = empty_language("ab");
            for (const auto& rp : cover) {
                ProductFlags fl = classify_product(rp.product);
                CHECK((side == Side::Left ? fl.left_det : fl.right_det));
                CHECK(sat.contains(ctx.sr(), s, rp.rating));
                CHECK(is_subset(rp.product.language(), cls));
                CHECK(rp.rating == eval_nice(ctx.rho, rp.product.language()));
                u = unite(u, rp.product.language());
            }
            for (const Word& w : words_up_to("ab", 8))
                if (cls.accepts(w)) CHECK(u.accepts(w));
        }
        auto eps = ex.cover(ctx.n().unit);
        REQUIRE(eps.size() == 1);
        CHECK(same_language(eps[0].product.language(), lang("%")));
    }
}

TEST_CASE("LPOL and RPOL separators") {
    auto l = extract_lrpol_separator(parse_class("LPOL(AT)"), lang("a(a|b)*"), lang("b(a|b)*"));
    REQUIRE(l.has_value());
    check_separator(*l, lang("a(a|b)*"), lang("b(a|b)*"), Mode::Left);

    auto r = extract_lrpol_separator(parse_class("RPOL(AT)"), lang("(a|b)*a"), lang("(a|b)*b"));
    REQUIRE(r.has_value());
    check_separator(*r, lang("(a|b)*a"), lang("(a|b)*b"), Mode::Right);

    auto ptk = extract_lrpol_separator(parse_class("LPOL(PTK(2))"), lang("a(a|b)*b"), lang("b(a|b)*a"));
    REQUIRE(ptk.has_value());
    check_separator(*ptk, lang("a(a|b)*b"), lang("b(a|b)*a"), Mode::Left);

    CHECK_FALSE(extract_lrpol_separator(parse_class("RPOL(AT)"), lang("a(a|b)*"), lang("b(a|b)*")).has_value());
    CHECK_THROWS_AS(extract_lrpol_separator(parse_class("MPOL(AT)"), lang("a"), lang("b")), UnsupportedClass);
}

TEST_CASE("MPOL separators from mixed classes") {
    auto trivial = extract_mpol_separator(ClassExpr::base(K::AT), lang("(ab)*"), lang("@"), 3);
    REQUIRE(trivial.has_value());
    CHECK(trivial->k == 0);

    auto ab = extract_mpol_separator(ClassExpr::base(K::AT), lang("a(a|b)*"), lang("b(a|b)*"), 3);
    REQUIRE(ab.has_value());
    CHECK(ab->k == 1);
    check_separator(*ab, lang("a(a|b)*"), lang("b(a|b)*"), Mode::Mixed);

    // regression values
    auto f = extract_mpol_separator(ClassExpr::base(K::AT), lang("(a|b)*ab(a|b)*"), lang("b*a*"), 3);
    REQUIRE(f.has_value());
    CHECK(f->k == 1);
    CHECK(f->products.size() == 81);
    check_separator(*f, lang("(a|b)*ab(a|b)*"), lang("b*a*"), Mode::Mixed);

    auto both = extract_mpol_separator(ClassExpr::base(K::AT), lang("a(a|b)*a|b"), lang("a(a|b)*b|b(a|b)+"), 3);
    REQUIRE(both.has_value());
    check_separator(*both, lang("a(a|b)*a|b"), lang("a(a|b)*b|b(a|b)+"), Mode::Mixed);

    CHECK_FALSE(extract_mpol_separator(ClassExpr::base(K::AT), lang("(a|b)*"), lang("a"), 2).has_value());
    CHECK_THROWS_AS(extract_mpol_separator(ClassExpr::base(K::PT), lang("a"), lang("b"), 1), UnsupportedClass);
}

TEST_CASE("extraction respects the product cap") {
    Dfa l1 = lang("a(a|b)*b"), l2 = lang("b(a|b)*a");
    ExtractConfig tiny;
    tiny.max_products = 1;
    CHECK_THROWS_AS(extract_lrpol_separator(parse_class("LPOL(PTK(2))"), l1, l2, CoverConfig{}, tiny), SizeCapExceeded);
}
