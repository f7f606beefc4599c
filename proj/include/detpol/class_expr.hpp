#pragma once
/**
 * @brief Class expressions: bases ST, AT, PT, PTK(k) under LPOL, RPOL, MPOL,
 * UPOL and INTER, with the aliases LP(n,E), RP(n,E) and BSIGMA2(n).
 */

#include <algorithm>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace detpol {

struct ClassExpr {
    enum class Kind { ST, AT, PT, PTK, LPOL, RPOL, MPOL, UPOL, INTER, LP, RP, BSIGMA2 };
    Kind kind = Kind::ST;
    int param = 0;  ///< k for PTK, n for LP/RP/BSIGMA2
    std::vector<ClassExpr> kids;

    bool operator==(const ClassExpr&) const = default;

    static ClassExpr base(Kind k, int p = 0) { return {k, p, {}}; }
    static ClassExpr unary(Kind k, ClassExpr e) { return {k, 0, {std::move(e)}}; }
    static ClassExpr inter(ClassExpr a, ClassExpr b) { return {Kind::INTER, 0, {std::move(a), std::move(b)}}; }

    bool is_base() const { return kind == Kind::ST || kind == Kind::AT || kind == Kind::PT || kind == Kind::PTK; }
    /// Bases with a canonical morphism (finite prevarieties).
    bool is_finite_base() const { return kind == Kind::ST || kind == Kind::AT || kind == Kind::PTK; }
    bool is_polynomial_op() const {
        return kind == Kind::LPOL || kind == Kind::RPOL || kind == Kind::MPOL || kind == Kind::UPOL;
    }
};

struct ClassExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const ClassExpr& e) {
    using K = ClassExpr::Kind;
    switch (e.kind) {
    case K::ST: return "ST";
    case K::AT: return "AT";
    case K::PT: return "PT";
    case K::PTK: return "PTK(" + std::to_string(e.param) + ")";
    case K::LPOL: return "LPOL(" + to_string(e.kids[0]) + ")";
    case K::RPOL: return "RPOL(" + to_string(e.kids[0]) + ")";
    case K::MPOL: return "MPOL(" + to_string(e.kids[0]) + ")";
    case K::UPOL: return "UPOL(" + to_string(e.kids[0]) + ")";
    case K::INTER: return "INTER(" + to_string(e.kids[0]) + "," + to_string(e.kids[1]) + ")";
    case K::LP: return "LP(" + std::to_string(e.param) + "," + to_string(e.kids[0]) + ")";
    case K::RP: return "RP(" + std::to_string(e.param) + "," + to_string(e.kids[0]) + ")";
    case K::BSIGMA2: return "BSIGMA2(" + std::to_string(e.param) + ")";
    }
    return "?";
}

namespace detail {

class ClassParser {
public:
    explicit ClassParser(const std::string& s) : s_(s) {}

    ClassExpr parse() {
        ClassExpr e = expr();
        ws();
        if (p_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ClassExprError("class expression: " + msg + " at offset " + std::to_string(p_));
    }
    void ws() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    void expect(char c) {
        ws();
        if (p_ >= s_.size() || s_[p_] != c) fail(std::string("expected '") + c + "'");
        ++p_;
    }
    int number() {
        ws();
        std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (start == p_) fail("expected number");
        return std::stoi(s_.substr(start, p_ - start));
    }
    std::string ident() {
        ws();
        std::size_t start = p_;
        while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
        std::string id = s_.substr(start, p_ - start);
        for (auto& c : id) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return id;
    }
    ClassExpr expr() {
        using K = ClassExpr::Kind;
        std::string id = ident();
        if (id == "ST") return ClassExpr::base(K::ST);
        if (id == "AT") return ClassExpr::base(K::AT);
        if (id == "PT") return ClassExpr::base(K::PT);
        if (id == "PTK") {
            expect('(');
            int k = number();
            expect(')');
            if (k < 1) fail("PTK needs k >= 1");
            return ClassExpr::base(K::PTK, k);
        }
        if (id == "LPOL" || id == "RPOL" || id == "MPOL" || id == "UPOL") {
            expect('(');
            ClassExpr inner = expr();
            expect(')');
            K k = id == "LPOL" ? K::LPOL : id == "RPOL" ? K::RPOL : id == "MPOL" ? K::MPOL : K::UPOL;
            return ClassExpr::unary(k, std::move(inner));
        }
        if (id == "INTER") {
            expect('(');
            ClassExpr a = expr();
            expect(',');
            ClassExpr b = expr();
            expect(')');
            return ClassExpr::inter(std::move(a), std::move(b));
        }
        if (id == "LP" || id == "RP") {
            expect('(');
            int n = number();
            expect(',');
            ClassExpr b = expr();
            expect(')');
            return {id == "LP" ? K::LP : K::RP, n, {std::move(b)}};
        }
        if (id == "BSIGMA2") {
            expect('(');
            int n = number();
            expect(')');
            if (n < 1) fail("BSIGMA2 needs n >= 1");
            return {K::BSIGMA2, n, {}};
        }
        fail(id.empty() ? "expected class name" : "unknown class '" + id + "'");
    }
};

}  // namespace detail

inline ClassExpr parse_class(const std::string& text) { return detail::ClassParser(text).parse(); }

/// Expands LP, RP and BSIGMA2 into the core operators.
inline ClassExpr expand_aliases(const ClassExpr& e) {
    using K = ClassExpr::Kind;
    switch (e.kind) {
    case K::LP:
    case K::RP: {
        ClassExpr b = expand_aliases(e.kids[0]);
        if (e.param == 0) return b;
        bool left = e.kind == K::LP;
        ClassExpr inner = expand_aliases({left ? K::RP : K::LP, e.param - 1, {b}});
        return ClassExpr::unary(left ? K::LPOL : K::RPOL, std::move(inner));
    }
    case K::BSIGMA2: {
        ClassExpr c = ClassExpr::base(K::PT);
        for (int i = 1; i < e.param; ++i) c = ClassExpr::unary(K::MPOL, std::move(c));
        return c;
    }
    default: {
        ClassExpr out = e;
        for (auto& k : out.kids) k = expand_aliases(k);
        return out;
    }
    }
}

/// Depth in operator layers (bases have depth 0).
inline int operator_depth(const ClassExpr& e) {
    int d = 0;
    for (const auto& k : e.kids) d = std::max(d, operator_depth(k));
    return e.is_base() ? 0 : d + (e.kind == ClassExpr::Kind::INTER ? 0 : 1);
}

}  // namespace detpol
