#pragma once
/**
 * @brief Regular expressions over lowercase ASCII letters.
 *
 * Grammar: letters a-z, `|` union, juxtaposition, postfix `*` and `+`,
 * `%` for the empty word, `@` for the empty language, parentheses.
 */

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace detpol {

/// Sorted string of distinct letters.
using Alphabet = std::string;

inline Alphabet make_alphabet(const std::string& letters) {
    std::set<char> s;
    for (char c : letters) {
        if (c < 'a' || c > 'z') throw std::invalid_argument(std::string("invalid letter '") + c + "'");
        s.insert(c);
    }
    return Alphabet(s.begin(), s.end());
}

inline Alphabet alphabet_union(const Alphabet& a, const Alphabet& b) { return make_alphabet(a + b); }

struct Regex {
    enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star, Plus };
    Kind kind = Kind::Empty;
    char letter = 0;
    std::vector<Regex> kids;

    bool operator==(const Regex&) const = default;

    static Regex empty() { return {}; }
    static Regex epsilon() { return {Kind::Epsilon, 0, {}}; }
    static Regex lit(char c) { return {Kind::Letter, c, {}}; }
    static Regex star(Regex r) { return {Kind::Star, 0, {std::move(r)}}; }
    static Regex plus(Regex r) { return {Kind::Plus, 0, {std::move(r)}}; }
    static Regex alt(std::vector<Regex> rs) { return nary(Kind::Union, std::move(rs)); }
    static Regex cat(std::vector<Regex> rs) { return nary(Kind::Concat, std::move(rs)); }

    /// Letters occurring in the expression.
    Alphabet alphabet() const {
        std::string acc;
        collect(acc);
        return make_alphabet(acc);
    }

private:
    static Regex nary(Kind k, std::vector<Regex> rs) {
        std::vector<Regex> flat;
        for (auto& r : rs) {
            if (r.kind == k) {
                for (auto& c : r.kids) flat.push_back(std::move(c));
            } else {
                flat.push_back(std::move(r));
            }
        }
        if (flat.empty()) return k == Kind::Union ? empty() : epsilon();
        if (flat.size() == 1) return std::move(flat.front());
        return {k, 0, std::move(flat)};
    }
    void collect(std::string& acc) const {
        if (kind == Kind::Letter) acc.push_back(letter);
        for (const auto& k : kids) k.collect(acc);
    }
};

struct RegexSyntaxError : std::runtime_error {
    std::size_t offset;
    RegexSyntaxError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

class RegexParser {
public:
    explicit RegexParser(const std::string& s) : src_(s) {}

    Regex parse() {
        skip();
        Regex r = parse_union();
        skip();
        if (pos_ != src_.size()) {
            if (src_[pos_] == ')') throw RegexSyntaxError("unbalanced ')'", pos_);
            throw RegexSyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        }
        return r;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }
    bool starts_atom() const {
        if (pos_ >= src_.size()) return false;
        char c = src_[pos_];
        return (c >= 'a' && c <= 'z') || c == '%' || c == '@' || c == '(';
    }
    Regex parse_union() {
        std::vector<Regex> alts{parse_concat()};
        skip();
        while (pos_ < src_.size() && src_[pos_] == '|') {
            ++pos_;
            skip();
            alts.push_back(parse_concat());
            skip();
        }
        return Regex::alt(std::move(alts));
    }
    Regex parse_concat() {
        std::vector<Regex> parts;
        skip();
        while (starts_atom()) {
            parts.push_back(parse_postfix());
            skip();
        }
        if (parts.empty()) {
            if (pos_ >= src_.size()) throw RegexSyntaxError("expected expression", pos_);
            throw RegexSyntaxError(std::string("expected expression before '") + src_[pos_] + "'", pos_);
        }
        return Regex::cat(std::move(parts));
    }
    Regex parse_postfix() {
        Regex r = parse_atom();
        skip();
        while (pos_ < src_.size() && (src_[pos_] == '*' || src_[pos_] == '+')) {
            r = src_[pos_] == '*' ? Regex::star(std::move(r)) : Regex::plus(std::move(r));
            ++pos_;
            skip();
        }
        return r;
    }
    Regex parse_atom() {
        char c = src_[pos_];
        if (c >= 'a' && c <= 'z') {
            ++pos_;
            return Regex::lit(c);
        }
        if (c == '%') {
            ++pos_;
            return Regex::epsilon();
        }
        if (c == '@') {
            ++pos_;
            return Regex::empty();
        }
        std::size_t open = pos_++;
        Regex r = parse_union();
        skip();
        if (pos_ >= src_.size() || src_[pos_] != ')') throw RegexSyntaxError("unbalanced '('", open);
        ++pos_;
        return r;
    }
};

inline int precedence(const Regex& r) {
    switch (r.kind) {
    case Regex::Kind::Union: return 0;
    case Regex::Kind::Concat: return 1;
    case Regex::Kind::Star:
    case Regex::Kind::Plus: return 2;
    default: return 3;
    }
}

}  // namespace detail

/// Parses a regex; throws RegexSyntaxError with the byte offset on failure.
inline Regex parse_regex(const std::string& text) { return detail::RegexParser(text).parse(); }

/// Prints a regex so that parse_regex(to_string(r)) == r.
inline std::string to_string(const Regex& r) {
    using K = Regex::Kind;
    auto wrap = [](const Regex& kid, int min_prec) {
        std::string s = to_string(kid);
        return detail::precedence(kid) < min_prec ? "(" + s + ")" : s;
    };
    switch (r.kind) {
    case K::Empty: return "@";
    case K::Epsilon: return "%";
    case K::Letter: return std::string(1, r.letter);
    case K::Star: return wrap(r.kids[0], 3) + "*";
    case K::Plus: return wrap(r.kids[0], 3) + "+";
    case K::Concat: {
        std::string out;
        for (const auto& k : r.kids) out += wrap(k, 2);
        return out;
    }
    case K::Union: {
        std::string out;
        for (std::size_t i = 0; i < r.kids.size(); ++i) {
            if (i) out += "|";
            out += wrap(r.kids[i], 1);
        }
        return out;
    }
    }
    return "@";
}

}  // namespace detpol
