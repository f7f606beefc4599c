#pragma once
/**
 * @brief Complete deterministic automata, kept minimal and canonically numbered.
 */

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regex.hpp"

namespace detpol {

using Word = std::string;

struct Dfa {
    Alphabet alphabet;
    int states = 0;
    std::vector<int> delta;  ///< delta[q * |A| + letter index]
    int init = 0;
    std::vector<char> accepting;

    int width() const { return static_cast<int>(alphabet.size()); }
    int letter_index(char c) const {
        auto p = alphabet.find(c);
        if (p == Alphabet::npos) throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
        return static_cast<int>(p);
    }
    int next(int q, int li) const { return delta[static_cast<std::size_t>(q) * alphabet.size() + li]; }
    int run(int q, const Word& w) const {
        for (char c : w) q = next(q, letter_index(c));
        return q;
    }
    bool accepts(const Word& w) const { return accepting[run(init, w)]; }
    bool operator==(const Dfa&) const = default;
};

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };
enum class Side { Left, Right };

namespace detail {

/// Nondeterministic automaton with epsilon moves, used internally only.
struct Nfa {
    Alphabet alphabet;
    std::vector<std::vector<std::vector<int>>> trans;  ///< trans[q][letter]
    std::vector<std::vector<int>> eps;
    std::vector<int> initial;
    std::vector<char> accepting;

    int add_state() {
        trans.emplace_back(alphabet.size());
        eps.emplace_back();
        accepting.push_back(0);
        return static_cast<int>(trans.size()) - 1;
    }
    int size() const { return static_cast<int>(trans.size()); }
};

inline void eps_close(const Nfa& n, std::vector<int>& set) {
    std::vector<char> seen(n.size(), 0);
    std::vector<int> stack;
    for (int q : set) {
        if (!seen[q]) {
            seen[q] = 1;
            stack.push_back(q);
        }
    }
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int r : n.eps[q]) {
            if (!seen[r]) {
                seen[r] = 1;
                stack.push_back(r);
            }
        }
    }
    set.clear();
    for (int q = 0; q < n.size(); ++q)
        if (seen[q]) set.push_back(q);
}

inline Dfa determinize(const Nfa& n) {
    Dfa d;
    d.alphabet = n.alphabet;
    const int w = static_cast<int>(n.alphabet.size());
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> sets;
    std::vector<int> start = n.initial;
    eps_close(n, start);
    ids[start] = 0;
    sets.push_back(start);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (int a = 0; a < w; ++a) {
            std::vector<int> next;
            for (int q : sets[i])
                for (int r : n.trans[q][a]) next.push_back(r);
            eps_close(n, next);
            auto [it, fresh] = ids.emplace(next, static_cast<int>(sets.size()));
            if (fresh) sets.push_back(next);
            d.delta.push_back(it->second);
        }
    }
    d.states = static_cast<int>(sets.size());
    d.init = 0;
    d.accepting.assign(d.states, 0);
    for (int i = 0; i < d.states; ++i)
        for (int q : sets[i])
            if (n.accepting[q]) d.accepting[i] = 1;
    return d;
}

/// Thompson-style fragment: entry and exit state.
inline std::pair<int, int> thompson(Nfa& n, const Regex& r) {
    using K = Regex::Kind;
    int in = n.add_state();
    int out = n.add_state();
    switch (r.kind) {
    case K::Empty: break;
    case K::Epsilon: n.eps[in].push_back(out); break;
    case K::Letter: {
        auto p = n.alphabet.find(r.letter);
        if (p == Alphabet::npos) throw std::invalid_argument(std::string("letter '") + r.letter + "' not in alphabet");
        n.trans[in][p].push_back(out);
        break;
    }
    case K::Union:
        for (const auto& k : r.kids) {
            auto [a, b] = thompson(n, k);
            n.eps[in].push_back(a);
            n.eps[b].push_back(out);
        }
        break;
    case K::Concat: {
        int cur = in;
        for (const auto& k : r.kids) {
            auto [a, b] = thompson(n, k);
            n.eps[cur].push_back(a);
            cur = b;
        }
        n.eps[cur].push_back(out);
        break;
    }
    case K::Star:
    case K::Plus: {
        auto [a, b] = thompson(n, r.kids[0]);
        n.eps[in].push_back(a);
        n.eps[b].push_back(out);
        n.eps[b].push_back(a);
        if (r.kind == K::Star) n.eps[in].push_back(out);
        break;
    }
    }
    return {in, out};
}

/// Embeds a DFA into an NFA; returns the offset of its state 0.
inline int embed(Nfa& n, const Dfa& d) {
    int base = n.size();
    for (int q = 0; q < d.states; ++q) n.add_state();
    for (int q = 0; q < d.states; ++q) {
        for (int a = 0; a < d.width(); ++a) n.trans[base + q][a].push_back(base + d.next(q, a));
        n.accepting[base + q] = d.accepting[q];
    }
    return base;
}

}  // namespace detail

/// Minimal complete DFA with states numbered in BFS order from the initial state.
inline Dfa minimize(const Dfa& d) {
    const int w = d.width();
    // reachable states in BFS order
    std::vector<int> order, index(d.states, -1);
    order.push_back(d.init);
    index[d.init] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int a = 0; a < w; ++a) {
            int r = d.next(order[i], a);
            if (index[r] < 0) {
                index[r] = static_cast<int>(order.size());
                order.push_back(r);
            }
        }
    const int n = static_cast<int>(order.size());
    // Moore refinement
    std::vector<int> block(n);
    for (int i = 0; i < n; ++i) block[i] = d.accepting[order[i]] ? 1 : 0;
    int blocks = 0;
    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> nb(n);
        for (int i = 0; i < n; ++i) {
            std::vector<int> sig{block[i]};
            for (int a = 0; a < w; ++a) sig.push_back(block[index[d.next(order[i], a)]]);
            auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
            nb[i] = it->second;
        }
        int nblocks = static_cast<int>(sig_ids.size());
        block = nb;
        if (nblocks == blocks) break;
        blocks = nblocks;
    }
    // canonical renumbering by BFS over blocks
    std::vector<int> rep(blocks, -1);
    for (int i = 0; i < n; ++i)
        if (rep[block[i]] < 0) rep[block[i]] = i;
    std::vector<int> canon(blocks, -1), corder;
    canon[block[0]] = 0;
    corder.push_back(block[0]);
    for (std::size_t i = 0; i < corder.size(); ++i)
        for (int a = 0; a < w; ++a) {
            int b = block[index[d.next(order[rep[corder[i]]], a)]];
            if (canon[b] < 0) {
                canon[b] = static_cast<int>(corder.size());
                corder.push_back(b);
            }
        }
    Dfa m;
    m.alphabet = d.alphabet;
    m.states = blocks;
    m.init = 0;
    m.accepting.assign(blocks, 0);
    m.delta.assign(static_cast<std::size_t>(blocks) * w, 0);
    for (int c = 0; c < blocks; ++c) {
        int q = order[rep[corder[c]]];
        m.accepting[c] = d.accepting[q];
        for (int a = 0; a < w; ++a) m.delta[static_cast<std::size_t>(c) * w + a] = canon[block[index[d.next(q, a)]]];
    }
    return m;
}

inline Dfa empty_language(const Alphabet& a) {
    Dfa d;
    d.alphabet = a;
    d.states = 1;
    d.delta.assign(a.size(), 0);
    d.accepting = {0};
    return d;
}

inline Dfa universal_language(const Alphabet& a) {
    Dfa d = empty_language(a);
    d.accepting = {1};
    return d;
}

/// Minimal DFA of r over the given alphabet (defaults to the letters of r).
inline Dfa compile(const Regex& r, const Alphabet& alphabet) {
    detail::Nfa n;
    n.alphabet = alphabet;
    auto [in, out] = detail::thompson(n, r);
    n.initial = {in};
    n.accepting[out] = 1;
    return minimize(detail::determinize(n));
}

inline Dfa compile(const Regex& r) { return compile(r, r.alphabet()); }

inline Dfa compile(const std::string& text, const Alphabet& alphabet) { return compile(parse_regex(text), alphabet); }

inline void require_same_alphabet(const Dfa& l, const Dfa& r) {
    if (l.alphabet != r.alphabet)
        throw std::invalid_argument("alphabet mismatch: {" + l.alphabet + "} vs {" + r.alphabet + "}");
}

inline Dfa complement(const Dfa& d) {
    Dfa c = d;
    for (auto& f : c.accepting) f = !f;
    return minimize(c);
}

inline Dfa combine(BoolOp op, const Dfa& l, const Dfa& r) {
    require_same_alphabet(l, r);
    const int w = l.width();
    Dfa p;
    p.alphabet = l.alphabet;
    p.states = l.states * r.states;
    p.init = l.init * r.states + r.init;
    p.delta.resize(static_cast<std::size_t>(p.states) * w);
    p.accepting.resize(p.states);
    for (int x = 0; x < l.states; ++x)
        for (int y = 0; y < r.states; ++y) {
            int q = x * r.states + y;
            for (int a = 0; a < w; ++a) p.delta[static_cast<std::size_t>(q) * w + a] = l.next(x, a) * r.states + r.next(y, a);
            bool u = l.accepting[x], v = r.accepting[y];
            switch (op) {
            case BoolOp::Union: p.accepting[q] = u || v; break;
            case BoolOp::Intersection: p.accepting[q] = u && v; break;
            case BoolOp::Difference: p.accepting[q] = u && !v; break;
            case BoolOp::SymmetricDifference: p.accepting[q] = u != v; break;
            }
        }
    return minimize(p);
}

inline Dfa intersect(const Dfa& l, const Dfa& r) { return combine(BoolOp::Intersection, l, r); }
inline Dfa unite(const Dfa& l, const Dfa& r) { return combine(BoolOp::Union, l, r); }
inline Dfa difference(const Dfa& l, const Dfa& r) { return combine(BoolOp::Difference, l, r); }

inline bool is_empty(const Dfa& d) {
    Dfa m = minimize(d);
    return m.states == 1 && !m.accepting[0];
}

inline bool same_language(const Dfa& l, const Dfa& r) {
    require_same_alphabet(l, r);
    return minimize(l) == minimize(r);
}

inline bool is_subset(const Dfa& l, const Dfa& r) { return is_empty(difference(l, r)); }
inline bool disjoint(const Dfa& l, const Dfa& r) { return is_empty(intersect(l, r)); }

/// Shortest accepted word in shortlex order, if any.
inline std::optional<Word> shortest_word(const Dfa& d) {
    std::vector<int> parent(d.states, -2), via(d.states, -1);
    std::deque<int> q{d.init};
    parent[d.init] = -1;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        if (d.accepting[s]) {
            Word w;
            for (int x = s; parent[x] >= 0; x = parent[x]) w.push_back(d.alphabet[via[x]]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (int a = 0; a < d.width(); ++a) {
            int r = d.next(s, a);
            if (parent[r] == -2) {
                parent[r] = s;
                via[r] = a;
                q.push_back(r);
            }
        }
    }
    return std::nullopt;
}

/// Recognizer of u^{-1}L (left) or L u^{-1} (right).
inline Dfa quotient(const Dfa& l, const Word& u, Side side) {
    Dfa q = l;
    if (side == Side::Left) {
        q.init = l.run(l.init, u);
    } else {
        for (int s = 0; s < l.states; ++s) q.accepting[s] = l.accepting[l.run(s, u)];
    }
    return minimize(q);
}

/// Mirror image of the language.
inline Dfa reverse(const Dfa& d) {
    detail::Nfa n;
    n.alphabet = d.alphabet;
    for (int q = 0; q < d.states; ++q) n.add_state();
    for (int q = 0; q < d.states; ++q) {
        for (int a = 0; a < d.width(); ++a) n.trans[d.next(q, a)][a].push_back(q);
        if (d.accepting[q]) n.initial.push_back(q);
    }
    n.accepting[d.init] = 1;
    return minimize(detail::determinize(n));
}

/// Marked concatenation K0 a1 K1 ... an Kn; letters.size() + 1 == parts.size().
inline Dfa marked_concat(const std::vector<Dfa>& parts, const std::string& letters) {
    if (parts.empty() || letters.size() + 1 != parts.size()) throw std::invalid_argument("marked product arity mismatch");
    detail::Nfa n;
    n.alphabet = parts[0].alphabet;
    std::vector<int> base;
    for (const auto& p : parts) {
        require_same_alphabet(parts[0], p);
        base.push_back(detail::embed(n, p));
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        int a = parts[i].letter_index(letters[i]);
        int target = base[i + 1] + parts[i + 1].init;
        for (int q = 0; q < parts[i].states; ++q) {
            if (parts[i].accepting[q]) n.trans[base[i] + q][a].push_back(target);
            n.accepting[base[i] + q] = 0;
        }
    }
    n.initial = {base[0] + parts[0].init};
    return minimize(detail::determinize(n));
}

/// Plain concatenation of two languages.
inline Dfa concat(const Dfa& l, const Dfa& r) {
    require_same_alphabet(l, r);
    detail::Nfa n;
    n.alphabet = l.alphabet;
    int bl = detail::embed(n, l);
    int br = detail::embed(n, r);
    for (int q = 0; q < l.states; ++q) {
        if (l.accepting[q]) n.eps[bl + q].push_back(br + r.init);
        n.accepting[bl + q] = 0;
    }
    n.initial = {bl + l.init};
    return minimize(detail::determinize(n));
}

inline Dfa single_word(const Word& w, const Alphabet& a) {
    std::vector<Regex> parts;
    for (char c : w) parts.push_back(Regex::lit(c));
    return compile(Regex::cat(std::move(parts)), a);
}

/// All words of length <= max_len in shortlex order.
inline std::vector<Word> words_up_to(const Alphabet& a, int max_len) {
    std::vector<Word> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(out[i].size()) >= max_len) continue;
        for (char c : a) out.push_back(out[i] + c);
    }
    return out;
}

/// Regular expression for the language, by state elimination.
inline Regex to_regex(const Dfa& input) {
    Dfa d = minimize(input);
    const int n = d.states;
    // states 0..n-1, source n, sink n+1
    const int S = n, T = n + 1, N = n + 2;
    std::vector<std::vector<std::optional<Regex>>> e(N, std::vector<std::optional<Regex>>(N));
    auto add = [&](int i, int j, Regex r) {
        if (e[i][j]) e[i][j] = Regex::alt({*e[i][j], std::move(r)});
        else e[i][j] = std::move(r);
    };
    // drop states that cannot reach acceptance
    std::vector<char> live(n, 0);
    for (int q = 0; q < n; ++q) live[q] = d.accepting[q];
    for (bool changed = true; changed;) {
        changed = false;
        for (int q = 0; q < n; ++q)
            if (!live[q])
                for (int a = 0; a < d.width(); ++a)
                    if (live[d.next(q, a)]) {
                        live[q] = 1;
                        changed = true;
                        break;
                    }
    }
    if (!live[d.init]) return Regex::empty();
    for (int q = 0; q < n; ++q) {
        if (!live[q]) continue;
        for (int a = 0; a < d.width(); ++a)
            if (live[d.next(q, a)]) add(q, d.next(q, a), Regex::lit(d.alphabet[a]));
        if (d.accepting[q]) add(q, T, Regex::epsilon());
    }
    add(S, d.init, Regex::epsilon());
    auto simplify_cat = [](std::vector<Regex> parts) {
        std::vector<Regex> kept;
        for (auto& p : parts)
            if (p.kind != Regex::Kind::Epsilon) kept.push_back(std::move(p));
        return Regex::cat(std::move(kept));
    };
    for (int k = n - 1; k >= 0; --k) {
        if (!live[k]) continue;
        std::optional<Regex> loop = e[k][k];
        for (int i = 0; i < N; ++i) {
            if (i == k || !e[i][k]) continue;
            for (int j = 0; j < N; ++j) {
                if (j == k || !e[k][j]) continue;
                std::vector<Regex> parts{*e[i][k]};
                if (loop) parts.push_back(Regex::star(*loop));
                parts.push_back(*e[k][j]);
                add(i, j, simplify_cat(std::move(parts)));
            }
        }
        for (int i = 0; i < N; ++i) {
            e[i][k].reset();
            e[k][i].reset();
        }
    }
    return e[S][T] ? *e[S][T] : Regex::empty();
}

/// Text form: `dfa <n> <letters>`, transitions `src letter dst`, `init q`, `final ...`.
inline std::string to_text(const Dfa& d) {
    std::ostringstream out;
    out << "dfa " << d.states << ' ' << (d.alphabet.empty() ? "-" : d.alphabet) << '\n';
    for (int q = 0; q < d.states; ++q)
        for (int a = 0; a < d.width(); ++a) out << q << ' ' << d.alphabet[a] << ' ' << d.next(q, a) << '\n';
    out << "init " << d.init << '\n' << "final";
    for (int q = 0; q < d.states; ++q)
        if (d.accepting[q]) out << ' ' << q;
    out << '\n';
    return out.str();
}

inline Dfa dfa_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    Dfa d;
    if (!(in >> tok) || tok != "dfa") throw std::invalid_argument("dfa text: missing header");
    std::string letters;
    in >> d.states >> letters;
    if (!in || d.states <= 0) throw std::invalid_argument("dfa text: bad header");
    d.alphabet = letters == "-" ? "" : make_alphabet(letters);
    d.delta.assign(static_cast<std::size_t>(d.states) * d.alphabet.size(), -1);
    d.accepting.assign(d.states, 0);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "init") {
            ls >> d.init;
        } else if (first == "final") {
            int q;
            while (ls >> q) {
                if (q < 0 || q >= d.states) throw std::invalid_argument("dfa text: bad final state");
                d.accepting[q] = 1;
            }
        } else {
            int src = std::stoi(first), dst;
            char c;
            ls >> c >> dst;
            if (!ls || src < 0 || src >= d.states || dst < 0 || dst >= d.states)
                throw std::invalid_argument("dfa text: bad transition line '" + line + "'");
            d.delta[static_cast<std::size_t>(src) * d.alphabet.size() + d.letter_index(c)] = dst;
        }
    }
    for (int x : d.delta)
        if (x < 0) throw std::invalid_argument("dfa text: transition function not total");
    if (d.init < 0 || d.init >= d.states) throw std::invalid_argument("dfa text: bad initial state");
    return d;
}

}  // namespace detpol
