#pragma once
/**
 * @brief Finite monoids given by multiplication tables, Green's relations,
 * idempotent powers, congruences and quotients.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace detpol {

/// Square bit matrix used for the Green preorders.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}
    bool get(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void set(int i, int j) { row(i)[j >> 6] |= std::uint64_t{1} << (j & 63); }
    std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }
    const std::uint64_t* row(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }
    void or_row_from(int dst, const BitMatrix& other, int src) {
        for (int w = 0; w < words_; ++w) row(dst)[w] |= other.row(src)[w];
    }
    int size() const { return n_; }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct FiniteMonoid {
    int n = 1;
    std::vector<int> table{0};  ///< row-major n x n
    int unit = 0;
    std::vector<std::string> names;  ///< optional shortest generator word per element

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }
    int power(int a, int k) const {
        int r = unit;
        for (int i = 0; i < k; ++i) r = mul(r, a);
        return r;
    }
    bool idempotent(int a) const { return mul(a, a) == a; }
    std::string name(int a) const {
        if (a < static_cast<int>(names.size())) return names[a].empty() ? "1" : names[a];
        return std::to_string(a);
    }
};

/// Checks the table, unit laws and associativity (exhaustive up to 64 elements, sampled beyond).
inline void validate(const FiniteMonoid& m) {
    if (m.n <= 0 || static_cast<int>(m.table.size()) != m.n * m.n) throw std::invalid_argument("monoid: bad table size");
    if (m.unit < 0 || m.unit >= m.n) throw std::invalid_argument("monoid: bad unit");
    for (int x : m.table)
        if (x < 0 || x >= m.n) throw std::invalid_argument("monoid: table entry out of range");
    for (int a = 0; a < m.n; ++a)
        if (m.mul(a, m.unit) != a || m.mul(m.unit, a) != a) throw std::invalid_argument("monoid: unit is not neutral");
    if (m.n <= 64) {
        for (int a = 0; a < m.n; ++a)
            for (int b = 0; b < m.n; ++b)
                for (int c = 0; c < m.n; ++c)
                    if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c))) throw std::invalid_argument("monoid: not associative");
    } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (int t = 0; t < 20000; ++t) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            int a = static_cast<int>(s % m.n), b = static_cast<int>((s >> 20) % m.n), c = static_cast<int>((s >> 40) % m.n);
            if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c))) throw std::invalid_argument("monoid: not associative");
        }
    }
}

inline FiniteMonoid make_monoid(int n, std::vector<int> table, int unit) {
    FiniteMonoid m;
    m.n = n;
    m.table = std::move(table);
    m.unit = unit;
    validate(m);
    return m;
}

inline FiniteMonoid trivial_monoid() { return FiniteMonoid{}; }

/// Monoid with multiplication order reversed.
inline FiniteMonoid opposite(const FiniteMonoid& m) {
    FiniteMonoid r = m;
    for (int a = 0; a < m.n; ++a)
        for (int b = 0; b < m.n; ++b) r.table[static_cast<std::size_t>(a) * m.n + b] = m.mul(b, a);
    for (auto& w : r.names) std::reverse(w.begin(), w.end());
    return r;
}

struct GreenData {
    BitMatrix le_r, le_l, le_j;  ///< le_x.get(s, t) iff s <=_X t
    std::vector<int> r_class, l_class, j_class, h_class;

    bool leq_r(int s, int t) const { return le_r.get(s, t); }
    bool leq_l(int s, int t) const { return le_l.get(s, t); }
    bool leq_j(int s, int t) const { return le_j.get(s, t); }
    bool r_equiv(int s, int t) const { return r_class[s] == r_class[t]; }
    bool l_equiv(int s, int t) const { return l_class[s] == l_class[t]; }
    bool j_equiv(int s, int t) const { return j_class[s] == j_class[t]; }
    bool h_equiv(int s, int t) const { return h_class[s] == h_class[t]; }
    bool lt_r(int s, int t) const { return leq_r(s, t) && !r_equiv(s, t); }
    bool lt_l(int s, int t) const { return leq_l(s, t) && !l_equiv(s, t); }
    bool lt_j(int s, int t) const { return leq_j(s, t) && !j_equiv(s, t); }
    int j_class_count() const { return j_class.empty() ? 0 : *std::max_element(j_class.begin(), j_class.end()) + 1; }
};

namespace detail {

inline std::vector<int> classes_of(const BitMatrix& le, int n) {
    std::vector<int> cls(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (cls[s] >= 0) continue;
        cls[s] = next;
        for (int t = s + 1; t < n; ++t)
            if (cls[t] < 0 && le.get(s, t) && le.get(t, s)) cls[t] = next;
        ++next;
    }
    return cls;
}

}  // namespace detail

/// Green preorders: row t of the ideal matrices lists the ideal generated by t.
inline GreenData green(const FiniteMonoid& m) {
    const int n = m.n;
    BitMatrix right_ideal(n), left_ideal(n);
    for (int t = 0; t < n; ++t)
        for (int x = 0; x < n; ++x) {
            right_ideal.set(t, m.mul(t, x));
            left_ideal.set(t, m.mul(x, t));
        }
    // MtM is the union of uM over u in Mt
    BitMatrix jm(n);
    for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
            if (left_ideal.get(t, u))
                jm.or_row_from(t, right_ideal, u);
    GreenData g;
    g.le_r = BitMatrix(n);
    g.le_l = BitMatrix(n);
    g.le_j = BitMatrix(n);
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < n; ++s) {
            if (right_ideal.get(t, s)) g.le_r.set(s, t);
            if (left_ideal.get(t, s)) g.le_l.set(s, t);
            if (jm.get(t, s)) g.le_j.set(s, t);
        }
    g.r_class = detail::classes_of(g.le_r, n);
    g.l_class = detail::classes_of(g.le_l, n);
    g.j_class = detail::classes_of(g.le_j, n);
    std::map<std::pair<int, int>, int> h;
    g.h_class.resize(n);
    for (int s = 0; s < n; ++s) {
        auto [it, fresh] = h.emplace(std::make_pair(g.r_class[s], g.l_class[s]), static_cast<int>(h.size()));
        g.h_class[s] = it->second;
    }
    return g;
}

/// Least k >= 1 such that s^k is idempotent for every s.
inline int omega(const FiniteMonoid& m) {
    // per element: index i and period p of the cyclic subsemigroup; s^k idempotent iff k >= i and p | k
    std::vector<std::pair<int, int>> ip;
    for (int s = 0; s < m.n; ++s) {
        std::map<int, int> seen;
        int x = s;
        for (int k = 1;; ++k) {
            auto [it, fresh] = seen.emplace(x, k);
            if (!fresh) {
                ip.emplace_back(it->second, k - it->second);
                break;
            }
            x = m.mul(x, s);
        }
    }
    long long l = 1;
    int maxi = 1;
    for (auto [i, p] : ip) {
        l = std::lcm(l, static_cast<long long>(p));
        maxi = std::max(maxi, i);
    }
    long long k = l;
    while (k < maxi) k += l;
    return static_cast<int>(k);
}

/// s^omega for a single element.
inline int omega_power(const FiniteMonoid& m, int s) {
    int x = s;
    while (!m.idempotent(x)) x = m.mul(x, s);
    // x = s^k idempotent for some k; the idempotent power is unique
    return x;
}

/// Closure of unit + G under the table of S.
inline std::vector<int> generated_submonoid(const FiniteMonoid& s, const std::vector<int>& gens) {
    std::vector<char> in(s.n, 0);
    std::vector<int> out{s.unit};
    in[s.unit] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int g : gens) {
            int x = s.mul(out[i], g);
            if (!in[x]) {
                in[x] = 1;
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Direct product of two monoids; element (a, b) has index a * right.n + b.
inline FiniteMonoid product_monoid(const FiniteMonoid& l, const FiniteMonoid& r) {
    FiniteMonoid p;
    p.n = l.n * r.n;
    p.unit = l.unit * r.n + r.unit;
    p.table.resize(static_cast<std::size_t>(p.n) * p.n);
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < p.n; ++b)
            p.table[static_cast<std::size_t>(a) * p.n + b] = l.mul(a / r.n, b / r.n) * r.n + r.mul(a % r.n, b % r.n);
    return p;
}

/// Partition of a monoid's elements, block ids numbered by first occurrence.
struct Congruence {
    std::vector<int> block;

    int size() const { return static_cast<int>(block.size()); }
    int blocks() const { return block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1; }
    bool related(int s, int t) const { return block[s] == block[t]; }
    std::vector<std::vector<int>> classes() const {
        std::vector<std::vector<int>> out(blocks());
        for (int s = 0; s < size(); ++s) out[block[s]].push_back(s);
        return out;
    }
    bool operator==(const Congruence&) const = default;
};

inline Congruence normalize_partition(const std::vector<int>& labels) {
    std::map<int, int> ids;
    Congruence c;
    for (int x : labels) c.block.push_back(ids.emplace(x, static_cast<int>(ids.size())).first->second);
    return c;
}

inline Congruence identity_congruence(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Congruence{v};
}

inline Congruence total_congruence(int n) { return Congruence{std::vector<int>(n, 0)}; }

inline bool is_congruence(const FiniteMonoid& m, const Congruence& c) {
    for (int s = 0; s < m.n; ++s)
        for (int t = s + 1; t < m.n; ++t) {
            if (!c.related(s, t)) continue;
            for (int x = 0; x < m.n; ++x)
                if (!c.related(m.mul(s, x), m.mul(t, x)) || !c.related(m.mul(x, s), m.mul(x, t))) return false;
        }
    return true;
}

/// Finer-or-equal test: every block of a is inside a block of b.
inline bool refines(const Congruence& a, const Congruence& b) {
    for (int s = 0; s < a.size(); ++s)
        for (int t = 0; t < a.size(); ++t)
            if (a.related(s, t) && !b.related(s, t)) return false;
    return true;
}

struct Quotient {
    FiniteMonoid monoid;
    std::vector<int> projection;
};

inline Quotient quotient(const FiniteMonoid& m, const Congruence& c) {
    if (c.size() != m.n) throw std::invalid_argument("quotient: partition size mismatch");
    if (!is_congruence(m, c)) throw std::invalid_argument("quotient: partition is not a congruence");
    Quotient q;
    const int k = c.blocks();
    std::vector<int> rep(k, -1);
    for (int s = 0; s < m.n; ++s)
        if (rep[c.block[s]] < 0) rep[c.block[s]] = s;
    q.monoid.n = k;
    q.monoid.unit = c.block[m.unit];
    q.monoid.table.resize(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) q.monoid.table[static_cast<std::size_t>(a) * k + b] = c.block[m.mul(rep[a], rep[b])];
    if (!m.names.empty()) {
        q.monoid.names.assign(k, "");
        std::vector<char> set(k, 0);
        for (int s = 0; s < m.n; ++s) {
            int b = c.block[s];
            const std::string& w = m.names[s];
            if (!set[b] || w.size() < q.monoid.names[b].size() ||
                (w.size() == q.monoid.names[b].size() && w < q.monoid.names[b])) {
                q.monoid.names[b] = w;
                set[b] = 1;
            }
        }
    }
    q.projection = c.block;
    return q;
}

/// Coarsest congruence saturating F: s ~ t iff xsy in F <=> xty in F for all x, y.
inline Congruence syntactic_congruence_of_subset(const FiniteMonoid& m, const std::vector<char>& in_f) {
    std::vector<int> block(m.n);
    for (int s = 0; s < m.n; ++s) block[s] = in_f[s] ? 1 : 0;
    int count = -1;
    while (true) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> nb(m.n);
        for (int s = 0; s < m.n; ++s) {
            std::vector<int> sig;
            sig.reserve(2 * m.n + 1);
            sig.push_back(block[s]);
            for (int x = 0; x < m.n; ++x) sig.push_back(block[m.mul(s, x)]);
            for (int x = 0; x < m.n; ++x) sig.push_back(block[m.mul(x, s)]);
            nb[s] = ids.emplace(sig, static_cast<int>(ids.size())).first->second;
        }
        block = nb;
        if (static_cast<int>(ids.size()) == count) break;
        count = static_cast<int>(ids.size());
    }
    return normalize_partition(block);
}

/// Dump: `monoid <n>`, table rows, `unit <i>`, optional `names` line.
inline std::string to_text(const FiniteMonoid& m) {
    std::ostringstream out;
    out << "monoid " << m.n << '\n';
    for (int a = 0; a < m.n; ++a) {
        for (int b = 0; b < m.n; ++b) out << (b ? " " : "") << m.mul(a, b);
        out << '\n';
    }
    out << "unit " << m.unit << '\n';
    if (!m.names.empty()) {
        out << "names";
        for (int a = 0; a < m.n; ++a) out << ' ' << (m.names[a].empty() ? "1" : m.names[a]);
        out << '\n';
    }
    return out.str();
}

inline FiniteMonoid monoid_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    int n;
    if (!(in >> tok >> n) || tok != "monoid" || n <= 0) throw std::invalid_argument("monoid text: bad header");
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (auto& x : table)
        if (!(in >> x)) throw std::invalid_argument("monoid text: short table");
    int unit;
    if (!(in >> tok >> unit) || tok != "unit") throw std::invalid_argument("monoid text: missing unit");
    FiniteMonoid m = make_monoid(n, std::move(table), unit);
    if (in >> tok && tok == "names") {
        m.names.resize(n);
        for (auto& w : m.names) {
            in >> w;
            if (w == "1") w.clear();
        }
    }
    return m;
}

}  // namespace detpol
