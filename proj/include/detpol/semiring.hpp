#pragma once
/**
 * @brief Finite idempotent semirings: explicit tables and products of powerset
 * semirings 2^M0 x ... x 2^Mn.
 */

#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoid.hpp"

namespace detpol {

template <class S>
concept IdempotentSemiring = requires(const S& s, const typename S::Elem& a, const typename S::Elem& b) {
    { s.zero() } -> std::convertible_to<typename S::Elem>;
    { s.one() } -> std::convertible_to<typename S::Elem>;
    { s.add(a, b) } -> std::convertible_to<typename S::Elem>;
    { s.mul(a, b) } -> std::convertible_to<typename S::Elem>;
    { s.leq(a, b) } -> std::convertible_to<bool>;
    { s.hash(a) } -> std::convertible_to<std::size_t>;
};

/// Multiplicative idempotent power of r.
template <IdempotentSemiring S>
typename S::Elem omega_power(const S& sr, const typename S::Elem& r) {
    typename S::Elem x = r;
    while (!(sr.mul(x, x) == x)) x = sr.mul(x, r);
    return x;
}

/// Semiring given by addition and multiplication tables on {0..n-1}.
struct TableSemiring {
    using Elem = int;
    int n = 2;
    std::vector<int> plus, times;
    int zero_ = 0, one_ = 1;

    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    Elem add(Elem a, Elem b) const { return plus[a * n + b]; }
    Elem mul(Elem a, Elem b) const { return times[a * n + b]; }
    bool leq(Elem a, Elem b) const { return add(a, b) == b; }
    std::size_t hash(Elem a) const { return static_cast<std::size_t>(a); }
    std::string format(Elem a) const { return std::to_string(a); }
};

struct SemiringLawError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Checks every semiring and idempotency law (exhaustively up to 64 elements).
inline void validate(const TableSemiring& s) {
    const int n = s.n;
    if (n < 1 || s.plus.size() != static_cast<std::size_t>(n) * n || s.times.size() != static_cast<std::size_t>(n) * n)
        throw SemiringLawError("semiring: table size mismatch");
    for (int v : s.plus)
        if (v < 0 || v >= n) throw SemiringLawError("semiring: addition out of range");
    for (int v : s.times)
        if (v < 0 || v >= n) throw SemiringLawError("semiring: multiplication out of range");
    auto fail = [](const std::string& law, int a, int b, int c) {
        throw SemiringLawError("semiring: " + law + " fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
    };
    for (int a = 0; a < n; ++a) {
        if (s.add(a, a) != a) fail("idempotency", a, a, a);
        if (s.add(a, s.zero()) != a) fail("additive identity", a, 0, 0);
        if (s.mul(a, s.one()) != a || s.mul(s.one(), a) != a) fail("multiplicative identity", a, 0, 0);
        if (s.mul(a, s.zero()) != s.zero() || s.mul(s.zero(), a) != s.zero()) fail("zero", a, 0, 0);
        for (int b = 0; b < n; ++b) {
            if (s.add(a, b) != s.add(b, a)) fail("commutativity", a, b, 0);
            if (n > 64) continue;
            for (int c = 0; c < n; ++c) {
                if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c))) fail("additive associativity", a, b, c);
                if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c))) fail("multiplicative associativity", a, b, c);
                if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c))) fail("left distributivity", a, b, c);
                if (s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c))) fail("right distributivity", a, b, c);
            }
        }
    }
}

/// 2^M lifted from a finite monoid, as a table semiring (for small M).
inline TableSemiring powerset_table(const FiniteMonoid& m) {
    if (m.n > 12) throw std::invalid_argument("powerset_table: monoid too large");
    TableSemiring s;
    s.n = 1 << m.n;
    s.plus.resize(static_cast<std::size_t>(s.n) * s.n);
    s.times.resize(static_cast<std::size_t>(s.n) * s.n);
    s.zero_ = 0;
    s.one_ = 1 << m.unit;
    for (int x = 0; x < s.n; ++x)
        for (int y = 0; y < s.n; ++y) {
            s.plus[x * s.n + y] = x | y;
            int p = 0;
            for (int i = 0; i < m.n; ++i)
                if ((x >> i) & 1)
                    for (int j = 0; j < m.n; ++j)
                        if ((y >> j) & 1) p |= 1 << m.mul(i, j);
            s.times[x * s.n + y] = p;
        }
    return s;
}

/// Dense bit set; the elements of powerset semirings.
struct Bits {
    std::vector<std::uint64_t> w;

    Bits() = default;
    explicit Bits(int size) : w((size + 63) / 64, 0) {}
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool operator==(const Bits&) const = default;
    auto operator<=>(const Bits&) const = default;
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : b.w) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

/// Product 2^M0 x ... x 2^Mn with componentwise union and lifted product.
class PowersetSemiring {
public:
    using Elem = Bits;

    explicit PowersetSemiring(std::vector<FiniteMonoid> comps) : comps_(std::move(comps)) {
        offset_.push_back(0);
        for (const auto& m : comps_) offset_.push_back(offset_.back() + m.n);
    }

    int components() const { return static_cast<int>(comps_.size()); }
    const FiniteMonoid& component(int i) const { return comps_[i]; }
    int offset(int i) const { return offset_[i]; }
    int width() const { return offset_.back(); }

    Elem zero() const { return Bits(width()); }
    Elem one() const {
        Bits b(width());
        for (int i = 0; i < components(); ++i) b.set(offset_[i] + comps_[i].unit);
        return b;
    }
    /// The tuple of singletons ({x0}, ..., {xn}).
    Elem singletons(const std::vector<int>& xs) const {
        Bits b(width());
        for (int i = 0; i < components(); ++i) b.set(offset_[i] + xs[i]);
        return b;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Bits r = a;
        for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] |= b.w[i];
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Bits r(width());
        for (int c = 0; c < components(); ++c) {
            const FiniteMonoid& m = comps_[c];
            const int o = offset_[c];
            for (int x = 0; x < m.n; ++x) {
                if (!a.test(o + x)) continue;
                for (int y = 0; y < m.n; ++y)
                    if (b.test(o + y)) r.set(o + m.mul(x, y));
            }
        }
        return r;
    }
    bool leq(const Elem& a, const Elem& b) const { return a.subset_of(b); }
    std::size_t hash(const Elem& a) const { return BitsHash{}(a); }

    /// Component i of a as a list of elements.
    std::vector<int> part(const Elem& a, int i) const {
        std::vector<int> out;
        for (int x = 0; x < comps_[i].n; ++x)
            if (a.test(offset_[i] + x)) out.push_back(x);
        return out;
    }

    std::string format(const Elem& a) const {
        std::string out = "(";
        for (int i = 0; i < components(); ++i) {
            if (i) out += ", ";
            out += "{";
            bool first = true;
            for (int x : part(a, i)) {
                if (!first) out += ",";
                out += comps_[i].name(x);
                first = false;
            }
            out += "}";
        }
        return out + ")";
    }

private:
    std::vector<FiniteMonoid> comps_;
    std::vector<int> offset_;
};

static_assert(IdempotentSemiring<TableSemiring>);
static_assert(IdempotentSemiring<PowersetSemiring>);

}  // namespace detpol
