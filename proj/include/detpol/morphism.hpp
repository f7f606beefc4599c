#pragma once
/**
 * @brief Morphisms from A* onto finite monoids, syntactic morphisms and
 * the languages they recognize.
 */

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfa.hpp"
#include "monoid.hpp"

namespace detpol {

/// Thrown when a construction exceeds a configured size cap.
struct SizeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Surjective morphism A* -> target, given by letter images.
struct MonoidMorphism {
    Alphabet alphabet;
    FiniteMonoid target;
    std::vector<int> letter_image;

    int image(char c) const {
        auto p = alphabet.find(c);
        if (p == Alphabet::npos) throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
        return letter_image[p];
    }
    int eval(const Word& w) const {
        int x = target.unit;
        for (char c : w) x = target.mul(x, image(c));
        return x;
    }
    /// Shortest word (shortlex) mapped to s.
    const std::string& witness(int s) const { return target.names[s]; }
};

/// alpha^{-1}(F) with F given as a membership mask over the target.
struct RecognizedLanguage {
    MonoidMorphism alpha;
    std::vector<char> accept;

    bool contains(const Word& w) const { return accept[alpha.eval(w)]; }
};

/**
 * Builds a monoid by breadth-first closure of a letter action on keys.
 * `step(key, letter)` returns the key of key * letter; keys must be hashable.
 */
template <class Key, class Hash = std::hash<Key>>
class CayleyBuilder {
public:
    using Step = std::function<Key(const Key&, int)>;

    CayleyBuilder(const Alphabet& a, Key unit, Step step, int cap, Hash hash = Hash())
        : alphabet_(a), step_(std::move(step)), ids_(16, hash) {
        intern(unit, "");
        const int w = static_cast<int>(a.size());
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            for (int l = 0; l < w; ++l) {
                Key next = step_(keys_[i], l);
                auto it = ids_.find(next);
                int id;
                if (it == ids_.end()) {
                    if (static_cast<int>(keys_.size()) >= cap)
                        throw SizeCapExceeded("monoid exceeds the size cap of " + std::to_string(cap) + " elements");
                    id = intern(next, names_[i] + a[l]);
                } else {
                    id = it->second;
                }
                right_.push_back(id);
            }
        }
    }

    const std::vector<Key>& keys() const { return keys_; }
    int index(const Key& k) const { return ids_.at(k); }

    /// Monoid table via right letter action along witness words.
    MonoidMorphism morphism() const {
        const int n = static_cast<int>(keys_.size());
        const int w = static_cast<int>(alphabet_.size());
        MonoidMorphism m;
        m.alphabet = alphabet_;
        m.target.n = n;
        m.target.unit = 0;
        m.target.names = names_;
        m.target.table.resize(static_cast<std::size_t>(n) * n);
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                int x = s;
                for (char c : names_[t]) x = right_[static_cast<std::size_t>(x) * w + alphabet_.find(c)];
                m.target.table[static_cast<std::size_t>(s) * n + t] = x;
            }
        for (int l = 0; l < w; ++l) m.letter_image.push_back(right_[l]);
        return m;
    }

private:
    Alphabet alphabet_;
    Step step_;
    std::vector<Key> keys_;
    std::vector<std::string> names_;
    std::unordered_map<Key, int, Hash> ids_;
    std::vector<int> right_;

    int intern(const Key& k, std::string name) {
        int id = static_cast<int>(keys_.size());
        keys_.push_back(k);
        names_.push_back(std::move(name));
        ids_.emplace(k, id);
        return id;
    }
};

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 1);
        return h;
    }
};

/// Default cap on transition-monoid size.
inline constexpr int kDefaultMonoidCap = 20000;

/// Transition monoid of a DFA (functions on states, composed left to right).
inline MonoidMorphism transition_morphism(const Dfa& d, int cap = kDefaultMonoidCap) {
    std::vector<int> id(d.states);
    for (int q = 0; q < d.states; ++q) id[q] = q;
    CayleyBuilder<std::vector<int>, VectorHash> b(
        d.alphabet, id,
        [&d](const std::vector<int>& f, int l) {
            std::vector<int> g(f.size());
            for (std::size_t q = 0; q < f.size(); ++q) g[q] = d.next(f[q], l);
            return g;
        },
        cap);
    return b.morphism();
}

/// The morphism [.]_c o alpha for a congruence c on the target.
inline MonoidMorphism compose_quotient(const MonoidMorphism& alpha, const Congruence& c) {
    Quotient q = quotient(alpha.target, c);
    MonoidMorphism m;
    m.alphabet = alpha.alphabet;
    m.target = std::move(q.monoid);
    for (int x : alpha.letter_image) m.letter_image.push_back(q.projection[x]);
    return m;
}

/// Syntactic morphism of the language of a DFA, with its accepting set.
inline RecognizedLanguage syntactic_morphism(const Dfa& input, int cap = kDefaultMonoidCap) {
    Dfa d = minimize(input);
    MonoidMorphism t = transition_morphism(d, cap);
    // element f accepts iff f(init) is accepting; read off via witness words
    std::vector<char> in_f(t.target.n);
    for (int s = 0; s < t.target.n; ++s) in_f[s] = d.accepting[d.run(d.init, t.target.names[s])];
    Congruence c = syntactic_congruence_of_subset(t.target, in_f);
    RecognizedLanguage rl;
    rl.alpha = compose_quotient(t, c);
    Quotient q = quotient(t.target, c);
    rl.accept.assign(rl.alpha.target.n, 0);
    for (int s = 0; s < t.target.n; ++s)
        if (in_f[s]) rl.accept[q.projection[s]] = 1;
    return rl;
}

/// Minimal DFA of alpha^{-1}(F').
inline Dfa image_language(const MonoidMorphism& alpha, const std::vector<char>& accept) {
    Dfa d;
    d.alphabet = alpha.alphabet;
    d.states = alpha.target.n;
    d.init = alpha.target.unit;
    d.accepting = accept;
    for (int s = 0; s < d.states; ++s)
        for (int x : alpha.letter_image) d.delta.push_back(alpha.target.mul(s, x));
    return minimize(d);
}

inline Dfa image_language(const RecognizedLanguage& rl) { return image_language(rl.alpha, rl.accept); }

/// Surjective restriction of the product of several morphisms.
inline MonoidMorphism joint_morphism(const std::vector<MonoidMorphism>& ms, int cap = kDefaultMonoidCap) {
    if (ms.empty()) throw std::invalid_argument("joint_morphism: empty list");
    for (const auto& m : ms)
        if (m.alphabet != ms[0].alphabet) throw std::invalid_argument("joint_morphism: alphabet mismatch");
    std::vector<int> unit;
    for (const auto& m : ms) unit.push_back(m.target.unit);
    CayleyBuilder<std::vector<int>, VectorHash> b(
        ms[0].alphabet, unit,
        [&ms](const std::vector<int>& v, int l) {
            std::vector<int> r(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) r[i] = ms[i].target.mul(v[i], ms[i].letter_image[l]);
            return r;
        },
        cap);
    return b.morphism();
}

/// Tuple components of each joint element, aligned with joint_morphism's numbering.
inline std::vector<std::vector<int>> joint_components(const std::vector<MonoidMorphism>& ms, const MonoidMorphism& joint) {
    std::vector<std::vector<int>> out;
    for (int s = 0; s < joint.target.n; ++s) {
        std::vector<int> v;
        for (const auto& m : ms) v.push_back(m.eval(joint.witness(s)));
        out.push_back(std::move(v));
    }
    return out;
}

/// Checks surjectivity: the letter images generate the target.
inline bool is_surjective(const MonoidMorphism& m) {
    return static_cast<int>(generated_submonoid(m.target, m.letter_image).size()) == m.target.n;
}

/// Morphism onto the opposite monoid, for mirrored words.
inline MonoidMorphism mirror(const MonoidMorphism& m) {
    MonoidMorphism r = m;
    r.target = opposite(m.target);
    return r;
}

}  // namespace detpol
