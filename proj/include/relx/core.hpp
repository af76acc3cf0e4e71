#ifndef RELX_CORE_HPP
#define RELX_CORE_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

// Finite relational structures: a dense ground set 0..n-1 plus named
// relations of fixed arity, stored canonically sorted so equality is
// plain memberwise comparison.

namespace relx {

using Mask = std::uint64_t;
using Tuple = std::vector<int>;

constexpr int kMaxGround = 60;  // tuple keys pack 6 bits per coordinate

inline Mask bit(int v) { return Mask{1} << v; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest(Mask m) { return __builtin_ctzll(m); }

inline std::vector<int> mask_to_vec(Mask m) {
    std::vector<int> out;
    for (Mask t = m; t; t &= t - 1) out.push_back(lowest(t));
    return out;
}

inline Mask vec_to_mask(const std::vector<int>& v) {
    Mask m = 0;
    for (int x : v) m |= bit(x);
    return m;
}

struct RelationSignature {
    std::string name;
    int arity = 2;
    bool operator==(const RelationSignature&) const = default;
};

inline std::uint64_t tuple_key(const Tuple& t) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < t.size(); ++i) k |= std::uint64_t(t[i]) << (6 * i);
    return k;
}

class Structure {
public:
    Structure() = default;
    Structure(int n, std::vector<RelationSignature> sig)
        : n_(n), sig_(std::move(sig)), rels_(sig_.size()) {
        if (n < 0 || n > kMaxGround) throw std::invalid_argument("ground set size out of range");
        for (const auto& rs : sig_)
            if (rs.arity < 1) throw std::invalid_argument("relation arity must be positive");
    }

    int n() const { return n_; }
    int rel_count() const { return int(sig_.size()); }
    const std::vector<RelationSignature>& signature() const { return sig_; }
    const RelationSignature& sig(int r) const { return sig_[r]; }
    const std::vector<Tuple>& tuples(int r) const { return rels_[r]; }

    void add(int r, Tuple t) {
        assert(!sealed_);
        if (int(t.size()) != sig_[r].arity) throw std::invalid_argument("tuple arity mismatch");
        for (int v : t)
            if (v < 0 || v >= n_) throw std::out_of_range("tuple entry outside ground set");
        rels_[r].push_back(std::move(t));
    }

    // Sorts and dedups tuples and builds the membership / adjacency caches.
    // Structures are immutable once sealed.
    void seal() {
        if (sealed_) return;
        members_.assign(sig_.size(), {});
        out_.assign(sig_.size(), {});
        in_.assign(sig_.size(), {});
        touching_.assign(sig_.size(), {});
        for (std::size_t r = 0; r < sig_.size(); ++r) {
            auto& ts = rels_[r];
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            auto& mem = members_[r];
            mem.reserve(ts.size() * 2);
            for (const auto& t : ts) mem.insert(tuple_key(t));
            if (sig_[r].arity == 2) {
                out_[r].assign(n_, 0);
                in_[r].assign(n_, 0);
                for (const auto& t : ts) {
                    out_[r][t[0]] |= bit(t[1]);
                    in_[r][t[1]] |= bit(t[0]);
                }
            } else {
                touching_[r].assign(n_, {});
                for (int i = 0; i < int(ts.size()); ++i) {
                    Mask seen = 0;
                    for (int v : ts[i]) {
                        if (!(seen & bit(v))) touching_[r][v].push_back(i);
                        seen |= bit(v);
                    }
                }
            }
        }
        sealed_ = true;
    }

    bool sealed() const { return sealed_; }

    bool has(int r, const Tuple& t) const {
        assert(sealed_);
        return members_[r].count(tuple_key(t)) != 0;
    }
    bool has2(int r, int a, int b) const {
        assert(sealed_);
        return (out_[r][a] >> b) & 1;
    }
    Mask out(int r, int v) const { assert(sealed_); return out_[r][v]; }
    Mask in(int r, int v) const { assert(sealed_); return in_[r][v]; }
    // Tuple indices (into tuples(r)) of the tuples containing v; arity >= 3 relations only.
    const std::vector<int>& touching(int r, int v) const { assert(sealed_); return touching_[r][v]; }

    bool operator==(const Structure& o) const {
        return n_ == o.n_ && sig_ == o.sig_ && rels_ == o.rels_;
    }
    bool operator!=(const Structure& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<RelationSignature> sig_;
    std::vector<std::vector<Tuple>> rels_;
    bool sealed_ = false;
    std::vector<std::unordered_set<std::uint64_t>> members_;
    std::vector<std::vector<Mask>> out_, in_;
    std::vector<std::vector<std::vector<int>>> touching_;
};

// ---------------------------------------------------------------------------
// Structure classes and their axiom packages.

enum class ClassTag {
    Graph,
    Tournament,
    Digraph,
    OrientedGraph,
    Poset,
    LinearOrder,
    Permutation,
    Kary,
    KaryIrreflexive,
    Hypergraph,
};

struct StructureClass {
    ClassTag tag = ClassTag::Graph;
    int k = 2;  // arity for Kary / KaryIrreflexive / Hypergraph

    bool operator==(const StructureClass&) const = default;

    static StructureClass graph() { return {ClassTag::Graph, 2}; }
    static StructureClass tournament() { return {ClassTag::Tournament, 2}; }
    static StructureClass digraph() { return {ClassTag::Digraph, 2}; }
    static StructureClass oriented() { return {ClassTag::OrientedGraph, 2}; }
    static StructureClass poset() { return {ClassTag::Poset, 2}; }
    static StructureClass linear_order() { return {ClassTag::LinearOrder, 2}; }
    static StructureClass permutation() { return {ClassTag::Permutation, 2}; }
    static StructureClass kary(int k) { return {ClassTag::Kary, k}; }
    static StructureClass kary_irreflexive(int k) { return {ClassTag::KaryIrreflexive, k}; }
    static StructureClass hypergraph(int k) { return {ClassTag::Hypergraph, k}; }
};

inline std::vector<RelationSignature> class_signature(const StructureClass& c) {
    switch (c.tag) {
        case ClassTag::Graph: return {{"edge", 2}};
        case ClassTag::Tournament:
        case ClassTag::Digraph:
        case ClassTag::OrientedGraph: return {{"arc", 2}};
        case ClassTag::Poset:
        case ClassTag::LinearOrder: return {{"lt", 2}};
        case ClassTag::Permutation: return {{"lt", 2}, {"prec", 2}};
        case ClassTag::Kary:
        case ClassTag::KaryIrreflexive:
        case ClassTag::Hypergraph: return {{"rel", c.k}};
    }
    return {};
}

struct AxiomViolation {
    std::string axiom;
    std::string relation;
    Tuple witness;
};

struct ValidationReport {
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline void check_symmetric(const Structure& s, int r, ValidationReport& rep) {
    for (const auto& t : s.tuples(r)) {
        if (!s.has2(r, t[1], t[0])) {
            rep.violations.push_back({"symmetry", s.sig(r).name, t});
            return;
        }
    }
}

inline void check_irreflexive2(const Structure& s, int r, ValidationReport& rep) {
    for (int v = 0; v < s.n(); ++v)
        if (s.has2(r, v, v)) {
            rep.violations.push_back({"irreflexivity", s.sig(r).name, {v, v}});
            return;
        }
}

inline void check_asymmetric(const Structure& s, int r, ValidationReport& rep) {
    for (const auto& t : s.tuples(r)) {
        if (s.has2(r, t[1], t[0])) {
            rep.violations.push_back({"asymmetry", s.sig(r).name, t});
            return;
        }
    }
}

inline void check_transitive(const Structure& s, int r, ValidationReport& rep) {
    for (int a = 0; a < s.n(); ++a)
        for (Mask m = s.out(r, a); m; m &= m - 1) {
            int b = lowest(m);
            if (s.out(r, b) & ~s.out(r, a)) {
                int c = lowest(s.out(r, b) & ~s.out(r, a));
                rep.violations.push_back({"transitivity", s.sig(r).name, {a, b, c}});
                return;
            }
        }
}

inline void check_trichotomous(const Structure& s, int r, ValidationReport& rep) {
    for (int a = 0; a < s.n(); ++a) {
        if (s.has2(r, a, a)) {
            rep.violations.push_back({"trichotomy", s.sig(r).name, {a, a}});
            return;
        }
        for (int b = a + 1; b < s.n(); ++b) {
            int cnt = int(s.has2(r, a, b)) + int(s.has2(r, b, a));
            if (cnt != 1) {
                rep.violations.push_back({"trichotomy", s.sig(r).name, {a, b}});
                return;
            }
        }
    }
}

inline void check_linear(const Structure& s, int r, ValidationReport& rep) {
    check_asymmetric(s, r, rep);
    check_transitive(s, r, rep);
    check_trichotomous(s, r, rep);
}

inline void check_no_repeats(const Structure& s, int r, ValidationReport& rep) {
    for (const auto& t : s.tuples(r)) {
        Mask seen = 0;
        for (int v : t) {
            if (seen & bit(v)) {
                rep.violations.push_back({"irreflexivity", s.sig(r).name, t});
                return;
            }
            seen |= bit(v);
        }
    }
}

inline void check_entry_symmetric(const Structure& s, int r, ValidationReport& rep) {
    for (const auto& t : s.tuples(r)) {
        Tuple p = t;
        std::sort(p.begin(), p.end());
        // every permutation of a member tuple must be a member
        do {
            if (!s.has(r, p)) {
                rep.violations.push_back({"entry-symmetry", s.sig(r).name, t});
                return;
            }
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

}  // namespace detail

inline ValidationReport validate(const Structure& s, const StructureClass& c) {
    auto expect = class_signature(c);
    if (s.signature().size() != expect.size())
        throw std::invalid_argument("signature does not match class");
    for (std::size_t i = 0; i < expect.size(); ++i)
        if (s.sig(int(i)).arity != expect[i].arity)
            throw std::invalid_argument("relation arity does not match class");

    ValidationReport rep;
    switch (c.tag) {
        case ClassTag::Graph:
            detail::check_symmetric(s, 0, rep);
            detail::check_irreflexive2(s, 0, rep);
            break;
        case ClassTag::Tournament:
            detail::check_trichotomous(s, 0, rep);
            break;
        case ClassTag::Digraph:
            break;
        case ClassTag::OrientedGraph:
            detail::check_asymmetric(s, 0, rep);
            break;
        case ClassTag::Poset:
            detail::check_asymmetric(s, 0, rep);
            detail::check_transitive(s, 0, rep);
            break;
        case ClassTag::LinearOrder:
            detail::check_linear(s, 0, rep);
            break;
        case ClassTag::Permutation:
            detail::check_linear(s, 0, rep);
            detail::check_linear(s, 1, rep);
            break;
        case ClassTag::Kary:
            break;
        case ClassTag::KaryIrreflexive:
            detail::check_no_repeats(s, 0, rep);
            break;
        case ClassTag::Hypergraph:
            detail::check_no_repeats(s, 0, rep);
            detail::check_entry_symmetric(s, 0, rep);
            break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Restriction and inflation.

// Restriction to a subset; ground set re-indexed densely, relative order of
// the retained elements preserved. old_ids (when requested) records the
// new-id -> old-id map.
inline Structure restrict_to(const Structure& s, const std::vector<int>& subset,
                             std::vector<int>* old_ids = nullptr) {
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> newid(s.n(), -1);
    for (int i = 0; i < int(sorted.size()); ++i) {
        if (sorted[i] < 0 || sorted[i] >= s.n()) throw std::out_of_range("restrict: id out of range");
        newid[sorted[i]] = i;
    }
    Structure out(int(sorted.size()), s.signature());
    for (int r = 0; r < s.rel_count(); ++r)
        for (const auto& t : s.tuples(r)) {
            Tuple m(t.size());
            bool inside = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (newid[t[i]] < 0) { inside = false; break; }
                m[i] = newid[t[i]];
            }
            if (inside) out.add(r, std::move(m));
        }
    out.seal();
    if (old_ids) *old_ids = sorted;
    return out;
}

inline Structure restrict_to(const Structure& s, Mask subset, std::vector<int>* old_ids = nullptr) {
    return restrict_to(s, mask_to_vec(subset), old_ids);
}

// Inflation: replace quotient element i by blocks[i]; block ground sets are
// laid out consecutively. Intra-block tuples come from the block, all other
// tuples from the quotient.
inline Structure inflate(const Structure& quotient, const std::vector<Structure>& blocks) {
    if (int(blocks.size()) != quotient.n())
        throw std::invalid_argument("inflate: one block per quotient element required");
    int n = 0;
    std::vector<int> offset(blocks.size(), 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].signature() != quotient.signature())
            throw std::invalid_argument("inflate: signature mismatch");
        if (blocks[i].n() == 0) throw std::invalid_argument("inflate: empty block");
        offset[i] = n;
        n += blocks[i].n();
    }
    std::vector<int> block_of(n);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (int v = 0; v < blocks[i].n(); ++v) block_of[offset[i] + v] = int(i);

    Structure out(n, quotient.signature());
    for (int r = 0; r < quotient.rel_count(); ++r) {
        int k = quotient.sig(r).arity;
        // intra-block tuples
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (const auto& t : blocks[i].tuples(r)) {
                Tuple m(t.size());
                for (int j = 0; j < k; ++j) m[j] = t[j] + offset[i];
                out.add(r, std::move(m));
            }
        // cross-block tuples: enumerate result tuples whose coordinates do not
        // all lie in one block and test the quotient
        Tuple t(k, 0);
        while (true) {
            bool same = true;
            for (int j = 1; j < k; ++j)
                if (block_of[t[j]] != block_of[t[0]]) { same = false; break; }
            if (!same) {
                Tuple q(k);
                for (int j = 0; j < k; ++j) q[j] = block_of[t[j]];
                if (quotient.has(r, q)) out.add(r, t);
            }
            int j = k - 1;
            while (j >= 0 && t[j] == n - 1) t[j--] = 0;
            if (j < 0) break;
            ++t[j];
        }
    }
    out.seal();
    return out;
}

// ---------------------------------------------------------------------------
// Permutations and derived views.

struct Permutation {
    std::vector<int> oneline;  // values 1..n, each exactly once

    int size() const { return int(oneline.size()); }
    bool valid() const {
        std::vector<int> seen(oneline.size(), 0);
        for (int v : oneline) {
            if (v < 1 || v > int(oneline.size()) || seen[v - 1]) return false;
            seen[v - 1] = 1;
        }
        return true;
    }
    bool operator==(const Permutation&) const = default;
};

// Two linear orders on positions 0..n-1: "lt" is positional order and "prec"
// ranks positions by value.
inline Structure perm_to_structure(const Permutation& p) {
    if (!p.valid()) throw std::invalid_argument("invalid permutation");
    int n = p.size();
    Structure s(n, class_signature(StructureClass::permutation()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) s.add(0, {i, j});
            if (i != j && p.oneline[i] < p.oneline[j]) s.add(1, {i, j});
        }
    s.seal();
    return s;
}

// Inverse of perm_to_structure for structures of the permutation class.
inline Permutation structure_to_perm(const Structure& s) {
    int n = s.n();
    Permutation p;
    p.oneline.assign(n, 0);
    // position order must be the identity order on ids
    for (int i = 0; i < n; ++i) {
        int rank = 1;
        for (int j = 0; j < n; ++j)
            if (j != i && s.has2(1, j, i)) ++rank;
        p.oneline[i] = rank;
    }
    if (!p.valid()) throw std::invalid_argument("structure is not a permutation biorder");
    return p;
}

inline Structure comparability_graph(const Structure& p) {
    ValidationReport rep = validate(p, StructureClass::poset());
    if (!rep.ok()) throw std::invalid_argument("comparability_graph: input is not a poset");
    Structure g(p.n(), class_signature(StructureClass::graph()));
    for (int a = 0; a < p.n(); ++a)
        for (int b = 0; b < p.n(); ++b)
            if (p.has2(0, a, b)) {
                g.add(0, {a, b});
                g.add(0, {b, a});
            }
    g.seal();
    return g;
}

inline Structure underlying_graph(const Structure& d) {
    Structure g(d.n(), class_signature(StructureClass::graph()));
    for (int a = 0; a < d.n(); ++a)
        for (int b = 0; b < d.n(); ++b)
            if (a != b && (d.has2(0, a, b) || d.has2(0, b, a))) g.add(0, {a, b});
    g.seal();
    return g;
}

// Convenience builders used throughout the tests and constructions.

// Relabel ground elements: newid[v] is the new id of old element v.
inline Structure relabel(const Structure& s, const std::vector<int>& newid) {
    Structure out(s.n(), s.signature());
    for (int r = 0; r < s.rel_count(); ++r)
        for (const auto& t : s.tuples(r)) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) m[i] = newid[t[i]];
            out.add(r, std::move(m));
        }
    out.seal();
    return out;
}

inline Structure make_binary(const StructureClass& c, int n, const std::vector<std::pair<int, int>>& pairs) {
    Structure s(n, class_signature(c));
    for (auto [a, b] : pairs) {
        s.add(0, {a, b});
        if (c.tag == ClassTag::Graph) s.add(0, {b, a});
    }
    s.seal();
    return s;
}

inline Structure transitive_closure_poset(int n, std::vector<std::pair<int, int>> covers) {
    std::vector<Mask> up(n, 0);
    for (auto [a, b] : covers) up[a] |= bit(b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (Mask m = up[a]; m; m &= m - 1) {
                Mask nu = up[a] | up[lowest(m)];
                if (nu != up[a]) { up[a] = nu; changed = true; }
            }
    }
    Structure s(n, class_signature(StructureClass::poset()));
    for (int a = 0; a < n; ++a)
        for (Mask m = up[a]; m; m &= m - 1) s.add(0, {a, lowest(m)});
    s.seal();
    return s;
}

inline Structure chain_tournament(int n) {
    Structure s(n, class_signature(StructureClass::tournament()));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) s.add(0, {a, b});
    s.seal();
    return s;
}

inline Structure complete_graph(int n) {
    Structure s(n, class_signature(StructureClass::graph()));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) s.add(0, {a, b});
    s.seal();
    return s;
}

inline Structure empty_structure(const StructureClass& c, int n) {
    Structure s(n, class_signature(c));
    s.seal();
    return s;
}

}  // namespace relx

#endif
