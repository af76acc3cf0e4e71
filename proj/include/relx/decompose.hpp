#ifndef RELX_DECOMPOSE_HPP
#define RELX_DECOMPOSE_HPP

#include <optional>
#include <sstream>

#include "relx/core.hpp"
#include "relx/intervals.hpp"

// Substitution decomposition (Theorem 2): a unique simple quotient inflated by
// blocks. The non-degenerate case is forced; the degenerate case (a series or
// parallel composition of three or more parts, where the two-block split is
// not unique) uses a canonical class-specific split so that the extension
// constructions can rely on it.

namespace relx {

struct Decomposition {
    Structure quotient;                        // simple
    std::vector<Structure> blocks;             // ordered by smallest ground id
    std::vector<std::vector<int>> placements;  // per block, its original ids (sorted)
    std::vector<int> block_map;                // ground element -> block index
    bool degenerate = false;                   // overlapping maximal proper intervals
    TopKind kind = TopKind::Trivial;
    int a1_block = -1;                         // degenerate: index of the preferred A1 block
};

namespace detail {

inline bool part_singletons(const std::vector<Mask>& parts) {
    for (Mask p : parts)
        if (popcount(p) != 1) return false;
    return true;
}

inline Mask union_prefix(const std::vector<Mask>& parts, int count) {
    Mask m = 0;
    for (int i = 0; i < count; ++i) m |= parts[i];
    return m;
}

// Does the sub-permutation on the positions of `part` end with its largest
// value (increasing composition) / smallest value (decreasing)?
inline bool part_ends_with_extreme(const std::vector<int>& oneline, Mask part, bool largest) {
    int last = -1, extreme = -1;
    for (int p : mask_to_vec(part)) {
        last = p;
        if (extreme < 0) extreme = p;
        else if (largest ? oneline[p] > oneline[extreme] : oneline[p] < oneline[extreme]) extreme = p;
    }
    return last == extreme;
}

inline bool part_starts_with_extreme(const std::vector<int>& oneline, Mask part, bool smallest) {
    int first = -1, extreme = -1;
    for (int p : mask_to_vec(part)) {
        if (first < 0) first = p;
        if (extreme < 0) extreme = p;
        else if (smallest ? oneline[p] < oneline[extreme] : oneline[p] > oneline[extreme]) extreme = p;
    }
    return first == extreme;
}

inline int count_maxima(const Structure& poset, Mask set) {
    int cnt = 0;
    for (int v : mask_to_vec(set))
        if (!(poset.out(0, v) & set)) ++cnt;
    return cnt;
}

inline int count_minima(const Structure& poset, Mask set) {
    int cnt = 0;
    for (int v : mask_to_vec(set))
        if (!(poset.in(0, v) & set)) ++cnt;
    return cnt;
}

}  // namespace detail

// Split cases shared between the decomposition and the extension constructors.

enum class PermSplitCase { FirstAvoidsMaxEnd, SecondAvoidsMinStart, Monotone };

// Biorder series split. Parts are in position order; `increasing` tells whether
// the composition is by the increasing or the decreasing pair quotient.
// Returns the number of parts in A1 and the case that fired.
inline int perm_series_split(const std::vector<int>& oneline, const std::vector<Mask>& parts,
                             bool increasing, PermSplitCase* fired = nullptr) {
    int k = int(parts.size());
    for (int j = 1; j < k; ++j) {
        // A1 = parts[0..j); its extreme value lives in parts[j-1]
        if (!detail::part_ends_with_extreme(oneline, parts[j - 1], increasing)) {
            if (fired) *fired = PermSplitCase::FirstAvoidsMaxEnd;
            return j;
        }
    }
    for (int j = 1; j < k; ++j) {
        if (!detail::part_starts_with_extreme(oneline, parts[j], increasing)) {
            if (fired) *fired = PermSplitCase::SecondAvoidsMinStart;
            return j;
        }
    }
    // fully monotone; the construction uses the last two points as A2
    if (fired) *fired = PermSplitCase::Monotone;
    return k - 2 > 0 ? k - 2 : 1;
}

enum class PosetSplitCase { PrefixNoUniqueMax, SuffixNoUniqueMin, Chain };

inline int poset_series_split(const Structure& p, const std::vector<Mask>& parts,
                              PosetSplitCase* fired = nullptr) {
    int k = int(parts.size());
    for (int j = 1; j < k; ++j)
        if (detail::count_maxima(p, parts[j - 1]) >= 2) {
            if (fired) *fired = PosetSplitCase::PrefixNoUniqueMax;
            return j;
        }
    for (int j = k - 1; j >= 1; --j)
        if (detail::count_minima(p, parts[j]) >= 2) {
            if (fired) *fired = PosetSplitCase::SuffixNoUniqueMin;
            return j;
        }
    if (fired) *fired = PosetSplitCase::Chain;
    return 1;
}

// Canonical A1 for a two-block split of a series/parallel top level.
inline Mask canonical_a1(const Structure& s, const TopShape& shape,
                         const std::optional<StructureClass>& cls) {
    const auto& parts = shape.parts;
    int k = int(parts.size());
    ClassTag tag = cls ? cls->tag : ClassTag::Kary;
    if (shape.kind == TopKind::Series) {
        switch (tag) {
            case ClassTag::Tournament:
            case ClassTag::LinearOrder:
                // chains split off an even prefix so both halves extend cleanly
                if (detail::part_singletons(parts) && k >= 4) return detail::union_prefix(parts, 2);
                return parts[0];
            case ClassTag::Permutation: {
                Permutation perm = structure_to_perm(s);
                int a = lowest(parts[0]), b = lowest(parts[1]);
                bool increasing = s.has2(1, a, b);
                int j = perm_series_split(perm.oneline, parts, increasing);
                return detail::union_prefix(parts, j);
            }
            case ClassTag::Poset: {
                int j = poset_series_split(s, parts);
                return detail::union_prefix(parts, j);
            }
            default:
                return parts[0];
        }
    }
    // parallel
    switch (tag) {
        case ClassTag::Graph: {
            int best = 0;
            for (int i = 1; i < k; ++i)
                if (popcount(parts[i]) > popcount(parts[best])) best = i;
            return parts[best];
        }
        case ClassTag::Poset: {
            for (int i = 0; i < k; ++i)
                if (popcount(parts[i]) >= 2) return parts[i];
            return parts[0];
        }
        default:
            return parts[0];
    }
}

inline Decomposition substitution_decompose(const Structure& s,
                                            std::optional<StructureClass> cls = std::nullopt) {
    if (s.n() < 2) throw std::invalid_argument("substitution_decompose: need n >= 2");
    TopShape shape = top_shape(s);
    Decomposition d;
    d.kind = shape.kind;

    std::vector<Mask> blocks_masks;
    if (shape.kind == TopKind::Prime) {
        d.degenerate = false;
        blocks_masks = shape.parts;
    } else {
        d.degenerate = true;
        Mask a1 = canonical_a1(s, shape, cls);
        Mask a2 = full_mask(s.n()) & ~a1;
        blocks_masks = {a1, a2};
    }
    std::sort(blocks_masks.begin(), blocks_masks.end(),
              [](Mask a, Mask b) { return lowest(a) < lowest(b); });
    if (d.degenerate) {
        Mask a1 = canonical_a1(s, shape, cls);
        d.a1_block = blocks_masks[0] == a1 ? 0 : 1;
    }

    d.block_map.assign(s.n(), -1);
    std::vector<int> reps;
    for (int b = 0; b < int(blocks_masks.size()); ++b) {
        std::vector<int> ids;
        d.blocks.push_back(restrict_to(s, blocks_masks[b], &ids));
        d.placements.push_back(ids);
        for (int v : ids) d.block_map[v] = b;
        reps.push_back(ids.front());
    }
    d.quotient = restrict_to(s, reps);
    return d;
}

// Inflate the quotient by the blocks and put every element back at its
// original ground id; equals the decomposed structure.
inline Structure reassemble(const Decomposition& d) {
    Structure inflated = inflate(d.quotient, d.blocks);
    std::vector<int> newid(inflated.n());
    int at = 0;
    for (const auto& placement : d.placements)
        for (int orig : placement) newid[at++] = orig;
    return relabel(inflated, newid);
}

// ---------------------------------------------------------------------------
// Decomposition tree: degenerate nodes split into the maximal number of parts.

struct DecompTree {
    bool leaf = false;
    int element = -1;
    std::string label;
    std::vector<DecompTree> children;
};

namespace detail {

inline std::string pair_kind_label(const Structure& s, int u, int v,
                                   const std::optional<StructureClass>& cls) {
    ClassTag tag = cls ? cls->tag : ClassTag::Kary;
    switch (tag) {
        case ClassTag::Graph:
            return s.has2(0, u, v) ? "join" : "union";
        case ClassTag::Tournament:
        case ClassTag::LinearOrder:
            return "chain";
        case ClassTag::Digraph:
            if (s.has2(0, u, v) && s.has2(0, v, u)) return "join";
            if (!s.has2(0, u, v) && !s.has2(0, v, u)) return "union";
            return "chain";
        case ClassTag::OrientedGraph:
            return (s.has2(0, u, v) || s.has2(0, v, u)) ? "chain" : "union";
        case ClassTag::Poset:
            return (s.has2(0, u, v) || s.has2(0, v, u)) ? "chain" : "antichain";
        case ClassTag::Permutation:
            return (u < v) == s.has2(1, u, v) ? "increasing" : "decreasing";
        default: {
            for (int r = 0; r < s.rel_count(); ++r)
                if (s.sig(r).arity == 2 && (s.has2(r, u, v) != s.has2(r, v, u)))
                    return "series";
            return "parallel";
        }
    }
}

inline DecompTree tree_node(const Structure& s, const std::vector<int>& ids,
                            const std::optional<StructureClass>& cls) {
    DecompTree node;
    if (s.n() == 1) {
        node.leaf = true;
        node.element = ids[0];
        return node;
    }
    TopShape shape = top_shape(s);
    if (shape.kind == TopKind::Prime && shape.parts.size() > 2)
        node.label = "prime";
    else {
        int u = lowest(shape.parts[0]), v = lowest(shape.parts[1]);
        node.label = pair_kind_label(s, u, v, cls);
    }
    for (Mask p : shape.parts) {
        std::vector<int> sub_old;
        Structure sub = restrict_to(s, p, &sub_old);
        std::vector<int> sub_ids(sub_old.size());
        for (std::size_t i = 0; i < sub_old.size(); ++i) sub_ids[i] = ids[sub_old[i]];
        node.children.push_back(tree_node(sub, sub_ids, cls));
    }
    return node;
}

}  // namespace detail

inline DecompTree decomposition_tree(const Structure& s,
                                     std::optional<StructureClass> cls = std::nullopt) {
    if (s.n() < 1) throw std::invalid_argument("decomposition_tree: need n >= 1");
    std::vector<int> ids(s.n());
    std::iota(ids.begin(), ids.end(), 0);
    return detail::tree_node(s, ids, cls);
}

inline void serialize_tree(const DecompTree& t, std::ostream& os) {
    if (t.leaf) {
        os << t.element;
        return;
    }
    os << '(' << t.label;
    for (const auto& c : t.children) {
        os << ' ';
        serialize_tree(c, os);
    }
    os << ')';
}

inline std::string serialize_tree(const DecompTree& t) {
    std::ostringstream os;
    serialize_tree(t, os);
    return os.str();
}

inline int tree_leaf_count(const DecompTree& t) {
    if (t.leaf) return 1;
    int c = 0;
    for (const auto& ch : t.children) c += tree_leaf_count(ch);
    return c;
}

}  // namespace relx

#endif
