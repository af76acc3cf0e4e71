#ifndef RELX_ORACLE_HPP
#define RELX_ORACLE_HPP

#include <functional>
#include <optional>

#include "relx/bounds.hpp"
#include "relx/core.hpp"
#include "relx/intervals.hpp"

// Independent brute-force ground truth: simplicity by full subset enumeration
// straight from the interval definition, exhaustive structure enumeration, and
// minimal-extension search.

namespace relx {

struct SearchBudget {
    int max_added = 2;
    long long max_candidates = 1LL << 28;
};

struct SearchSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace oracle_detail {

// Literal reading of the interval definition; shares nothing with the closure
// machinery in intervals.hpp.
inline bool subset_is_interval_literal(const Structure& s, Mask I) {
    int n = s.n();
    for (int r = 0; r < s.rel_count(); ++r) {
        int k = s.sig(r).arity;
        if (k == 1) continue;  // context set A^0 \ I^0 is empty
        std::vector<int> ctx(k - 1, 0);
        while (true) {
            bool all_inside = true;
            for (int v : ctx)
                if (!(I & bit(v))) { all_inside = false; break; }
            if (!all_inside) {
                for (int pos = 0; pos < k; ++pos) {
                    Tuple t(k);
                    for (int j = 0, c = 0; j < k; ++j)
                        if (j != pos) t[j] = ctx[c++];
                    int first = -1;
                    bool first_member = false;
                    for (Mask m = I; m; m &= m - 1) {
                        int x = lowest(m);
                        t[pos] = x;
                        bool mem = s.has(r, t);
                        if (first < 0) {
                            first = x;
                            first_member = mem;
                        } else if (mem != first_member) {
                            return false;
                        }
                    }
                }
            }
            int j = k - 2;
            while (j >= 0 && ctx[j] == n - 1) ctx[j--] = 0;
            if (j < 0) break;
            ++ctx[j];
        }
    }
    return true;
}

}  // namespace oracle_detail

inline bool exhaustive_is_simple(const Structure& s, int limit = 12) {
    if (s.n() > limit) throw SearchSpaceError("exhaustive_is_simple: ground set over limit");
    int n = s.n();
    if (n <= 2) return true;
    Mask full = full_mask(n);
    for (Mask I = 1; I < full; ++I) {
        int c = popcount(I);
        if (c < 2 || c == n) continue;
        if (oracle_detail::subset_is_interval_literal(s, I)) return false;
    }
    return true;
}

// All proper intervals found by subset enumeration (test oracle for
// maximal_proper_intervals and the closure machinery).
inline std::vector<Mask> exhaustive_proper_intervals(const Structure& s, int limit = 12) {
    if (s.n() > limit) throw SearchSpaceError("exhaustive_proper_intervals: over limit");
    std::vector<Mask> out;
    Mask full = full_mask(s.n());
    for (Mask I = 1; I < full; ++I) {
        int c = popcount(I);
        if (c < 2 || c == s.n()) continue;
        if (oracle_detail::subset_is_interval_literal(s, I)) out.push_back(I);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Labeled enumeration, deterministic order.

using StructureSink = std::function<void(const Structure&)>;

namespace oracle_detail {

inline void enumerate_pair_states(const StructureClass& c, int n, int states, StructureSink sink,
                                  long long cap) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    long long total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        total *= states;
        if (total > cap) throw SearchSpaceError("enumerate_structures: space over cap");
    }
    std::vector<int> st(pairs.size(), 0);
    while (true) {
        Structure s(n, class_signature(c));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto [a, b] = pairs[i];
            switch (c.tag) {
                case ClassTag::Graph:
                    if (st[i]) { s.add(0, {a, b}); s.add(0, {b, a}); }
                    break;
                case ClassTag::Tournament:
                    s.add(0, st[i] ? Tuple{b, a} : Tuple{a, b});
                    break;
                case ClassTag::OrientedGraph:
                    if (st[i] == 1) s.add(0, {a, b});
                    if (st[i] == 2) s.add(0, {b, a});
                    break;
                case ClassTag::Digraph:
                    if (st[i] & 1) s.add(0, {a, b});
                    if (st[i] & 2) s.add(0, {b, a});
                    break;
                default:
                    throw std::invalid_argument("enumerate_pair_states: bad class");
            }
        }
        s.seal();
        sink(s);
        std::size_t j = pairs.size();
        while (j > 0 && st[j - 1] == states - 1) st[--j] = 0;
        if (j == 0) break;
        ++st[j - 1];
    }
}

// posets: per-pair states {incomparable, a<b, b<a} with incremental
// transitivity pruning over the already-assigned prefix
inline void enumerate_posets(int n, StructureSink sink) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    // rel[a][b]: 0 unknown/incomparable, 1 a<b, 2 b<a (symmetric storage)
    std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == pairs.size()) {
            Structure s(n, class_signature(StructureClass::poset()));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (rel[a][b] == 1) s.add(0, {a, b});
                    if (rel[a][b] == 2) s.add(0, {b, a});
                }
            s.seal();
            sink(s);
            return;
        }
        auto [a, b] = pairs[idx];
        auto less = [&](int x, int y) {
            if (x < y) return rel[x][y] == 1;
            return rel[y][x] == 2;
        };
        auto assigned = [&](int x, int y) {
            return std::max(x, y) < b || (std::max(x, y) == b && std::min(x, y) <= a);
        };
        for (int st = 0; st < 3; ++st) {
            rel[a][b] = st;
            bool ok = true;
            // check every transitivity triple whose pairs are all assigned
            for (int z = 0; z < n && ok; ++z) {
                if (z == a || z == b) continue;
                if (!assigned(a, z) || !assigned(b, z)) continue;
                // chains through the new pair
                if (st == 1) {  // a<b
                    if (less(z, a) && !less(z, b)) ok = false;
                    if (less(b, z) && !less(a, z)) ok = false;
                }
                if (st == 2) {  // b<a
                    if (less(z, b) && !less(z, a)) ok = false;
                    if (less(a, z) && !less(b, z)) ok = false;
                }
                if (st == 0) {  // a,b incomparable: no chain may force them
                    if (less(a, z) && less(z, b)) ok = false;
                    if (less(b, z) && less(z, a)) ok = false;
                }
            }
            if (ok) rec(idx + 1);
        }
        rel[a][b] = 0;
    };
    rec(0);
}

inline void enumerate_tuple_masks(const StructureClass& c, int n, StructureSink sink, long long cap) {
    std::vector<Tuple> space;
    Tuple t(c.k, 0);
    while (true) {
        bool ok = true;
        if (c.tag == ClassTag::KaryIrreflexive || c.tag == ClassTag::Hypergraph) {
            Mask seen = 0;
            for (int v : t) {
                if (seen & bit(v)) { ok = false; break; }
                seen |= bit(v);
            }
        }
        if (c.tag == ClassTag::Hypergraph)
            ok = ok && std::is_sorted(t.begin(), t.end());  // one representative per edge
        if (ok) space.push_back(t);
        int j = c.k - 1;
        while (j >= 0 && t[j] == n - 1) t[j--] = 0;
        if (j < 0) break;
        ++t[j];
    }
    if (int(space.size()) >= 62 || (1LL << space.size()) > cap)
        throw SearchSpaceError("enumerate_structures: tuple space over cap");
    for (Mask m = 0; m < (Mask{1} << space.size()); ++m) {
        Structure s(n, class_signature(c));
        for (std::size_t i = 0; i < space.size(); ++i)
            if (m & (Mask{1} << i)) {
                if (c.tag == ClassTag::Hypergraph) {
                    Tuple p = space[i];
                    do s.add(0, p);
                    while (std::next_permutation(p.begin(), p.end()));
                } else {
                    s.add(0, space[i]);
                }
            }
        s.seal();
        sink(s);
    }
}

}  // namespace oracle_detail

// All labeled structures of class c on n elements, each exactly once.
inline void enumerate_structures(const StructureClass& c, int n, StructureSink sink,
                                 long long cap = 1LL << 26) {
    switch (c.tag) {
        case ClassTag::Graph:
        case ClassTag::Tournament:
            oracle_detail::enumerate_pair_states(c, n, 2, sink, cap);
            return;
        case ClassTag::OrientedGraph:
            oracle_detail::enumerate_pair_states(c, n, 3, sink, cap);
            return;
        case ClassTag::Digraph:
            oracle_detail::enumerate_pair_states(c, n, 4, sink, cap);
            return;
        case ClassTag::Poset:
            oracle_detail::enumerate_posets(n, sink);
            return;
        case ClassTag::Permutation: {
            Permutation p;
            p.oneline.resize(n);
            std::iota(p.oneline.begin(), p.oneline.end(), 1);
            do sink(perm_to_structure(p));
            while (std::next_permutation(p.oneline.begin(), p.oneline.end()));
            return;
        }
        case ClassTag::LinearOrder: {
            std::vector<int> rank(n);
            std::iota(rank.begin(), rank.end(), 0);
            do {
                Structure s(n, class_signature(c));
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (rank[a] < rank[b]) s.add(0, {a, b});
                s.seal();
                sink(s);
            } while (std::next_permutation(rank.begin(), rank.end()));
            return;
        }
        case ClassTag::Kary:
        case ClassTag::KaryIrreflexive:
        case ClassTag::Hypergraph:
            oracle_detail::enumerate_tuple_masks(c, n, sink, cap);
            return;
    }
    throw std::invalid_argument("enumerate_structures: unsupported class");
}

inline long long count_structures(const StructureClass& c, int n) {
    long long cnt = 0;
    enumerate_structures(c, n, [&](const Structure&) { ++cnt; });
    return cnt;
}

// ---------------------------------------------------------------------------
// Minimal extension search. New elements take the highest ids; assignments are
// enumerated lexicographically, so the first witness is reproducible.

namespace oracle_detail {

// Closure-based simplicity on raw adjacency rows of one binary relation.
inline bool rows_simple(int N, const std::vector<Mask>& out, const std::vector<Mask>& in) {
    if (N <= 2) return true;
    Mask full = full_mask(N);
    // cheap necessary condition: some pair already forms an interval
    for (int x = 0; x < N; ++x)
        for (int y = x + 1; y < N; ++y) {
            Mask I = bit(x) | bit(y);
            if (!(((out[x] ^ out[y]) | (in[x] ^ in[y])) & ~I)) return false;
        }
    for (int x = 0; x < N; ++x)
        for (int y = x + 1; y < N; ++y) {
            Mask I = bit(x) | bit(y);
            while (true) {
                Mask forced = 0;
                int x0 = lowest(I);
                for (Mask m = I & (I - 1); m; m &= m - 1) {
                    int z = lowest(m);
                    forced |= ((out[x0] ^ out[z]) | (in[x0] ^ in[z])) & ~I;
                }
                if (!forced) break;
                I |= forced;
            }
            if (I != full) return false;
        }
    return true;
}

struct BinarySearchModel {
    int states = 2;
    // apply state st to pair (a,b), a<b, writing rows
    void apply(ClassTag tag, int a, int b, int st, std::vector<Mask>& out, std::vector<Mask>& in) const {
        auto arc = [&](int u, int v) {
            out[u] |= bit(v);
            in[v] |= bit(u);
        };
        switch (tag) {
            case ClassTag::Graph:
                if (st) { arc(a, b); arc(b, a); }
                break;
            case ClassTag::Tournament:
                st ? arc(b, a) : arc(a, b);
                break;
            case ClassTag::OrientedGraph:
                if (st == 1) arc(a, b);
                if (st == 2) arc(b, a);
                break;
            case ClassTag::Digraph:
                if (st & 1) arc(a, b);
                if (st & 2) arc(b, a);
                break;
            case ClassTag::Poset:
                if (st == 1) arc(a, b);
                if (st == 2) arc(b, a);
                break;
            default:
                throw std::invalid_argument("binary search model: bad class");
        }
    }
};

inline int class_states(ClassTag tag) {
    switch (tag) {
        case ClassTag::Graph:
        case ClassTag::Tournament: return 2;
        case ClassTag::OrientedGraph:
        case ClassTag::Poset: return 3;
        case ClassTag::Digraph: return 4;
        default: return 0;
    }
}

inline bool poset_rows_valid(int N, const std::vector<Mask>& out) {
    for (int a = 0; a < N; ++a)
        for (Mask m = out[a]; m; m &= m - 1)
            if (out[lowest(m)] & ~out[a]) return false;
    return true;
}

// Search over all m-element extensions of a single-binary-relation structure.
// Returns the first simple candidate's rows, in lexicographic assignment order.
inline std::optional<std::vector<Mask>> binary_extension_search(const Structure& s, ClassTag tag,
                                                                int m, long long cap) {
    int n = s.n(), N = n + m;
    int states = class_states(tag);
    BinarySearchModel model;
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < n; ++v) slots.push_back({v, n + i});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) slots.push_back({n + i, n + j});
    long long total = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        total *= states;
        if (total > cap) throw SearchSpaceError("extension search space over cap");
    }
    std::vector<int> st(slots.size(), 0);
    std::vector<Mask> base_out(N, 0), base_in(N, 0);
    for (int v = 0; v < n; ++v) {
        base_out[v] = s.out(0, v);
        base_in[v] = s.in(0, v);
    }
    while (true) {
        std::vector<Mask> out = base_out, in = base_in;
        for (std::size_t i = 0; i < slots.size(); ++i)
            model.apply(tag, slots[i].first, slots[i].second, st[i], out, in);
        bool valid = tag != ClassTag::Poset || poset_rows_valid(N, out);
        if (valid && rows_simple(N, out, in)) return out;
        std::size_t j = slots.size();
        while (j > 0 && st[j - 1] == states - 1) st[--j] = 0;
        if (j == 0) break;
        ++st[j - 1];
    }
    return std::nullopt;
}

inline std::optional<Structure> permutation_extension_search(const Structure& s, int m,
                                                             long long cap) {
    Permutation p = structure_to_perm(s);
    int n = p.size();
    long long total = 1;
    for (int i = 0; i < m; ++i) total *= (long long)(n + i + 1) * (n + i + 1);
    if (total > cap) throw SearchSpaceError("extension search space over cap");
    // insert m points, tracking where the inserted points sit so the original
    // occupies the remaining positions in order
    std::function<std::optional<Structure>(const std::vector<int>&, const std::vector<char>&, int)>
        rec = [&](const std::vector<int>& oneline, const std::vector<char>& added, int left)
        -> std::optional<Structure> {
        if (left == 0) {
            Permutation q{oneline};
            Structure e = perm_to_structure(q);
            if (is_simple(e)) return e;
            return std::nullopt;
        }
        int sz = int(oneline.size());
        for (int pos = 0; pos <= sz; ++pos)
            for (int val = 1; val <= sz + 1; ++val) {
                std::vector<int> nl(oneline);
                for (int& v : nl)
                    if (v >= val) ++v;
                nl.insert(nl.begin() + pos, val);
                std::vector<char> na(added);
                na.insert(na.begin() + pos, 1);
                if (auto r = rec(nl, na, left - 1)) return r;
            }
        return std::nullopt;
    };
    std::vector<char> added(n, 0);
    return rec(p.oneline, added, m);
}

}  // namespace oracle_detail

// Does some class-valid extension of s by exactly m new elements become simple?
// Returns the first witness in lexicographic assignment order.
inline std::optional<Structure> extension_witness(const Structure& s, const StructureClass& c,
                                                  int m, long long cap = 1LL << 28) {
    if (m == 0) return is_simple(s) ? std::optional<Structure>(s) : std::nullopt;
    switch (c.tag) {
        case ClassTag::Graph:
        case ClassTag::Tournament:
        case ClassTag::OrientedGraph:
        case ClassTag::Digraph:
        case ClassTag::Poset: {
            auto rows = oracle_detail::binary_extension_search(s, c.tag, m, cap);
            if (!rows) return std::nullopt;
            int N = s.n() + m;
            Structure e(N, class_signature(c));
            for (int a = 0; a < N; ++a)
                for (Mask mm = (*rows)[a]; mm; mm &= mm - 1) e.add(0, {a, lowest(mm)});
            e.seal();
            return e;
        }
        case ClassTag::Permutation:
            return oracle_detail::permutation_extension_search(s, m, cap);
        default:
            throw std::invalid_argument("extension_witness: unsupported class");
    }
}

inline std::optional<int> minimal_extension_size(const Structure& s, const StructureClass& c,
                                                 const SearchBudget& budget) {
    for (int m = 0; m <= budget.max_added; ++m)
        if (extension_witness(s, c, m, budget.max_candidates)) return m;
    return std::nullopt;
}

inline std::optional<ExtensionResult> find_one_point_extension(const Structure& s,
                                                               const StructureClass& c,
                                                               long long cap = 1LL << 28) {
    auto w = extension_witness(s, c, 1, cap);
    if (!w) return std::nullopt;
    ExtensionResult res;
    res.extended = *w;
    res.original_image.resize(s.n());
    std::iota(res.original_image.begin(), res.original_image.end(), 0);
    if (c.tag == ClassTag::Permutation) {
        // originals sit wherever the inserted point left them; recover by
        // locating the subsequence equal to the input pattern
        // (single inserted point: try removing each position)
        Permutation q = structure_to_perm(*w);
        for (int skip = 0; skip < q.size(); ++skip) {
            std::vector<int> sub;
            for (int i = 0; i < q.size(); ++i)
                if (i != skip) sub.push_back(q.oneline[i]);
            std::vector<int> rank(sub.size());
            std::iota(rank.begin(), rank.end(), 0);
            std::sort(rank.begin(), rank.end(), [&](int a, int b) { return sub[a] < sub[b]; });
            std::vector<int> pat(sub.size());
            for (std::size_t i = 0; i < sub.size(); ++i) pat[rank[i]] = int(i) + 1;
            if (perm_to_structure(Permutation{pat}) == s) {
                res.original_image.clear();
                for (int i = 0; i < q.size(); ++i)
                    if (i != skip) res.original_image.push_back(i);
                res.added = {skip};
                return res;
            }
        }
        return std::nullopt;  // unreachable
    }
    res.added = {s.n()};
    return res;
}

}  // namespace relx

#endif
