#ifndef RELX_INTERVALS_HPP
#define RELX_INTERVALS_HPP

#include <optional>

#include "relx/core.hpp"

// Interval (module) machinery: deciding interval-hood, smallest-interval
// closures, simplicity, and the maximal proper intervals of Theorem 2.

namespace relx {

struct IntervalWitness {
    std::string relation;
    Tuple tuple;      // member tuple that breaks interchangeability
    int position;     // coordinate holding the swapped element
    int x, y;         // swapped pair: tuple has x at position, swapping in y leaves the relation
};

struct IntervalReport {
    std::vector<int> subset;
    bool is_interval = false;
    std::optional<IntervalWitness> witness;
};

namespace detail {

// Do x and y relate identically to every context that is not entirely inside I?
// Contexts of a binary relation are single outside elements; for higher arity we
// scan the member tuples touching x or y (a disagreement always has a member side).
inline bool pair_interchangeable(const Structure& s, int x, int y, Mask I) {
    Mask outside = full_mask(s.n()) & ~I;
    for (int r = 0; r < s.rel_count(); ++r) {
        if (s.sig(r).arity == 2) {
            if ((s.out(r, x) ^ s.out(r, y)) & outside) return false;
            if ((s.in(r, x) ^ s.in(r, y)) & outside) return false;
        } else if (s.sig(r).arity == 1) {
            continue;  // contexts range over A^0 \ I^0, which is empty
        } else {
            for (int a : {x, y}) {
                int b = a == x ? y : x;
                for (int ti : s.touching(r, a)) {
                    const Tuple& t = s.tuples(r)[ti];
                    Mask ctx_outside = 0;
                    for (int v : t) ctx_outside |= bit(v);
                    for (std::size_t i = 0; i < t.size(); ++i) {
                        if (t[i] != a) continue;
                        Mask others = 0;
                        for (std::size_t j = 0; j < t.size(); ++j)
                            if (j != i) others |= bit(t[j]);
                        if (!(others & ~I)) continue;  // context entirely inside I
                        Tuple sw = t;
                        sw[i] = b;
                        if (!s.has(r, sw)) return false;
                    }
                    (void)ctx_outside;
                }
            }
        }
    }
    return true;
}

// Outside elements / context coordinates forced into any interval containing
// both x and y. For binary relations these are the distinguishing outside
// elements; for higher arity every coordinate of a disagreeing context.
inline Mask pair_forced(const Structure& s, int x, int y, Mask I) {
    Mask outside = full_mask(s.n()) & ~I;
    Mask forced = 0;
    for (int r = 0; r < s.rel_count(); ++r) {
        if (s.sig(r).arity == 2) {
            forced |= (s.out(r, x) ^ s.out(r, y)) & outside;
            forced |= (s.in(r, x) ^ s.in(r, y)) & outside;
        } else if (s.sig(r).arity == 1) {
            continue;  // no context, no constraint
        } else {
            for (int a : {x, y}) {
                int b = a == x ? y : x;
                for (int ti : s.touching(r, a)) {
                    const Tuple& t = s.tuples(r)[ti];
                    for (std::size_t i = 0; i < t.size(); ++i) {
                        if (t[i] != a) continue;
                        Mask others = 0;
                        for (std::size_t j = 0; j < t.size(); ++j)
                            if (j != i) others |= bit(t[j]);
                        if (!(others & ~I)) continue;
                        Tuple sw = t;
                        sw[i] = b;
                        if (!s.has(r, sw)) forced |= others & ~I;
                    }
                }
            }
        }
    }
    return forced;
}

}  // namespace detail

inline IntervalReport is_interval(const Structure& s, const std::vector<int>& subset) {
    IntervalReport rep;
    rep.subset = subset;
    std::sort(rep.subset.begin(), rep.subset.end());
    rep.subset.erase(std::unique(rep.subset.begin(), rep.subset.end()), rep.subset.end());
    for (int v : rep.subset)
        if (v < 0 || v >= s.n()) throw std::out_of_range("is_interval: id out of range");
    Mask I = vec_to_mask(rep.subset);
    if (int(rep.subset.size()) <= 1 || int(rep.subset.size()) == s.n()) {
        rep.is_interval = true;
        return rep;
    }
    // deterministic witness: scan relations in order, member tuples in canonical
    // order, coordinate positions and swap candidates ascending
    for (int r = 0; r < s.rel_count(); ++r) {
        int k = s.sig(r).arity;
        for (const auto& t : s.tuples(r)) {
            for (int i = 0; i < k; ++i) {
                int x = t[i];
                if (!(I & bit(x))) continue;
                Mask others = 0;
                for (int j = 0; j < k; ++j)
                    if (j != i) others |= bit(t[j]);
                if (k > 1 && !(others & ~I)) continue;
                if (k == 1) continue;  // unary tuples have no context
                Tuple sw = t;
                for (int y : rep.subset) {
                    if (y == x) continue;
                    sw[i] = y;
                    if (!s.has(r, sw)) {
                        rep.is_interval = false;
                        rep.witness = IntervalWitness{s.sig(r).name, t, i, x, y};
                        return rep;
                    }
                }
            }
        }
    }
    rep.is_interval = true;
    return rep;
}

inline bool is_interval_mask(const Structure& s, Mask I) {
    int c = popcount(I);
    if (c <= 1 || c == s.n()) return true;
    int x0 = lowest(I);
    for (Mask m = I & (I - 1); m; m &= m - 1)
        if (!detail::pair_interchangeable(s, x0, lowest(m), I)) return false;
    return true;
}

// Smallest interval containing seed: worklist fixpoint adding the forced
// coordinates of every disagreeing context.
inline Mask interval_closure_mask(const Structure& s, Mask seed) {
    if (!seed) throw std::invalid_argument("interval_closure: empty seed");
    Mask I = seed;
    bool changed = true;
    while (changed) {
        changed = false;
        int x0 = lowest(I);
        Mask forced = 0;
        for (Mask m = I & (I - 1); m; m &= m - 1)
            forced |= detail::pair_forced(s, x0, lowest(m), I);
        if (forced & ~I) {
            I |= forced;
            changed = true;
        }
    }
    return I;
}

inline std::vector<int> interval_closure(const Structure& s, const std::vector<int>& seed) {
    return mask_to_vec(interval_closure_mask(s, vec_to_mask(seed)));
}

inline bool is_simple(const Structure& s) {
    if (s.n() <= 2) return true;
    Mask full = full_mask(s.n());
    for (int x = 0; x < s.n(); ++x)
        for (int y = x + 1; y < s.n(); ++y)
            if (interval_closure_mask(s, bit(x) | bit(y)) != full) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Strong modules and the shape of the top decomposition level.
//
// An interval is strong when it overlaps no other interval. The top level of a
// structure is either
//   - prime: the maximal proper intervals partition the ground set, or
//   - degenerate: some two maximal proper intervals overlap (their union is the
//     whole set); the structure is then a series or parallel composition of
//     three or more parts.

enum class TopKind { Trivial, Prime, Series, Parallel };

struct TopShape {
    TopKind kind = TopKind::Trivial;
    // Maximal proper strong intervals. Prime: sorted by smallest element.
    // Series: in composition order (the direction of the first binary relation
    // with a forward cross pair). Parallel: sorted by smallest element.
    std::vector<Mask> parts;
};

namespace detail {

// Distinct proper pair closures of s.
inline std::vector<Mask> proper_pair_closures(const Structure& s, std::vector<std::vector<Mask>>* table = nullptr) {
    Mask full = full_mask(s.n());
    std::vector<Mask> out;
    if (table) table->assign(s.n(), std::vector<Mask>(s.n(), full));
    for (int x = 0; x < s.n(); ++x)
        for (int y = x + 1; y < s.n(); ++y) {
            Mask c = interval_closure_mask(s, bit(x) | bit(y));
            if (table) (*table)[x][y] = (*table)[y][x] = c;
            if (c != full) out.push_back(c);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool overlaps(Mask a, Mask b) {
    return (a & b) && (a & ~b) && (b & ~a);
}

// Smallest strong interval containing the given interval: absorb overlapping
// pair closures until none overlap.
inline Mask strongify(Mask t, const std::vector<Mask>& closures) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Mask c : closures)
            if (overlaps(c, t)) {
                t |= c;
                changed = true;
            }
    }
    return t;
}

}  // namespace detail

inline TopShape top_shape(const Structure& s) {
    TopShape shape;
    int n = s.n();
    if (n <= 1) return shape;
    Mask full = full_mask(n);

    std::vector<std::vector<Mask>> table;
    std::vector<Mask> closures = detail::proper_pair_closures(s, &table);

    // components of "some proper interval contains both": in the prime case
    // these are exactly the maximal proper intervals
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int x = 0; x < n; ++x) {
        if (comp[x] >= 0) continue;
        comp[x] = ncomp;
        std::vector<int> stack{x};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (comp[v] < 0 && table[u][v] != full) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }

    if (ncomp >= 2) {
        shape.kind = TopKind::Prime;
        shape.parts.assign(ncomp, 0);
        for (int v = 0; v < n; ++v) shape.parts[comp[v]] |= bit(v);
        // components are discovered in order of their smallest element
        return shape;
    }

    // Degenerate: compute the part containing each element as the largest
    // proper strong interval through it.
    std::vector<Mask> parts;
    Mask covered = 0;
    for (int x = 0; x < n; ++x) {
        if (covered & bit(x)) continue;
        Mask best = bit(x);
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            Mask c = table[std::min(x, y)][std::max(x, y)];
            if (c == full) continue;
            Mask st = detail::strongify(c, closures);
            if (st != full && popcount(st) > popcount(best)) best = st;
        }
        parts.push_back(best);
        covered |= best;
    }
    // series iff consecutive unions are intervals along a path; parallel iff
    // every pairwise union is an interval
    int k = int(parts.size());
    assert(k >= 3);
    std::vector<std::vector<int>> adj(k);
    int edges = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (is_interval_mask(s, parts[i] | parts[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++edges;
            }
    if (edges == k * (k - 1) / 2) {
        shape.kind = TopKind::Parallel;
        shape.parts = parts;
        return shape;
    }
    // walk the path from a degree-1 endpoint
    shape.kind = TopKind::Series;
    int start = -1;
    for (int i = 0; i < k; ++i)
        if (adj[i].size() == 1) { start = i; break; }
    assert(start >= 0);
    std::vector<int> order{start};
    std::vector<char> used(k, 0);
    used[start] = 1;
    while (int(order.size()) < k) {
        int cur = order.back();
        int next = -1;
        for (int j : adj[cur])
            if (!used[j]) { next = j; break; }
        assert(next >= 0);
        used[next] = 1;
        order.push_back(next);
    }
    // orient by the first binary relation with a forward cross pair
    bool oriented = false, forward = true;
    for (int r = 0; r < s.rel_count() && !oriented; ++r) {
        if (s.sig(r).arity != 2) continue;
        int a = lowest(parts[order[0]]);
        int b = lowest(parts[order[1]]);
        if (s.has2(r, a, b)) { oriented = true; forward = true; }
        else if (s.has2(r, b, a)) { oriented = true; forward = false; }
    }
    if (oriented && !forward) std::reverse(order.begin(), order.end());
    for (int i : order) shape.parts.push_back(parts[i]);
    return shape;
}

// The set M of Theorem 2: intervals other than the whole ground set that are
// maximal under inclusion.
inline std::vector<std::vector<int>> maximal_proper_intervals(const Structure& s) {
    if (s.n() < 2) throw std::invalid_argument("maximal_proper_intervals: need n >= 2");
    TopShape shape = top_shape(s);
    std::vector<Mask> out;
    Mask full = full_mask(s.n());
    switch (shape.kind) {
        case TopKind::Trivial:
            break;
        case TopKind::Prime:
            out = shape.parts;
            break;
        case TopKind::Series: {
            Mask first = shape.parts.front(), last = shape.parts.back();
            out.push_back(full & ~first);
            out.push_back(full & ~last);
            break;
        }
        case TopKind::Parallel:
            for (Mask p : shape.parts) out.push_back(full & ~p);
            break;
    }
    std::vector<std::vector<int>> res;
    res.reserve(out.size());
    for (Mask m : out) res.push_back(mask_to_vec(m));
    std::sort(res.begin(), res.end());
    return res;
}

}  // namespace relx

#endif
