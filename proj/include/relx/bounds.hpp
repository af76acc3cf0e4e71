#ifndef RELX_BOUNDS_HPP
#define RELX_BOUNDS_HPP

#include "relx/core.hpp"

namespace relx {

inline int ceil_log(int base, long long x) {
    int m = 0;
    long long p = 1;
    while (p < x) {
        p *= base;
        ++m;
    }
    return m;
}

// Worst-case number of added elements needed for a simple extension, per class.
inline int bound(const StructureClass& c, int n) {
    if (n < 1) throw std::invalid_argument("bound: need n >= 1");
    switch (c.tag) {
        case ClassTag::Tournament: return 2;
        case ClassTag::Graph: return ceil_log(2, n + 1);
        case ClassTag::Permutation:
        case ClassTag::Poset:
        case ClassTag::LinearOrder: return (n + 2) / 2;  // ceil((n+1)/2)
        case ClassTag::Digraph: return ceil_log(4, n + 1);
        case ClassTag::OrientedGraph: return ceil_log(3, n + 1);
        case ClassTag::Kary:
        case ClassTag::KaryIrreflexive:
        case ClassTag::Hypergraph:
            if (c.k < 3) throw std::invalid_argument("bound: k-ary classes need arity >= 3");
            return 1;
    }
    throw std::invalid_argument("bound: unsupported class");
}

struct ExtensionResult {
    Structure extended;
    std::vector<int> original_image;  // ids of the original elements inside extended, in input order
    std::vector<int> added;           // ids of the added elements

    int added_count() const { return int(added.size()); }
};

// The defining property of an extension: restricting back gives the input.
inline bool extension_restricts_back(const ExtensionResult& e, const Structure& input) {
    std::vector<int> img = e.original_image;
    std::vector<int> order(img.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return img[a] < img[b]; });
    // original_image must list elements in input order after restriction re-indexing
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] != int(i)) return false;
    return restrict_to(e.extended, img) == input;
}

}  // namespace relx

#endif
