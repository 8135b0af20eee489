#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/exact.hpp"
#include "polync/resolution.hpp"

#include <string>
#include <vector>

namespace polync {

/// Gram matrix of the monodromy cone generators: G[s][s] counts triangles of
/// color s, G[s][s'] counts squares colored {s, s'}.
struct MonodromyGram {
    std::vector<std::string> colors;
    IMat matrix;
};

inline MonodromyGram gram_matrix(const PolysimplicialComplex& cx, const Coloring& col) {
    const std::size_t n = col.colors.size();
    MonodromyGram g;
    g.colors = col.colors;
    g.matrix = IMat(n, n);
    for (CellId f : cx.cells_of_dim(2)) {
        if (cx.is_triangle(f)) {
            const int s = col.color_of(FactorSlot{f, 0});
            g.matrix(s, s) += 1;
        } else if (cx.is_square(f)) {
            const int s1 = col.color_of(FactorSlot{f, 0});
            const int s2 = col.color_of(FactorSlot{f, 1});
            if (s1 == s2)
                throw PreconditionError("square " + std::to_string(f) + " uses a single color");
            g.matrix(s1, s2) += 1;
            g.matrix(s2, s1) += 1;
        }
    }
    return g;
}

/// n_tri_s + n_tri_s' + 2 n_sq_ss': the triangle count after the base change
/// u_s = u_s' = u. Cross-checked against an actual subdivision of exactly the
/// {s, s'} squares followed by recomputing forced classes.
inline Int basechange_triangle_count(const PolysimplicialComplex& cx, const Coloring& col, int s,
                                     int s2) {
    if (s == s2) throw PreconditionError("base change requires two distinct colors");
    const MonodromyGram g = gram_matrix(cx, col);
    const Int predicted = g.matrix(s, s) + g.matrix(s2, s2) + 2 * g.matrix(s, s2);

    std::vector<CellId> chosen;
    for (CellId f : cx.cells_of_dim(2)) {
        if (!cx.is_square(f)) continue;
        const int a = col.color_of(FactorSlot{f, 0});
        const int b = col.color_of(FactorSlot{f, 1});
        if ((a == s && b == s2) || (a == s2 && b == s)) chosen.push_back(f);
    }
    const PolysimplicialComplex resolved = subdivide_squares_structural(cx, chosen);
    const ForcedClasses fc = forced_classes(resolved);

    // The merged color class is the one holding any surviving s- or s'-edge.
    std::set<int> merged;
    for (CellId e : cx.cells_of_dim(1)) {
        const int c = edge_color(col, e);
        if (c == s || c == s2) merged.insert(fc.class_of.at(FactorSlot{e, 0}));
    }
    Int counted = 0;
    for (CellId f : resolved.cells_of_dim(2))
        if (resolved.is_triangle(f) && merged.count(fc.class_of.at(FactorSlot{f, 0}))) counted += 1;
    if (counted != predicted)
        throw InternalCheckError("square subdivision cross-check failed: predicted " +
                                 predicted.str() + ", counted " + counted.str());
    return predicted;
}

}  // namespace polync
