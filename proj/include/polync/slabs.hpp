#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace polync {

/// A slab of color s: one connected component of the 1-skeleton after
/// deleting all color-s edges (the dual formulation on Gamma).
struct Slab {
    int color = 0;
    std::vector<VertexId> vertices;  // sorted
};

struct SlabDecomposition {
    int color = 0;
    std::vector<Slab> slabs;  // ordered by smallest vertex
};

inline SlabDecomposition slabs(const PolysimplicialComplex& cx, const Coloring& col, int color) {
    if (color < 0 || static_cast<std::size_t>(color) >= col.colors.size())
        throw PreconditionError("unknown color index " + std::to_string(color));
    const std::vector<VertexId> verts = cx.vertex_ids();
    std::map<VertexId, VertexId> parent;
    for (VertexId v : verts) parent[v] = v;
    auto find = [&](VertexId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (CellId e : cx.cells_of_dim(1)) {
        if (edge_color(col, e) == color) continue;
        const auto [u, v] = cx.edge_endpoints(e);
        parent[find(u)] = find(v);
    }
    std::map<VertexId, std::vector<VertexId>> groups;
    for (VertexId v : verts) groups[find(v)].push_back(v);
    SlabDecomposition out;
    out.color = color;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.slabs.push_back(Slab{color, std::move(members)});
    }
    std::sort(out.slabs.begin(), out.slabs.end(),
              [](const Slab& a, const Slab& b) { return a.vertices.front() < b.vertices.front(); });
    return out;
}

inline SlabDecomposition slabs(const PolysimplicialComplex& cx, const Coloring& col,
                               const std::string& color_name) {
    return slabs(cx, col, col.index_of(color_name));
}

/// Gauss-Bonnet slab count identity on a sphere: n_s = 2 + n_tri_s / 2.
struct SlabIdentity {
    int color = 0;
    long long n_slabs = 0;
    long long n_triangles = 0;
    bool ok = false;
};

inline long long triangle_count_of_color(const PolysimplicialComplex& cx, const Coloring& col,
                                         int color) {
    long long n = 0;
    for (CellId t : cx.cells_of_dim(2))
        if (cx.is_triangle(t) && col.color_of(FactorSlot{t, 0}) == color) ++n;
    return n;
}

inline std::vector<SlabIdentity> slab_count_identity(const PolysimplicialComplex& cx,
                                                     const Coloring& col) {
    std::vector<SlabIdentity> out;
    for (int s = 0; s < static_cast<int>(col.colors.size()); ++s) {
        SlabIdentity id;
        id.color = s;
        id.n_slabs = static_cast<long long>(slabs(cx, col, s).slabs.size());
        id.n_triangles = triangle_count_of_color(cx, col, s);
        id.ok = id.n_triangles % 2 == 0 && id.n_slabs == 2 + id.n_triangles / 2;
        out.push_back(id);
    }
    return out;
}

/// Naive dimension of the d-semistable locally trivial deformation space,
/// both as the structural count e + 24 - 2v - sum_s (n_s - 1) and as the
/// closed form 20 - |S|. A mismatch flags a violated precondition.
struct ParameterCount {
    long long structural = 0;
    long long closed_form = 0;
    bool match = false;
};

inline ParameterCount parameter_count(const PolysimplicialComplex& cx, const Coloring& col) {
    const long long v = static_cast<long long>(cx.count_of_dim(0));
    const long long e = static_cast<long long>(cx.count_of_dim(1));
    long long slab_conditions = 0;
    for (int s = 0; s < static_cast<int>(col.colors.size()); ++s)
        slab_conditions += static_cast<long long>(slabs(cx, col, s).slabs.size()) - 1;
    ParameterCount out;
    out.structural = e + 24 - 2 * v - slab_conditions;
    out.closed_form = 20 - static_cast<long long>(col.colors.size());
    out.match = out.structural == out.closed_form;
    return out;
}

/// Color-s edges leaving the slab, oriented outward (from inside G to the
/// complement). Edges with both endpoints inside contribute nothing.
inline std::vector<DirectedSide> slab_boundary(const PolysimplicialComplex& cx,
                                               const Coloring& col, const Slab& slab) {
    std::vector<DirectedSide> out;
    const std::set<VertexId> inside(slab.vertices.begin(), slab.vertices.end());
    for (CellId e : cx.cells_of_dim(1)) {
        if (edge_color(col, e) != slab.color) continue;
        const auto [u, v] = cx.edge_endpoints(e);
        const bool iu = inside.count(u) != 0;
        const bool iv = inside.count(v) != 0;
        if (iu == iv) continue;
        out.push_back(iu ? DirectedSide{e, u, v} : DirectedSide{e, v, u});
    }
    return out;
}

}  // namespace polync
