#pragma once

#include "polync/complex.hpp"
#include "polync/core.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polync {

/// Self-intersection labels: d(e, v) models D_ij^2 where the edge e joins
/// components i (vertex v) and j. Every edge carries one label per endpoint.
struct EdgeLabeling {
    std::map<std::pair<CellId, VertexId>, long long> d;

    bool has(CellId edge, VertexId v) const { return d.count({edge, v}) != 0; }

    long long at(CellId edge, VertexId v) const {
        auto it = d.find({edge, v});
        if (it == d.end())
            throw SchemaError("", "missing label for edge " + std::to_string(edge) +
                                      " at vertex " + std::to_string(v));
        return it->second;
    }

    void set(CellId edge, VertexId v, long long value) { d[{edge, v}] = value; }
};

/// One failure of the triple point formula on an edge.
struct TpViolation {
    CellId edge = 0;
    long long sum = 0;
    long long required = 0;
    int incident_triangles = 0;
};

/// Checks D_ij^2 + D_ji^2 against the adjacency type of each edge:
/// 0 on two squares, -1 on a square and a triangle, -2 on two triangles.
/// An empty result certifies numerical d-semistability.
inline std::vector<TpViolation> check_triple_point_formula(const PolysimplicialComplex& cx,
                                                           const EdgeLabeling& labels) {
    std::vector<TpViolation> out;
    for (CellId e : cx.cells_of_dim(1)) {
        const std::vector<CellId> faces = cx.two_cells_at_edge(e);
        if (faces.size() != 2)
            throw PreconditionError("edge " + std::to_string(e) +
                                    " does not lie on exactly two 2-cells");
        int triangles = 0;
        for (CellId f : faces)
            if (cx.is_triangle(f)) ++triangles;
        const auto [u, v] = cx.edge_endpoints(e);
        const long long sum = labels.at(e, u) + labels.at(e, v);
        const long long required = -triangles;
        if (sum != required) out.push_back(TpViolation{e, sum, required, triangles});
    }
    return out;
}

/// Charge of the component at a vertex: Q = 12 - 3k - sum of the vertex-side
/// labels over its k incident edges.
inline long long component_charge(const PolysimplicialComplex& cx, const EdgeLabeling& labels,
                                  VertexId v) {
    const std::vector<CellId> edges = cx.edges_at_vertex(v);
    const long long k = static_cast<long long>(edges.size());
    if (k < 2)
        throw PreconditionError("charge of vertex " + std::to_string(v) +
                                " needs degree >= 2 (irreducible nodal case unsupported)");
    long long sum = 0;
    for (CellId e : edges) sum += labels.at(e, v);
    return 12 - 3 * k - sum;
}

struct ChargeTotal {
    long long total = 0;
    bool ok = false;  // total == 24
};

inline ChargeTotal total_charge_check(const PolysimplicialComplex& cx,
                                      const EdgeLabeling& labels) {
    ChargeTotal res;
    for (VertexId v : cx.vertex_ids()) res.total += component_charge(cx, labels, v);
    res.ok = res.total == 24;
    return res;
}

/// Anticanonical cycle of a component: incident edges in rotation order with
/// their vertex-side labels.
struct ComponentProfile {
    VertexId vertex = 0;
    std::vector<std::pair<CellId, long long>> cycle;
    long long k = 0;
    long long charge = 0;
};

inline ComponentProfile component_profile(const PolysimplicialComplex& cx,
                                          const EdgeLabeling& labels, const RotationSystem& rot,
                                          VertexId v) {
    auto it = rot.find(v);
    if (it == rot.end())
        throw PreconditionError("no rotation data for vertex " + std::to_string(v));
    ComponentProfile p;
    p.vertex = v;
    for (CellId e : it->second) p.cycle.push_back({e, labels.at(e, v)});
    p.k = static_cast<long long>(p.cycle.size());
    p.charge = component_charge(cx, labels, v);
    return p;
}

}  // namespace polync
