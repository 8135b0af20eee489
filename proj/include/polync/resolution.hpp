#pragma once

#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/geometry.hpp"
#include "polync/lattice.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace polync {

/// The two opposite-corner pairs of a square cell, each sorted.
inline std::array<std::pair<VertexId, VertexId>, 2> square_diagonals(const Polysimplex& sq) {
    auto mk = [](VertexId a, VertexId b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    return {mk(sq.vertices[0], sq.vertices[3]), mk(sq.vertices[1], sq.vertices[2])};
}

/// Deterministic default: the lexicographically least diagonal by vertex id.
inline std::pair<VertexId, VertexId> default_diagonal(const Polysimplex& sq) {
    const auto d = square_diagonals(sq);
    return std::min(d[0], d[1]);
}

namespace detail {

struct SquareGeometry {
    VertexId a = 0, b = 0, c = 0, d = 0;  // corner cycle a -> b -> c -> d
    CellId side_ab = 0, side_bc = 0, side_cd = 0, side_da = 0;
};

/// Orients the corner cycle of the square so that it starts at diagonal.first
/// and reaches diagonal.second after two steps.
inline SquareGeometry square_geometry(const PolysimplicialComplex& cx, CellId square,
                                      std::pair<VertexId, VertexId> diagonal) {
    const Polysimplex& sq = cx.cell(square);
    if (!PolysimplicialComplex::is_square_cell(sq))
        throw PreconditionError("cell " + std::to_string(square) + " is not a square");
    if (diagonal.first > diagonal.second) std::swap(diagonal.first, diagonal.second);
    const auto diags = square_diagonals(sq);
    if (diagonal != diags[0] && diagonal != diags[1])
        throw PreconditionError("vertices " + std::to_string(diagonal.first) + "," +
                                std::to_string(diagonal.second) +
                                " are not opposite corners of square " + std::to_string(square));
    const std::vector<DirectedSide> cyc = cx.boundary_cycle(square);
    std::array<VertexId, 4> corner{cyc[0].from, cyc[1].from, cyc[2].from, cyc[3].from};
    std::size_t start = 0;
    while (corner[start] != diagonal.first) ++start;
    SquareGeometry g;
    g.a = corner[start];
    g.b = corner[(start + 1) % 4];
    g.c = corner[(start + 2) % 4];
    g.d = corner[(start + 3) % 4];
    g.side_ab = cyc[start].edge;
    g.side_bc = cyc[(start + 1) % 4].edge;
    g.side_cd = cyc[(start + 2) % 4].edge;
    g.side_da = cyc[(start + 3) % 4].edge;
    return g;
}

/// Corner blow-up of the component at `corner`: extends the lattice by an
/// exceptional generator, fixes the two touched curve classes, and assigns
/// the new class to the diagonal edge.
inline void corner_blow_up(ComponentSet& comps, VertexId corner, CellId side1, CellId side2,
                           CellId new_edge) {
    auto it = comps.by_vertex.find(corner);
    if (it == comps.by_vertex.end()) return;
    ComponentLattice& lat = it->second;
    const std::size_t old_rank = lat.rank();
    IMat g(old_rank + 1, old_rank + 1);
    for (std::size_t i = 0; i < old_rank; ++i)
        for (std::size_t j = 0; j < old_rank; ++j) g(i, j) = lat.gram(i, j);
    g(old_rank, old_rank) = -1;
    lat.gram = std::move(g);
    for (auto& [edge, cls] : lat.curve_class) cls.push_back(0);
    lat.curve_class.at(side1)[old_rank] = -1;
    lat.curve_class.at(side2)[old_rank] = -1;
    std::vector<Int> exceptional(old_rank + 1, 0);
    exceptional[old_rank] = 1;
    lat.curve_class[new_edge] = std::move(exceptional);
}

}  // namespace detail

struct SubdivisionResult {
    PolysimplicialComplex complex;
    EdgeLabeling labels;
    CellId new_edge = 0;
    std::array<CellId, 2> new_triangles{0, 0};
};

/// Replaces a square by the two triangles across the given diagonal. The new
/// edge is labeled (-1, -1); at each diagonal endpoint the two old square
/// sides lose 1 on that side (corner blow-up of the anticanonical cycle).
/// Any coloring is invalidated by this operation; callers recompute it.
inline SubdivisionResult subdivide_square(const PolysimplicialComplex& cx,
                                          const EdgeLabeling& labels, CellId square,
                                          std::pair<VertexId, VertexId> diagonal,
                                          ComponentSet* comps = nullptr) {
    const detail::SquareGeometry g = detail::square_geometry(cx, square, diagonal);

    CellId next_id = 0;
    for (const Polysimplex& c : cx.cells()) next_id = std::max(next_id, c.id + 1);
    const CellId edge_id = next_id;
    const CellId tri1_id = next_id + 1;
    const CellId tri2_id = next_id + 2;

    std::vector<Polysimplex> cells;
    for (const Polysimplex& c : cx.cells())
        if (c.id != square) cells.push_back(c);
    cells.push_back(Polysimplex{edge_id, {1}, {g.a, g.c}});
    cells.push_back(Polysimplex{tri1_id, {2}, {g.a, g.b, g.c}});
    cells.push_back(Polysimplex{tri2_id, {2}, {g.a, g.c, g.d}});

    const CellId cell_a = cx.vertex_cell(g.a).value();
    const CellId cell_b = cx.vertex_cell(g.b).value();
    const CellId cell_c = cx.vertex_cell(g.c).value();
    const CellId cell_d = cx.vertex_cell(g.d).value();

    std::vector<FaceIncidence> incs;
    for (const FaceIncidence& inc : cx.incidences())
        if (inc.face != square && inc.coface != square) incs.push_back(inc);
    auto add = [&](CellId face, CellId coface, std::vector<int> slot) {
        incs.push_back(FaceIncidence{face, coface, std::move(slot)});
    };
    add(cell_a, edge_id, {});
    add(cell_c, edge_id, {});
    for (const auto& [tri, sides, corners] :
         {std::tuple{tri1_id, std::array<CellId, 3>{g.side_ab, g.side_bc, edge_id},
                     std::array<CellId, 3>{cell_a, cell_b, cell_c}},
          std::tuple{tri2_id, std::array<CellId, 3>{edge_id, g.side_cd, g.side_da},
                     std::array<CellId, 3>{cell_a, cell_c, cell_d}}}) {
        for (CellId s : sides) add(s, tri, {0});
        for (CellId v : corners) add(v, tri, {});
    }

    std::optional<RotationSystem> rotation = cx.rotation();
    if (rotation) {
        auto insert_between = [&](VertexId v, CellId e1, CellId e2) {
            std::vector<CellId>& order = rotation->at(v);
            for (std::size_t i = 0; i < order.size(); ++i) {
                const std::size_t j = (i + 1) % order.size();
                if ((order[i] == e1 && order[j] == e2) || (order[i] == e2 && order[j] == e1)) {
                    order.insert(order.begin() + static_cast<std::ptrdiff_t>(j), edge_id);
                    return;
                }
            }
            throw PreconditionError("square sides are not adjacent in the rotation at vertex " +
                                    std::to_string(v));
        };
        insert_between(g.a, g.side_ab, g.side_da);
        insert_between(g.c, g.side_bc, g.side_cd);
    }

    SubdivisionResult out{
        PolysimplicialComplex(std::move(cells), std::move(incs), std::move(rotation),
                              cx.closed_surface_claim()),
        labels, edge_id, {tri1_id, tri2_id}};
    out.labels.set(edge_id, g.a, -1);
    out.labels.set(edge_id, g.c, -1);
    out.labels.set(g.side_ab, g.a, labels.at(g.side_ab, g.a) - 1);
    out.labels.set(g.side_da, g.a, labels.at(g.side_da, g.a) - 1);
    out.labels.set(g.side_bc, g.c, labels.at(g.side_bc, g.c) - 1);
    out.labels.set(g.side_cd, g.c, labels.at(g.side_cd, g.c) - 1);

    if (comps) {
        detail::corner_blow_up(*comps, g.a, g.side_ab, g.side_da, edge_id);
        detail::corner_blow_up(*comps, g.c, g.side_bc, g.side_cd, edge_id);
    }
    return out;
}

struct ResolutionResult {
    PolysimplicialComplex complex;
    EdgeLabeling labels;
};

/// Subdivides every square (in id order, default diagonals), yielding a
/// simplicial model: all 2-cells triangles, every edge sum -2, total charge
/// and homeomorphism type unchanged. Identity on simplicial input.
inline ResolutionResult snc_resolution(const PolysimplicialComplex& cx, const EdgeLabeling& labels,
                                       ComponentSet* comps = nullptr) {
    ResolutionResult cur{cx, labels};
    std::vector<CellId> squares;
    for (const Polysimplex& c : cx.cells())
        if (PolysimplicialComplex::is_square_cell(c)) squares.push_back(c.id);
    std::sort(squares.begin(), squares.end());
    for (CellId sq : squares) {
        const auto diag = default_diagonal(cur.complex.cell(sq));
        SubdivisionResult step = subdivide_square(cur.complex, cur.labels, sq, diag, comps);
        cur.complex = std::move(step.complex);
        cur.labels = std::move(step.labels);
    }
    return cur;
}

/// Structural subdivision of a chosen set of squares, without labels; used
/// for counting cross-checks. Default diagonals.
inline PolysimplicialComplex subdivide_squares_structural(const PolysimplicialComplex& cx,
                                                          const std::vector<CellId>& squares) {
    PolysimplicialComplex cur = cx;
    std::vector<CellId> sorted = squares;
    std::sort(sorted.begin(), sorted.end());
    for (CellId sq : sorted) {
        // Run the label-carrying path with synthetic zero labels on the sides.
        EdgeLabeling dummy;
        const detail::SquareGeometry g =
            detail::square_geometry(cur, sq, default_diagonal(cur.cell(sq)));
        for (CellId side : {g.side_ab, g.side_bc, g.side_cd, g.side_da}) {
            const auto [u, v] = cur.edge_endpoints(side);
            dummy.set(side, u, 0);
            dummy.set(side, v, 0);
        }
        SubdivisionResult step = subdivide_square(cur, dummy, sq, default_diagonal(cur.cell(sq)));
        cur = std::move(step.complex);
    }
    return cur;
}

}  // namespace polync
