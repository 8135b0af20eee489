#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/geometry.hpp"
#include "polync/lattice.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polync {

/// Builds the full downward closure of the given top cells: every face at
/// every codimension becomes a cell, every face-of pair an incidence. Cells
/// are identified by vertex set, so the input must have no multi-edges.
/// Ids: 0-cells take their vertex id; higher cells are numbered from
/// max(vertex id) + 1 in (dimension, vertex set) order.
inline PolysimplicialComplex build_closure_complex(
    const std::vector<Polysimplex>& top_cells, bool closed_surface_claim = false,
    std::optional<RotationSystem> rotation = std::nullopt) {
    struct Proto {
        std::vector<int> factors;
        std::vector<VertexId> vertices;
    };
    std::map<std::vector<VertexId>, Proto> protos;  // key: sorted vertex set
    auto key_of = [](const std::vector<VertexId>& vs) {
        std::vector<VertexId> k = vs;
        std::sort(k.begin(), k.end());
        return k;
    };

    std::vector<std::vector<VertexId>> work;
    for (const Polysimplex& top : top_cells) {
        const auto key = key_of(top.vertices);
        if (protos.count(key))
            throw PreconditionError("two top cells share a vertex set; closure builder requires "
                                    "vertex-determined cells");
        protos[key] = Proto{top.factors, top.vertices};
        work.push_back(key);
    }
    while (!work.empty()) {
        const auto key = work.back();
        work.pop_back();
        const Proto cell = protos.at(key);
        Polysimplex tmp{0, cell.factors, cell.vertices};
        for (const AbstractFace& af : proper_faces(tmp)) {
            if (protos.count(af.vertex_set)) continue;
            Proto face;
            std::vector<std::size_t> positive;
            for (std::size_t i = 0; i < af.chosen.size(); ++i)
                if (af.chosen[i].size() >= 2) {
                    positive.push_back(i);
                    face.factors.push_back(static_cast<int>(af.chosen[i].size()) - 1);
                }
            std::vector<int> tuple(af.chosen.size());
            for (std::size_t i = 0; i < af.chosen.size(); ++i) tuple[i] = af.chosen[i][0];
            std::vector<std::size_t> pos(positive.size(), 0);
            while (true) {
                for (std::size_t p = 0; p < positive.size(); ++p)
                    tuple[positive[p]] = af.chosen[positive[p]][pos[p]];
                face.vertices.push_back(cell.vertices[tmp.flat_index(tuple)]);
                std::size_t p = positive.size();
                bool carried = false;
                while (p-- > 0) {
                    if (++pos[p] < af.chosen[positive[p]].size()) {
                        carried = true;
                        break;
                    }
                    pos[p] = 0;
                }
                if (!carried) break;
            }
            protos[af.vertex_set] = face;
            if (!face.factors.empty()) work.push_back(af.vertex_set);
        }
    }

    VertexId max_vertex = 0;
    for (const auto& [key, proto] : protos)
        for (VertexId v : key) max_vertex = std::max(max_vertex, v);

    std::vector<std::pair<int, std::vector<VertexId>>> order;
    for (const auto& [key, proto] : protos) {
        Polysimplex tmp{0, proto.factors, proto.vertices};
        if (tmp.dimension() > 0) order.push_back({tmp.dimension(), key});
    }
    std::sort(order.begin(), order.end());

    std::map<std::vector<VertexId>, CellId> id_of;
    std::vector<Polysimplex> cells;
    for (const auto& [key, proto] : protos)
        if (proto.factors.empty()) {
            id_of[key] = key[0];
            cells.push_back(Polysimplex{key[0], {}, {key[0]}});
        }
    CellId next = max_vertex + 1;
    for (const auto& [dim, key] : order) {
        id_of[key] = next;
        const Proto& p = protos.at(key);
        cells.push_back(Polysimplex{next, p.factors, p.vertices});
        ++next;
    }

    std::vector<FaceIncidence> incs;
    for (const auto& [dim, key] : order) {
        const Proto& p = protos.at(key);
        const Polysimplex coface{id_of.at(key), p.factors, p.vertices};
        std::set<std::vector<VertexId>> seen;
        for (const AbstractFace& af : proper_faces(coface)) {
            if (!seen.insert(af.vertex_set).second) continue;
            const CellId face_id = id_of.at(af.vertex_set);
            const Proto& fp = protos.at(af.vertex_set);
            const Polysimplex face{face_id, fp.factors, fp.vertices};
            const auto slot = derive_slot_map(face, coface);
            if (!slot) throw InternalCheckError("closure builder produced a non-face");
            incs.push_back(FaceIncidence{face_id, coface.id, *slot});
        }
    }
    return PolysimplicialComplex(std::move(cells), std::move(incs), std::move(rotation),
                                 closed_surface_claim);
}

struct GeneratedExample {
    PolysimplicialComplex complex;
    std::optional<EdgeLabeling> labels;
    std::optional<Coloring> coloring;
    std::optional<ComponentSet> components;
};

namespace detail {

inline Polysimplex tri(VertexId a, VertexId b, VertexId c) {
    return Polysimplex{0, {2}, {a, b, c}};
}

// Row-major square: rows {a,b} and {c,d}; boundary cycle a -> b -> d -> c.
inline Polysimplex sq(VertexId a, VertexId b, VertexId c, VertexId d) {
    return Polysimplex{0, {1, 1}, {a, b, c, d}};
}

inline EdgeLabeling constant_labels(const PolysimplicialComplex& cx, long long value) {
    EdgeLabeling lab;
    for (CellId e : cx.cells_of_dim(1))
        for (VertexId v : cx.cell(e).vertices) lab.set(e, v, value);
    return lab;
}

/// Renames the canonical color classes using representative edges.
inline Coloring rename_colors(const PolysimplicialComplex& cx,
                              const std::vector<std::pair<std::string, CellId>>& reps) {
    const ColorabilityResult res = is_colorable(cx);
    if (!res.colorable()) throw InternalCheckError("generator produced a non-colorable complex");
    const Coloring& canon = *res.coloring;
    if (canon.colors.size() != reps.size())
        throw InternalCheckError("generator color count mismatch: expected " +
                                 std::to_string(reps.size()) + ", got " +
                                 std::to_string(canon.colors.size()));
    std::map<int, std::string> name_of;
    std::vector<std::string> names;
    for (const auto& [name, edge] : reps) {
        const int cls = canon.color_of(FactorSlot{edge, 0});
        if (name_of.count(cls)) throw InternalCheckError("two representatives share a class");
        name_of[cls] = name;
        names.push_back(name);
    }
    Coloring out;
    out.colors = names;
    std::map<int, int> index_of;
    for (int cls = 0; cls < static_cast<int>(canon.colors.size()); ++cls) {
        auto it = name_of.find(cls);
        if (it == name_of.end()) throw InternalCheckError("class without a representative");
        index_of[cls] = static_cast<int>(
            std::find(names.begin(), names.end(), it->second) - names.begin());
    }
    for (const auto& [slot, cls] : canon.assignment) out.assignment[slot] = index_of.at(cls);
    return out;
}

inline CellId edge_between(const PolysimplicialComplex& cx, VertexId u, VertexId v) {
    for (CellId e : cx.edges_at_vertex(u)) {
        const auto ends = cx.edge_endpoints(e);
        if ((ends[0] == u && ends[1] == v) || (ends[0] == v && ends[1] == u)) return e;
    }
    throw PreconditionError("no edge between " + std::to_string(u) + " and " + std::to_string(v));
}

inline GeneratedExample platonic_triangulated(const std::vector<Polysimplex>& faces,
                                              long long label) {
    GeneratedExample ex{build_closure_complex(faces, true), std::nullopt, std::nullopt,
                        std::nullopt};
    ex.labels = constant_labels(ex.complex, label);
    return ex;
}

inline GeneratedExample make_tetrahedron() {
    return platonic_triangulated({tri(0, 1, 2), tri(0, 1, 3), tri(0, 2, 3), tri(1, 2, 3)}, -1);
}

inline GeneratedExample make_octahedron() {
    // 0 top, 5 bottom, equatorial ring 1..4.
    std::vector<Polysimplex> faces;
    for (int i = 0; i < 4; ++i) {
        const VertexId a = 1 + i;
        const VertexId b = 1 + (i + 1) % 4;
        faces.push_back(tri(0, a, b));
        faces.push_back(tri(5, a, b));
    }
    return platonic_triangulated(faces, -1);
}

inline GeneratedExample make_icosahedron() {
    // 0 apex, ring 1..5, ring 6..10, 11 antipode.
    std::vector<Polysimplex> faces;
    for (int i = 0; i < 5; ++i) {
        const VertexId u = 1 + i;
        const VertexId u2 = 1 + (i + 1) % 5;
        const VertexId l = 6 + i;
        const VertexId l2 = 6 + (i + 1) % 5;
        faces.push_back(tri(0, u, u2));
        faces.push_back(tri(11, l, l2));
        faces.push_back(tri(u, l, l2));
        faces.push_back(tri(u, l2, u2));
    }
    return platonic_triangulated(faces, -1);
}

inline GeneratedExample make_cube() {
    // Vertex id = x + 2y + 4z over bits (x, y, z).
    auto vid = [](int x, int y, int z) { return static_cast<VertexId>(x + 2 * y + 4 * z); };
    std::vector<Polysimplex> faces;
    for (int z = 0; z < 2; ++z) faces.push_back(sq(vid(0, 0, z), vid(1, 0, z), vid(0, 1, z), vid(1, 1, z)));
    for (int y = 0; y < 2; ++y) faces.push_back(sq(vid(0, y, 0), vid(1, y, 0), vid(0, y, 1), vid(1, y, 1)));
    for (int x = 0; x < 2; ++x) faces.push_back(sq(vid(x, 0, 0), vid(x, 1, 0), vid(x, 0, 1), vid(x, 1, 1)));
    GeneratedExample ex{build_closure_complex(faces, true), std::nullopt, std::nullopt,
                        std::nullopt};
    ex.labels = constant_labels(ex.complex, 0);
    ex.coloring = rename_colors(ex.complex, {{"x", edge_between(ex.complex, vid(0, 0, 0), vid(1, 0, 0))},
                                             {"y", edge_between(ex.complex, vid(0, 0, 0), vid(0, 1, 0))},
                                             {"z", edge_between(ex.complex, vid(0, 0, 0), vid(0, 0, 1))}});
    return ex;
}

inline GeneratedExample make_prism() {
    // sigma_2 x sigma_1, row-major over (triangle, interval): ids 0..5.
    Polysimplex prism{0, {2, 1}, {0, 1, 2, 3, 4, 5}};
    return GeneratedExample{build_closure_complex({prism}), std::nullopt, std::nullopt,
                            std::nullopt};
}

struct RhombicubIndex {
    // corner c in 0..7 (bits x=1, y=2, z=4); faces 0:x-, 1:x+, 2:y-, 3:y+, 4:z-, 5:z+.
    static std::vector<int> faces_at(int c) {
        return {(c & 1) ? 1 : 0, (c & 2) ? 3 : 2, (c & 4) ? 5 : 4};
    }
    static VertexId vertex(int c, int f) {
        const std::vector<int> fs = faces_at(c);
        for (int i = 0; i < 3; ++i)
            if (fs[i] == f) return static_cast<VertexId>(3 * c + i);
        throw PreconditionError("face not incident to corner");
    }
};

inline GeneratedExample make_rhombicuboctahedron() {
    using R = RhombicubIndex;
    std::vector<Polysimplex> faces;
    for (int c = 0; c < 8; ++c) {
        const auto fs = R::faces_at(c);
        faces.push_back(tri(R::vertex(c, fs[0]), R::vertex(c, fs[1]), R::vertex(c, fs[2])));
    }
    // Face squares: the 2x2 grid of corners of each cube face, row-major
    // along the two free axes.
    for (int f = 0; f < 6; ++f) {
        const int fixed_axis = f / 2;
        const int fixed_bit = f % 2;
        std::vector<int> free_axes;
        for (int a = 0; a < 3; ++a)
            if (a != fixed_axis) free_axes.push_back(a);
        auto corner = [&](int b1, int b2) {
            int c = fixed_bit << fixed_axis;
            c |= b1 << free_axes[0];
            c |= b2 << free_axes[1];
            return c;
        };
        faces.push_back(sq(R::vertex(corner(0, 0), f), R::vertex(corner(0, 1), f),
                           R::vertex(corner(1, 0), f), R::vertex(corner(1, 1), f)));
    }
    // Edge squares: one per cube edge, between its two faces.
    for (int c = 0; c < 8; ++c)
        for (int axis = 0; axis < 3; ++axis) {
            const int c2 = c ^ (1 << axis);
            if (c2 < c) continue;
            std::vector<int> fs;
            for (int f : R::faces_at(c))
                if (f / 2 != axis) fs.push_back(f);
            faces.push_back(sq(R::vertex(c, fs[0]), R::vertex(c, fs[1]), R::vertex(c2, fs[0]),
                               R::vertex(c2, fs[1])));
        }

    GeneratedExample ex{build_closure_complex(faces, true), std::nullopt, std::nullopt,
                        std::nullopt};
    const PolysimplicialComplex& cx = ex.complex;

    // One -1 per component, carried by a triangle-side edge, assigned
    // cyclically inside each corner triangle so every triangle edge gets
    // exactly one -1.
    EdgeLabeling lab = constant_labels(cx, 0);
    std::map<VertexId, CellId> minus_one_edge;
    for (int c = 0; c < 8; ++c) {
        const auto fs = R::faces_at(c);
        for (int i = 0; i < 3; ++i) {
            const VertexId from = R::vertex(c, fs[i]);
            const VertexId to = R::vertex(c, fs[(i + 1) % 3]);
            const CellId e = edge_between(cx, from, to);
            lab.set(e, from, -1);
            minus_one_edge[from] = e;
        }
    }
    ex.labels = lab;

    const CellId red_rep = edge_between(cx, R::vertex(0, 2), R::vertex(0, 4));
    auto direction_rep = [&](int axis) {
        const int c = 0;
        const int c2 = 1 << axis;
        std::vector<int> fs;
        for (int f : R::faces_at(c))
            if (f / 2 != axis) fs.push_back(f);
        return edge_between(cx, R::vertex(c, fs[0]), R::vertex(c2, fs[0]));
    };
    ex.coloring = rename_colors(cx, {{"red", red_rep},
                                     {"yellow", direction_rep(0)},
                                     {"green", direction_rep(1)},
                                     {"blue", direction_rep(2)}});

    const RotationSystem rot = derive_rotation(cx);
    ComponentSet comps;
    const BuiltComponent model =
        build_component(ComponentKind::P1xP1Square, {{BlowUpStep::Op::Interior, 0}});
    for (VertexId v : cx.vertex_ids())
        comps.by_vertex[v] = bind_component(cx, rot, v, model, minus_one_edge.at(v));
    ex.components = comps;
    return ex;
}

inline GeneratedExample make_fig5_colorable() {
    // Two squares sharing an edge; three forced classes.
    GeneratedExample ex{build_closure_complex({sq(0, 1, 2, 3), sq(1, 4, 3, 5)}), std::nullopt,
                        std::nullopt, std::nullopt};
    ex.coloring = rename_colors(ex.complex, {{"blue", edge_between(ex.complex, 0, 1)},
                                             {"green", edge_between(ex.complex, 1, 3)},
                                             {"red", edge_between(ex.complex, 1, 4)}});
    return ex;
}

inline GeneratedExample make_fig5_obstruction() {
    // A chain of triangles around a square forces its two factor classes to
    // merge, so no coloring exists.
    return GeneratedExample{
        build_closure_complex({sq(0, 1, 2, 3), tri(0, 1, 4), tri(0, 4, 2)}), std::nullopt,
        std::nullopt, std::nullopt};
}

inline GeneratedExample make_torus_grid(int n, int m) {
    if (n < 3 || m < 3) throw PreconditionError("torus-grid needs n, m >= 3");
    auto vid = [&](int i, int j) {
        return static_cast<VertexId>(((i % n + n) % n) * m + ((j % m + m) % m));
    };
    std::vector<Polysimplex> faces;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            faces.push_back(sq(vid(i, j), vid(i, j + 1), vid(i + 1, j), vid(i + 1, j + 1)));
    return GeneratedExample{build_closure_complex(faces, true), std::nullopt, std::nullopt,
                            std::nullopt};
}

inline GeneratedExample make_strip_glued(int segments, std::optional<int> shear) {
    if (segments < 3) throw PreconditionError("strip-glued needs at least 3 segments");
    if (!shear) {
        // Open band: a ring of segments, two boundary circles.
        auto vid = [&](int row, int j) {
            return static_cast<VertexId>(row * segments + ((j % segments + segments) % segments));
        };
        std::vector<Polysimplex> faces;
        for (int j = 0; j < segments; ++j)
            faces.push_back(sq(vid(0, j), vid(0, j + 1), vid(1, j), vid(1, j + 1)));
        return GeneratedExample{build_closure_complex(faces), std::nullopt, std::nullopt,
                                std::nullopt};
    }
    const int s = ((*shear % segments) + segments) % segments;
    if (s == 0)
        throw PreconditionError("glued strip needs a nonzero shear; boundary circles would not "
                                "pair off");
    // Height-2 band whose top boundary is glued to the bottom with the shear.
    auto vid = [&](int row, int j) {
        return static_cast<VertexId>(((row % 2 + 2) % 2) * segments +
                                     ((j % segments + segments) % segments));
    };
    std::vector<Polysimplex> faces;
    for (int j = 0; j < segments; ++j) {
        faces.push_back(sq(vid(0, j), vid(0, j + 1), vid(1, j), vid(1, j + 1)));
        faces.push_back(sq(vid(1, j), vid(1, j + 1), vid(0, j + s), vid(0, j + s + 1)));
    }
    return GeneratedExample{build_closure_complex(faces, true), std::nullopt, std::nullopt,
                            std::nullopt};
}

/// Component schedules realizing the bundled labelings of the triangulated
/// platonic solids and the cube.
inline std::optional<ComponentSet> platonic_components(const std::string& name,
                                                       const PolysimplicialComplex& cx) {
    std::vector<BlowUpStep> schedule;
    ComponentKind kind = ComponentKind::P1xP1Square;
    if (name == "tetrahedron") {
        kind = ComponentKind::P2Triangle;
        schedule = {{BlowUpStep::Op::Interior, 0}, {BlowUpStep::Op::Interior, 0},
                    {BlowUpStep::Op::Interior, 1}, {BlowUpStep::Op::Interior, 1},
                    {BlowUpStep::Op::Interior, 2}, {BlowUpStep::Op::Interior, 2}};
    } else if (name == "octahedron") {
        schedule = {{BlowUpStep::Op::Interior, 0}, {BlowUpStep::Op::Interior, 1},
                    {BlowUpStep::Op::Interior, 2}, {BlowUpStep::Op::Interior, 3}};
    } else if (name == "icosahedron") {
        schedule = {{BlowUpStep::Op::Corner, 0}, {BlowUpStep::Op::Interior, 3},
                    {BlowUpStep::Op::Interior, 4}};
    } else if (name == "cube") {
        kind = ComponentKind::P2Triangle;
        schedule = {{BlowUpStep::Op::Interior, 0}, {BlowUpStep::Op::Interior, 1},
                    {BlowUpStep::Op::Interior, 2}};
    } else {
        return std::nullopt;
    }
    const BuiltComponent model = build_component(kind, schedule);
    const RotationSystem rot = derive_rotation(cx);
    ComponentSet comps;
    for (VertexId v : cx.vertex_ids())
        comps.by_vertex[v] = bind_component(cx, rot, v, model, rot.at(v).front());
    return comps;
}

inline bool parse_call(const std::string& name, const std::string& prefix,
                       std::vector<long long>& args) {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return false;
    std::string body = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    args.clear();
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        try {
            args.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw PreconditionError("bad parameter '" + tok + "' in generator name " + name);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return true;
}

}  // namespace detail

inline std::vector<std::string> generator_names() {
    return {"tetrahedron",      "octahedron", "icosahedron",
            "cube",             "prism",      "rhombicuboctahedron",
            "fig5-colorable",   "fig5-obstruction",
            "torus-grid(n,m)",  "strip-glued(segments[,shear])"};
}

inline GeneratedExample generate(const std::string& name) {
    using namespace detail;
    if (name == "tetrahedron" || name == "octahedron" || name == "icosahedron") {
        GeneratedExample ex = name == "tetrahedron"  ? make_tetrahedron()
                              : name == "octahedron" ? make_octahedron()
                                                     : make_icosahedron();
        ex.components = platonic_components(name, ex.complex);
        return ex;
    }
    if (name == "cube") {
        GeneratedExample ex = make_cube();
        ex.components = platonic_components(name, ex.complex);
        return ex;
    }
    if (name == "prism") return make_prism();
    if (name == "rhombicuboctahedron") return make_rhombicuboctahedron();
    if (name == "fig5-colorable") return make_fig5_colorable();
    if (name == "fig5-obstruction") return make_fig5_obstruction();
    std::vector<long long> args;
    if (parse_call(name, "torus-grid", args)) {
        if (args.size() != 2) throw PreconditionError("torus-grid takes (n,m)");
        return make_torus_grid(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
    if (parse_call(name, "strip-glued", args)) {
        if (args.size() == 1) return make_strip_glued(static_cast<int>(args[0]), std::nullopt);
        if (args.size() == 2)
            return make_strip_glued(static_cast<int>(args[0]), static_cast<int>(args[1]));
        throw PreconditionError("strip-glued takes (segments) or (segments,shear)");
    }
    throw PreconditionError("unknown generator '" + name + "'");
}

}  // namespace polync
