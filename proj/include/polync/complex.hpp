#pragma once

#include "polync/core.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polync {

/// A product of simplices. `factors` lists the dimension of each simplex
/// factor (every factor has dimension >= 1; a point has an empty list).
/// `vertices` realizes the product in row-major order: the vertex with
/// factor coordinates (t_0, ..., t_{k-1}) sits at the flat index in which
/// the last coordinate varies fastest. A square is stored as
/// [v00, v01, v10, v11]; its boundary cycle is v00 -> v01 -> v11 -> v10.
struct Polysimplex {
    CellId id = 0;
    std::vector<int> factors;
    std::vector<VertexId> vertices;

    int dimension() const {
        int d = 0;
        for (int f : factors) d += f;
        return d;
    }

    std::size_t expected_vertex_count() const {
        std::size_t n = 1;
        for (int f : factors) n *= static_cast<std::size_t>(f) + 1;
        return n;
    }

    std::size_t flat_index(const std::vector<int>& tuple) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            idx = idx * (static_cast<std::size_t>(factors[i]) + 1) + static_cast<std::size_t>(tuple[i]);
        return idx;
    }

    std::vector<int> tuple_of(std::size_t flat) const {
        std::vector<int> t(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            const std::size_t base = static_cast<std::size_t>(factors[i]) + 1;
            t[i] = static_cast<int>(flat % base);
            flat /= base;
        }
        return t;
    }
};

/// One face-of relation. `slot_map[p]` is the factor of the coface that the
/// p-th (positive-dimensional) factor of the face arises from.
struct FaceIncidence {
    CellId face = 0;
    CellId coface = 0;
    std::vector<int> slot_map;
};

/// Cyclic order of the incident edge cells around each vertex.
using RotationSystem = std::map<VertexId, std::vector<CellId>>;

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

enum class SpaceType { Point, Interval, Circle, Sphere, Torus, Other };

inline std::string to_string(SpaceType t) {
    switch (t) {
        case SpaceType::Point: return "Point";
        case SpaceType::Interval: return "Interval";
        case SpaceType::Circle: return "Circle";
        case SpaceType::Sphere: return "Sphere";
        case SpaceType::Torus: return "Torus";
        default: return "Other";
    }
}

struct DirectedSide {
    CellId edge = 0;
    VertexId from = 0;
    VertexId to = 0;
};

/// A face of a polysimplex described abstractly by the chosen vertex subset
/// of each factor.
struct AbstractFace {
    std::vector<std::vector<int>> chosen;  // per factor, sorted vertex indices
    std::vector<VertexId> vertex_set;      // sorted global ids
};

inline std::vector<AbstractFace> proper_faces(const Polysimplex& cell) {
    std::vector<AbstractFace> out;
    if (cell.factors.empty()) return out;
    std::vector<std::vector<std::vector<int>>> subsets(cell.factors.size());
    for (std::size_t i = 0; i < cell.factors.size(); ++i) {
        const int nv = cell.factors[i] + 1;
        for (unsigned mask = 1; mask < (1u << nv); ++mask) {
            std::vector<int> s;
            for (int b = 0; b < nv; ++b)
                if (mask & (1u << b)) s.push_back(b);
            subsets[i].push_back(std::move(s));
        }
    }
    std::vector<std::size_t> pick(cell.factors.size(), 0);
    while (true) {
        bool all_full = true;
        for (std::size_t i = 0; i < pick.size(); ++i)
            if (subsets[i][pick[i]].size() != static_cast<std::size_t>(cell.factors[i]) + 1) all_full = false;
        if (!all_full) {
            AbstractFace f;
            f.chosen.resize(pick.size());
            for (std::size_t i = 0; i < pick.size(); ++i) f.chosen[i] = subsets[i][pick[i]];
            std::vector<int> tuple(pick.size(), 0);
            std::vector<std::size_t> pos(pick.size(), 0);
            while (true) {
                for (std::size_t i = 0; i < pick.size(); ++i) tuple[i] = f.chosen[i][pos[i]];
                f.vertex_set.push_back(cell.vertices[cell.flat_index(tuple)]);
                std::size_t i = pick.size();
                while (i-- > 0) {
                    if (++pos[i] < f.chosen[i].size()) break;
                    pos[i] = 0;
                    if (i == 0) goto face_done;
                }
            }
        face_done:
            std::sort(f.vertex_set.begin(), f.vertex_set.end());
            out.push_back(std::move(f));
        }
        std::size_t i = pick.size();
        bool carried = false;
        while (i-- > 0) {
            if (++pick[i] < subsets[i].size()) {
                carried = true;
                break;
            }
            pick[i] = 0;
        }
        if (!carried) break;
    }
    return out;
}

/// Derives the factor-slot map of `face` inside `coface` from vertex data,
/// verifying the full product structure. Returns nullopt when `face` does
/// not embed as a face of `coface`.
inline std::optional<std::vector<int>> derive_slot_map(const Polysimplex& face,
                                                       const Polysimplex& coface) {
    std::map<VertexId, std::size_t> where;
    for (std::size_t i = 0; i < coface.vertices.size(); ++i)
        if (!where.emplace(coface.vertices[i], i).second) return std::nullopt;
    std::vector<std::vector<int>> coords(face.vertices.size());
    for (std::size_t i = 0; i < face.vertices.size(); ++i) {
        auto it = where.find(face.vertices[i]);
        if (it == where.end()) return std::nullopt;
        coords[i] = coface.tuple_of(it->second);
    }
    if (face.factors.empty()) return std::vector<int>{};

    const std::vector<int>& base = coords[0];
    std::vector<int> slot(face.factors.size(), -1);
    std::vector<std::vector<int>> values(face.factors.size());
    for (std::size_t p = 0; p < face.factors.size(); ++p) {
        values[p].assign(static_cast<std::size_t>(face.factors[p]) + 1, -1);
        for (int val = 1; val <= face.factors[p]; ++val) {
            std::vector<int> t(face.factors.size(), 0);
            t[p] = val;
            const std::vector<int>& c = coords[face.flat_index(t)];
            int diff = -1;
            for (std::size_t q = 0; q < c.size(); ++q)
                if (c[q] != base[q]) {
                    if (diff != -1) return std::nullopt;
                    diff = static_cast<int>(q);
                }
            if (diff == -1) return std::nullopt;
            if (slot[p] == -1)
                slot[p] = diff;
            else if (slot[p] != diff)
                return std::nullopt;
            values[p][static_cast<std::size_t>(val)] = c[static_cast<std::size_t>(diff)];
        }
        values[p][0] = base[static_cast<std::size_t>(slot[p])];
        std::set<int> distinct(values[p].begin(), values[p].end());
        if (distinct.size() != values[p].size()) return std::nullopt;
    }
    std::set<int> injective(slot.begin(), slot.end());
    if (injective.size() != slot.size()) return std::nullopt;

    // Every vertex of the face must sit at the predicted product position.
    for (std::size_t flat = 0; flat < face.vertices.size(); ++flat) {
        const std::vector<int> t = face.tuple_of(flat);
        std::vector<int> expect = base;
        for (std::size_t p = 0; p < face.factors.size(); ++p)
            expect[static_cast<std::size_t>(slot[p])] = values[p][static_cast<std::size_t>(t[p])];
        if (coords[flat] != expect) return std::nullopt;
    }
    return slot;
}

class PolysimplicialComplex {
public:
    PolysimplicialComplex() = default;

    PolysimplicialComplex(std::vector<Polysimplex> cells, std::vector<FaceIncidence> incidences,
                          std::optional<RotationSystem> rotation = std::nullopt,
                          bool closed_surface_claim = false)
        : cells_(std::move(cells)),
          incidences_(std::move(incidences)),
          rotation_(std::move(rotation)),
          closed_claim_(closed_surface_claim) {
        std::sort(cells_.begin(), cells_.end(),
                  [](const Polysimplex& a, const Polysimplex& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < cells_.size(); ++i) by_id_.emplace(cells_[i].id, i);
        for (std::size_t i = 0; i < incidences_.size(); ++i) {
            const FaceIncidence& inc = incidences_[i];
            if (!by_id_.count(inc.face) || !by_id_.count(inc.coface)) continue;
            pair_index_.emplace(std::make_pair(inc.face, inc.coface), i);
            faces_of_[inc.coface].push_back(inc.face);
            cofaces_of_[inc.face].push_back(inc.coface);
        }
        for (const Polysimplex& c : cells_) {
            if (c.dimension() == 0 && c.vertices.size() == 1) vertex_cell_[c.vertices[0]] = c.id;
            if (c.dimension() == 1 && c.vertices.size() == 2)
                for (VertexId v : c.vertices) edges_at_[v].push_back(c.id);
        }
        for (auto& [v, ids] : edges_at_) std::sort(ids.begin(), ids.end());
    }

    const std::vector<Polysimplex>& cells() const { return cells_; }
    const std::vector<FaceIncidence>& incidences() const { return incidences_; }
    const std::optional<RotationSystem>& rotation() const { return rotation_; }
    bool closed_surface_claim() const { return closed_claim_; }

    const Polysimplex* find_cell(CellId id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &cells_[it->second];
    }

    const Polysimplex& cell(CellId id) const {
        const Polysimplex* c = find_cell(id);
        if (!c) throw PreconditionError("unknown cell id " + std::to_string(id));
        return *c;
    }

    int dimension() const {
        int d = -1;
        for (const Polysimplex& c : cells_) d = std::max(d, c.dimension());
        return d;
    }

    std::vector<CellId> cells_of_dim(int d) const {
        std::vector<CellId> out;
        for (const Polysimplex& c : cells_)
            if (c.dimension() == d) out.push_back(c.id);
        return out;
    }

    std::size_t count_of_dim(int d) const {
        std::size_t n = 0;
        for (const Polysimplex& c : cells_)
            if (c.dimension() == d) ++n;
        return n;
    }

    std::size_t triangle_count() const {
        std::size_t n = 0;
        for (const Polysimplex& c : cells_)
            if (is_triangle_cell(c)) ++n;
        return n;
    }

    std::size_t square_count() const {
        std::size_t n = 0;
        for (const Polysimplex& c : cells_)
            if (is_square_cell(c)) ++n;
        return n;
    }

    static bool is_triangle_cell(const Polysimplex& c) {
        return c.factors.size() == 1 && c.factors[0] == 2;
    }
    static bool is_square_cell(const Polysimplex& c) {
        return c.factors.size() == 2 && c.factors[0] == 1 && c.factors[1] == 1;
    }
    bool is_triangle(CellId id) const { return is_triangle_cell(cell(id)); }
    bool is_square(CellId id) const { return is_square_cell(cell(id)); }

    std::vector<VertexId> vertex_ids() const {
        std::vector<VertexId> out;
        for (const auto& [v, cid] : vertex_cell_) out.push_back(v);
        return out;
    }

    std::optional<CellId> vertex_cell(VertexId v) const {
        auto it = vertex_cell_.find(v);
        if (it == vertex_cell_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<int>* find_slot_map(CellId face, CellId coface) const {
        auto it = pair_index_.find(std::make_pair(face, coface));
        return it == pair_index_.end() ? nullptr : &incidences_[it->second].slot_map;
    }

    std::vector<CellId> declared_faces(CellId coface) const {
        auto it = faces_of_.find(coface);
        if (it == faces_of_.end()) return {};
        std::vector<CellId> out = it->second;
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<CellId> declared_cofaces(CellId face) const {
        auto it = cofaces_of_.find(face);
        if (it == cofaces_of_.end()) return {};
        std::vector<CellId> out = it->second;
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<CellId> edges_at_vertex(VertexId v) const {
        auto it = edges_at_.find(v);
        return it == edges_at_.end() ? std::vector<CellId>{} : it->second;
    }

    std::array<VertexId, 2> edge_endpoints(CellId edge) const {
        const Polysimplex& e = cell(edge);
        if (e.dimension() != 1 || e.vertices.size() != 2)
            throw PreconditionError("cell " + std::to_string(edge) + " is not an edge");
        return {e.vertices[0], e.vertices[1]};
    }

    std::vector<CellId> two_cells_at_edge(CellId edge) const {
        std::vector<CellId> out;
        for (CellId c : declared_cofaces(edge))
            if (cell(c).dimension() == 2) out.push_back(c);
        return out;
    }

    std::vector<CellId> two_cells_at_vertex(VertexId v) const {
        std::vector<CellId> out;
        auto vc = vertex_cell(v);
        if (!vc) return out;
        for (CellId c : declared_cofaces(*vc))
            if (cell(c).dimension() == 2) out.push_back(c);
        return out;
    }

    /// Directed boundary sides of a 2-cell in its stored corner order.
    std::vector<DirectedSide> boundary_cycle(CellId two_cell) const {
        const Polysimplex& f = cell(two_cell);
        std::vector<VertexId> corners;
        if (is_triangle_cell(f))
            corners = {f.vertices[0], f.vertices[1], f.vertices[2]};
        else if (is_square_cell(f))
            corners = {f.vertices[0], f.vertices[1], f.vertices[3], f.vertices[2]};
        else
            throw PreconditionError("cell " + std::to_string(two_cell) + " is not a 2-cell");

        std::map<std::pair<VertexId, VertexId>, CellId> side_cells;
        for (CellId fc : declared_faces(two_cell)) {
            const Polysimplex& e = cell(fc);
            if (e.dimension() != 1) continue;
            VertexId u = std::min(e.vertices[0], e.vertices[1]);
            VertexId w = std::max(e.vertices[0], e.vertices[1]);
            side_cells[{u, w}] = fc;
        }
        std::vector<DirectedSide> out;
        for (std::size_t i = 0; i < corners.size(); ++i) {
            VertexId a = corners[i];
            VertexId b = corners[(i + 1) % corners.size()];
            auto it = side_cells.find({std::min(a, b), std::max(a, b)});
            if (it == side_cells.end())
                throw PreconditionError("2-cell " + std::to_string(two_cell) +
                                        " has no declared side for a boundary edge");
            out.push_back(DirectedSide{it->second, a, b});
        }
        return out;
    }

private:
    std::vector<Polysimplex> cells_;
    std::vector<FaceIncidence> incidences_;
    std::optional<RotationSystem> rotation_;
    bool closed_claim_ = false;

    std::map<CellId, std::size_t> by_id_;
    std::map<std::pair<CellId, CellId>, std::size_t> pair_index_;
    std::map<CellId, std::vector<CellId>> faces_of_;
    std::map<CellId, std::vector<CellId>> cofaces_of_;
    std::map<VertexId, CellId> vertex_cell_;
    std::map<VertexId, std::vector<CellId>> edges_at_;
};

inline long long euler_characteristic(const PolysimplicialComplex& cx) {
    long long chi = 0;
    for (const Polysimplex& c : cx.cells()) chi += (c.dimension() % 2 == 0) ? 1 : -1;
    return chi;
}

namespace detail {

inline bool skeleton_connected(const PolysimplicialComplex& cx) {
    const std::vector<VertexId> verts = cx.vertex_ids();
    if (verts.empty()) return false;
    std::map<VertexId, bool> seen;
    std::vector<VertexId> stack{verts[0]};
    seen[verts[0]] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (CellId e : cx.edges_at_vertex(v)) {
            for (VertexId w : cx.cell(e).vertices)
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
    }
    for (VertexId v : verts)
        if (!seen[v]) return false;
    return true;
}

}  // namespace detail

/// Closed-surface test: dimension 2, connected, every edge on exactly two
/// 2-cells, every vertex link a single cycle.
inline bool is_closed_surface(const PolysimplicialComplex& cx,
                              std::vector<std::string>* reasons = nullptr) {
    auto fail = [&](const std::string& r) {
        if (reasons) reasons->push_back(r);
        return false;
    };
    if (cx.dimension() != 2) return fail("dimension is not 2");
    if (!detail::skeleton_connected(cx)) return fail("1-skeleton is not connected");
    for (CellId e : cx.cells_of_dim(1)) {
        if (cx.two_cells_at_edge(e).size() != 2)
            return fail("edge " + std::to_string(e) + " does not lie on exactly two 2-cells");
    }
    for (VertexId v : cx.vertex_ids()) {
        const std::vector<CellId> edges = cx.edges_at_vertex(v);
        if (edges.empty()) return fail("vertex " + std::to_string(v) + " lies on no edge");
        // Link graph: nodes are edges at v, one link-edge per 2-cell corner.
        std::map<CellId, int> degree;
        std::size_t corners = 0;
        bool bad = false;
        std::map<CellId, std::vector<CellId>> adj;
        for (CellId f : cx.two_cells_at_vertex(v)) {
            std::vector<DirectedSide> cyc;
            try {
                cyc = cx.boundary_cycle(f);
            } catch (const PreconditionError&) {
                return fail("2-cell " + std::to_string(f) + " has incomplete boundary data");
            }
            std::optional<CellId> ein, eout;
            for (const DirectedSide& s : cyc) {
                if (s.to == v) ein = s.edge;
                if (s.from == v) eout = s.edge;
            }
            if (!ein || !eout) {
                bad = true;
                break;
            }
            ++corners;
            ++degree[*ein];
            ++degree[*eout];
            adj[*ein].push_back(*eout);
            adj[*eout].push_back(*ein);
        }
        if (bad || corners != edges.size())
            return fail("link of vertex " + std::to_string(v) + " is not a single cycle");
        for (CellId e : edges)
            if (degree[e] != 2) return fail("link of vertex " + std::to_string(v) + " is not a single cycle");
        std::set<CellId> seen;
        std::vector<CellId> stack{edges[0]};
        seen.insert(edges[0]);
        while (!stack.empty()) {
            CellId e = stack.back();
            stack.pop_back();
            for (CellId w : adj[e])
                if (seen.insert(w).second) stack.push_back(w);
        }
        if (seen.size() != edges.size())
            return fail("link of vertex " + std::to_string(v) + " is not a single cycle");
    }
    return true;
}

struct OrientationResult {
    bool orientable = false;
    std::map<CellId, int> sign;  // 2-cell id -> +1 / -1
};

/// Propagates 2-cell orientations across shared edges. Assumes every edge
/// lies on exactly two 2-cells. The lowest-id 2-cell of each component keeps
/// its stored vertex order; this fixes the global orientation convention.
inline OrientationResult compute_orientation(const PolysimplicialComplex& cx) {
    OrientationResult res;
    std::map<CellId, std::map<CellId, int>> dir;  // face -> edge -> +-1 traversal
    for (CellId f : cx.cells_of_dim(2))
        for (const DirectedSide& s : cx.boundary_cycle(f)) dir[f][s.edge] = (s.from < s.to) ? 1 : -1;

    for (CellId f : cx.cells_of_dim(2)) {
        if (res.sign.count(f)) continue;
        res.sign[f] = 1;
        std::vector<CellId> stack{f};
        while (!stack.empty()) {
            CellId g = stack.back();
            stack.pop_back();
            for (const auto& [e, d] : dir[g]) {
                for (CellId h : cx.two_cells_at_edge(e)) {
                    if (h == g) continue;
                    const int want = -res.sign[g] * d * dir[h][e];
                    auto it = res.sign.find(h);
                    if (it == res.sign.end()) {
                        res.sign[h] = want;
                        stack.push_back(h);
                    } else if (it->second != want) {
                        res.orientable = false;
                        return res;
                    }
                }
            }
        }
    }
    res.orientable = true;
    return res;
}

inline SpaceType classify(const PolysimplicialComplex& cx) {
    const int dim = cx.dimension();
    if (dim > 2) throw PreconditionError("classify requires a complex of dimension <= 2");
    if (dim < 0) return SpaceType::Other;
    if (dim == 0) return cx.cells().size() == 1 ? SpaceType::Point : SpaceType::Other;
    if (dim == 1) {
        if (!detail::skeleton_connected(cx)) return SpaceType::Other;
        std::size_t deg1 = 0;
        for (VertexId v : cx.vertex_ids()) {
            const std::size_t d = cx.edges_at_vertex(v).size();
            if (d == 0 || d > 2) return SpaceType::Other;
            if (d == 1) ++deg1;
        }
        if (deg1 == 2) return SpaceType::Interval;
        if (deg1 == 0) return SpaceType::Circle;
        return SpaceType::Other;
    }
    if (!is_closed_surface(cx)) return SpaceType::Other;
    if (!compute_orientation(cx).orientable) return SpaceType::Other;
    const long long chi = euler_characteristic(cx);
    if (chi == 2) return SpaceType::Sphere;
    if (chi == 0) return SpaceType::Torus;
    return SpaceType::Other;
}

/// Both Gauss-Bonnet style relations for a closed triangle/square surface:
/// 3 n_tri + 4 n_sq = 2e and v - e + n_tri + n_sq = chi.
inline bool euler_relations_check(long long v, long long e, long long n_tri, long long n_sq,
                                  long long chi) {
    return 3 * n_tri + 4 * n_sq == 2 * e && v - e + n_tri + n_sq == chi;
}

inline bool euler_relations_check(const PolysimplicialComplex& cx) {
    return euler_relations_check(static_cast<long long>(cx.count_of_dim(0)),
                                 static_cast<long long>(cx.count_of_dim(1)),
                                 static_cast<long long>(cx.triangle_count()),
                                 static_cast<long long>(cx.square_count()),
                                 euler_characteristic(cx));
}

/// Rotation system of a closed orientable surface complex, derived from the
/// coherent orientation chosen by compute_orientation.
inline RotationSystem derive_rotation(const PolysimplicialComplex& cx) {
    std::vector<std::string> reasons;
    if (!is_closed_surface(cx, &reasons))
        throw PreconditionError("rotation system requires a closed surface: " +
                                (reasons.empty() ? std::string("unknown") : reasons.front()));
    const OrientationResult orient = compute_orientation(cx);
    if (!orient.orientable)
        throw PreconditionError("rotation system requires an orientable surface");
    RotationSystem rot;
    for (VertexId v : cx.vertex_ids()) {
        std::map<CellId, CellId> next;
        for (CellId f : cx.two_cells_at_vertex(v)) {
            std::vector<DirectedSide> cyc = cx.boundary_cycle(f);
            if (orient.sign.at(f) < 0) {
                std::reverse(cyc.begin(), cyc.end());
                for (DirectedSide& s : cyc) std::swap(s.from, s.to);
            }
            std::optional<CellId> ein, eout;
            for (const DirectedSide& s : cyc) {
                if (s.to == v) ein = s.edge;
                if (s.from == v) eout = s.edge;
            }
            if (!ein || !eout)
                throw PreconditionError("vertex " + std::to_string(v) + " has a broken link");
            next[*ein] = *eout;
        }
        const std::vector<CellId> edges = cx.edges_at_vertex(v);
        std::vector<CellId> order;
        CellId e = edges.front();
        do {
            order.push_back(e);
            auto it = next.find(e);
            if (it == next.end())
                throw PreconditionError("vertex " + std::to_string(v) + " has a broken link");
            e = it->second;
        } while (e != edges.front() && order.size() <= edges.size());
        if (order.size() != edges.size())
            throw PreconditionError("vertex " + std::to_string(v) + " has a broken link");
        rot[v] = std::move(order);
    }
    return rot;
}

inline RotationSystem rotation_or_derive(const PolysimplicialComplex& cx) {
    if (cx.rotation()) return *cx.rotation();
    return derive_rotation(cx);
}

/// Checks every structural invariant and returns the full list of problems.
inline ValidationReport validate(const PolysimplicialComplex& cx) {
    ValidationReport report;
    auto add = [&](std::string code, std::string message) {
        report.violations.push_back(Violation{std::move(code), std::move(message)});
    };

    std::set<CellId> ids;
    std::set<VertexId> vertex_cells;
    bool structural_ok = true;
    for (const Polysimplex& c : cx.cells()) {
        const std::string name = "cell " + std::to_string(c.id);
        if (!ids.insert(c.id).second) {
            add("duplicate-cell-id", name + " appears more than once");
            structural_ok = false;
        }
        for (int f : c.factors)
            if (f < 1) {
                add("bad-factor", name + " has a factor of dimension < 1");
                structural_ok = false;
            }
        if (c.dimension() > 3) add("dimension-bound", name + " has dimension > 3");
        if (c.vertices.size() != c.expected_vertex_count()) {
            add("bad-vertex-count", name + " has " + std::to_string(c.vertices.size()) +
                                        " vertices, expected " +
                                        std::to_string(c.expected_vertex_count()));
            structural_ok = false;
            continue;
        }
        std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
        if (distinct.size() != c.vertices.size()) {
            add("repeated-vertex", name + " is glued to itself (repeated vertex)");
            structural_ok = false;
        }
        if (c.dimension() == 0) {
            if (!vertex_cells.insert(c.vertices[0]).second)
                add("duplicate-vertex-cell",
                    "vertex " + std::to_string(c.vertices[0]) + " has two 0-cells");
        }
    }
    for (const Polysimplex& c : cx.cells())
        for (VertexId v : c.vertices)
            if (!vertex_cells.count(v))
                add("missing-vertex-cell",
                    "vertex " + std::to_string(v) + " of cell " + std::to_string(c.id) +
                        " has no 0-cell");

    if (!structural_ok) return report;  // face analysis needs sane cells

    // Declared incidences must be geometrically realizable.
    std::set<std::pair<CellId, CellId>> seen_pairs;
    std::map<CellId, std::map<std::vector<VertexId>, CellId>> matched;  // coface -> face vertex set
    for (const FaceIncidence& inc : cx.incidences()) {
        const std::string name =
            "incidence (" + std::to_string(inc.face) + " < " + std::to_string(inc.coface) + ")";
        const Polysimplex* f = cx.find_cell(inc.face);
        const Polysimplex* c = cx.find_cell(inc.coface);
        if (!f || !c) {
            add("unknown-cell-ref", name + " references an unknown cell");
            continue;
        }
        if (!seen_pairs.insert({inc.face, inc.coface}).second) {
            add("duplicate-incidence", name + " is declared twice");
            continue;
        }
        if (f->dimension() >= c->dimension()) {
            add("face-not-a-face", name + ": face dimension is not smaller");
            continue;
        }
        const std::optional<std::vector<int>> derived = derive_slot_map(*f, *c);
        if (!derived) {
            add("face-not-a-face", name + ": face is not a face of its coface");
            continue;
        }
        if (*derived != inc.slot_map)
            add("slot-map-mismatch", name + ": declared slot map disagrees with vertex data");
        std::vector<VertexId> vs(f->vertices.begin(), f->vertices.end());
        std::sort(vs.begin(), vs.end());
        auto [it, fresh] = matched[inc.coface].emplace(std::move(vs), inc.face);
        if (!fresh && it->second != inc.face)
            add("ambiguous-face", name + ": two distinct cells fill the same face of " +
                                      std::to_string(inc.coface));
    }

    // Every abstract proper face of every cell must be declared.
    for (const Polysimplex& c : cx.cells()) {
        if (c.dimension() == 0 || c.dimension() > 3) continue;
        const auto& have = matched[c.id];
        for (const AbstractFace& af : proper_faces(c)) {
            if (!have.count(af.vertex_set)) {
                std::string vs;
                for (VertexId v : af.vertex_set) vs += (vs.empty() ? "" : ",") + std::to_string(v);
                add("missing-face",
                    "cell " + std::to_string(c.id) + " is missing its face {" + vs + "}");
            }
        }
    }

    // Slot maps must compose along chains of inclusions.
    for (const FaceIncidence& inc : cx.incidences()) {
        const Polysimplex* f = cx.find_cell(inc.face);
        const Polysimplex* g = cx.find_cell(inc.coface);
        if (!f || !g) continue;
        for (CellId top : cx.declared_cofaces(inc.coface)) {
            const std::vector<int>* outer = cx.find_slot_map(inc.coface, top);
            const std::vector<int>* direct = cx.find_slot_map(inc.face, top);
            if (!outer) continue;
            if (!direct) {
                add("slot-composition", "chain " + std::to_string(inc.face) + " < " +
                                            std::to_string(inc.coface) + " < " + std::to_string(top) +
                                            " has no direct incidence");
                continue;
            }
            bool ok = direct->size() == inc.slot_map.size();
            for (std::size_t p = 0; ok && p < inc.slot_map.size(); ++p) {
                const int mid = inc.slot_map[p];
                if (mid < 0 || static_cast<std::size_t>(mid) >= outer->size() ||
                    (*outer)[static_cast<std::size_t>(mid)] != (*direct)[p])
                    ok = false;
            }
            if (!ok)
                add("slot-composition", "slot maps along " + std::to_string(inc.face) + " < " +
                                            std::to_string(inc.coface) + " < " + std::to_string(top) +
                                            " do not compose");
        }
    }

    if (cx.rotation()) {
        for (const auto& [v, order] : *cx.rotation()) {
            std::vector<CellId> sorted = order;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != cx.edges_at_vertex(v))
                add("rotation-invalid",
                    "rotation at vertex " + std::to_string(v) + " does not list its edges");
        }
    }

    if (cx.closed_surface_claim()) {
        std::vector<std::string> reasons;
        if (!is_closed_surface(cx, &reasons))
            for (const std::string& r : reasons) add("not-closed-surface", r);
    }
    return report;
}

}  // namespace polync
