#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/exact.hpp"
#include "polync/geometry.hpp"
#include "polync/slabs.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polync {

enum class ComponentKind { P2Triangle, P1xP1Square };

/// One blow-up in a component construction schedule. Positions index the
/// current anticanonical cycle; a corner blow-up at p hits the node between
/// cycle members p and p+1 and inserts the exceptional curve between them.
struct BlowUpStep {
    enum class Op { Interior, Corner };
    Op op = Op::Interior;
    int position = 0;
};

/// Picard lattice of a log CY pair built from a toric model: the Gram matrix
/// and the boundary-curve classes in cyclic order.
struct BuiltComponent {
    IMat gram;
    std::vector<std::vector<Int>> cycle_classes;

    std::size_t rank() const { return gram.rows(); }

    Int pairing(const std::vector<Int>& a, const std::vector<Int>& b) const {
        Int out = 0;
        for (std::size_t i = 0; i < gram.rows(); ++i)
            for (std::size_t j = 0; j < gram.cols(); ++j)
                if (gram(i, j) != 0) out += a[i] * gram(i, j) * b[j];
        return out;
    }

    Int self_intersection(std::size_t pos) const {
        return pairing(cycle_classes[pos], cycle_classes[pos]);
    }
};

inline BuiltComponent build_component(ComponentKind kind, const std::vector<BlowUpStep>& schedule) {
    BuiltComponent c;
    if (kind == ComponentKind::P2Triangle) {
        c.gram = IMat(1, 1);
        c.gram(0, 0) = 1;
        c.cycle_classes = {{Int(1)}, {Int(1)}, {Int(1)}};
    } else {
        c.gram = IMat(2, 2);
        c.gram(0, 1) = 1;
        c.gram(1, 0) = 1;
        c.cycle_classes = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(0)}, {Int(0), Int(1)}};
    }
    for (const BlowUpStep& step : schedule) {
        const std::size_t k = c.cycle_classes.size();
        if (step.position < 0 || static_cast<std::size_t>(step.position) >= k)
            throw PreconditionError("blow-up position " + std::to_string(step.position) +
                                    " does not name a boundary curve");
        const std::size_t pos = static_cast<std::size_t>(step.position);
        const std::size_t old_rank = c.gram.rows();
        IMat g(old_rank + 1, old_rank + 1);
        for (std::size_t i = 0; i < old_rank; ++i)
            for (std::size_t j = 0; j < old_rank; ++j) g(i, j) = c.gram(i, j);
        g(old_rank, old_rank) = -1;
        c.gram = std::move(g);
        for (auto& cls : c.cycle_classes) cls.push_back(0);
        if (step.op == BlowUpStep::Op::Interior) {
            c.cycle_classes[pos][old_rank] = -1;  // strict transform through the point
        } else {
            c.cycle_classes[pos][old_rank] = -1;
            c.cycle_classes[(pos + 1) % k][old_rank] = -1;
            std::vector<Int> exceptional(old_rank + 1, 0);
            exceptional[old_rank] = 1;
            c.cycle_classes.insert(c.cycle_classes.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                                   std::move(exceptional));
        }
    }
    return c;
}

/// Picard data of the component sitting at one vertex of the dual complex,
/// with the double-curve class of every incident edge.
struct ComponentLattice {
    VertexId vertex = 0;
    IMat gram;
    std::map<CellId, std::vector<Int>> curve_class;

    std::size_t rank() const { return gram.rows(); }

    Int pairing(const std::vector<Int>& a, const std::vector<Int>& b) const {
        Int out = 0;
        for (std::size_t i = 0; i < gram.rows(); ++i)
            for (std::size_t j = 0; j < gram.cols(); ++j)
                if (gram(i, j) != 0) out += a[i] * gram(i, j) * b[j];
        return out;
    }
};

/// Attaches a built component at a vertex: cycle position p binds to the
/// p-th edge of the rotation order starting from first_edge.
inline ComponentLattice bind_component(const PolysimplicialComplex& cx, const RotationSystem& rot,
                                       VertexId vertex, const BuiltComponent& built,
                                       CellId first_edge) {
    auto it = rot.find(vertex);
    if (it == rot.end())
        throw PreconditionError("no rotation data for vertex " + std::to_string(vertex));
    const std::vector<CellId>& order = it->second;
    if (order.size() != cx.edges_at_vertex(vertex).size())
        throw PreconditionError("rotation at vertex " + std::to_string(vertex) +
                                " does not match the complex");
    if (order.size() != built.cycle_classes.size())
        throw PreconditionError("component cycle length " +
                                std::to_string(built.cycle_classes.size()) +
                                " does not match vertex degree " + std::to_string(order.size()));
    const auto pos = std::find(order.begin(), order.end(), first_edge);
    if (pos == order.end())
        throw PreconditionError("first edge " + std::to_string(first_edge) +
                                " is not incident to vertex " + std::to_string(vertex));
    const std::size_t start = static_cast<std::size_t>(pos - order.begin());
    ComponentLattice lat;
    lat.vertex = vertex;
    lat.gram = built.gram;
    for (std::size_t p = 0; p < order.size(); ++p)
        lat.curve_class[order[(start + p) % order.size()]] = built.cycle_classes[p];
    return lat;
}

struct ComponentSet {
    std::map<VertexId, ComponentLattice> by_vertex;
};

/// The numerically Cartier lattice: saturated integer kernel of the
/// degree-difference map alpha -> (alpha_i . D_ij - alpha_j . D_ji) over all
/// edges, inside the direct sum of the component Picard lattices.
class CartierLattice {
public:
    CartierLattice(std::vector<VertexId> vertex_order, std::vector<std::size_t> block_offsets,
                   IMat degree, IMat basis)
        : vertex_order_(std::move(vertex_order)),
          block_offsets_(std::move(block_offsets)),
          degree_(std::move(degree)),
          basis_(std::move(basis)),
          basis_snf_(smith_normal_form(basis_)) {}

    const std::vector<VertexId>& vertex_order() const { return vertex_order_; }

    std::size_t block_offset(VertexId v) const {
        for (std::size_t i = 0; i < vertex_order_.size(); ++i)
            if (vertex_order_[i] == v) return block_offsets_[i];
        throw PreconditionError("vertex " + std::to_string(v) + " has no Picard block");
    }

    std::size_t ambient_rank() const { return basis_.rows(); }
    std::size_t rank() const { return basis_.cols(); }
    const IMat& basis() const { return basis_; }
    const IMat& degree_matrix() const { return degree_; }

    /// Invariant factors of the basis matrix; all 1 iff the lattice is a
    /// saturated (primitive) sublattice of the ambient sum.
    std::vector<Int> basis_invariant_factors() const { return basis_snf_.invariant_factors(); }

    bool is_saturated() const {
        for (const Int& d : basis_invariant_factors())
            if (d != 1) return false;
        return true;
    }

    bool contains_ambient(const std::vector<Int>& xi) const {
        if (xi.size() != degree_.cols()) return false;
        for (const Int& r : degree_ * xi)
            if (r != 0) return false;
        return true;
    }

    /// Exact integral coordinates of an ambient vector in the lattice basis.
    std::optional<std::vector<Int>> coordinates_of(const std::vector<Int>& xi) const {
        return solve_in_column_span(basis_snf_, basis_, xi);
    }

private:
    std::vector<VertexId> vertex_order_;
    std::vector<std::size_t> block_offsets_;
    IMat degree_;
    IMat basis_;
    SmithResult basis_snf_;
};

inline CartierLattice numerically_cartier(const PolysimplicialComplex& cx,
                                          const EdgeLabeling& labels, const ComponentSet& comps,
                                          const CancelFn& cancel = {}) {
    std::vector<VertexId> order = cx.vertex_ids();
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (VertexId v : order) {
        auto it = comps.by_vertex.find(v);
        if (it == comps.by_vertex.end())
            throw SchemaError("", "no component lattice for vertex " + std::to_string(v));
        const ComponentLattice& c = it->second;
        if (!c.gram.is_symmetric())
            throw SchemaError("", "Gram matrix of vertex " + std::to_string(v) + " is not symmetric");
        offsets.push_back(total);
        total += c.rank();
    }
    auto offset_of = [&](VertexId v) {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == v) return offsets[i];
        throw PreconditionError("unknown vertex");
    };

    const std::vector<CellId> edges = cx.cells_of_dim(1);
    IMat degree(edges.size(), total);
    for (std::size_t r = 0; r < edges.size(); ++r) {
        const CellId e = edges[r];
        auto [u, v] = cx.edge_endpoints(e);
        if (u > v) std::swap(u, v);
        const std::array<std::pair<VertexId, int>, 2> sides{{{u, 1}, {v, -1}}};
        for (const auto& [vertex, sgn] : sides) {
            const ComponentLattice& c = comps.by_vertex.at(vertex);
            auto cls = c.curve_class.find(e);
            if (cls == c.curve_class.end())
                throw SchemaError("", "component at vertex " + std::to_string(vertex) +
                                          " has no curve class for edge " + std::to_string(e));
            if (cls->second.size() != c.rank())
                throw SchemaError("", "curve class length mismatch at vertex " +
                                          std::to_string(vertex));
            if (c.pairing(cls->second, cls->second) != labels.at(e, vertex))
                throw SchemaError("", "curve class self-intersection at vertex " +
                                          std::to_string(vertex) + ", edge " + std::to_string(e) +
                                          " disagrees with its label");
            // Functional alpha -> alpha . [D]; row of Gram * class.
            const std::size_t off = offset_of(vertex);
            for (std::size_t i = 0; i < c.rank(); ++i) {
                Int coeff = 0;
                for (std::size_t j = 0; j < c.rank(); ++j)
                    if (c.gram(i, j) != 0) coeff += c.gram(i, j) * cls->second[j];
                degree(r, off + i) += sgn * coeff;
            }
        }
    }
    IMat basis = kernel_basis(degree, cancel);
    return CartierLattice(std::move(order), std::move(offsets), std::move(degree),
                          std::move(basis));
}

/// The class xi_G of a slab: the signed sum [D_ji] - [D_ij] over the color-s
/// edges oriented out of G, embedded in the ambient Picard sum.
struct SlabClass {
    Slab slab;
    std::vector<Int> ambient;
};

inline SlabClass slab_class(const PolysimplicialComplex& cx, const Coloring& col,
                            const ComponentSet& comps, const CartierLattice& lattice,
                            const Slab& slab) {
    std::vector<Int> xi(lattice.ambient_rank(), 0);
    for (const DirectedSide& side : slab_boundary(cx, col, slab)) {
        const ComponentLattice& inner = comps.by_vertex.at(side.from);
        const ComponentLattice& outer = comps.by_vertex.at(side.to);
        const std::vector<Int>& d_ij = inner.curve_class.at(side.edge);
        const std::vector<Int>& d_ji = outer.curve_class.at(side.edge);
        const std::size_t off_i = lattice.block_offset(side.from);
        const std::size_t off_j = lattice.block_offset(side.to);
        for (std::size_t t = 0; t < d_ij.size(); ++t) xi[off_i + t] -= d_ij[t];
        for (std::size_t t = 0; t < d_ji.size(); ++t) xi[off_j + t] += d_ji[t];
    }
    if (!lattice.contains_ambient(xi))
        throw SchemaError("", "slab class is not numerically Cartier; component data inconsistent");
    return SlabClass{slab, std::move(xi)};
}

/// Symbolic period homomorphism: each lattice basis vector maps to an
/// exponent vector in Z^parameters (the free abelian stand-in for Pic^0).
struct PeriodHom {
    std::size_t parameters = 0;
    IMat matrix;  // parameters x lattice rank
};

/// phi(xi_G) = 1 iff the exponent vector of xi_G vanishes.
inline std::vector<bool> check_d_semistable(const CartierLattice& lattice, const PeriodHom& period,
                                            const std::vector<SlabClass>& classes) {
    if (period.matrix.rows() != period.parameters || period.matrix.cols() != lattice.rank())
        throw PreconditionError("period matrix must be parameters x rank(lattice)");
    std::vector<bool> out;
    for (const SlabClass& sc : classes) {
        const std::optional<std::vector<Int>> coords = lattice.coordinates_of(sc.ambient);
        if (!coords)
            throw PreconditionError("slab class does not lie in the span of the lattice basis");
        bool trivial = true;
        for (const Int& x : period.matrix * *coords)
            if (x != 0) trivial = false;
        out.push_back(trivial);
    }
    return out;
}

}  // namespace polync
