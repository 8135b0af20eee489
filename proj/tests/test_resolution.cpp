#include <catch2/catch_amalgamated.hpp>

#include "polync/generators.hpp"
#include "polync/polync.hpp"

using namespace polync;

namespace {

bool all_edge_sums(const PolysimplicialComplex& cx, const EdgeLabeling& lab, long long want) {
    for (CellId e : cx.cells_of_dim(1)) {
        const auto ends = cx.edge_endpoints(e);
        if (lab.at(e, ends[0]) + lab.at(e, ends[1]) != want) return false;
    }
    return true;
}

CellId first_square(const PolysimplicialComplex& cx) {
    for (const Polysimplex& c : cx.cells())
        if (PolysimplicialComplex::is_square_cell(c)) return c.id;
    throw std::runtime_error("no square");
}

}  // namespace

TEST_CASE("snc resolution is the identity on simplicial complexes") {
    const auto ex = generate("octahedron");
    const ResolutionResult res = snc_resolution(ex.complex, *ex.labels);
    CHECK(res.complex.cells().size() == ex.complex.cells().size());
    CHECK(res.labels.d == ex.labels->d);
    // And idempotent in general: resolving a resolution changes nothing.
    const auto cube = generate("cube");
    const ResolutionResult once = snc_resolution(cube.complex, *cube.labels);
    const ResolutionResult twice = snc_resolution(once.complex, once.labels);
    CHECK(twice.complex.cells().size() == once.complex.cells().size());
    CHECK(twice.labels.d == once.labels.d);
}

TEST_CASE("cube resolution: 12 triangles, all edge sums -2") {
    const auto ex = generate("cube");
    const ResolutionResult res = snc_resolution(ex.complex, *ex.labels);
    REQUIRE(validate(res.complex).ok());
    CHECK(res.complex.triangle_count() == 12);
    CHECK(res.complex.square_count() == 0);
    CHECK(check_triple_point_formula(res.complex, res.labels).empty());
    CHECK(all_edge_sums(res.complex, res.labels, -2));
    CHECK(classify(res.complex) == SpaceType::Sphere);
    CHECK(total_charge_check(res.complex, res.labels).total == 24);
}

TEST_CASE("the triple point formula holds after every intermediate step") {
    const auto ex = generate("cube");
    PolysimplicialComplex cx = ex.complex;
    EdgeLabeling lab = *ex.labels;
    while (cx.square_count() > 0) {
        const CellId sq = first_square(cx);
        const SubdivisionResult step = subdivide_square(cx, lab, sq, default_diagonal(cx.cell(sq)));
        cx = step.complex;
        lab = step.labels;
        CHECK(check_triple_point_formula(cx, lab).empty());
        CHECK(total_charge_check(cx, lab).total == 24);
    }
}

TEST_CASE("rhombicuboctahedron resolution: 44 triangles, sphere, charge 24") {
    const auto ex = generate("rhombicuboctahedron");
    const ResolutionResult res = snc_resolution(ex.complex, *ex.labels);
    REQUIRE(validate(res.complex).ok());
    CHECK(res.complex.triangle_count() == 44);  // 8 + 2*18
    CHECK(res.complex.square_count() == 0);
    CHECK(euler_characteristic(res.complex) == 2);
    CHECK(classify(res.complex) == SpaceType::Sphere);
    CHECK(check_triple_point_formula(res.complex, res.labels).empty());
    CHECK(all_edge_sums(res.complex, res.labels, -2));
    CHECK(total_charge_check(res.complex, res.labels).total == 24);
}

TEST_CASE("one subdivision: labels, adjacency types and charges") {
    const auto ex = generate("cube");
    const CellId sq = first_square(ex.complex);
    const auto diag = default_diagonal(ex.complex.cell(sq));
    const SubdivisionResult res = subdivide_square(ex.complex, *ex.labels, sq, diag);
    REQUIRE(validate(res.complex).ok());

    SECTION("the new diagonal edge is labeled (-1, -1)") {
        CHECK(res.labels.at(res.new_edge, diag.first) == -1);
        CHECK(res.labels.at(res.new_edge, diag.second) == -1);
    }
    SECTION("former square/square edges now sum to -1") {
        for (const DirectedSide& side : ex.complex.boundary_cycle(sq)) {
            const auto ends = res.complex.edge_endpoints(side.edge);
            CHECK(res.labels.at(side.edge, ends[0]) + res.labels.at(side.edge, ends[1]) == -1);
        }
        CHECK(check_triple_point_formula(res.complex, res.labels).empty());
    }
    SECTION("charges at the blown-up corners are unchanged") {
        CHECK(component_charge(res.complex, res.labels, diag.first) ==
              component_charge(ex.complex, *ex.labels, diag.first));
        CHECK(component_charge(res.complex, res.labels, diag.second) ==
              component_charge(ex.complex, *ex.labels, diag.second));
        CHECK(total_charge_check(res.complex, res.labels).total == 24);
    }
}

TEST_CASE("rhombicuboctahedron corner charges survive a subdivision") {
    const auto ex = generate("rhombicuboctahedron");
    const CellId sq = first_square(ex.complex);
    const auto diag = default_diagonal(ex.complex.cell(sq));
    const SubdivisionResult res = subdivide_square(ex.complex, *ex.labels, sq, diag);
    CHECK(component_charge(res.complex, res.labels, diag.first) == 1);
    CHECK(component_charge(res.complex, res.labels, diag.second) == 1);
}

TEST_CASE("both diagonal choices give identical invariants") {
    for (const char* name : {"cube", "rhombicuboctahedron"}) {
        const auto ex = generate(name);
        INFO(name);
        for (const Polysimplex& c : ex.complex.cells()) {
            if (!PolysimplicialComplex::is_square_cell(c)) continue;
            const auto diags = square_diagonals(c);
            const SubdivisionResult a = subdivide_square(ex.complex, *ex.labels, c.id, diags[0]);
            const SubdivisionResult b = subdivide_square(ex.complex, *ex.labels, c.id, diags[1]);
            CHECK(a.complex.cells().size() == b.complex.cells().size());
            CHECK(a.complex.triangle_count() == b.complex.triangle_count());
            CHECK(classify(a.complex) == classify(b.complex));
            CHECK(total_charge_check(a.complex, a.labels).total ==
                  total_charge_check(b.complex, b.labels).total);
            // Edges not on the square keep their labels.
            std::set<CellId> touched;
            for (const DirectedSide& side : ex.complex.boundary_cycle(c.id))
                touched.insert(side.edge);
            for (CellId e : ex.complex.cells_of_dim(1)) {
                if (touched.count(e)) continue;
                const auto ends = ex.complex.edge_endpoints(e);
                for (VertexId v : ends) {
                    CHECK(a.labels.at(e, v) == ex.labels->at(e, v));
                    CHECK(b.labels.at(e, v) == ex.labels->at(e, v));
                }
            }
        }
    }
}

TEST_CASE("component lattices updated through a resolution stay consistent") {
    const auto ex = generate("rhombicuboctahedron");
    ComponentSet comps = *ex.components;
    const ResolutionResult res = snc_resolution(ex.complex, *ex.labels, &comps);
    // numerically_cartier revalidates every self-intersection against labels.
    const CartierLattice lat = numerically_cartier(res.complex, res.labels, comps);
    CHECK(lat.ambient_rank() == 72 + 2 * 18);
    CHECK(lat.is_saturated());
}

TEST_CASE("slab identity transfers to the merged color after a pair resolution") {
    for (const char* name : {"cube", "rhombicuboctahedron"}) {
        const auto ex = generate(name);
        INFO(name);
        const Coloring& col = *ex.coloring;
        const int s = 0, s2 = 1;
        const Int merged_triangles = basechange_triangle_count(ex.complex, col, s, s2);
        std::vector<CellId> chosen;
        for (CellId f : ex.complex.cells_of_dim(2)) {
            if (!ex.complex.is_square(f)) continue;
            const int a = col.color_of(FactorSlot{f, 0});
            const int b = col.color_of(FactorSlot{f, 1});
            if ((a == s && b == s2) || (a == s2 && b == s)) chosen.push_back(f);
        }
        const PolysimplicialComplex resolved = subdivide_squares_structural(ex.complex, chosen);
        const ColorabilityResult rc = is_colorable(resolved);
        REQUIRE(rc.colorable());
        CHECK(rc.coloring->colors.size() == col.colors.size() - 1);
        const auto ids = slab_count_identity(resolved, *rc.coloring);
        bool found = false;
        for (const SlabIdentity& id : ids) {
            CHECK(id.ok);
            if (Int(id.n_triangles) == merged_triangles) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("a non-diagonal vertex pair is rejected") {
    const auto ex = generate("cube");
    const CellId sq = first_square(ex.complex);
    const Polysimplex& cell = ex.complex.cell(sq);
    // Adjacent corners are not a diagonal.
    CHECK_THROWS_AS(
        subdivide_square(ex.complex, *ex.labels, sq, {cell.vertices[0], cell.vertices[1]}),
        PreconditionError);
    // Neither is a triangle cell.
    const auto octa = generate("octahedron");
    const CellId tri = octa.complex.cells_of_dim(2).front();
    const Polysimplex& tc = octa.complex.cell(tri);
    CHECK_THROWS_AS(
        subdivide_square(octa.complex, *octa.labels, tri, {tc.vertices[0], tc.vertices[1]}),
        PreconditionError);
}

TEST_CASE("an explicit rotation system is updated through subdivision") {
    const auto ex = generate("cube");
    const RotationSystem rot = derive_rotation(ex.complex);
    const PolysimplicialComplex with_rot(ex.complex.cells(), ex.complex.incidences(), rot, true);
    const CellId sq = first_square(with_rot);
    const SubdivisionResult res =
        subdivide_square(with_rot, *ex.labels, sq, default_diagonal(with_rot.cell(sq)));
    REQUIRE(res.complex.rotation().has_value());
    const ValidationReport rep = validate(res.complex);
    for (const Violation& v : rep.violations) INFO(v.code << ": " << v.message);
    CHECK(rep.ok());
}
