#include <catch2/catch_amalgamated.hpp>

#include "polync/generators.hpp"
#include "polync/polync.hpp"
#include "support/oracles.hpp"

#include <map>

using namespace polync;

TEST_CASE("rhombicuboctahedron slab counts") {
    const auto ex = generate("rhombicuboctahedron");
    const Coloring& col = *ex.coloring;
    CHECK(slabs(ex.complex, col, std::string("red")).slabs.size() == 6);
    CHECK(slabs(ex.complex, col, std::string("yellow")).slabs.size() == 2);
    CHECK(slabs(ex.complex, col, std::string("green")).slabs.size() == 2);
    CHECK(slabs(ex.complex, col, std::string("blue")).slabs.size() == 2);
}

TEST_CASE("snc single-color slabs are the irreducible components") {
    const auto ex = generate("octahedron");
    const Coloring col = *is_colorable(ex.complex).coloring;
    REQUIRE(col.colors.size() == 1);
    const SlabDecomposition dec = slabs(ex.complex, col, 0);
    CHECK(dec.slabs.size() == ex.complex.count_of_dim(0));
    for (const Slab& s : dec.slabs) CHECK(s.vertices.size() == 1);
}

TEST_CASE("cube slabs agree with a brute-force component search") {
    const auto ex = generate("cube");
    const Coloring& col = *ex.coloring;
    for (int s = 0; s < 3; ++s) {
        std::set<CellId> deleted;
        for (CellId e : ex.complex.cells_of_dim(1))
            if (edge_color(col, e) == s) deleted.insert(e);
        CHECK(slabs(ex.complex, col, s).slabs.size() ==
              oracles::component_count_without(ex.complex, deleted));
        CHECK(slabs(ex.complex, col, s).slabs.size() == 2);
    }
}

TEST_CASE("slab decompositions partition the vertex set") {
    const auto ex = generate("rhombicuboctahedron");
    const Coloring& col = *ex.coloring;
    for (int s = 0; s < 4; ++s) {
        const SlabDecomposition dec = slabs(ex.complex, col, s);
        std::set<VertexId> seen;
        for (const Slab& slab : dec.slabs)
            for (VertexId v : slab.vertices) CHECK(seen.insert(v).second);
        CHECK(seen.size() == ex.complex.count_of_dim(0));
    }
}

TEST_CASE("unknown colors are rejected") {
    const auto ex = generate("cube");
    CHECK_THROWS_AS(slabs(ex.complex, *ex.coloring, 7), PreconditionError);
    CHECK_THROWS_AS(slabs(ex.complex, *ex.coloring, std::string("mauve")), PreconditionError);
}

TEST_CASE("gauss-bonnet slab identity on the bundled spheres") {
    SECTION("rhombicuboctahedron: red 2+8/2, others 2") {
        const auto ex = generate("rhombicuboctahedron");
        const auto ids = slab_count_identity(ex.complex, *ex.coloring);
        for (const SlabIdentity& id : ids) {
            CHECK(id.ok);
            if (ex.coloring->colors[static_cast<std::size_t>(id.color)] == "red") {
                CHECK(id.n_triangles == 8);
                CHECK(id.n_slabs == 6);
            } else {
                CHECK(id.n_triangles == 0);
                CHECK(id.n_slabs == 2);
            }
        }
    }
    SECTION("cube: every color 2 + 0") {
        const auto ex = generate("cube");
        for (const SlabIdentity& id : slab_count_identity(ex.complex, *ex.coloring)) {
            CHECK(id.ok);
            CHECK(id.n_slabs == 2);
        }
    }
    SECTION("octahedron single color: 2 + 8/2 = 6 components") {
        const auto ex = generate("octahedron");
        const Coloring col = *is_colorable(ex.complex).coloring;
        const auto ids = slab_count_identity(ex.complex, col);
        REQUIRE(ids.size() == 1);
        CHECK(ids[0].ok);
        CHECK(ids[0].n_slabs == 6);
        CHECK(ids[0].n_triangles == 8);
    }
}

TEST_CASE("parameter counts") {
    SECTION("rhombicuboctahedron: 16 = 20 - 4") {
        const auto ex = generate("rhombicuboctahedron");
        const ParameterCount pc = parameter_count(ex.complex, *ex.coloring);
        CHECK(pc.structural == 16);
        CHECK(pc.closed_form == 16);
        CHECK(pc.match);
    }
    SECTION("octahedron single color: 19, the classical divisor") {
        const auto ex = generate("octahedron");
        const Coloring col = *is_colorable(ex.complex).coloring;
        const ParameterCount pc = parameter_count(ex.complex, col);
        CHECK(pc.structural == 19);
        CHECK(pc.closed_form == 19);
        CHECK(pc.match);
    }
    SECTION("cube with three colors: 17 = 20 - 3") {
        const auto ex = generate("cube");
        const ParameterCount pc = parameter_count(ex.complex, *ex.coloring);
        CHECK(pc.structural == 17);
        CHECK(pc.closed_form == 17);
        CHECK(pc.match);
    }
}

TEST_CASE("slab boundaries cover each color edge twice with opposite orientations") {
    for (const char* name : {"tetrahedron", "octahedron", "icosahedron", "cube",
                             "rhombicuboctahedron"}) {
        const auto ex = generate(name);
        INFO(name);
        const Coloring col = ex.coloring ? *ex.coloring : *is_colorable(ex.complex).coloring;
        for (int s = 0; s < static_cast<int>(col.colors.size()); ++s) {
            std::map<CellId, std::multiset<std::pair<VertexId, VertexId>>> covered;
            for (const Slab& slab : slabs(ex.complex, col, s).slabs)
                for (const DirectedSide& side : slab_boundary(ex.complex, col, slab))
                    covered[side.edge].insert({side.from, side.to});
            for (CellId e : ex.complex.cells_of_dim(1)) {
                if (edge_color(col, e) != s) continue;
                const auto ends = ex.complex.edge_endpoints(e);
                REQUIRE(covered[e].size() == 2);
                CHECK(covered[e].count({ends[0], ends[1]}) == 1);
                CHECK(covered[e].count({ends[1], ends[0]}) == 1);
            }
        }
    }
}
