#include <catch2/catch_amalgamated.hpp>

#include "polync/generators.hpp"
#include "polync/polync.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace polync;

namespace {

struct Toy {
    PolysimplicialComplex complex;
    EdgeLabeling labels;
    ComponentSet comps;
};

// Two P1xP1 toric squares glued along one double curve of degree (1,0)/(1,0).
Toy two_component_toy() {
    Toy t{PolysimplicialComplex({{0, {}, {0}}, {1, {}, {1}}, {2, {1}, {0, 1}}},
                                {{0, 2, {}}, {1, 2, {}}}),
          {}, {}};
    t.labels.set(2, 0, 0);
    t.labels.set(2, 1, 0);
    for (VertexId v : {VertexId(0), VertexId(1)}) {
        ComponentLattice cl;
        cl.vertex = v;
        cl.gram = IMat(2, 2);
        cl.gram(0, 1) = 1;
        cl.gram(1, 0) = 1;
        cl.curve_class[2] = {Int(1), Int(0)};
        t.comps.by_vertex[v] = cl;
    }
    return t;
}

long long cycle_charge(const BuiltComponent& c) {
    const long long k = static_cast<long long>(c.cycle_classes.size());
    Int sum = 0;
    for (std::size_t p = 0; p < c.cycle_classes.size(); ++p) sum += c.self_intersection(p);
    return 12 - 3 * k - static_cast<long long>(sum);
}

}  // namespace

TEST_CASE("built components realize the standard blow-up models") {
    SECTION("P1xP1 square with one interior blow-up: rank 3, cycle (-1,0,0,0)") {
        const BuiltComponent c =
            build_component(ComponentKind::P1xP1Square, {{BlowUpStep::Op::Interior, 0}});
        CHECK(c.rank() == 3);
        CHECK(c.self_intersection(0) == -1);
        CHECK(c.self_intersection(1) == 0);
        CHECK(c.self_intersection(2) == 0);
        CHECK(c.self_intersection(3) == 0);
    }
    SECTION("P2 triangle with two interior blow-ups per line: rank 7, cycle (-1,-1,-1)") {
        const BuiltComponent c = build_component(
            ComponentKind::P2Triangle,
            {{BlowUpStep::Op::Interior, 0}, {BlowUpStep::Op::Interior, 0},
             {BlowUpStep::Op::Interior, 1}, {BlowUpStep::Op::Interior, 1},
             {BlowUpStep::Op::Interior, 2}, {BlowUpStep::Op::Interior, 2}});
        CHECK(c.rank() == 7);
        for (std::size_t p = 0; p < 3; ++p) CHECK(c.self_intersection(p) == -1);
    }
    SECTION("toric square: cycle (0,0,0,0) and zero charge") {
        const BuiltComponent c = build_component(ComponentKind::P1xP1Square, {});
        for (std::size_t p = 0; p < 4; ++p) CHECK(c.self_intersection(p) == 0);
        CHECK(cycle_charge(c) == 0);
    }
    SECTION("adjacent boundary curves meet once, non-adjacent are disjoint") {
        const BuiltComponent c = build_component(
            ComponentKind::P1xP1Square,
            {{BlowUpStep::Op::Corner, 0}, {BlowUpStep::Op::Interior, 3},
             {BlowUpStep::Op::Interior, 4}});
        const std::size_t k = c.cycle_classes.size();
        REQUIRE(k == 5);
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = p + 1; q < k; ++q) {
                const bool adjacent = (q == p + 1) || (p == 0 && q == k - 1);
                CHECK(c.pairing(c.cycle_classes[p], c.cycle_classes[q]) == (adjacent ? 1 : 0));
            }
    }
    SECTION("bad blow-up positions are rejected") {
        CHECK_THROWS_AS(build_component(ComponentKind::P2Triangle, {{BlowUpStep::Op::Interior, 3}}),
                        PreconditionError);
    }
}

TEST_CASE("corner blow-up preserves the charge of the cycle") {
    BuiltComponent c = build_component(ComponentKind::P1xP1Square, {{BlowUpStep::Op::Interior, 0}});
    const long long before = cycle_charge(c);
    for (int pos = 0; pos < 4; ++pos) {
        const BuiltComponent blown = build_component(
            ComponentKind::P1xP1Square,
            {{BlowUpStep::Op::Interior, 0}, {BlowUpStep::Op::Corner, pos}});
        CHECK(cycle_charge(blown) == before);
        CHECK(blown.cycle_classes.size() == c.cycle_classes.size() + 1);
    }
}

TEST_CASE("two-component toy kernel has rank 3") {
    const Toy t = two_component_toy();
    REQUIRE(validate(t.complex).ok());
    const CartierLattice lat = numerically_cartier(t.complex, t.labels, t.comps);
    CHECK(lat.ambient_rank() == 4);
    CHECK(lat.rank() == 3);
    CHECK(lat.is_saturated());
    // Independent rank check of the degree map.
    CHECK(oracles::rational_rank(lat.degree_matrix()) == 1);

    SECTION("a class of degree zero on every double curve is in the kernel") {
        // The ruling that misses D on both sides: (1,0) in each block.
        const std::vector<Int> fiber = {Int(1), Int(0), Int(1), Int(0)};
        CHECK(lat.contains_ambient(fiber));
        CHECK(lat.coordinates_of(fiber).has_value());
    }
}

TEST_CASE("rhombicuboctahedron lattice: rank, saturation, slab classes") {
    const auto ex = generate("rhombicuboctahedron");
    REQUIRE(ex.components.has_value());
    const CartierLattice lat = numerically_cartier(ex.complex, *ex.labels, *ex.components);
    CHECK(lat.ambient_rank() == 72);
    const std::size_t degree_rank = oracles::rational_rank(lat.degree_matrix());
    CHECK(degree_rank <= 48);
    CHECK(lat.rank() == 72 - degree_rank);
    CHECK(lat.is_saturated());

    const Coloring& col = *ex.coloring;
    for (int s = 0; s < 4; ++s) {
        const SlabDecomposition dec = slabs(ex.complex, col, s);
        std::vector<Int> sum(lat.ambient_rank(), 0);
        for (const Slab& slab : dec.slabs) {
            const SlabClass sc = slab_class(ex.complex, col, *ex.components, lat, slab);
            CHECK(lat.contains_ambient(sc.ambient));
            CHECK(lat.coordinates_of(sc.ambient).has_value());
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += sc.ambient[i];
        }
        for (const Int& x : sum) CHECK(x == 0);  // color-wise sum of slab classes vanishes
        if (dec.slabs.size() == 2) {
            const SlabClass a = slab_class(ex.complex, col, *ex.components, lat, dec.slabs[0]);
            const SlabClass b = slab_class(ex.complex, col, *ex.components, lat, dec.slabs[1]);
            for (std::size_t i = 0; i < a.ambient.size(); ++i)
                CHECK(a.ambient[i] == -b.ambient[i]);
        }
    }
}

TEST_CASE("snc single-color slab classes on the octahedron") {
    const auto ex = generate("octahedron");
    REQUIRE(ex.components.has_value());
    const CartierLattice lat = numerically_cartier(ex.complex, *ex.labels, *ex.components);
    const Coloring col = *is_colorable(ex.complex).coloring;
    const SlabDecomposition dec = slabs(ex.complex, col, 0);
    REQUIRE(dec.slabs.size() == 6);
    std::vector<Int> sum(lat.ambient_rank(), 0);
    for (const Slab& slab : dec.slabs) {
        const SlabClass sc = slab_class(ex.complex, col, *ex.components, lat, slab);
        CHECK(lat.contains_ambient(sc.ambient));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += sc.ambient[i];
    }
    for (const Int& x : sum) CHECK(x == 0);
}

TEST_CASE("kernel saturation via invariant factors") {
    const auto ex = generate("cube");
    const CartierLattice lat = numerically_cartier(ex.complex, *ex.labels, *ex.components);
    for (const Int& d : lat.basis_invariant_factors()) CHECK(d == 1);
}

TEST_CASE("d-semistability of the symbolic period") {
    const Toy t = two_component_toy();
    const CartierLattice lat = numerically_cartier(t.complex, t.labels, t.comps);
    const Coloring col = *is_colorable(t.complex).coloring;
    const SlabDecomposition dec = slabs(t.complex, col, 0);
    REQUIRE(dec.slabs.size() == 2);
    std::vector<SlabClass> classes;
    for (const Slab& slab : dec.slabs)
        classes.push_back(slab_class(t.complex, col, t.comps, lat, slab));

    SECTION("the zero period accepts every slab") {
        PeriodHom period{2, IMat(2, lat.rank())};
        for (bool pass : check_d_semistable(lat, period, classes)) CHECK(pass);
    }
    SECTION("a period hitting a contributing basis vector rejects the slab") {
        const auto coords = lat.coordinates_of(classes[0].ambient);
        REQUIRE(coords.has_value());
        std::size_t hit = coords->size();
        for (std::size_t i = 0; i < coords->size(); ++i)
            if ((*coords)[i] != 0) hit = i;
        REQUIRE(hit < coords->size());
        PeriodHom period{1, IMat(1, lat.rank())};
        period.matrix(0, hit) = 1;
        const auto verdicts = check_d_semistable(lat, period, classes);
        CHECK_FALSE(verdicts[0]);
    }
    SECTION("pass/fail matches the independent linear-functional oracle") {
        std::mt19937 rng(424242);
        std::uniform_int_distribution<int> entry(-5, 5);
        for (int trial = 0; trial < 100; ++trial) {
            PeriodHom period{3, IMat(3, lat.rank())};
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < lat.rank(); ++j) period.matrix(i, j) = entry(rng);
            const auto verdicts = check_d_semistable(lat, period, classes);
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const auto x = oracles::rational_solve(lat.basis(), classes[c].ambient);
                REQUIRE(x.has_value());
                bool trivial = true;
                for (std::size_t i = 0; i < 3; ++i) {
                    Rat acc = 0;
                    for (std::size_t j = 0; j < lat.rank(); ++j)
                        acc += Rat(period.matrix(i, j)) * (*x)[j];
                    if (acc != 0) trivial = false;
                }
                CHECK(verdicts[c] == trivial);
            }
        }
    }
    SECTION("exponent vectors add along sums of slab classes") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> entry(-4, 4);
        PeriodHom period{2, IMat(2, lat.rank())};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < lat.rank(); ++j) period.matrix(i, j) = entry(rng);
        const auto xa = *lat.coordinates_of(classes[0].ambient);
        const auto xb = *lat.coordinates_of(classes[1].ambient);
        std::vector<Int> sum(classes[0].ambient.size());
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] = classes[0].ambient[i] + classes[1].ambient[i];
        const auto xs = *lat.coordinates_of(sum);
        const auto ea = period.matrix * xa;
        const auto eb = period.matrix * xb;
        const auto es = period.matrix * xs;
        for (std::size_t i = 0; i < es.size(); ++i) CHECK(es[i] == ea[i] + eb[i]);
    }
}

TEST_CASE("inconsistent component data is reported") {
    Toy t = two_component_toy();
    SECTION("self-intersection disagrees with the label") {
        t.labels.set(2, 0, -1);
        CHECK_THROWS_AS(numerically_cartier(t.complex, t.labels, t.comps), SchemaError);
    }
    SECTION("missing component") {
        t.comps.by_vertex.erase(1);
        CHECK_THROWS_AS(numerically_cartier(t.complex, t.labels, t.comps), SchemaError);
    }
    SECTION("missing curve class") {
        t.comps.by_vertex.at(0).curve_class.clear();
        CHECK_THROWS_AS(numerically_cartier(t.complex, t.labels, t.comps), SchemaError);
    }
}

TEST_CASE("kernel computation honors cooperative cancellation") {
    const Toy t = two_component_toy();
    const CancelFn cancel = [] { return true; };
    CHECK_THROWS_AS(numerically_cartier(t.complex, t.labels, t.comps, cancel), Cancelled);
}

TEST_CASE("binding a component requires matching degree and a real first edge") {
    const auto ex = generate("octahedron");
    const RotationSystem rot = derive_rotation(ex.complex);
    const BuiltComponent wrong = build_component(ComponentKind::P2Triangle, {});
    const VertexId v = ex.complex.vertex_ids().front();
    CHECK_THROWS_AS(bind_component(ex.complex, rot, v, wrong, rot.at(v).front()),
                    PreconditionError);
}
