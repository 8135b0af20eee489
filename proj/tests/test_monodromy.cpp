#include <catch2/catch_amalgamated.hpp>

#include "polync/generators.hpp"
#include "polync/polync.hpp"
#include "support/oracles.hpp"

#include <fstream>
#include <random>

using namespace polync;

namespace {

IMat table1() {
    std::ifstream in(std::string(POLYNC_TEST_DATA_DIR) + "/table1.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return matrix_from_json(parse_json_text(ss.str())).matrix;
}

}  // namespace

TEST_CASE("rhombicuboctahedron Gram matrix has the expected entries") {
    const auto ex = generate("rhombicuboctahedron");
    const MonodromyGram g = gram_matrix(ex.complex, *ex.coloring);
    REQUIRE(g.colors == std::vector<std::string>{"red", "yellow", "green", "blue"});
    const long long expected[4][4] = {
        {8, 4, 4, 4}, {4, 0, 2, 2}, {4, 2, 0, 2}, {4, 2, 2, 0}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(g.matrix(i, j) == expected[i][j]);

    const Int det = exact_determinant(g.matrix);
    CHECK(det != 0);  // non-degenerate
    CHECK(det == oracles::cofactor_determinant(g.matrix));
}

TEST_CASE("single-color octahedron Gram is the triangle count") {
    const auto ex = generate("octahedron");
    const Coloring col = *is_colorable(ex.complex).coloring;
    const MonodromyGram g = gram_matrix(ex.complex, col);
    REQUIRE(g.matrix.rows() == 1);
    CHECK(g.matrix(0, 0) == 8);
}

TEST_CASE("cube Gram matrix over its three colors") {
    const auto ex = generate("cube");
    const MonodromyGram g = gram_matrix(ex.complex, *ex.coloring);
    REQUIRE(g.matrix.rows() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(g.matrix(i, j) == (i == j ? 0 : 2));
}

TEST_CASE("gram counts tie out against the complex totals") {
    for (const char* name : {"cube", "rhombicuboctahedron"}) {
        const auto ex = generate(name);
        INFO(name);
        const MonodromyGram g = gram_matrix(ex.complex, *ex.coloring);
        Int diag_sum = 0, off_sum = 0;
        for (std::size_t i = 0; i < g.matrix.rows(); ++i)
            for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
                if (i == j) diag_sum += g.matrix(i, j);
                else if (i < j) off_sum += g.matrix(i, j);
            }
        CHECK(diag_sum == Int(ex.complex.triangle_count()));
        CHECK(off_sum == Int(ex.complex.square_count()));
    }
}

TEST_CASE("table 1 has determinant -2304 = -2^8 * 3^2") {
    const IMat t = table1();
    REQUIRE(t.rows() == 10);
    REQUIRE(t.is_symmetric());
    CHECK(exact_determinant(t) == -2304);
    CHECK(Int(-2304) == -Int(256) * 9);
    Int off_sum = 0;
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = i + 1; j < 10; ++j) off_sum += t(i, j);
    CHECK(off_sum == 525);
}

TEST_CASE("degenerate inputs") {
    IMat zero(1, 1);
    CHECK(exact_determinant(zero) == 0);
    const Signature sig = exact_signature(zero);
    CHECK(sig == Signature{0, 0, 1});
}

TEST_CASE("hyperbolic blocks get a (+1,-1) pair") {
    IMat h(2, 2);
    h(0, 1) = 1;
    h(1, 0) = 1;
    CHECK(exact_signature(h) == Signature{1, 1, 0});
    IMat d(3, 3);
    d(0, 0) = 2;
    d(1, 1) = -3;
    CHECK(exact_signature(d) == Signature{1, 1, 1});
}

TEST_CASE("base change triangle counts") {
    SECTION("rhombicuboctahedron (red, blue) = 8 + 0 + 2*4") {
        const auto ex = generate("rhombicuboctahedron");
        const Coloring& col = *ex.coloring;
        CHECK(basechange_triangle_count(ex.complex, col, col.index_of("red"),
                                        col.index_of("blue")) == 16);
    }
    SECTION("cube: every pair gives 4") {
        const auto ex = generate("cube");
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                CHECK(basechange_triangle_count(ex.complex, *ex.coloring, a, b) == 4);
            }
    }
    SECTION("a color with itself is rejected") {
        const auto ex = generate("cube");
        CHECK_THROWS_AS(basechange_triangle_count(ex.complex, *ex.coloring, 1, 1),
                        PreconditionError);
    }
}

TEST_CASE("(lambda_s + lambda_s')^2 expansion identity") {
    for (const char* name : {"cube", "rhombicuboctahedron"}) {
        const auto ex = generate(name);
        INFO(name);
        const Coloring& col = *ex.coloring;
        const MonodromyGram g = gram_matrix(ex.complex, col);
        const int n = static_cast<int>(col.colors.size());
        for (int s = 0; s < n; ++s)
            for (int s2 = s + 1; s2 < n; ++s2)
                CHECK(g.matrix(s, s) + 2 * g.matrix(s, s2) + g.matrix(s2, s2) ==
                      basechange_triangle_count(ex.complex, col, s, s2));
    }
}

TEST_CASE("bareiss determinant and LDLt signature match the naive oracles") {
    std::mt19937 rng(1912);
    std::uniform_int_distribution<int> entry(-20, 20);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = dim(rng);
        IMat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                a(i, j) = entry(rng);
                a(j, i) = a(i, j);
            }
        CHECK(exact_determinant(a) == oracles::cofactor_determinant(a));
        CHECK(exact_signature(a) == oracles::eigen_sign_signature(a));
    }
}
