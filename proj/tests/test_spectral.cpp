#include "swapdist/spectral.hpp"

#include "helpers.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace swapdist;

namespace {

SymmetricMatrix make(std::size_t n, std::vector<double> a) {
    SymmetricMatrix m;
    m.n = n;
    m.a = std::move(a);
    return m;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("jacobi eigenvalues on matrices with known spectra") {
    // [[2, 1], [1, 2]] has eigenvalues 1 and 3
    const auto e2 = symmetric_eigenvalues(make(2, {2, 1, 1, 2}));
    REQUIRE(e2.size() == 2);
    CHECK(e2[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e2[1] == doctest::Approx(3.0).epsilon(1e-12));

    // circulant ones-off-diagonal 3x3: eigenvalues -1, -1, 2
    const auto e3 = symmetric_eigenvalues(make(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
    REQUIRE(e3.size() == 3);
    CHECK(e3[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e3[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e3[2] == doctest::Approx(2.0).epsilon(1e-12));

    // diagonal matrices come back sorted
    const auto ed = symmetric_eigenvalues(make(3, {5, 0, 0, 0, -2, 0, 0, 0, 1}));
    CHECK(ed == std::vector<double>{-2, 1, 5});

    // zero matrix
    const auto ez = symmetric_eigenvalues(make(2, {0, 0, 0, 0}));
    CHECK(ez == std::vector<double>{0, 0});

    // eigenvalue sum equals the trace on a random symmetric matrix
    Rng rng(77);
    SymmetricMatrix r = make(6, std::vector<double>(36, 0.0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            r.at(i, j) = r.at(j, i) = rng.unit() * 2.0 - 1.0;
    double trace = 0.0;
    for (std::size_t i = 0; i < 6; ++i) trace += r.at(i, i);
    const auto er = symmetric_eigenvalues(r);
    double sum = 0.0;
    for (double v : er) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
}

TEST_CASE("eigen solver input validation") {
    CHECK_THROWS_AS(symmetric_eigenvalues(make(2, {1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_eigenvalues(make(2, {0, 1, 2, 0})), std::invalid_argument);
    CHECK(symmetric_eigenvalues(make(0, {})).empty());
}

TEST_CASE("shifted distance matrix entries") {
    const auto m = build_shifted(3);
    REQUIRE(m.n == 6);
    const auto g = Permutohedron::build(3);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(m.at(i, j) ==
                  static_cast<double>(g.distance(static_cast<VertexId>(i),
                                                 static_cast<VertexId>(j))) -
                      1.5);
    // diagonal = -d_max/2 everywhere, including the shift of the zero diagonal
    for (std::size_t i = 0; i < 6; ++i) CHECK(m.at(i, i) == -1.5);
    // row sums vanish: D has constant row sum d_max/2 * N
    for (std::size_t i = 0; i < 6; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 6; ++j) s += m.at(i, j);
        CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(build_shifted(7), std::invalid_argument);   // needs allow_large
    CHECK_THROWS_AS(build_shifted(0), std::invalid_argument);
    CHECK_THROWS_AS(build_shifted(8, true), std::invalid_argument);
    CHECK(build_shifted(2).n == 2);
}

TEST_CASE("shifted spectra match the closed-form multiplicity pattern") {
    // order 3: -4 (x2), -1 (x1), 0 (x3)
    {
        const auto groups = group_eigenvalues(symmetric_eigenvalues(build_shifted(3)));
        REQUIRE(groups.size() == 3);
        CHECK(groups[0].value == doctest::Approx(-4.0).epsilon(1e-9));
        CHECK(groups[0].multiplicity == 2);
        CHECK(groups[1].value == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(groups[1].multiplicity == 1);
        CHECK(std::abs(groups[2].value) < 1e-9);
        CHECK(groups[2].multiplicity == 3);
    }
    // order 4: -20 (x3), -4 (x3), 0 (x18)
    {
        const auto groups = group_eigenvalues(symmetric_eigenvalues(build_shifted(4)));
        REQUIRE(groups.size() == 3);
        CHECK(groups[0].value == doctest::Approx(-20.0).epsilon(1e-9));
        CHECK(groups[0].multiplicity == 3);
        CHECK(groups[1].value == doctest::Approx(-4.0).epsilon(1e-9));
        CHECK(groups[1].multiplicity == 3);
        CHECK(std::abs(groups[2].value) < 1e-8);
        CHECK(groups[2].multiplicity == 18);
    }
    // order 5: -120 (x4), -20 (x6), 0 (x110); trace fixes the total mass
    {
        const auto eigs = symmetric_eigenvalues(build_shifted(5));
        REQUIRE(eigs.size() == 120);
        double sum = 0.0;
        for (double v : eigs) sum += v;
        CHECK(sum == doctest::Approx(-600.0).epsilon(1e-9));   // -N * d_max/2
        const auto groups = group_eigenvalues(eigs, 1e-5);
        REQUIRE(groups.size() == 3);
        CHECK(groups[0].value == doctest::Approx(-120.0).epsilon(1e-8));
        CHECK(groups[0].multiplicity == 4);
        CHECK(groups[1].value == doctest::Approx(-20.0).epsilon(1e-8));
        CHECK(groups[1].multiplicity == 6);
        CHECK(std::abs(groups[2].value) < 1e-7);
        CHECK(groups[2].multiplicity == 110);
    }
}

TEST_CASE("shifted matrices are negative semidefinite") {
    for (int n = 3; n <= 5; ++n) {
        const auto m = build_shifted(n);
        CHECK(check_negative_semidefinite(m));
        // quadratic-form spot check: x' D' x <= 0 for random simplex x
        Rng rng(404);
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = testutil::random_simplex(m.n, rng);
            double q = 0.0;
            for (std::size_t i = 0; i < m.n; ++i)
                for (std::size_t j = 0; j < m.n; ++j) q += p[i] * m.at(i, j) * p[j];
            CHECK(q <= 1e-9);
        }
    }
    CHECK_FALSE(check_negative_semidefinite(make(2, {1, 0, 0, -1})));
    CHECK(check_negative_semidefinite(make(2, {0, 0, 0, 0})));
    // explicit tolerance overrides the relative default
    CHECK(check_negative_semidefinite(make(1, {0.5}), 1.0));
    CHECK_FALSE(check_negative_semidefinite(make(1, {0.5}), 0.1));
}

TEST_CASE("eigenvalue grouping") {
    const auto groups = group_eigenvalues({-4.0, -4.0 + 1e-9, -1.0, 0.0, 0.0, 0.0});
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].multiplicity == 2);
    CHECK(groups[0].value == doctest::Approx(-4.0 + 5e-10).epsilon(1e-12));
    CHECK(groups[1].multiplicity == 1);
    CHECK(groups[2].multiplicity == 3);
    CHECK(group_eigenvalues({}).empty());
    CHECK(group_eigenvalues({2.5}).size() == 1);
    // a gap above tol splits, at or below tol merges
    CHECK(group_eigenvalues({0.0, 0.5}, 0.1).size() == 2);
    CHECK(group_eigenvalues({0.0, 0.5}, 1.0).size() == 1);
    CHECK_THROWS_AS(group_eigenvalues({1.0, 0.0}), std::invalid_argument);
}

}  // TEST_SUITE
