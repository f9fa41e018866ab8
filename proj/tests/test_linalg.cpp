#include <catch2/catch_amalgamated.hpp>

#include <skeleta/linalg.hpp>

#include <random>

using namespace skeleta;

namespace {

template <class F>
SparseMatrix<F> from_rows(const F& f, const std::vector<std::vector<int>>& rows) {
    std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
    SparseMatrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, f.from_int(rows[i][j]));
    return m;
}

template <class F>
SparseMatrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-3, 3);
    SparseMatrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < density) m.set(i, j, f.from_int(v(rng)));
    return m;
}

}  // namespace

TEST_CASE("rank of small matrices", "[linalg]") {
    RationalField q;
    CHECK(rank(SparseMatrix<RationalField>(q, 3, 4)) == 0);
    CHECK(rank(SparseMatrix<RationalField>::identity(q, 5)) == 5);
    CHECK(rank(from_rows(q, {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(from_rows(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
    PrimeField p(3);
    // det = 3 vanishes mod 3
    CHECK(rank(from_rows(p, {{1, 1}, {1, 4}})) == 1);
    CHECK(rank(from_rows(q, {{1, 1}, {1, 4}})) == 2);
}

TEST_CASE("rank is transpose invariant and kernels are kernels", "[linalg]") {
    RationalField q;
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(q, rng, 1 + rng() % 8, 1 + rng() % 8, 0.4);
        CHECK(rank(m) == rank(m.transpose()));
        auto ker = kernel_basis(m);
        CHECK(ker.size() + rank(m) == m.cols());
        for (const auto& v : ker) CHECK(m.apply(v).empty());
        Echelon<RationalField> e(q);
        for (const auto& v : ker) CHECK(e.insert(v));
    }
}

TEST_CASE("solve finds preimages exactly when they exist", "[linalg]") {
    RationalField q;
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(q, rng, 1 + rng() % 6, 1 + rng() % 6, 0.5);
        SparseVector<Rational> x;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (rng() % 2) x.emplace_back(j, Rational(static_cast<int>(rng() % 5) - 2));
        x.erase(std::remove_if(x.begin(), x.end(), [](auto& e) { return e.second == 0; }), x.end());
        auto b = m.apply(x);
        auto sol = solve(m, b);
        REQUIRE(sol);
        CHECK(m.apply(*sol) == b);
    }
    auto m = from_rows(q, {{1, 0}, {0, 0}});
    CHECK_FALSE(solve(m, SparseVector<Rational>{{1, Rational(1)}}));
}

TEST_CASE("homology dims of short complexes", "[linalg]") {
    RationalField q;
    CHECK(homology_dims(std::vector{from_rows(q, {{1}})}) == std::vector<std::size_t>{0, 0});
    std::vector zero{SparseMatrix<RationalField>(q, 2, 1), SparseMatrix<RationalField>(q, 1, 2)};
    CHECK(homology_dims(zero) == std::vector<std::size_t>{1, 2, 1});
    std::vector bad{from_rows(q, {{1}}), from_rows(q, {{1}})};
    CHECK_THROWS_AS(homology_dims(bad), NotAComplex);
}

TEST_CASE("Euler characteristic of random complexes", "[linalg]") {
    RationalField q;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        // d1 * d0 = 0 by building d0 from the kernel of d1
        auto d1 = random_matrix(q, rng, 1 + rng() % 4, 2 + rng() % 5, 0.5);
        auto ker = kernel_basis(d1);
        SparseMatrix<RationalField> d0(q, d1.cols(), ker.size() + 1);
        for (std::size_t j = 0; j < ker.size(); ++j) d0.set_col(j, ker[j]);
        CochainComplex<RationalField> c{0, {d0.cols(), d0.rows(), d1.rows()}, {d0, d1}};
        CHECK(euler_of(cohomology_dims(c)) == c.euler_characteristic());
    }
}

TEST_CASE("F_p arithmetic", "[linalg]") {
    PrimeField f(32003);
    auto a = f.from_int(-1);
    CHECK(a.value() == 32002);
    CHECK((a * a) == f.one());
    for (int k = 1; k < 200; ++k) CHECK(f.from_int(k) * f.from_int(k).inverse() == f.one());
    CHECK_THROWS(PrimeField(32004));
}
