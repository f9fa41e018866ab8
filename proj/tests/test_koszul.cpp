#include <catch2/catch_amalgamated.hpp>

#include <skeleta/koszul.hpp>

#include <random>

using namespace skeleta;
using Q = RationalField;

TEST_CASE("Koszul complex shapes", "[koszul]") {
    CategoryPtr<Q> c = build_monomial_category<Q>(2);
    auto fd = identity_functor<Q>(c);
    auto k0 = build_koszul(KoszulSpec{{}, Face::of({2}), {}}, fd);
    CHECK(k0.size() == 1);
    CHECK(k0.delta.empty());
    auto k1 = build_koszul(KoszulSpec{Face::of({1}), {}, {}}, fd);
    CHECK(k1.summands == std::vector<Summand>{{0, 1}, {1, 0}});
    CHECK(k1.delta.size() == 1);
    auto k12 = build_koszul(KoszulSpec{Face::of({1, 2}), {}, {}}, fd);
    CHECK(k12.size() == 4);
    CHECK(k12.delta.size() == 4);
    CHECK(check_mc(k12));
    // anticommuting square: the two paths carry opposite signs
    Rational prod1 = k12.delta.at({1, 0})[0].second * k12.delta.at({3, 1})[0].second;
    Rational prod2 = k12.delta.at({2, 0})[0].second * k12.delta.at({3, 2})[0].second;
    CHECK(prod1 == -prod2);
    CHECK_THROWS_AS(build_koszul(KoszulSpec{Face::of({1}), Face::of({1}), {}}, fd), KoszulError);
    CHECK_THROWS_AS(build_koszul(KoszulSpec{Face::of({1, 2}), {}, {0}}, fd), KoszulError);
}

TEST_CASE("d^2 = 0 for random specs and orders", "[koszul]") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 5; ++n) {
        CategoryPtr<Q> c = build_monomial_category<Q>(n);
        auto fd = identity_functor<Q>(c);
        for (int t = 0; t < 20; ++t) {
            std::uint64_t I = rng() & Face::full(n).bits;
            std::uint64_t J = rng() & Face::full(n).bits & ~I;
            auto order = Face(I).vertices();
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(check_mc(build_koszul(KoszulSpec{Face(I), Face(J), order}, fd)));
        }
    }
}

TEST_CASE("sgn independence", "[koszul]") {
    CategoryPtr<Q> c = build_monomial_category<Q>(4);
    auto fd = identity_functor<Q>(c);
    std::mt19937_64 rng(9);
    for (Face I : subsets(Face::full(4))) {
        auto order = I.vertices();
        std::shuffle(order.begin(), order.end(), rng);
        auto a = share(build_koszul(KoszulSpec{I, {}, {}}, fd));
        auto b = share(build_koszul(KoszulSpec{I, {}, order}, fd));
        auto w = signed_relabeling(a, b);
        REQUIRE(w);
        CHECK(is_closed(*w));
        CHECK(is_quasi_iso(*w));
    }
}

TEST_CASE("cone of e_k is the next Koszul complex", "[koszul]") {
    for (int n = 1; n <= 4; ++n) {
        CategoryPtr<Q> c = build_monomial_category<Q>(n);
        auto fd = identity_functor<Q>(c);
        for (Face I : subsets(Face::full(n)))
            for (Face J : subsets(Face::full(n) - I))
                for (int k : (Face::full(n) - I - J).vertices()) {
                    auto t = koszul_triangle(I, J, k, fd);
                    CHECK(is_closed(t.e_k));
                    CHECK(t.verified);
                }
    }
}

TEST_CASE("Koszul complexes are never acyclic in C_n", "[koszul]") {
    CategoryPtr<Q> c = build_monomial_category<Q>(3);
    auto fd = identity_functor<Q>(c);
    for (Face I : subsets(Face::full(3))) CHECK_FALSE(acyclicity_test(KoszulSpec{I, {}, {}}, fd));
}
