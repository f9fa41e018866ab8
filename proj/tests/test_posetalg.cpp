#include <catch2/catch_amalgamated.hpp>

#include <skeleta/posetalg.hpp>
#include <skeleta/toric.hpp>

#include <random>

using namespace skeleta;
using Q = RationalField;

namespace {

SimplicialComplex punctured_plane() { return SimplicialComplex(2, {Face(), Face::of({1}), Face::of({2})}); }
SimplicialComplex no_edges(int n) {
    std::vector<Face> faces{Face()};
    for (int i = 0; i < n; ++i) faces.push_back(Face::vertex(i));
    return SimplicialComplex(n, faces);
}

// Cech nerve of the cover of K|_I by the pieces sigma & I, sigma maximal:
// summands P_{(cap s) & I}[|s|-1], alternating face maps.
ComplexPtr<Q> facet_resolution(const PosetCategory<Q>& pk, Face I) {
    auto pieces = pk.K.maximal_faces();
    std::size_t m = pieces.size();
    TwistedComplex<Q> x{pk.cat, {}, {}};
    std::map<std::uint64_t, std::size_t> index;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
        Face cap = I;
        for (std::uint64_t t = s; t; t &= t - 1) cap = cap & pieces[std::countr_zero(t)];
        index[s] = x.size();
        x.summands.push_back({pk.object_of(cap), std::popcount(s) - 1});
    }
    for (const auto& [s, a] : index) {
        int pos = 0;
        for (std::uint64_t t = s; t; t &= t - 1, ++pos) {
            std::uint64_t face = s & ~(t & -t);
            if (!face) continue;
            x.set(index[face], a, Vec<Q>{{0, pos % 2 ? Rational(-1) : Rational(1)}});
        }
    }
    return share(std::move(x));
}

bool quasi_isomorphic(ComplexPtr<Q> a, ComplexPtr<Q> b) {
    auto h = hom_complex(a, b, std::pair{-1, 1});
    GradedCohomology<Q> gc(Q{}, h.as_hom_space());
    if (gc.dim(0) != 1) return false;
    return is_quasi_iso(h.from_vector(0, gc.reps(0)[0]));
}

std::vector<SimplicialComplex> catalogue() {
    std::vector<SimplicialComplex> out;
    for (int n = 0; n <= 3; ++n)
        for (auto& k : enumerate_complexes(n, true)) out.push_back(k);
    return out;
}

}  // namespace

TEST_CASE("P_K shapes", "[posetalg]") {
    auto empty = build_P_K<Q>(SimplicialComplex());
    CHECK(empty->cat->size() == 1);
    auto pp = build_P_K<Q>(punctured_plane());
    CHECK(pp->cat->size() == 3);
    std::size_t arrows = 0;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            if (a != b) arrows += pp->cat->hom(a, b).dim(0);
    CHECK(arrows == 2);
    CHECK(pp->cat->hom(pp->object_of(Face::of({1})), pp->object_of(Face::of({2}))).empty());
    auto sq = build_P_K<Q>(closure(2, {Face::full(2)}));
    CHECK(sq->cat->size() == 4);
    auto o = [&](Face f) { return sq->object_of(f); };
    Vec<Q> e{{0, Rational(1)}};
    auto via1 = sq->cat->compose(o(Face()), o(Face::of({1})), o(Face::full(2)), 0, e, 0, e);
    auto via2 = sq->cat->compose(o(Face()), o(Face::of({2})), o(Face::full(2)), 0, e, 0, e);
    CHECK(via1 == via2);
    CHECK(check_category_axioms(*sq->cat).passed());
}

TEST_CASE("P_K category axioms", "[posetalg]") {
    for (const auto& k : catalogue()) CHECK(check_category_axioms(*build_P_K<Q>(k)->cat).passed());
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) CHECK(check_category_axioms(*build_P_K<Q>(random_complex(4, rng))->cat).passed());
}

TEST_CASE("represent_subset examples", "[posetalg]") {
    auto face = represent_subset<Q>(punctured_plane(), Face::of({1}));
    CHECK(face->size() == 1);
    auto top = represent_subset<Q>(punctured_plane(), Face::of({1, 2}));
    REQUIRE(top->size() == 3);
    CHECK(top->summands[0].shift == 1);
    CHECK(top->cat->object(top->object(0)) == "P{}");
    CHECK(top->shift(1) == 0);
    CHECK(top->shift(2) == 0);
    CHECK(check_mc(*top));
    auto seven = represent_subset<Q>(no_edges(3), Face::full(3));
    CHECK(seven->size() == 7);
    CHECK(check_mc(*seven));
    CHECK(least_nonface(no_edges(3), Face::full(3)) == Face::of({1, 2}));
    auto hollow = closure(3, {Face::of({1, 2}), Face::of({1, 3}), Face::of({2, 3})});
    CHECK(least_nonface(hollow, Face::full(3)) == Face::full(3));
    CHECK_FALSE(least_nonface(hollow, Face::of({1, 2})).has_value());
}

TEST_CASE("Rotations agree with the facet resolution", "[posetalg]") {
    std::vector<SimplicialComplex> ks = catalogue();
    for (auto& k : enumerate_complexes(4, true)) ks.push_back(k);
    for (const auto& k : ks) {
        auto pk = build_P_K<Q>(k);
        Representer<Q> r(pk);
        for (std::uint64_t I = 0; I < (std::uint64_t{1} << k.n()); ++I) {
            INFO(k.to_string() << " I=" << Face(I).to_string());
            auto x = r.rep(Face(I));
            CHECK(check_mc(*x));
            CHECK(is_one_sided(*x));
            CHECK(quasi_isomorphic(x, facet_resolution(*pk, Face(I))));
        }
    }
}

TEST_CASE("ext_table_A basics", "[posetalg]") {
    auto simplex = ext_table_A<Q>(closure(2, {Face::full(2)}));
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b = 0; b < 4; ++b)
            CHECK(simplex.at(Face(a), Face(b)) == (Face(a).subset_of(Face(b)) ? Dims{{0, 1}} : Dims{}));
    auto pp = ext_table_A<Q>(punctured_plane());
    CHECK(pp.at(Face::of({1, 2}), Face()) == Dims{{1, 1}});
    for (const auto& k : catalogue()) {
        auto t = ext_table_A<Q>(k);
        for (Face s : k.faces()) {
            CHECK(t.at(s, s) == Dims{{0, 1}});
            for (Face u : k.faces())
                if (!s.subset_of(u) && !u.subset_of(s)) CHECK(t.at(s, u).empty());
        }
    }
}

TEST_CASE("ext_table_A does not depend on the signs", "[posetalg]") {
    auto ks = catalogue();
    std::mt19937_64 rng(4);
    for (int t = 0; t < 4; ++t) ks.push_back(random_complex(4, rng));
    for (const auto& k : ks) {
        auto base = ext_table_A<Q>(k);
        for (std::uint64_t seed : {1, 2, 3}) CHECK(ext_table_A<Q>(k, Q{}, seed) == base);
    }
}

TEST_CASE("A and B ext tables agree", "[posetalg]") {
    for (const auto& k : catalogue()) {
        auto a = ext_table_A<Q>(k);
        auto b = tw_ext_table(build_B_category<Q>(k).second, k.n());
        INFO(k.to_string());
        CHECK(a.differences(b) == std::vector<std::string>{});
    }
}

TEST_CASE("A-model functor", "[posetalg]") {
    for (const auto& k : catalogue()) {
        auto model = build_A_model<Q>(k);
        INFO(k.to_string());
        CHECK(check_functor(model.functor).passed());
        CHECK(check_delta_fully_faithful(model.functor, k.n()).passed());
    }
}

TEST_CASE("Ext table serialization", "[posetalg]") {
    auto t = ext_table_A<Q>(punctured_plane());
    auto j = t.to_json();
    CHECK(j["n"] == 2);
    CHECK(j["table"]["{1,2}"]["{}"]["1"] == 1);
    CHECK(j["table"]["{1}"]["{2}"].empty());
    CHECK(t.to_tsv().find("{1,2}\t{}\t1\t1") != std::string::npos);
}
