#include <catch2/catch_amalgamated.hpp>

#include <skeleta/kmonomial.hpp>

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
SimplicialComplex hollow_triangle() { return closure(3, {Face::of({1, 2}), Face::of({1, 3}), Face::of({2, 3})}); }

const Case* find_case(const Report& r, const std::string& label) {
    for (const auto& c : r.cases)
        if (c.label == label) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("Monomial category as a candidate", "[kmonomial]") {
    auto full = monomial_candidate<Q>(closure(2, {Face::full(2)}));
    for (const auto& r : check_all_axioms(full)) {
        INFO(r.axiom);
        CHECK(r.passed());
    }
    CHECK(check_axiom2(full).cases.empty());
    auto wrong = monomial_candidate<Q>(punctured_plane());
    CHECK(check_axiom1(wrong).passed());
    auto a2 = check_axiom2(wrong);
    CHECK_FALSE(a2.passed());
    const Case* c = find_case(a2, "(I={1},J={},k=2)");
    REQUIRE(c);
    CHECK_FALSE(c->pass);
    CHECK_FALSE(check_generation(wrong).passed());
}

TEST_CASE("Corrupted functor fails axiom 1", "[kmonomial]") {
    auto cand = b_candidate<Q>(punctured_plane());
    cand.functor.images.erase({0, 1, 0, 0});
    auto r = check_axiom1(cand);
    CHECK_FALSE(r.passed());
    CHECK(r.first_failure()->label == "{}<{1}");
    CHECK_THROWS_AS(KMonomialCandidate<Q>(cand.K, cand.D, FunctorData<Q>{cand.functor.source, cand.D, {0, 0, 1, 2}, {}}), std::invalid_argument);
}

TEST_CASE("B-model of the punctured plane is K-monomial", "[kmonomial]") {
    auto cand = b_candidate<Q>(punctured_plane());
    auto reports = check_all_axioms(cand);
    for (const auto& r : reports) {
        INFO(r.axiom << " " << (r.first_failure() ? r.first_failure()->label : ""));
        CHECK(r.passed());
    }
    const Case* iso = find_case(reports[1], "(I={1},J={},k=2)");
    REQUIRE(iso);
    CHECK(iso->pass);
    const Case* dims = find_case(reports[2], "(I={},J={1},L={2}) dims");
    REQUIRE(dims);
    CHECK(dims->witness["big"]["0"] == 1);
    CHECK(dims->witness["small"]["0"] == 1);
    CHECK(find_case(reports[3], "({1},{2})")->pass);
    const Case* gen = find_case(reports[4], "{1,2} d=1");
    REQUIRE(gen);
    CHECK(gen->witness["summands"] == 3);
}

TEST_CASE("Consequence checks on larger complexes", "[kmonomial]") {
    auto hollow = b_candidate<Q>(hollow_triangle());
    auto nc = check_notcomp(hollow);
    CHECK(nc.passed());
    CHECK(find_case(nc, "({1,2},{3})"));
    auto sparse = b_candidate<Q>(no_edges(3));
    auto gen = check_generation(sparse);
    CHECK(gen.passed());
    const Case* top = find_case(gen, "{1,2,3} d=2");
    REQUIRE(top);
    CHECK(top->witness["summands"] == 7);
    auto simplex = check_notcomp(b_candidate<Q>(closure(3, {Face::full(3)})));
    CHECK(simplex.passed());
    CHECK(find_case(simplex, "({1},{2})"));
}

TEST_CASE("B-models pass every axiom", "[kmonomial]") {
    std::vector<SimplicialComplex> ks;
    for (int n = 0; n <= 3; ++n)
        for (auto& k : enumerate_complexes(n, true)) ks.push_back(k);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 4; ++t) ks.push_back(random_complex(4, rng));
    for (const auto& k : ks) {
        auto cand = b_candidate<Q>(k);
        for (const auto& r : check_all_axioms(cand)) {
            INFO(k.to_string() << " " << r.axiom << " " << (r.first_failure() ? r.first_failure()->label : ""));
            CHECK(r.passed());
        }
    }
}

TEST_CASE("Candidates passing the axioms share the face Ext table", "[kmonomial]") {
    for (int n = 1; n <= 3; ++n) {
        auto k = closure(n, {Face::full(n)});
        CHECK(face_ext_table(monomial_candidate<Q>(k)) == face_ext_table(b_candidate<Q>(k)));
    }
    for (auto& k : enumerate_complexes(3, true)) {
        auto b = face_ext_table(b_candidate<Q>(k));
        auto a = ext_table_A<Q>(k);
        ExtTable faces{k.n(), {}};
        for (const auto& [key, d] : a.entries)
            if (k.contains(Face(key.first)) && k.contains(Face(key.second))) faces.entries[key] = d;
        CHECK(faces == b);
    }
}

TEST_CASE("Reports serialize", "[kmonomial]") {
    auto r = check_axiom2(monomial_candidate<Q>(punctured_plane()));
    auto j = r.to_json();
    CHECK(j["axiom"] == "axiom 2");
    CHECK(j["cases"][0].contains("witness_dims"));
    CHECK(r.to_tsv().rfind("axiom\tcase\tverdict\twitness\n", 0) == 0);
}
