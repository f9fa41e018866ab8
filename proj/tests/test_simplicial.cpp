#include <catch2/catch_amalgamated.hpp>

#include <skeleta/simplicial.hpp>

#include <map>
#include <numeric>

using namespace skeleta;

namespace {

SimplicialComplex punctured_plane() { return closure(2, {Face::of({1}), Face::of({2})}, true); }

// Orthants L_c, c : [n] -> {+1,-1,-i} with c^{-1}(-i) = sigma in K, glued across
// x_j = 0 whenever no stratum L_{sigma+j} is attached there.
std::size_t orthant_oracle(const SimplicialComplex& k) {
    std::size_t total = 0;
    int n = k.n();
    for (Face sigma : k.faces()) {
        std::vector<int> free;
        for (int j = 0; j < n; ++j)
            if (!sigma.contains(j)) free.push_back(j);
        std::size_t m = std::size_t{1} << free.size();
        std::vector<std::size_t> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
            return parent[a] == a ? a : parent[a] = find(parent[a]);
        };
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t b = 0; b < free.size(); ++b)
                if (!k.contains(sigma | Face::vertex(free[b]))) parent[find(c)] = find(c ^ (std::size_t{1} << b));
        for (std::size_t c = 0; c < m; ++c)
            if (find(c) == c) ++total;
    }
    return total;
}

}  // namespace

TEST_CASE("closure examples", "[simplicial]") {
    CHECK(closure(0, {Face{}}).size() == 1);
    auto s = closure(2, {Face::of({1, 2})});
    CHECK(s.faces() == std::vector<Face>{Face{}, Face::of({1}), Face::of({2}), Face::of({1, 2})});
    CHECK(punctured_plane().faces() == std::vector<Face>{Face{}, Face::of({1}), Face::of({2})});
    auto again = closure(2, s.faces());
    CHECK(again == s);
    CHECK_THROWS_AS(SimplicialComplex(2, {Face{}, Face::of({1, 2})}), InvalidComplex);
    CHECK_THROWS_AS(closure(2, {Face::of({1})}, true), InvalidComplex);
    CHECK_NOTHROW(closure(2, {Face::of({1})}, false));
}

TEST_CASE("star and link", "[simplicial]") {
    auto full2 = closure(2, {Face::of({1, 2})});
    CHECK(star(full2, Face::of({1})) == std::vector<Face>{Face::of({1}), Face::of({1, 2})});
    auto pp = punctured_plane();
    CHECK(star(pp, Face::of({1})) == std::vector<Face>{Face::of({1})});
    CHECK(star(pp, Face{}).size() == pp.size());
    CHECK(link(pp, Face{}).faces() == pp.faces());
    CHECK(link(pp, Face::of({1})).faces() == std::vector<Face>{Face{}});
    CHECK(link(pp, Face::of({1})).vertex_set().empty());
    CHECK(link(full2, Face::of({1})).faces() == std::vector<Face>{Face{}, Face::of({2})});
    CHECK_THROWS_AS(star(pp, Face::of({1, 2})), NotAFace);
    CHECK_THROWS_AS(link(pp, Face::of({1, 2})), NotAFace);
}

TEST_CASE("link agrees with closed star minus faces meeting sigma", "[simplicial]") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& k : enumerate_complexes(n, false))
            for (Face sigma : k.faces()) {
                std::set<Face> cst;
                for (Face t : star(k, sigma))
                    for (Face s : subsets(t)) cst.insert(s);
                std::vector<Face> alt;
                for (Face t : cst)
                    if (t.disjoint(sigma)) alt.push_back(t);
                CHECK(link(k, sigma).faces() == alt);
                CHECK(link_vertices(k, sigma) == link(k, sigma).vertex_set());
            }
}

TEST_CASE("restrict re-indexes", "[simplicial]") {
    auto full3 = closure(3, {Face::of({1, 2, 3})});
    CHECK(restrict(full3, Face::of({1, 2})) == closure(2, {Face::of({1, 2})}));
    CHECK(restrict(punctured_plane(), Face::of({1})) == closure(1, {Face::of({1})}));
    CHECK(restrict(punctured_plane(), Face{}).faces() == std::vector<Face>{Face{}});
    auto k = closure(3, {Face::of({1, 3}), Face::of({2})});
    CHECK(restrict(k, Face::of({1, 3})) == closure(2, {Face::of({1, 2})}));
}

TEST_CASE("cone", "[simplicial]") {
    CHECK(cone(SimplicialComplex()).faces() == std::vector<Face>{Face{}, Face::of({1})});
    CHECK(cone(closure(1, {Face::of({1})})) == closure(2, {Face::of({1, 2})}));
    CHECK(cone(punctured_plane()) == closure(3, {Face::of({1, 3}), Face::of({2, 3})}));
    for (int n = 0; n <= 3; ++n)
        for (const auto& k : enumerate_complexes(n, false)) {
            auto c = cone(k);
            CHECK(restrict(c, Face::full(n)) == k);
            for (Face f : c.maximal_faces()) {
                bool ok = f.contains(n);
                for (Face g : k.maximal_faces()) ok = ok || g == f;
                CHECK(ok);
            }
        }
}

TEST_CASE("component census", "[simplicial]") {
    CHECK(components(closure(1, {Face::of({1})})).size() == 3);
    CHECK(components(punctured_plane()).size() == 6);
    CHECK(components(closure(2, {Face::of({1, 2})})).size() == 9);
    CHECK(components(SimplicialComplex()).size() == 1);
    for (int n = 0; n <= 4; ++n)
        for (const auto& k : enumerate_complexes(n, false)) {
            CHECK(components(k).size() == component_count(k));
            CHECK(component_count(k) == orthant_oracle(k));
        }
}

TEST_CASE("nonface distance", "[simplicial]") {
    auto pp = punctured_plane();
    CHECK(nonface_distance(pp, Face::of({1})) == 0);
    CHECK(nonface_distance(pp, Face::of({1, 2})) == 1);
    CHECK(nonface_distance(closure(2, {Face{}}), Face::of({1, 2})) == 2);
    for (const auto& k : enumerate_complexes(3, false))
        for (Face I : subsets(Face::full(3))) {
            // distance is the smallest r such that some r-subset removal lands in K
            int r = 0;
            for (; r <= I.size(); ++r) {
                bool hit = false;
                for (Face s : subsets(I))
                    if (s.size() == r && k.contains(I - s)) hit = true;
                if (hit) break;
            }
            CHECK(nonface_distance(k, I) == r);
        }
}

TEST_CASE("catalogue sizes", "[simplicial]") {
    std::map<int, std::size_t> vc{{0, 1}, {1, 1}, {2, 2}, {3, 9}};
    for (auto [n, count] : vc) CHECK(enumerate_complexes(n, true).size() == count);
    // Dedekind number M(3) = 20 minus the family without the empty face
    CHECK(enumerate_complexes(3, false).size() == 19);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) CHECK(random_complex(4, rng).vertex_complete());
}
