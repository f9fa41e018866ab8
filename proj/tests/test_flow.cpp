#include <catch2/catch_amalgamated.hpp>

#include <skeleta/flow.hpp>

#include <random>

using namespace skeleta;
using Catch::Approx;

namespace {

SimplicialComplex point_complex() { return closure(1, {Face::full(1)}); }

// Golden-section minimum of a unimodal function on [a, b].
template <class Fn>
double golden_min(Fn f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) < f(d)) b = d;
        else a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return f((a + b) / 2);
}

// L_sigma is a product of lines {y = 0} and rays {x = 0, y >= 0}: minimise per coordinate.
double oracle_distance_sq(const PhasePoint& p, Face sigma) {
    double s = 0;
    for (int i = 0; i < p.n(); ++i) {
        double x = p.x[i], y = p.y[i];
        double span = std::abs(x) + std::abs(y) + 1;
        if (sigma.contains(i)) s += golden_min([&](double v) { return x * x + (y - v) * (y - v); }, 0.0, span);
        else s += golden_min([&](double u) { return (x - u) * (x - u) + y * y; }, -span, span);
    }
    return s;
}

PhasePoint random_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    PhasePoint p{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) p.x[i] = u(rng), p.y[i] = u(rng);
    return p;
}

PhasePoint sign_point(int n, std::size_t minus) {
    PhasePoint p{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
    for (int i = 0; i < n; ++i)
        if ((minus >> i) & 1u) p.x[i] = -1;
    return p;
}

}  // namespace

TEST_CASE("Distance to strata", "[flow]") {
    CHECK(distance_sq_stratum({{1}, {1}}, Face::of({1})) == 1);
    CHECK(distance_sq_stratum({{1}, {1}}, Face()) == 1);
    CHECK(distance_sq_stratum({{0}, {-2}}, Face::of({1})) == 4);
    CHECK(distance_sq_stratum({{0}, {3}}, Face::of({1})) == 0);
    std::mt19937_64 rng(5);
    double worst = 0;
    for (int s = 0; s < 10000; ++s) {
        int n = 1 + s % 3;
        auto p = random_point(n, rng);
        Face sigma(rng() % (std::uint64_t{1} << n));
        worst = std::max(worst, std::abs(distance_sq_stratum(p, sigma) - oracle_distance_sq(p, sigma)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("Kinetic energy and ties", "[flow]") {
    auto k = point_complex();
    auto diag = kinetic_energy({{1}, {1}}, k);
    CHECK(diag.value == Approx(0.5));
    CHECK(diag.ties == std::vector<Face>{Face(), Face::of({1})});
    auto e = kinetic_energy({{0.3}, {0.1}}, k);
    CHECK(e.value == Approx(0.005));
    CHECK(e.face == Face());
    auto on = kinetic_energy({{0}, {0.7}}, k);
    CHECK(on.value == 0);
    CHECK(on.face == Face::of({1}));
    CHECK(is_singular({{1}, {1}}, k, 1e-6));
    CHECK_FALSE(is_singular({{0}, {0}}, k, 1e-6));
    CHECK_FALSE(is_singular({{0}, {-1}}, k, 1e-6));  // same nearest point
    CHECK_THROWS_AS(kinetic_energy({{1, 2}, {0, 0}}, k), InvalidFlowInput);
}

TEST_CASE("Hamiltonian field", "[flow]") {
    auto k = point_complex();
    CHECK(hamiltonian_field({{2}, {0.3}}, k) == std::vector<double>{0.3, 0});
    CHECK(hamiltonian_field({{0.1}, {1}}, k) == std::vector<double>{0, -0.1});
    CHECK(hamiltonian_field({{0}, {0.5}}, k) == std::vector<double>{0, 0});
    CHECK(hamiltonian_field({{0.4}, {0}}, k) == std::vector<double>{0, 0});
    CHECK_THROWS_AS(hamiltonian_field({{1}, {1}}, k), OnSingularLocus);
    auto sq = closure(2, {Face::full(2)});
    CHECK(hamiltonian_field({{0.1, 3}, {2, 0.5}}, sq) == std::vector<double>{0, 0.5, -0.1, 0});
}

TEST_CASE("Orbits in a single region", "[flow]") {
    auto k = point_complex();
    FlowParams params;
    auto drift = integrate_orbit({{0.3}, {-0.2}}, k, params, 0.7);
    CHECK(drift.end().x[0] == Approx(0.3 - params.w * 0.7 * 0.2).margin(1e-12));
    CHECK(drift.end().y[0] == -0.2);
    FlowParams rk = params;
    rk.closed_form = false;
    // x frozen, y(t) = y - w t x
    auto a = integrate_orbit({{0.1}, {1}}, k, rk, 0.5);
    CHECK(std::abs(a.end().x[0] - 0.1) < 1e-9);
    CHECK(std::abs(a.end().y[0] - (1 - params.w * 0.5 * 0.1)) < 1e-9);
    CHECK(drift.to_csv().rfind("t,x1,y1\n0,0.3,-0.2\n", 0) == 0);
}

TEST_CASE("Energy conservation and convexity", "[flow]") {
    std::mt19937_64 rng(9);
    FlowParams rk;
    rk.closed_form = false;
    double worst = 0, worst_convexity = 0;
    for (int s = 0; s < 60; ++s) {
        int n = 1 + s % 3;
        auto k = closure(n, {Face::full(n)});
        auto p = random_point(n, rng);
        if (is_singular(p, k, rk.tol)) continue;
        Face region = argmin_stratum(p, k);
        double e0 = kinetic_energy(p, k).value;
        auto o = integrate_orbit(p, k, rk, 0.1, true);
        std::size_t last = 0;
        while (last + 1 < o.points.size() && argmin_stratum(o.points[last + 1], k) == region) ++last;
        for (std::size_t i = 0; i <= last; ++i)
            worst = std::max(worst, std::abs(kinetic_energy(o.points[i], k).value - e0) / std::max(e0, 1e-12) / 0.1);
        // (coordinate - a)^2 has non-negative second differences inside the region
        for (int c = 0; c < 2 * n; ++c) {
            double a = 0.3;
            auto f = [&](std::size_t i) {
                double v = c < n ? o.points[i].x[c] : o.points[i].y[c - n];
                return (v - a) * (v - a);
            };
            for (std::size_t i = 1; i + 1 <= last; ++i) worst_convexity = std::min(worst_convexity, f(i - 1) + f(i + 1) - 2 * f(i));
        }
    }
    CHECK(worst < 1e-6);
    CHECK(worst_convexity > -1e-12);
}

TEST_CASE("Cogeodesics from the positive fiber stay clear of the singular locus", "[flow]") {
    auto k = point_complex();
    FlowParams params;
    for (int s = 0; s <= 40; ++s) {
        double r = -params.epsilon + params.epsilon * s / 20;
        Orbit o;
        REQUIRE_NOTHROW(o = integrate_orbit({{1}, {r}}, k, params, 3.0));
        for (const auto& p : o.points) CHECK(argmin_stratum(p, k) == Face());
    }
}

TEST_CASE("Singular crossings", "[flow]") {
    auto k = point_complex();
    FlowParams params;
    // from (-1, 0.5) the drift meets |x| = y at t = 0.5 / (w * 0.5)
    try {
        integrate_orbit({{-1}, {0.5}}, k, params, 1.0);
        FAIL("expected a singular crossing");
    } catch (const SingularCrossing& e) {
        CHECK(e.time == Approx(0.5 / (params.w * 0.5)).margin(1e-9));
    }
    auto o = integrate_orbit({{-1}, {0.5}}, k, params, 1.0, true);
    CHECK(o.singular_times.size() == 1);
    CHECK(o.end().x[0] == Approx(-0.5));
    CHECK_THROWS_AS(integrate_orbit({{1}, {1}}, k, params, 1.0), SingularCrossing);
}

TEST_CASE("Intersection counts", "[flow]") {
    auto k = point_complex();
    FlowParams params;
    auto fwd = flow_intersections({{1}, {0}}, {{-1}, {0}}, k, params);
    CHECK(fwd.count == 1);
    REQUIRE(fwd.fibers.size() == 1);
    CHECK(fwd.fibers[0][0] == Approx(-2.0 / params.w).margin(1e-6));
    CHECK(count_flow_intersections({{-1}, {0}}, {{1}, {0}}, k, params) == 0);
    auto sq = closure(2, {Face::full(2)});
    CHECK(count_flow_intersections(sign_point(2, 0), sign_point(2, 3), sq, params) == 1);
    CHECK(count_flow_intersections(sign_point(2, 3), sign_point(2, 0), sq, params) == 0);
    FlowParams slow = params;
    slow.w = 2;
    CHECK_THROWS_AS(count_flow_intersections({{1}, {0}}, {{-1}, {0}}, k, slow), InvalidFlowInput);
}

TEST_CASE("Counts reproduce the monomial Hom pattern", "[flow]") {
    FlowParams params;
    for (int n = 1; n <= 2; ++n) {
        auto k = closure(n, {Face::full(n)});
        std::size_t count = std::size_t{1} << n;
        for (std::size_t I = 0; I < count; ++I)
            for (std::size_t J = 0; J < count; ++J) {
                INFO(n << " " << I << "->" << J);
                CHECK(count_flow_intersections(sign_point(n, I), sign_point(n, J), k, params) == (Face(I).subset_of(Face(J)) ? 1u : 0u));
            }
    }
}

TEST_CASE("Component sample points", "[flow]") {
    auto pp = SimplicialComplex(2, {Face(), Face::of({1}), Face::of({2})});
    FlowParams params;
    auto comps = components(pp);
    REQUIRE(comps.size() == 6);
    for (const auto& c : comps) {
        auto p = component_point(c, 2, params.epsilon);
        CHECK(kinetic_energy(p, pp).value == 0);
        CHECK(kinetic_energy(p, pp).face == c.sigma);
        CHECK_FALSE(is_singular(p, pp, params.tol));
    }
}

TEST_CASE("Flow battery", "[flow]") {
    for (const auto& r : flow_battery(FlowParams{})) {
        INFO(r.axiom);
        CHECK(r.passed());
    }
}
