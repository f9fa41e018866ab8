#pragma once

#include "parallel.hpp"
#include "report.hpp"
#include "simplicial.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace skeleta {

struct InvalidFlowInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OnSingularLocus : std::domain_error {
    using std::domain_error::domain_error;
};
struct SingularCrossing : std::runtime_error {
    SingularCrossing(double t, const std::string& what) : std::runtime_error(what), time(t) {}
    double time;
};

// Point (x, y) of T*R^n.
struct PhasePoint {
    std::vector<double> x, y;

    int n() const { return static_cast<int>(x.size()); }
    void validate() const {
        if (x.size() != y.size()) throw InvalidFlowInput("x and y must have the same length");
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InvalidFlowInput("phase point has a non-finite entry");
    }
    double distance(const PhasePoint& o) const {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - o.x[i]) * (x[i] - o.x[i]) + (y[i] - o.y[i]) * (y[i] - o.y[i]);
        return std::sqrt(s);
    }
};

struct FlowParams {
    double epsilon = 0.5;     // neighbourhood scale
    int w = 8;                // wrapping weight
    double dt = 1e-3;
    double tol = 1e-6;        // equidistance tolerance
    int grid = 21;            // fiber grid points per axis
    bool closed_form = true;  // exact shear inside a region, RK4 otherwise

    void validate() const {
        if (!(epsilon > 0) || !(dt > 0) || !(tol > 0)) throw InvalidFlowInput("epsilon, dt and tol must be positive");
        if (w <= 0) throw InvalidFlowInput("w must be a positive integer");
        if (grid < 2) throw InvalidFlowInput("grid needs at least 2 points per axis");
    }
};

// Closed-form squared distance to L_sigma = {x_i = 0, y_i >= 0 on sigma; y_j = 0 off sigma}.
inline double distance_sq_stratum(const PhasePoint& p, Face sigma) {
    double s = 0;
    for (int i = 0; i < p.n(); ++i) {
        if (sigma.contains(i)) {
            double neg = std::max(-p.y[i], 0.0);
            s += p.x[i] * p.x[i] + neg * neg;
        } else {
            s += p.y[i] * p.y[i];
        }
    }
    return s;
}

inline PhasePoint nearest_point(const PhasePoint& p, Face sigma) {
    PhasePoint q = p;
    for (int i = 0; i < p.n(); ++i) {
        if (sigma.contains(i)) {
            q.x[i] = 0;
            q.y[i] = std::max(p.y[i], 0.0);
        } else {
            q.y[i] = 0;
        }
    }
    return q;
}

namespace detail {

inline void check_dim(const PhasePoint& p, const SimplicialComplex& k) {
    p.validate();
    if (p.n() != k.n()) throw InvalidFlowInput("phase point dimension does not match the complex");
}

// Faces ordered by size, then bitmask: exact ties resolve to the smaller face,
// which carries the right field when the projections agree.
inline std::vector<Face> faces_by_size(const SimplicialComplex& k) {
    std::vector<Face> f = k.faces();
    std::stable_sort(f.begin(), f.end(), [](Face a, Face b) { return a.size() < b.size(); });
    return f;
}

inline bool exact_tie(double a, double b) { return std::abs(a - b) <= 1e-13 * (1 + std::abs(a)); }

}  // namespace detail

inline Face argmin_stratum(const PhasePoint& p, const std::vector<Face>& sorted_faces) {
    Face best;
    double d = std::numeric_limits<double>::infinity();
    for (Face f : sorted_faces) {
        double e = distance_sq_stratum(p, f);
        if (e < d && !detail::exact_tie(e, d)) {
            d = e;
            best = f;
        }
    }
    return best;
}

inline Face argmin_stratum(const PhasePoint& p, const SimplicialComplex& k) { return argmin_stratum(p, detail::faces_by_size(k)); }

// Faces whose squared distance is within tol of the minimum, nearest first.
inline std::vector<Face> nearest_strata(const PhasePoint& p, const SimplicialComplex& k, double tol) {
    detail::check_dim(p, k);
    std::vector<std::pair<double, Face>> d;
    for (Face f : detail::faces_by_size(k)) d.emplace_back(distance_sq_stratum(p, f), f);
    double m = std::min_element(d.begin(), d.end())->first;
    std::stable_sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Face> out;
    for (const auto& [e, f] : d)
        if (e - m < tol) out.push_back(f);
    return out;
}

struct Energy {
    double value = 0;
    Face face;
    std::vector<Face> ties;
};

inline Energy kinetic_energy(const PhasePoint& p, const SimplicialComplex& k) {
    detail::check_dim(p, k);
    Face f = argmin_stratum(p, k);
    return {0.5 * distance_sq_stratum(p, f), f, nearest_strata(p, k, 1e-12)};
}

// Equidistant (within tol) to two strata whose nearest points differ by more than sqrt(tol).
inline bool is_singular(const PhasePoint& p, const SimplicialComplex& k, double tol) {
    auto near = nearest_strata(p, k, tol);
    PhasePoint q = nearest_point(p, argmin_stratum(p, k));
    for (Face f : near)
        if (nearest_point(p, f).distance(q) > std::sqrt(tol)) return true;
    return false;
}

// Gap d^2_tau - d^2_min to the nearest stratum tau whose nearest point differs
// from the minimiser's; infinite when there is none.
inline double singular_margin(const PhasePoint& p, const SimplicialComplex& k, double tol) {
    detail::check_dim(p, k);
    Face best = argmin_stratum(p, k);
    double m = distance_sq_stratum(p, best);
    PhasePoint q = nearest_point(p, best);
    double gap = std::numeric_limits<double>::infinity();
    for (Face f : k.faces())
        if (nearest_point(p, f).distance(q) > std::sqrt(tol)) gap = std::min(gap, distance_sq_stratum(p, f) - m);
    return gap;
}

// sum_{j not in sigma} y_j d/dx_j - sum_{j in sigma} x_j d/dy_j, as (dx..., dy...).
inline std::vector<double> field_in_region(const PhasePoint& p, Face sigma) {
    int n = p.n();
    std::vector<double> v(2 * n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (sigma.contains(j)) v[n + j] = -p.x[j];
        else v[j] = p.y[j];
    }
    return v;
}

inline std::vector<double> hamiltonian_field(const PhasePoint& p, const SimplicialComplex& k, double tol = 1e-6) {
    detail::check_dim(p, k);
    if (is_singular(p, k, tol)) throw OnSingularLocus("point is equidistant to distinct strata");
    return field_in_region(p, argmin_stratum(p, k));
}

// Time-s flow of the region field (exact: x frozen on sigma, y frozen off sigma).
inline PhasePoint shear(const PhasePoint& p, Face sigma, double s) {
    PhasePoint q = p;
    for (int j = 0; j < p.n(); ++j) {
        if (sigma.contains(j)) q.y[j] = p.y[j] - s * p.x[j];
        else q.x[j] = p.x[j] + s * p.y[j];
    }
    return q;
}

struct Orbit {
    std::vector<double> t;
    std::vector<PhasePoint> points;
    std::vector<double> singular_times;  // only filled when crossings are allowed

    const PhasePoint& end() const { return points.back(); }

    std::string to_csv() const {
        std::ostringstream os;
        os.precision(12);
        int n = points.empty() ? 0 : points[0].n();
        os << "t";
        for (int i = 1; i <= n; ++i) os << ",x" << i;
        for (int i = 1; i <= n; ++i) os << ",y" << i;
        os << '\n';
        for (std::size_t s = 0; s < points.size(); ++s) {
            os << t[s];
            for (double v : points[s].x) os << ',' << v;
            for (double v : points[s].y) os << ',' << v;
            os << '\n';
        }
        return os.str();
    }
};

namespace detail {

inline PhasePoint rk4_step(const PhasePoint& p, Face sigma, double h) {
    int n = p.n();
    auto add = [n](const PhasePoint& a, const std::vector<double>& v, double c) {
        PhasePoint b = a;
        for (int i = 0; i < n; ++i) {
            b.x[i] += c * v[i];
            b.y[i] += c * v[n + i];
        }
        return b;
    };
    auto k1 = field_in_region(p, sigma);
    auto k2 = field_in_region(add(p, k1, h / 2), sigma);
    auto k3 = field_in_region(add(p, k2, h / 2), sigma);
    auto k4 = field_in_region(add(p, k3, h), sigma);
    std::vector<double> v(2 * n);
    for (int i = 0; i < 2 * n; ++i) v[i] = (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) / 6;
    return add(p, v, h);
}

}  // namespace detail

// Integrates w * X_K from p for time T. Inside a region the step is the exact
// shear (or RK4); region switches are located by bisection, and a switch
// between strata with distinct nearest points is a singular crossing.
inline Orbit integrate_orbit(const PhasePoint& start, const SimplicialComplex& k, const FlowParams& params, double T,
                             bool allow_singular = false, int record_every = 1) {
    params.validate();
    detail::check_dim(start, k);
    if (T < 0) throw InvalidFlowInput("T must be non-negative");
    auto faces = detail::faces_by_size(k);
    auto advance = [&](const PhasePoint& p, Face sigma, double h) {
        return params.closed_form ? shear(p, sigma, params.w * h) : detail::rk4_step(p, sigma, params.w * h);
    };
    Orbit orbit;
    orbit.t.push_back(0);
    orbit.points.push_back(start);
    PhasePoint p = start;
    double t = 0;
    if (is_singular(p, k, params.tol)) {
        if (!allow_singular) throw SingularCrossing(0, "orbit starts on the singular locus");
        orbit.singular_times.push_back(0);
    }
    long steps = static_cast<long>(std::ceil(T / params.dt - 1e-9));
    for (long s = 1; s <= steps; ++s) {
        double remaining = std::min(params.dt, T - t);
        for (int guard = 0; remaining > 0; ++guard) {
            Face sigma = argmin_stratum(p, faces);
            PhasePoint q = advance(p, sigma, remaining);
            if (argmin_stratum(q, faces) == sigma || guard >= 64) {
                p = q;
                t += remaining;
                break;
            }
            double lo = 0, hi = remaining;
            for (int it = 0; it < 60; ++it) {
                double mid = (lo + hi) / 2;
                if (argmin_stratum(advance(p, sigma, mid), faces) == sigma) lo = mid;
                else hi = mid;
            }
            PhasePoint at = advance(p, sigma, hi);
            Face next = argmin_stratum(at, faces);
            if (nearest_point(at, sigma).distance(nearest_point(at, next)) > std::sqrt(params.tol)) {
                if (!allow_singular)
                    throw SingularCrossing(t + hi, "orbit crosses the singular locus at t=" + std::to_string(t + hi));
                orbit.singular_times.push_back(t + hi);
            }
            p = at;
            t += hi;
            remaining -= hi;
        }
        if (s % record_every == 0 || s == steps) {
            orbit.t.push_back(t);
            orbit.points.push_back(p);
        }
    }
    return orbit;
}

// Sample point of a signed component: +-1 on link vertices, +1 elsewhere off
// sigma, fiber coordinate sqrt(2 eps) on sigma.
inline PhasePoint component_point(const SignedComponent& c, int n, double epsilon) {
    PhasePoint p{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
    for (const auto& [v, s] : c.signs) p.x[v] = s;
    for (int i : c.sigma.vertices()) {
        p.x[i] = 0;
        p.y[i] = std::sqrt(2 * epsilon);
    }
    return p;
}

struct IntersectionCount {
    std::size_t count = 0;
    std::size_t candidate_clusters = 0;
    std::size_t singular_orbits = 0;  // grid orbits that met the singular locus
    std::vector<std::vector<double>> fibers;  // landing fiber coordinates, one per count
};

// Time-1 chords of w X_K from the fiber over p1 to the fiber over p2: grid on
// the fiber (radius sqrt(2 eps) around p1), clustering of cells where every
// coordinate of x(1) - x(p2) changes sign, bisection inside each cluster.
// Chords meeting the singular locus are excluded.
inline IntersectionCount flow_intersections(const PhasePoint& p1, const PhasePoint& p2, const SimplicialComplex& k, const FlowParams& params) {
    params.validate();
    detail::check_dim(p1, k);
    detail::check_dim(p2, k);
    if (params.w * params.epsilon < 2 - 1e-12) throw InvalidFlowInput("need w >= 2/epsilon");
    int n = k.n();
    double R = std::sqrt(2 * params.epsilon);
    auto evaluate = [&](const std::vector<double>& r, bool* singular) {
        PhasePoint s{p1.x, r};
        auto o = integrate_orbit(s, k, params, 1.0, true, std::numeric_limits<int>::max());
        *singular = !o.singular_times.empty();
        std::vector<double> e(n);
        for (int i = 0; i < n; ++i) e[i] = o.end().x[i] - p2.x[i];
        return e;
    };
    std::map<std::vector<double>, std::pair<std::vector<double>, bool>> memo;  // refinement only
    auto endpoint = [&](const std::vector<double>& r, bool* singular = nullptr) {
        auto it = memo.find(r);
        if (it == memo.end()) {
            bool s = false;
            auto e = evaluate(r, &s);
            it = memo.emplace(r, std::pair{std::move(e), s}).first;
        }
        if (singular) *singular = it->second.second;
        return it->second.first;
    };
    IntersectionCount out;
    if (n == 0) {
        out.count = 1;
        out.fibers.push_back({});
        return out;
    }
    int g = params.grid;
    std::size_t vertices = 1;
    for (int i = 0; i < n; ++i) vertices *= g;
    auto coord = [&](std::size_t v) {
        std::vector<double> r(n);
        for (int i = 0; i < n; ++i, v /= g) r[i] = p1.y[i] - R + 2 * R * static_cast<double>(v % g) / (g - 1);
        return r;
    };
    std::vector<std::vector<double>> values(vertices);
    std::vector<char> singular(vertices, 0);
    parallel_for(vertices, [&](std::size_t v) {
        bool s = false;
        values[v] = evaluate(coord(v), &s);
        singular[v] = s;
    });
    for (char s : singular) out.singular_orbits += s;
    double slack = params.tol;
    auto straddles = [&](const std::vector<std::vector<double>>& corners) {
        for (int i = 0; i < n; ++i) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& c : corners) lo = std::min(lo, c[i]), hi = std::max(hi, c[i]);
            if (lo > slack || hi < -slack) return false;
        }
        return true;
    };
    std::size_t cells = 1;
    for (int i = 0; i < n; ++i) cells *= (g - 1);
    auto cell_corner = [&](std::size_t c, std::size_t mask) {
        std::size_t v = 0, stride = 1;
        for (int i = 0; i < n; ++i, c /= (g - 1), stride *= g) v += ((c % (g - 1)) + ((mask >> i) & 1u)) * stride;
        return v;
    };
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < cells; ++c) {
        std::vector<std::vector<double>> corners;
        for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) corners.push_back(values[cell_corner(c, m)]);
        if (straddles(corners)) candidates.push_back(c);
    }
    // clusters of candidate cells touching at a corner
    std::vector<std::size_t> parent(candidates.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto touching = [&](std::size_t a, std::size_t b) {
        for (int i = 0; i < n; ++i, a /= (g - 1), b /= (g - 1)) {
            long d = static_cast<long>(a % (g - 1)) - static_cast<long>(b % (g - 1));
            if (d < -1 || d > 1) return false;
        }
        return true;
    };
    for (std::size_t a = 0; a < candidates.size(); ++a)
        for (std::size_t b = a + 1; b < candidates.size(); ++b)
            if (touching(candidates[a], candidates[b])) parent[find(a)] = find(b);
    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t a = 0; a < candidates.size(); ++a) clusters[find(a)].push_back(candidates[a]);
    out.candidate_clusters = clusters.size();
    double width0 = 2 * R / (g - 1);
    for (const auto& [root, members] : clusters) {
        // boxes as (lower corner, width)
        std::vector<std::pair<std::vector<double>, double>> boxes;
        for (std::size_t c : members) boxes.emplace_back(coord(cell_corner(c, 0)), width0);
        std::optional<std::vector<double>> hit;
        int max_depth = static_cast<int>(std::ceil(std::log2(width0 / (params.tol * 1e-3))));
        for (int depth = 0; depth <= max_depth && !boxes.empty() && !hit; ++depth) {
            std::vector<std::pair<std::vector<double>, double>> next;
            for (const auto& [lo, w] : boxes) {
                std::vector<double> centre(n);
                for (int i = 0; i < n; ++i) centre[i] = lo[i] + w / 2;
                bool crossed = false;
                auto e = endpoint(centre, &crossed);
                double norm = 0;
                for (double v : e) norm = std::max(norm, std::abs(v));
                if (norm < params.tol && !crossed) {
                    hit = centre;
                    break;
                }
                double half = w / 2;
                for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
                    std::vector<double> sub(n);
                    for (int i = 0; i < n; ++i) sub[i] = lo[i] + (((m >> i) & 1u) ? half : 0.0);
                    std::vector<std::vector<double>> corners;
                    bool all_singular = true;
                    for (std::size_t c = 0; c < (std::size_t{1} << n); ++c) {
                        std::vector<double> r(n);
                        for (int i = 0; i < n; ++i) r[i] = sub[i] + (((c >> i) & 1u) ? half : 0.0);
                        bool crossed = false;
                        corners.push_back(endpoint(r, &crossed));
                        all_singular = all_singular && crossed;
                    }
                    if (!all_singular && straddles(corners)) next.emplace_back(sub, half);
                }
            }
            if (next.size() > 256) next.resize(256);
            boxes = std::move(next);
        }
        if (hit) {
            ++out.count;
            out.fibers.push_back(*hit);
        }
    }
    return out;
}

inline std::size_t count_flow_intersections(const PhasePoint& p1, const PhasePoint& p2, const SimplicialComplex& k, const FlowParams& params) {
    return flow_intersections(p1, p2, k, params).count;
}

namespace detail {

// Projected gradient descent over the parameters of L_sigma (free x off sigma,
// y >= 0 on sigma): a numerical nearest-point search.
inline double numeric_distance_sq(const PhasePoint& p, Face sigma) {
    int n = p.n();
    std::vector<double> u(n, 0.0);  // x_j off sigma, y_i on sigma
    auto point_of = [&](const std::vector<double>& par) {
        PhasePoint q{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
        for (int i = 0; i < n; ++i) (sigma.contains(i) ? q.y[i] : q.x[i]) = par[i];
        return q;
    };
    for (int it = 0; it < 200; ++it) {
        PhasePoint q = point_of(u);
        for (int i = 0; i < n; ++i) {
            double grad = sigma.contains(i) ? 2 * (q.y[i] - p.y[i]) : 2 * (q.x[i] - p.x[i]);
            u[i] -= 0.5 * grad;
            if (sigma.contains(i)) u[i] = std::max(u[i], 0.0);
        }
    }
    double d = point_of(u).distance(p);
    return d * d;
}

}  // namespace detail

// Numeric checks of the idealized field for n <= 2.
inline std::vector<Report> flow_battery(const FlowParams& params, std::uint64_t seed = 1) {
    params.validate();
    std::vector<Report> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    auto point_k = closure(1, {Face::full(1)});
    auto simplex2 = closure(2, {Face::full(2)});
    auto random_point = [&](int n) {
        PhasePoint p{std::vector<double>(n), std::vector<double>(n)};
        for (int i = 0; i < n; ++i) p.x[i] = unit(rng), p.y[i] = unit(rng);
        return p;
    };

    Report dist{"distance formula", {}};
    for (int n = 1; n <= 2; ++n) {
        double worst = 0;
        for (int s = 0; s < 2000; ++s) {
            auto p = random_point(n);
            for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f)
                worst = std::max(worst, std::abs(distance_sq_stratum(p, Face(f)) - detail::numeric_distance_sq(p, Face(f))));
        }
        dist.add("n=" + std::to_string(n), worst < 1e-9, {{"max_error", worst}});
    }
    out.push_back(dist);

    Report orbit{"orbits", {}};
    {
        FlowParams rk = params;
        rk.closed_form = false;
        PhasePoint p{{0.3}, {0.1}};
        auto o = integrate_orbit(p, point_k, rk, 0.5);
        double err = std::abs(o.end().x[0] - (0.3 + rk.w * 0.5 * 0.1)) + std::abs(o.end().y[0] - 0.1);
        orbit.add("cogeodesic drift", err < 1e-9, {{"error", err}});
        PhasePoint q{{0.1}, {1.0}};
        double T = 0.5;
        auto s = integrate_orbit(q, point_k, rk, T);
        double err2 = std::abs(s.end().x[0] - 0.1) + std::abs(s.end().y[0] - (1.0 - rk.w * T * 0.1));
        orbit.add("shear in the {1} region", err2 < 1e-9, {{"error", err2}});
        double drift = 0;
        for (int t = 0; t < 20; ++t) {
            auto start = random_point(2);
            Face region = argmin_stratum(start, simplex2);
            double e0 = kinetic_energy(start, simplex2).value;
            auto path = integrate_orbit(start, simplex2, rk, 0.05, true);
            for (const auto& pt : path.points) {
                if (argmin_stratum(pt, simplex2) != region) break;
                drift = std::max(drift, std::abs(kinetic_energy(pt, simplex2).value - e0) / std::max(e0, 1e-12) / 0.05);
            }
        }
        orbit.add("energy conservation", drift < 1e-6, {{"relative_drift_per_time", drift}});
    }
    out.push_back(orbit);

    Report claim{"cogeodesic claim", {}};
    {
        bool ok = true;
        for (int s = 0; s <= 20; ++s) {
            double r = -params.epsilon + 2 * params.epsilon * s / 20;
            try {
                auto o = integrate_orbit(PhasePoint{{1.0}, {r}}, point_k, params, 2.0);
                for (const auto& pt : o.points) ok = ok && argmin_stratum(pt, point_k).empty();
            } catch (const SingularCrossing&) {
                ok = false;
            }
        }
        claim.add("start (1,r), |r| <= eps", ok);
    }
    out.push_back(claim);

    Report counts{"intersection counts", {}};
    for (int n = 1; n <= 2; ++n) {
        auto k = closure(n, {Face::full(n)});
        std::size_t count = std::size_t{1} << n;
        auto base = [&](std::size_t I) {
            PhasePoint p{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
            for (int i = 0; i < n; ++i)
                if ((I >> i) & 1u) p.x[i] = -1;
            return p;
        };
        for (std::size_t I = 0; I < count; ++I)
            for (std::size_t J = 0; J < count; ++J) {
                std::size_t c = count_flow_intersections(base(I), base(J), k, params);
                std::size_t expect = Face(I).subset_of(Face(J)) ? 1 : 0;
                counts.add("n=" + std::to_string(n) + " " + Face(I).to_string() + "->" + Face(J).to_string(), c == expect,
                           {{"count", c}, {"expected", expect}});
            }
    }
    out.push_back(counts);
    return out;
}

}  // namespace skeleta
