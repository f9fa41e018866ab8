#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeleta {

struct InvalidComplex : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAFace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxVertices = 20;

// Subset of [n] as a bitmask; vertex i (1-based in all I/O) is bit i-1.
struct Face {
    std::uint64_t bits = 0;

    constexpr Face() = default;
    constexpr explicit Face(std::uint64_t b) : bits(b) {}
    static Face of(std::initializer_list<int> vertices_one_based) {
        Face f;
        for (int v : vertices_one_based) f.bits |= std::uint64_t{1} << (v - 1);
        return f;
    }
    static Face full(int n) { return Face(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1); }
    static Face vertex(int i) { return Face(std::uint64_t{1} << i); }

    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }
    bool contains(int i) const { return (bits >> i) & 1u; }
    bool subset_of(Face o) const { return (bits & ~o.bits) == 0; }
    bool disjoint(Face o) const { return (bits & o.bits) == 0; }

    Face operator|(Face o) const { return Face(bits | o.bits); }
    Face operator&(Face o) const { return Face(bits & o.bits); }
    Face operator-(Face o) const { return Face(bits & ~o.bits); }
    bool operator==(const Face&) const = default;
    auto operator<=>(const Face&) const = default;

    // 0-based indices, increasing.
    std::vector<int> vertices() const {
        std::vector<int> out;
        for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : vertices()) {
            if (!first) s += ",";
            s += std::to_string(v + 1);
            first = false;
        }
        return s + "}";
    }
};

// Lexicographic order on increasing vertex lists.
inline bool lex_less(Face a, Face b) {
    auto va = a.vertices(), vb = b.vertices();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

// All subsets of f, in increasing numeric order.
inline std::vector<Face> subsets(Face f) {
    std::vector<Face> out;
    std::uint64_t s = 0;
    do {
        out.emplace_back(s);
        s = (s - f.bits) & f.bits;
    } while (s != 0);
    return out;
}

class SimplicialComplex {
public:
    SimplicialComplex() : n_(0), faces_{Face{}} {}

    // faces must already be downward closed and contain the empty face.
    SimplicialComplex(int n, std::vector<Face> faces, bool require_vertices = true) : n_(n), faces_(std::move(faces)) {
        if (n < 0 || n > kMaxVertices) throw InvalidComplex("vertex count out of range: " + std::to_string(n));
        std::sort(faces_.begin(), faces_.end());
        faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
        if (faces_.empty() || !faces_.front().empty()) throw InvalidComplex("complex must contain the empty face");
        for (Face f : faces_) {
            if (!f.subset_of(Face::full(n))) throw InvalidComplex("face " + f.to_string() + " outside [n]");
            for (int v : f.vertices())
                if (!contains(f - Face::vertex(v)))
                    throw InvalidComplex("not downward closed at " + f.to_string());
        }
        if (require_vertices)
            for (int i = 0; i < n; ++i)
                if (!contains(Face::vertex(i)))
                    throw InvalidComplex("vertex " + std::to_string(i + 1) + " is not a face");
    }

    int n() const { return n_; }
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t size() const { return faces_.size(); }
    bool contains(Face f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }

    // Index of f in faces(), or -1.
    int index_of(Face f) const {
        auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
        return (it != faces_.end() && *it == f) ? static_cast<int>(it - faces_.begin()) : -1;
    }

    Face vertex_set() const {
        Face v;
        for (Face f : faces_) v = v | f;
        return v;
    }
    bool vertex_complete() const { return vertex_set() == Face::full(n_); }

    // Maximal faces in lexicographic order.
    std::vector<Face> maximal_faces() const {
        std::vector<Face> out;
        for (Face f : faces_) {
            bool maximal = true;
            for (int i = 0; i < n_ && maximal; ++i)
                if (!f.contains(i) && contains(f | Face::vertex(i))) maximal = false;
            if (maximal) out.push_back(f);
        }
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    }

    bool operator==(const SimplicialComplex& o) const { return n_ == o.n_ && faces_ == o.faces_; }

    std::string to_string() const {
        std::string s = "n=" + std::to_string(n_) + " facets=";
        for (Face f : maximal_faces()) s += f.to_string();
        return s;
    }

private:
    int n_;
    std::vector<Face> faces_;
};

inline SimplicialComplex closure(int n, const std::vector<Face>& generators, bool require_vertices = false) {
    std::set<Face> out{Face{}};
    for (Face g : generators) {
        if (!g.subset_of(Face::full(n))) throw InvalidComplex("face " + g.to_string() + " outside [n]");
        if (out.count(g)) continue;
        for (Face s : subsets(g)) out.insert(s);
    }
    return SimplicialComplex(n, {out.begin(), out.end()}, require_vertices);
}

inline void require_face(const SimplicialComplex& k, Face sigma) {
    if (!k.contains(sigma)) throw NotAFace(sigma.to_string() + " is not a face");
}

inline std::vector<Face> star(const SimplicialComplex& k, Face sigma) {
    require_face(k, sigma);
    std::vector<Face> out;
    for (Face f : k.faces())
        if (sigma.subset_of(f)) out.push_back(f);
    return out;
}

// Stays on the ambient vertex set [n]; vertex_set() gives the link vertices.
inline SimplicialComplex link(const SimplicialComplex& k, Face sigma) {
    require_face(k, sigma);
    std::vector<Face> out;
    for (Face f : k.faces())
        if (f.disjoint(sigma) && k.contains(f | sigma)) out.push_back(f);
    return SimplicialComplex(k.n(), std::move(out), false);
}

inline Face link_vertices(const SimplicialComplex& k, Face sigma) {
    require_face(k, sigma);
    Face v;
    for (int i = 0; i < k.n(); ++i)
        if (!sigma.contains(i) && k.contains(sigma | Face::vertex(i))) v = v | Face::vertex(i);
    return v;
}

// Faces inside I, re-indexed so that the j-th smallest vertex of I becomes j.
inline SimplicialComplex restrict(const SimplicialComplex& k, Face I) {
    auto verts = I.vertices();
    std::vector<Face> out;
    for (Face f : k.faces()) {
        if (!f.subset_of(I)) continue;
        Face g;
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (f.contains(verts[j])) g = g | Face::vertex(static_cast<int>(j));
        out.push_back(g);
    }
    return SimplicialComplex(static_cast<int>(verts.size()), std::move(out), false);
}

// Apex is the new last vertex n+1.
inline SimplicialComplex cone(const SimplicialComplex& k) {
    std::vector<Face> out = k.faces();
    Face apex = Face::vertex(k.n());
    for (Face f : k.faces()) out.push_back(f | apex);
    return SimplicialComplex(k.n() + 1, std::move(out), false);
}

inline int nonface_distance(const SimplicialComplex& k, Face I) {
    int best = I.size();
    for (Face s : subsets(I))
        if (k.contains(s)) best = std::min(best, I.size() - s.size());
    return best;
}

struct SignedComponent {
    Face sigma;
    std::vector<std::pair<int, int>> signs;  // (0-based link vertex, +1 or -1), increasing vertex

    std::string to_string() const {
        std::string s = sigma.to_string() + " [";
        for (std::size_t i = 0; i < signs.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(signs[i].first + 1) + (signs[i].second > 0 ? "+" : "-");
        }
        return s + "]";
    }
};

// For each face, one entry per sign pattern on the link vertices; patterns are
// ordered by the binary mask of minus signs.
inline std::vector<SignedComponent> components(const SimplicialComplex& k) {
    std::vector<SignedComponent> out;
    for (Face sigma : k.faces()) {
        auto lv = link_vertices(k, sigma).vertices();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lv.size()); ++mask) {
            SignedComponent c{sigma, {}};
            for (std::size_t j = 0; j < lv.size(); ++j) c.signs.emplace_back(lv[j], ((mask >> j) & 1u) ? -1 : 1);
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline std::size_t component_count(const SimplicialComplex& k) {
    std::size_t total = 0;
    for (Face sigma : k.faces()) total += std::size_t{1} << link_vertices(k, sigma).size();
    return total;
}

// Every downward-closed family on [n] (n <= 4), optionally only vertex-complete ones.
inline std::vector<SimplicialComplex> enumerate_complexes(int n, bool vertex_complete = true) {
    if (n < 0 || n > 4) throw std::invalid_argument("exhaustive enumeration is limited to n <= 4");
    std::vector<Face> nonempty;
    for (std::uint64_t b = 1; b < (std::uint64_t{1} << n); ++b) nonempty.emplace_back(b);
    std::vector<SimplicialComplex> out;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << nonempty.size()); ++pick) {
        auto has = [&](Face f) {
            if (f.empty()) return true;
            return ((pick >> (f.bits - 1)) & 1u) != 0;
        };
        bool ok = true;
        for (std::size_t j = 0; j < nonempty.size() && ok; ++j) {
            if (!((pick >> j) & 1u)) continue;
            for (int v : nonempty[j].vertices())
                if (!has(nonempty[j] - Face::vertex(v))) { ok = false; break; }
        }
        if (!ok) continue;
        if (vertex_complete)
            for (int i = 0; i < n && ok; ++i) ok = has(Face::vertex(i));
        if (!ok) continue;
        std::vector<Face> faces{Face{}};
        for (std::size_t j = 0; j < nonempty.size(); ++j)
            if ((pick >> j) & 1u) faces.push_back(nonempty[j]);
        out.emplace_back(n, std::move(faces), vertex_complete);
    }
    return out;
}

// Closure of a few random faces plus all singletons.
inline SimplicialComplex random_complex(int n, std::mt19937_64& rng) {
    std::vector<Face> gens;
    for (int i = 0; i < n; ++i) gens.push_back(Face::vertex(i));
    std::uniform_int_distribution<int> count(0, n + 1);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    for (int c = count(rng); c > 0; --c) gens.emplace_back(pick(rng));
    return closure(n, gens, true);
}

}  // namespace skeleta
