#pragma once

#include "twisted.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace skeleta {

using Weight = std::vector<int>;

inline std::string weight_string(const Weight& m) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ")";
    return os.str();
}

inline Weight indicator(Face I, int n) {
    Weight m(n, 0);
    for (int v : I.vertices()) m[v] = 1;
    return m;
}

inline Weight operator-(const Weight& b, const Weight& a) {
    Weight m(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) m[i] = b[i] - a.at(i);
    return m;
}

inline Weight operator+(const Weight& b, const Weight& a) {
    Weight m(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) m[i] = b[i] + a.at(i);
    return m;
}

// The chart U_sigma = {z_i != 0 : i not in sigma} has z^m iff m_i >= 0 on sigma.
inline bool chart_has_weight(Face sigma, const Weight& m) {
    for (int i : sigma.vertices())
        if (m.at(i) < 0) return false;
    return true;
}

struct ToricCover {
    SimplicialComplex K;
    std::vector<Face> pieces;  // maximal faces, lexicographic

    explicit ToricCover(SimplicialComplex k) : K(std::move(k)), pieces(K.maximal_faces()) {
        if (pieces.size() > 24) throw std::invalid_argument("cover too large for the alternating Cech complex");
    }
    int n() const { return K.n(); }

    Face intersection(std::uint64_t tuple) const {
        Face f = Face::full(n());
        for (std::uint64_t t = tuple; t; t &= t - 1) f = f & pieces[std::countr_zero(t)];
        return f;
    }

    std::string tuple_label(std::uint64_t tuple) const {
        std::string s;
        for (std::uint64_t t = tuple; t; t &= t - 1) s += pieces[std::countr_zero(t)].to_string();
        return s;
    }
};

// Alternating Cech complex of the maximal-face cover at weight m. Level p is
// spanned by increasing (p+1)-tuples of pieces whose common chart has z^m.
template <class F>
struct CechComplex {
    Weight weight;
    std::vector<std::vector<std::uint64_t>> levels;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> index;
    std::vector<SparseMatrix<F>> d;  // d[p] : C^p -> C^{p+1}

    std::size_t dim(int p) const { return p >= 0 && p < static_cast<int>(levels.size()) ? levels[p].size() : 0; }
    std::optional<std::size_t> find(std::uint64_t tuple) const {
        int p = std::popcount(tuple) - 1;
        if (p < 0 || p >= static_cast<int>(index.size())) return std::nullopt;
        auto it = index[p].find(tuple);
        if (it == index[p].end()) return std::nullopt;
        return it->second;
    }
    CochainComplex<F> as_cochain() const {
        CochainComplex<F> c;
        c.lowest = 0;
        for (const auto& l : levels) c.dims.push_back(l.size());
        c.d = d;
        return c;
    }
};

namespace detail {

// Increasing index tuples of size r from [0, m), lexicographic, as bitmasks.
inline std::vector<std::uint64_t> combinations(int m, int r) {
    std::vector<std::uint64_t> out;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    if (r > m) return out;
    for (;;) {
        std::uint64_t mask = 0;
        for (int i : idx) mask |= std::uint64_t{1} << i;
        out.push_back(mask);
        int i = r - 1;
        while (i >= 0 && idx[i] == m - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

template <class F>
CechComplex<F> cech_complex(const ToricCover& cover, const Weight& m, const F& field = F{}) {
    if (static_cast<int>(m.size()) != cover.n()) throw std::invalid_argument("weight length must equal n");
    CechComplex<F> c;
    c.weight = m;
    int P = static_cast<int>(cover.pieces.size());
    for (int r = 1; r <= P; ++r) {
        std::vector<std::uint64_t> level;
        for (std::uint64_t t : detail::combinations(P, r))
            if (chart_has_weight(cover.intersection(t), m)) level.push_back(t);
        c.levels.push_back(std::move(level));
    }
    while (!c.levels.empty() && c.levels.back().empty()) c.levels.pop_back();
    c.index.resize(c.levels.size());
    for (std::size_t p = 0; p < c.levels.size(); ++p)
        for (std::size_t i = 0; i < c.levels[p].size(); ++i) c.index[p][c.levels[p][i]] = i;
    for (std::size_t p = 0; p + 1 < c.levels.size(); ++p) {
        SparseMatrix<F> dm(field, c.levels[p + 1].size(), c.levels[p].size());
        for (std::size_t i = 0; i < c.levels[p].size(); ++i) {
            std::uint64_t s = c.levels[p][i];
            for (int j = 0; j < P; ++j) {
                std::uint64_t bit = std::uint64_t{1} << j;
                if (s & bit) continue;
                auto it = c.index[p + 1].find(s | bit);
                if (it == c.index[p + 1].end()) continue;
                int position = std::popcount(s & (bit - 1));
                dm.set(it->second, i, sign_of(field, position));
            }
        }
        c.d.push_back(std::move(dm));
    }
    return c;
}

template <class F>
std::map<int, std::size_t> cohomology_weight(const ToricCover& cover, const Weight& m, const F& field = F{}) {
    return cohomology_dims(cech_complex(cover, m, field).as_cochain());
}

// Equivariant Ext(O(a), O(b)) is the weight b - a part of H(Y_K, O).
template <class F>
std::map<int, std::size_t> eq_ext(const ToricCover& cover, const Weight& a, const Weight& b, const F& field = F{}) {
    return cohomology_weight(cover, b - a, field);
}

// Z_I meets U_sigma iff I is inside sigma; the Koszul complex has empty support iff I is not a face.
inline bool koszul_support_check(const SimplicialComplex& k, Face I) {
    for (Face sigma : k.maximal_faces())
        if (I.subset_of(sigma)) return false;
    return true;
}

inline std::string line_bundle_label(Face I, int n) {
    std::string s = "O(";
    for (int i = 0; i < n; ++i) s += std::string(i ? "," : "") + (I.contains(i) ? "1" : "0");
    return s + ")";
}

template <class F>
struct BModel {
    std::shared_ptr<const ToricCover> cover;
    CategoryPtr<F> cochains;     // Cech cochain dg category
    FunctorData<F> cochain_functor;
    CohomologyCategory<F> cohomology;
    FunctorData<F> functor;      // C_n -> H(D_B)
};

// Cech cochain model: Hom(O(e_I), O(e_J)) is the Cech complex at weight e_J - e_I,
// composition g o f = g cup f with g on the front face.
template <class F>
BModel<F> build_B_model(const SimplicialComplex& k, const F& field = F{}) {
    auto cover = std::make_shared<const ToricCover>(k);
    int n = k.n();
    std::size_t count = std::size_t{1} << n;
    auto cache = std::make_shared<std::map<Weight, std::shared_ptr<const CechComplex<F>>>>();
    auto complex_at = [&](const Weight& m) {
        auto it = cache->find(m);
        if (it != cache->end()) return it->second;
        return cache->emplace(m, std::make_shared<const CechComplex<F>>(cech_complex(*cover, m, field))).first->second;
    };
    std::vector<std::string> labels;
    for (std::size_t I = 0; I < count; ++I) labels.push_back(line_bundle_label(Face(I), n));
    auto cat = std::make_shared<LinearCategory<F>>(field, "D_B cochains", labels);
    std::vector<std::shared_ptr<const CechComplex<F>>> homs(count * count);
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) {
            auto c = complex_at(indicator(Face(b), n) - indicator(Face(a), n));
            homs[a * count + b] = c;
            HomSpace<F> h;
            for (std::size_t p = 0; p < c->levels.size(); ++p)
                for (std::uint64_t t : c->levels[p]) h.basis[static_cast<int>(p)].push_back(cover->tuple_label(t));
            for (std::size_t p = 0; p < c->d.size(); ++p)
                if (!c->d[p].is_zero_matrix()) h.differential.emplace(static_cast<int>(p), c->d[p]);
            cat->set_hom(a, b, std::move(h));
        }
    auto all_pieces = [&](const CechComplex<F>& c) {
        Vec<F> v;
        for (std::size_t i = 0; i < c.dim(0); ++i) v.emplace_back(i, field.one());
        return v;
    };
    for (std::size_t a = 0; a < count; ++a) cat->set_identity(a, all_pieces(*homs[a * count + a]));
    cat->set_composer([homs, count, field](std::size_t a, std::size_t b, std::size_t c, int kg, std::size_t g, int kf, std::size_t f) {
        std::uint64_t t = homs[b * count + c]->levels.at(kg).at(g);
        std::uint64_t s = homs[a * count + b]->levels.at(kf).at(f);
        // last(t) == first(s): highest bit of t equals lowest bit of s
        int last = 63 - std::countl_zero(t);
        int first = std::countr_zero(s);
        if (last != first) return Vec<F>{};
        auto pos = homs[a * count + c]->find(t | s);
        if (!pos) throw std::logic_error("cup product left the Cech complex");
        return Vec<F>{{*pos, field.one()}};
    });
    CategoryPtr<F> dg = cat;
    FunctorData<F> fd{build_monomial_category<F>(n, field), dg, {}, {}};
    for (std::size_t a = 0; a < count; ++a) {
        fd.object_map.push_back(a);
        for (std::size_t b = 0; b < count; ++b)
            if (Face(a).subset_of(Face(b))) fd.images[{a, b, 0, 0}] = all_pieces(*homs[a * count + b]);
    }
    auto hc = cohomology_category<F>(dg, "D_B", [homs, count](std::size_t a, std::size_t b, int k, std::size_t i) {
        const auto& w = homs[a * count + b]->weight;
        if (k == 0) return "z^" + weight_string(w);
        return "h" + std::to_string(k) + "." + std::to_string(i) + "@" + weight_string(w);
    });
    auto hf = to_cohomology(fd, hc);
    return {cover, dg, std::move(fd), std::move(hc), std::move(hf)};
}

// The cochain model; tw-level questions need it, since the strict cohomology
// category forgets the higher products.
template <class F>
std::pair<CategoryPtr<F>, FunctorData<F>> build_B_category(const SimplicialComplex& k, const F& field = F{}) {
    auto model = build_B_model(k, field);
    return {model.cochains, model.cochain_functor};
}

}  // namespace skeleta
