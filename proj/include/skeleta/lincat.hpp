#pragma once

#include "linalg.hpp"
#include "report.hpp"
#include "simplicial.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace skeleta {

template <class F>
using Vec = SparseVector<typename F::value_type>;

template <class F>
struct HomSpace {
    std::map<int, std::vector<std::string>> basis;  // degree -> ordered labels
    std::map<int, SparseMatrix<F>> differential;    // degree k: Hom^k -> Hom^{k+1}; absent means zero

    std::size_t dim(int k) const {
        auto it = basis.find(k);
        return it == basis.end() ? 0 : it->second.size();
    }
    bool empty() const {
        for (const auto& [k, b] : basis)
            if (!b.empty()) return false;
        return true;
    }
};

// (src, mid, dst, deg g, index g, deg f, index f), g : mid -> dst, f : src -> mid.
using CompositionKey = std::tuple<std::size_t, std::size_t, std::size_t, int, std::size_t, int, std::size_t>;

struct CompositionKeyHash {
    std::size_t operator()(const CompositionKey& k) const {
        std::size_t h = 0;
        auto mix = [&h](std::size_t v) {
            h = (h ^ v) * 0x9e3779b97f4a7c15ULL;
            h ^= h >> 29;
        };
        mix(std::get<0>(k)), mix(std::get<1>(k)), mix(std::get<2>(k));
        mix(static_cast<std::size_t>(std::get<3>(k))), mix(std::get<4>(k));
        mix(static_cast<std::size_t>(std::get<5>(k))), mix(std::get<6>(k));
        return h;
    }
};

// A finite graded linear category with chosen bases. Composition is given by
// a function on basis elements; results are memoized.
template <class F>
class LinearCategory {
public:
    using Scalar = typename F::value_type;
    using V = Vec<F>;
    using Composer = std::function<V(std::size_t a, std::size_t b, std::size_t c, int dg, std::size_t g, int df, std::size_t f)>;

    LinearCategory(F field, std::string name, std::vector<std::string> objects)
        : field_(field), name_(std::move(name)), objects_(std::move(objects)),
          homs_(objects_.size() * objects_.size()), identities_(objects_.size()) {}

    const F& field() const { return field_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return objects_.size(); }
    const std::string& object(std::size_t a) const { return objects_.at(a); }
    const std::vector<std::string>& objects() const { return objects_; }

    const HomSpace<F>& hom(std::size_t a, std::size_t b) const { return homs_.at(a * size() + b); }
    void set_hom(std::size_t a, std::size_t b, HomSpace<F> h) {
        if (!h.differential.empty()) dg_ = true;
        homs_.at(a * size() + b) = std::move(h);
    }
    bool has_differential() const { return dg_; }

    const V& identity(std::size_t a) const { return identities_.at(a); }
    void set_identity(std::size_t a, V v) { identities_.at(a) = std::move(v); }

    void set_composer(Composer c) {
        composer_ = std::move(c);
        std::lock_guard lock(mutex_);
        cache_.clear();
    }

    V compose_basis(std::size_t a, std::size_t b, std::size_t c, int dg, std::size_t g, int df, std::size_t f) const {
        CompositionKey key{a, b, c, dg, g, df, f};
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        V r = composer_ ? composer_(a, b, c, dg, g, df, f) : V{};
        std::lock_guard lock(mutex_);
        return cache_.emplace(key, std::move(r)).first->second;
    }

    // g in Hom^dg(b,c), f in Hom^df(a,b).
    V compose(std::size_t a, std::size_t b, std::size_t c, int dg, const V& g, int df, const V& f) const {
        V out;
        for (const auto& [i, x] : g)
            for (const auto& [j, y] : f) axpy(out, x * y, compose_basis(a, b, c, dg, i, df, j));
        return out;
    }

    V differential(std::size_t a, std::size_t b, int k, const V& v) const {
        const auto& h = hom(a, b);
        auto it = h.differential.find(k);
        if (it == h.differential.end()) return {};
        return it->second.apply(v);
    }

    std::size_t total_basis() const {
        std::size_t t = 0;
        for (const auto& h : homs_)
            for (const auto& [k, b] : h.basis) t += b.size();
        return t;
    }

private:
    F field_;
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<HomSpace<F>> homs_;
    std::vector<V> identities_;
    Composer composer_;
    bool dg_ = false;
    mutable std::mutex mutex_;
    mutable std::unordered_map<CompositionKey, V, CompositionKeyHash> cache_;
};

template <class F>
using CategoryPtr = std::shared_ptr<const LinearCategory<F>>;

template <class F>
struct FunctorData {
    CategoryPtr<F> source;
    CategoryPtr<F> target;
    std::vector<std::size_t> object_map;
    // (src, dst, degree, basis index) of the source -> element of the target hom space
    std::map<std::tuple<std::size_t, std::size_t, int, std::size_t>, Vec<F>> images;

    Vec<F> apply(std::size_t a, std::size_t b, int k, const Vec<F>& v) const {
        Vec<F> out;
        for (const auto& [i, x] : v) {
            auto it = images.find({a, b, k, i});
            if (it != images.end()) axpy(out, x, it->second);
        }
        return out;
    }
};

// The monomial category: objects C_I indexed by the bitmask of I.
template <class F>
std::shared_ptr<LinearCategory<F>> build_monomial_category(int n, const F& field = F{}) {
    if (n < 0 || n > kMaxVertices) throw std::invalid_argument("n out of range");
    std::size_t count = std::size_t{1} << n;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i) labels.push_back("C" + Face(i).to_string());
    auto cat = std::make_shared<LinearCategory<F>>(field, "C_" + std::to_string(n), labels);
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if (!Face(a).subset_of(Face(b))) continue;
            HomSpace<F> h;
            h.basis[0] = {"e" + (Face(b) - Face(a)).to_string()};
            cat->set_hom(a, b, std::move(h));
        }
        cat->set_identity(a, Vec<F>{{0, field.one()}});
    }
    cat->set_composer([field](std::size_t a, std::size_t b, std::size_t c, int, std::size_t, int, std::size_t) {
        if (Face(a).subset_of(Face(b)) && Face(b).subset_of(Face(c))) return Vec<F>{{0, field.one()}};
        return Vec<F>{};
    });
    return cat;
}

template <class F>
FunctorData<F> identity_functor(CategoryPtr<F> c) {
    FunctorData<F> fd{c, c, {}, {}};
    for (std::size_t a = 0; a < c->size(); ++a) {
        fd.object_map.push_back(a);
        for (std::size_t b = 0; b < c->size(); ++b)
            for (const auto& [k, basis] : c->hom(a, b).basis)
                for (std::size_t i = 0; i < basis.size(); ++i) fd.images[{a, b, k, i}] = Vec<F>{{i, c->field().one()}};
    }
    return fd;
}

inline std::string arrow_label(const std::string& a, const std::string& b) { return a + "->" + b; }

template <class F>
Report check_category_axioms(const LinearCategory<F>& c) {
    Report r{"category axioms " + c.name(), {}};
    const auto& field = c.field();
    std::size_t checked = 0, violations = 0;
    auto fail = [&](std::string label, nlohmann::json w = nlohmann::json::object()) {
        if (++violations <= 50) r.add(std::move(label), false, std::move(w));
    };
    auto in_range = [&](std::size_t a, std::size_t b, int k, const Vec<F>& v) {
        return v.empty() || v.back().first < c.hom(a, b).dim(k);
    };
    std::size_t n = c.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (const auto& [k, basis] : c.hom(a, b).basis) {
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    Vec<F> f{{i, field.one()}};
                    ++checked;
                    if (c.compose(a, b, b, 0, c.identity(b), k, f) != f)
                        fail("left identity on " + basis[i] + " : " + arrow_label(c.object(a), c.object(b)));
                    if (c.compose(a, a, b, k, f, 0, c.identity(a)) != f)
                        fail("right identity on " + basis[i] + " : " + arrow_label(c.object(a), c.object(b)));
                }
            }
            // d(id) = 0 and d^2 = 0
            if (a == b && !c.differential(a, a, 0, c.identity(a)).empty()) fail("d(id) != 0 at " + c.object(a));
            const auto& h = c.hom(a, b);
            for (const auto& [k, d] : h.differential) {
                auto next = h.differential.find(k + 1);
                if (next != h.differential.end() && !(next->second * d).is_zero_matrix())
                    fail("d^2 != 0 on " + arrow_label(c.object(a), c.object(b)) + " degree " + std::to_string(k));
            }
        }
    }
    struct Post {
        std::size_t d;
        int kh;
        std::size_t l;
        Vec<F> h, hg;
    };
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t cc = 0; cc < n; ++cc) {
            const auto& hbc = c.hom(b, cc);
            if (hbc.empty()) continue;
            for (const auto& [kg, bg] : hbc.basis)
                for (std::size_t i = 0; i < bg.size(); ++i) {
                    Vec<F> g{{i, field.one()}};
                    // h g for every basis h out of cc, shared by all f
                    std::vector<Post> posts;
                    for (std::size_t d = 0; d < n; ++d)
                        for (const auto& [kh, bh] : c.hom(cc, d).basis)
                            for (std::size_t l = 0; l < bh.size(); ++l) {
                                Vec<F> hv{{l, field.one()}};
                                auto hg = c.compose(b, cc, d, kh, hv, kg, g);
                                posts.push_back({d, kh, l, std::move(hv), std::move(hg)});
                            }
                    for (std::size_t a = 0; a < n; ++a) {
                        const auto& hab = c.hom(a, b);
                        for (const auto& [kf, bf] : hab.basis)
                            for (std::size_t j = 0; j < bf.size(); ++j) {
                                Vec<F> f{{j, field.one()}};
                                auto gf = c.compose(a, b, cc, kg, g, kf, f);
                                ++checked;
                                if (!in_range(a, cc, kg + kf, gf))
                                    fail("degree of " + bg[i] + "*" + bf[j] + " not " + std::to_string(kg + kf));
                                if (c.has_differential()) {
                                    // d(g f) = dg f + (-1)^|g| g df
                                    auto lhs = c.differential(a, cc, kg + kf, gf);
                                    auto rhs = c.compose(a, b, cc, kg + 1, c.differential(b, cc, kg, g), kf, f);
                                    auto t = c.compose(a, b, cc, kg, g, kf + 1, c.differential(a, b, kf, f));
                                    axpy(rhs, (kg % 2 == 0) ? field.one() : -field.one(), t);
                                    if (lhs != rhs) fail("Leibniz fails on " + bg[i] + "*" + bf[j]);
                                }
                                checked += posts.size();
                                for (const auto& p : posts) {
                                    if (gf.empty() && p.hg.empty()) continue;  // both sides vanish
                                    auto left = c.compose(a, cc, p.d, p.kh, p.h, kg + kf, gf);
                                    auto right = c.compose(a, b, p.d, p.kh + kg, p.hg, kf, f);
                                    if (left != right)
                                        fail("associativity fails on (" + c.hom(cc, p.d).basis.at(p.kh)[p.l] + "," + bg[i] + "," + bf[j] +
                                                 ") over " + c.object(a) + "," + c.object(b) + "," + c.object(cc) + "," + c.object(p.d),
                                             {{"objects", {a, b, cc, p.d}}});
                                }
                            }
                    }
                }
        }
    if (violations == 0) r.add("all basis checks", true, {{"checked", checked}});
    else if (violations > 50) r.add("further violations suppressed", false, {{"total", violations}});
    return r;
}

template <class F>
Report check_functor(const FunctorData<F>& fd) {
    Report r{"functor", {}};
    const auto& s = *fd.source;
    const auto& t = *fd.target;
    for (std::size_t a = 0; a < s.size(); ++a) {
        auto img = fd.apply(a, a, 0, s.identity(a));
        if (img != t.identity(fd.object_map[a])) r.add("identity of " + s.object(a), false);
    }
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
            for (const auto& [kf, bf] : s.hom(a, b).basis)
                for (std::size_t j = 0; j < bf.size(); ++j)
                    for (std::size_t c = 0; c < s.size(); ++c)
                        for (const auto& [kg, bg] : s.hom(b, c).basis)
                            for (std::size_t i = 0; i < bg.size(); ++i) {
                                Vec<F> g{{i, s.field().one()}}, f{{j, s.field().one()}};
                                auto lhs = fd.apply(a, c, kg + kf, s.compose(a, b, c, kg, g, kf, f));
                                auto rhs = t.compose(fd.object_map[a], fd.object_map[b], fd.object_map[c], kg,
                                                     fd.apply(b, c, kg, g), kf, fd.apply(a, b, kf, f));
                                if (lhs != rhs) r.add("composition " + bg[i] + "*" + bf[j], false);
                            }
    if (r.cases.empty()) r.add("identities and compositions preserved", true);
    return r;
}

// Cohomology of one graded hom space with cocycle representatives.
template <class F>
class GradedCohomology {
public:
    using V = Vec<F>;

    GradedCohomology() = default;
    GradedCohomology(const F& field, const HomSpace<F>& h) {
        for (const auto& [k, basis] : h.basis) {
            if (basis.empty()) continue;
            Degree deg{Echelon<F>(field, true), {}, {}, basis.size(), std::nullopt};
            auto prev = h.differential.find(k - 1);
            if (prev != h.differential.end())
                for (std::size_t j = 0; j < prev->second.cols(); ++j) deg.solver.insert(prev->second.col(j));
            std::vector<V> cocycles;
            auto cur = h.differential.find(k);
            if (cur == h.differential.end()) {
                for (std::size_t i = 0; i < basis.size(); ++i) cocycles.push_back(V{{i, field.one()}});
            } else {
                cocycles = kernel_basis(cur->second);
                deg.differential = cur->second;
            }
            for (auto& z : cocycles) {
                std::size_t id = deg.solver.inserted();
                if (deg.solver.insert(z)) {
                    deg.rep_ids.push_back(id);
                    deg.reps.push_back(std::move(z));
                }
            }
            if (!deg.reps.empty()) degrees_.emplace(k, std::move(deg));
        }
    }

    std::map<int, std::size_t> dims() const {
        std::map<int, std::size_t> out;
        for (const auto& [k, d] : degrees_) out[k] = d.reps.size();
        return out;
    }
    std::size_t dim(int k) const {
        auto it = degrees_.find(k);
        return it == degrees_.end() ? 0 : it->second.reps.size();
    }
    const std::vector<V>& reps(int k) const {
        static const std::vector<V> none;
        auto it = degrees_.find(k);
        return it == degrees_.end() ? none : it->second.reps;
    }

    // Coordinates of the class of a cocycle; throws if v is not a cocycle.
    V class_of(int k, const V& v) const {
        if (v.empty()) return {};
        auto it = degrees_.find(k);
        if (it == degrees_.end()) return {};
        const auto& d = it->second;
        if (d.differential && !d.differential->apply(v).empty()) throw std::logic_error("class_of: not a cocycle");
        V coords;
        if (!d.solver.reduce(v, &coords).empty()) throw std::logic_error("class_of: vector outside cocycles");
        V out;
        for (const auto& [id, x] : coords) {
            auto pos = std::lower_bound(d.rep_ids.begin(), d.rep_ids.end(), id);
            if (pos != d.rep_ids.end() && *pos == id) out.emplace_back(static_cast<std::size_t>(pos - d.rep_ids.begin()), x);
        }
        return out;
    }

    bool is_boundary(int k, const V& v) const { return class_of(k, v).empty(); }

private:
    struct Degree {
        Echelon<F> solver;
        std::vector<std::size_t> rep_ids;
        std::vector<V> reps;
        std::size_t dim = 0;
        std::optional<SparseMatrix<F>> differential;
    };
    std::map<int, Degree> degrees_;
};

// H(C) for a dg category C, with composition computed on representatives.
template <class F>
struct CohomologyCategory {
    CategoryPtr<F> dg;
    std::shared_ptr<LinearCategory<F>> h;
    std::shared_ptr<std::vector<GradedCohomology<F>>> data;

    const GradedCohomology<F>& at(std::size_t a, std::size_t b) const { return (*data)[a * dg->size() + b]; }
    Vec<F> class_of(std::size_t a, std::size_t b, int k, const Vec<F>& v) const { return at(a, b).class_of(k, v); }
};

template <class F>
CohomologyCategory<F> cohomology_category(CategoryPtr<F> dg, std::string name,
                                          std::function<std::string(std::size_t, std::size_t, int, std::size_t)> label = {}) {
    std::size_t n = dg->size();
    auto data = std::make_shared<std::vector<GradedCohomology<F>>>(n * n);
    auto h = std::make_shared<LinearCategory<F>>(dg->field(), std::move(name), dg->objects());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            (*data)[a * n + b] = GradedCohomology<F>(dg->field(), dg->hom(a, b));
            HomSpace<F> hs;
            for (const auto& [k, d] : (*data)[a * n + b].dims())
                for (std::size_t i = 0; i < d; ++i)
                    hs.basis[k].push_back(label ? label(a, b, k, i) : "h" + std::to_string(k) + "." + std::to_string(i));
            h->set_hom(a, b, std::move(hs));
        }
    for (std::size_t a = 0; a < n; ++a) h->set_identity(a, (*data)[a * n + a].class_of(0, dg->identity(a)));
    h->set_composer([dg, data, n](std::size_t a, std::size_t b, std::size_t c, int kg, std::size_t g, int kf, std::size_t f) {
        const auto& rg = (*data)[b * n + c].reps(kg).at(g);
        const auto& rf = (*data)[a * n + b].reps(kf).at(f);
        return (*data)[a * n + c].class_of(kg + kf, dg->compose(a, b, c, kg, rg, kf, rf));
    });
    return {dg, h, data};
}

// Functor into H(C) induced by a functor into C whose images are cocycles.
template <class F>
FunctorData<F> to_cohomology(const FunctorData<F>& fd, const CohomologyCategory<F>& hc) {
    FunctorData<F> out{fd.source, hc.h, fd.object_map, {}};
    for (const auto& [key, v] : fd.images) {
        auto [a, b, k, i] = key;
        auto cls = hc.class_of(fd.object_map[a], fd.object_map[b], k, v);
        if (!cls.empty()) out.images[key] = std::move(cls);
    }
    return out;
}

// For every I strictly inside J: F is injective and surjective on degree-0 Hom.
template <class F>
Report check_delta_fully_faithful(const FunctorData<F>& fd, int n) {
    Report r{"delta fully faithful", {}};
    std::size_t count = std::size_t{1} << n;
    if (fd.source->size() != count) throw std::invalid_argument("functor source is not C_n");
    {
        std::vector<std::size_t> seen = fd.object_map;
        std::sort(seen.begin(), seen.end());
        bool bijective = std::adjacent_find(seen.begin(), seen.end()) == seen.end() && seen.size() == fd.target->size();
        if (!bijective) r.add("object map bijective", false);
    }
    for (std::size_t I = 0; I < count; ++I)
        for (std::size_t J = 0; J < count; ++J) {
            if (I == J || !Face(I).subset_of(Face(J))) continue;
            std::size_t a = fd.object_map[I], b = fd.object_map[J];
            const auto& hom = fd.target->hom(a, b);
            GradedCohomology<F> hc(fd.target->field(), hom);
            auto img = fd.apply(I, J, 0, Vec<F>{{0, fd.source->field().one()}});
            bool cocycle = fd.target->differential(a, b, 0, img).empty();
            bool injective = cocycle && !hc.class_of(0, img).empty();
            std::size_t h0 = hc.dim(0);
            bool surjective = h0 <= 1 && (h0 == 0 || injective);
            r.add(Face(I).to_string() + "<" + Face(J).to_string(), injective && surjective,
                  {{"dim_H0", h0}, {"image_nonzero", injective}});
        }
    return r;
}

// JSON dump of a category (with its Hom differentials, if any), plus an optional functor.
template <class F>
nlohmann::json dump_category(const LinearCategory<F>& c, const FunctorData<F>* fd = nullptr) {
    using nlohmann::json;
    auto vec_json = [](const Vec<F>& v) {
        json a = json::array();
        for (const auto& [i, x] : v) a.push_back({i, scalar_string(x)});
        return a;
    };
    json j;
    j["name"] = c.name();
    j["field"] = c.field().name();
    j["objects"] = c.objects();
    j["homs"] = json::array();
    j["identities"] = json::array();
    j["compositions"] = json::array();
    std::size_t n = c.size();
    for (std::size_t a = 0; a < n; ++a) {
        j["identities"].push_back(vec_json(c.identity(a)));
        for (std::size_t b = 0; b < n; ++b)
            for (const auto& [k, basis] : c.hom(a, b).basis)
                if (!basis.empty()) j["homs"].push_back({{"src", a}, {"dst", b}, {"degree", k}, {"basis", basis}});
    }
    if (c.has_differential()) {
        j["differentials"] = json::array();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (const auto& [k, m] : c.hom(a, b).differential) {
                    json cols = json::array();
                    for (std::size_t col = 0; col < m.cols(); ++col) cols.push_back(vec_json(m.col(col)));
                    j["differentials"].push_back({{"src", a}, {"dst", b}, {"degree", k}, {"columns", cols}});
                }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (const auto& [kf, bf] : c.hom(a, b).basis)
                for (std::size_t f = 0; f < bf.size(); ++f)
                    for (std::size_t cc = 0; cc < n; ++cc)
                        for (const auto& [kg, bg] : c.hom(b, cc).basis)
                            for (std::size_t g = 0; g < bg.size(); ++g) {
                                auto v = c.compose_basis(a, b, cc, kg, g, kf, f);
                                if (!v.empty())
                                    j["compositions"].push_back({{"src", a}, {"mid", b}, {"dst", cc}, {"g", {kg, g}}, {"f", {kf, f}}, {"result", vec_json(v)}});
                            }
    if (fd) {
        json m = json::array();
        for (const auto& [key, v] : fd->images) {
            auto [a, b, k, i] = key;
            m.push_back({{"src", a}, {"dst", b}, {"degree", k}, {"index", i}, {"image", vec_json(v)}});
        }
        j["functor"] = {{"object_map", fd->object_map}, {"morphisms", m}};
    }
    return j;
}

struct LoadedCategoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inverse of dump_category. The functor source is C_n with 2^n = object count.
template <class F>
std::pair<std::shared_ptr<LinearCategory<F>>, std::optional<FunctorData<F>>> load_category(const nlohmann::json& j, const F& field = F{}) {
    try {
        auto objects = j.at("objects").get<std::vector<std::string>>();
        auto cat = std::make_shared<LinearCategory<F>>(field, j.value("name", std::string("loaded")), objects);
        auto parse_vec = [&](const nlohmann::json& a) {
            Vec<F> v;
            for (const auto& e : a) add_entry(v, e.at(0).get<std::size_t>(), field.parse(e.at(1).get<std::string>()));
            return v;
        };
        std::map<std::pair<std::size_t, std::size_t>, HomSpace<F>> homs;
        for (const auto& h : j.at("homs"))
            homs[{h.at("src").get<std::size_t>(), h.at("dst").get<std::size_t>()}].basis[h.at("degree").get<int>()] =
                h.at("basis").get<std::vector<std::string>>();
        if (j.contains("differentials"))
            for (const auto& e : j.at("differentials")) {
                auto& h = homs[{e.at("src").get<std::size_t>(), e.at("dst").get<std::size_t>()}];
                int k = e.at("degree").get<int>();
                const auto& cols = e.at("columns");
                SparseMatrix<F> m(field, h.dim(k + 1), cols.size());
                if (cols.size() != h.dim(k)) throw LoadedCategoryError("differential does not match the basis");
                for (std::size_t col = 0; col < cols.size(); ++col) {
                    auto v = parse_vec(cols[col]);
                    if (!v.empty() && v.back().first >= m.rows()) throw LoadedCategoryError("differential entry out of range");
                    m.set_col(col, std::move(v));
                }
                h.differential.emplace(k, std::move(m));
            }
        for (auto& [ab, h] : homs) cat->set_hom(ab.first, ab.second, std::move(h));
        const auto& ids = j.at("identities");
        for (std::size_t a = 0; a < objects.size(); ++a) cat->set_identity(a, parse_vec(ids.at(a)));
        auto table = std::make_shared<std::map<CompositionKey, Vec<F>>>();
        for (const auto& e : j.at("compositions"))
            (*table)[{e.at("src").get<std::size_t>(), e.at("mid").get<std::size_t>(), e.at("dst").get<std::size_t>(),
                      e.at("g").at(0).get<int>(), e.at("g").at(1).get<std::size_t>(), e.at("f").at(0).get<int>(),
                      e.at("f").at(1).get<std::size_t>()}] = parse_vec(e.at("result"));
        cat->set_composer([table](std::size_t a, std::size_t b, std::size_t c, int kg, std::size_t g, int kf, std::size_t f) {
            auto it = table->find({a, b, c, kg, g, kf, f});
            return it == table->end() ? Vec<F>{} : it->second;
        });
        std::optional<FunctorData<F>> fd;
        if (j.contains("functor")) {
            std::size_t count = objects.size();
            int n = 0;
            while ((std::size_t{1} << n) < count) ++n;
            if ((std::size_t{1} << n) != count) throw LoadedCategoryError("functor needs 2^n objects");
            FunctorData<F> f;
            f.source = build_monomial_category<F>(n, field);
            f.target = cat;
            f.object_map = j["functor"].at("object_map").get<std::vector<std::size_t>>();
            for (const auto& m : j["functor"].at("morphisms"))
                f.images[{m.at("src").get<std::size_t>(), m.at("dst").get<std::size_t>(), m.at("degree").get<int>(),
                          m.at("index").get<std::size_t>()}] = parse_vec(m.at("image"));
            fd = std::move(f);
        }
        return {cat, fd};
    } catch (const nlohmann::json::exception& e) {
        throw LoadedCategoryError(std::string("malformed category dump: ") + e.what());
    }
}

}  // namespace skeleta
