#pragma once

#include "lincat.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <set>

namespace skeleta {

struct NotClosed : std::logic_error {
    using std::logic_error::logic_error;
};

struct Summand {
    std::size_t object;
    int shift;
    bool operator==(const Summand&) const = default;
};

using Entry = std::pair<std::size_t, std::size_t>;  // (target summand, source summand)

template <class F>
inline typename F::value_type sign_of(const F& field, long k) {
    return (k % 2 == 0) ? field.one() : -field.one();
}

// Cohomological conventions: a component X_a[s] -> Y_b[t] of total degree d is
// a morphism of degree d - s + t in the ground category; the internal
// differential acts on it with sign (-1)^t.
template <class F>
struct TwistedComplex {
    CategoryPtr<F> cat;
    std::vector<Summand> summands;
    std::map<Entry, Vec<F>> delta;

    std::size_t size() const { return summands.size(); }
    int shift(std::size_t a) const { return summands[a].shift; }
    std::size_t object(std::size_t a) const { return summands[a].object; }
    int entry_degree(std::size_t b, std::size_t a) const { return 1 - shift(a) + shift(b); }

    void set(std::size_t b, std::size_t a, Vec<F> v) {
        if (v.empty()) delta.erase({b, a});
        else delta[{b, a}] = std::move(v);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t a = 0; a < size(); ++a) {
            if (a) s += " + ";
            s += cat->object(object(a)) + "[" + std::to_string(shift(a)) + "]";
        }
        return s.empty() ? "0" : s;
    }
};

template <class F>
using ComplexPtr = std::shared_ptr<const TwistedComplex<F>>;

template <class F>
ComplexPtr<F> share(TwistedComplex<F> x) {
    return std::make_shared<const TwistedComplex<F>>(std::move(x));
}

template <class F>
struct TwMorphism {
    ComplexPtr<F> src, dst;
    int degree = 0;
    std::map<Entry, Vec<F>> comp;  // (dst summand, src summand)

    int component_degree(std::size_t b, std::size_t a) const { return degree - src->shift(a) + dst->shift(b); }
    void add(std::size_t b, std::size_t a, const typename F::value_type& c, const Vec<F>& v) {
        if (v.empty()) return;
        auto& slot = comp[{b, a}];
        axpy(slot, c, v);
        if (slot.empty()) comp.erase({b, a});
    }
    bool is_zero() const { return comp.empty(); }
};

namespace detail {

template <class F>
std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>> out_edges(const TwistedComplex<F>& x) {
    std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>> out(x.size());
    for (const auto& [e, v] : x.delta) out[e.second].emplace_back(e.first, &v);
    return out;
}

template <class F>
std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>> in_edges(const TwistedComplex<F>& x) {
    std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>> in(x.size());
    for (const auto& [e, v] : x.delta) in[e.first].emplace_back(e.second, &v);
    return in;
}

}  // namespace detail

template <class F>
bool is_one_sided(const TwistedComplex<F>& x) {
    // Kahn's algorithm: the entry graph must be acyclic.
    std::vector<std::size_t> indeg(x.size(), 0);
    for (const auto& [e, v] : x.delta) ++indeg[e.first];
    std::deque<std::size_t> ready;
    for (std::size_t a = 0; a < x.size(); ++a)
        if (indeg[a] == 0) ready.push_back(a);
    auto out = detail::out_edges(x);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t a = ready.front();
        ready.pop_front();
        ++seen;
        for (auto [b, v] : out[a])
            if (--indeg[b] == 0) ready.push_back(b);
    }
    return seen == x.size();
}

// D(delta) + delta o delta, entrywise.
template <class F>
std::map<Entry, Vec<F>> mc_defect(const TwistedComplex<F>& x) {
    const auto& c = *x.cat;
    std::map<Entry, Vec<F>> out;
    for (const auto& [e, v] : x.delta) {
        auto [b, a] = e;
        auto dv = c.differential(x.object(a), x.object(b), x.entry_degree(b, a), v);
        if (!dv.empty()) axpy(out[e], sign_of(c.field(), x.shift(b)), dv);
    }
    auto outs = detail::out_edges(x);
    for (const auto& [e, v] : x.delta) {
        auto [b, a] = e;
        for (auto [cc, w] : outs[b])
            axpy(out[{cc, a}], c.field().one(),
                 c.compose(x.object(a), x.object(b), x.object(cc), x.entry_degree(cc, b), *w, x.entry_degree(b, a), v));
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
}

template <class F>
bool check_mc(const TwistedComplex<F>& x) {
    for (const auto& [e, v] : x.delta) {
        if (e.first >= x.size() || e.second >= x.size()) return false;
        if (!v.empty() && v.back().first >= x.cat->hom(x.object(e.second), x.object(e.first)).dim(x.entry_degree(e.first, e.second)))
            return false;
    }
    return is_one_sided(x) && mc_defect(x).empty();
}

template <class F>
TwistedComplex<F> shift(const TwistedComplex<F>& x, int k) {
    TwistedComplex<F> y = x;
    for (auto& s : y.summands) s.shift += k;
    if (k % 2 != 0)
        for (auto& [e, v] : y.delta) v = scaled(v, -x.cat->field().one());
    return y;
}

template <class F>
TwistedComplex<F> direct_sum(const TwistedComplex<F>& x, const TwistedComplex<F>& y) {
    TwistedComplex<F> z = x;
    std::size_t off = x.size();
    z.summands.insert(z.summands.end(), y.summands.begin(), y.summands.end());
    for (const auto& [e, v] : y.delta) z.delta[{e.first + off, e.second + off}] = v;
    return z;
}

template <class F>
TwistedComplex<F> single(CategoryPtr<F> cat, std::size_t object, int shift = 0) {
    return TwistedComplex<F>{cat, {{object, shift}}, {}};
}

template <class F>
TwMorphism<F> identity_morphism(ComplexPtr<F> x) {
    TwMorphism<F> id{x, x, 0, {}};
    for (std::size_t a = 0; a < x->size(); ++a) id.add(a, a, x->cat->field().one(), x->cat->identity(x->object(a)));
    return id;
}

template <class F>
TwMorphism<F> compose(const TwMorphism<F>& psi, const TwMorphism<F>& phi) {
    const auto& c = *phi.src->cat;
    TwMorphism<F> out{phi.src, psi.dst, phi.degree + psi.degree, {}};
    std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>> psi_out(psi.src->size());
    for (const auto& [e, v] : psi.comp) psi_out[e.second].emplace_back(e.first, &v);
    for (const auto& [e, v] : phi.comp) {
        auto [b, a] = e;
        for (auto [cc, w] : psi_out[b])
            out.add(cc, a, c.field().one(),
                    c.compose(phi.src->object(a), phi.dst->object(b), psi.dst->object(cc), psi.component_degree(cc, b), *w,
                              phi.component_degree(b, a), v));
    }
    return out;
}

namespace detail {

template <class F>
using Edges = std::vector<std::vector<std::pair<std::size_t, const Vec<F>*>>>;

template <class F>
TwMorphism<F> hom_differential(const TwMorphism<F>& phi, const Edges<F>& y_out, const Edges<F>& x_in) {
    const auto& x = *phi.src;
    const auto& y = *phi.dst;
    const auto& c = *x.cat;
    const auto& field = c.field();
    TwMorphism<F> out{phi.src, phi.dst, phi.degree + 1, {}};
    auto tail = -sign_of(field, phi.degree);
    for (const auto& [e, v] : phi.comp) {
        auto [b, a] = e;
        int k = phi.component_degree(b, a);
        if (c.has_differential()) out.add(b, a, sign_of(field, y.shift(b)), c.differential(x.object(a), y.object(b), k, v));
        for (auto [b2, w] : y_out[b])
            out.add(b2, a, field.one(), c.compose(x.object(a), y.object(b), y.object(b2), y.entry_degree(b2, b), *w, k, v));
        for (auto [a0, w] : x_in[a])
            out.add(b, a0, tail, c.compose(x.object(a0), x.object(a), y.object(b), k, v, x.entry_degree(a, a0), *w));
    }
    return out;
}

}  // namespace detail

// d(phi) = D(phi) + delta_Y phi - (-1)^|phi| phi delta_X.
template <class F>
TwMorphism<F> hom_differential(const TwMorphism<F>& phi) {
    return detail::hom_differential(phi, detail::out_edges(*phi.dst), detail::in_edges(*phi.src));
}

template <class F>
bool is_closed(const TwMorphism<F>& phi) {
    return hom_differential(phi).is_zero();
}

template <class F>
TwistedComplex<F> cone(const TwMorphism<F>& f) {
    if (f.degree != 0) throw NotClosed("cone needs a degree 0 morphism");
    if (!is_closed(f)) throw NotClosed("cone of a morphism that is not closed");
    TwistedComplex<F> z = direct_sum(shift(*f.src, 1), *f.dst);
    std::size_t off = f.src->size();
    for (const auto& [e, v] : f.comp) z.delta[{e.first + off, e.second}] = v;
    return z;
}

template <class F>
struct HomComplex {
    struct Basis {
        std::size_t a, b;
        int k;
        std::size_t j;
    };
    ComplexPtr<F> x, y;
    std::map<int, std::vector<Basis>> basis;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> offset;  // (a,b,k) -> index inside its degree
    std::map<int, SparseMatrix<F>> d;                                        // degree -> differential out of it

    int degree_of(std::size_t a, std::size_t b, int k) const { return k + x->shift(a) - y->shift(b); }

    Vec<F> to_vector(const TwMorphism<F>& phi) const {
        Vec<F> v;
        for (const auto& [e, w] : phi.comp) {
            auto [b, a] = e;
            auto it = offset.find({a, b, phi.component_degree(b, a)});
            if (it == offset.end()) throw std::logic_error("component outside the hom complex");
            for (const auto& [i, s] : w) add_entry(v, it->second + i, s);
        }
        return v;
    }

    TwMorphism<F> from_vector(int degree, const Vec<F>& v) const {
        TwMorphism<F> phi{x, y, degree, {}};
        auto it = basis.find(degree);
        for (const auto& [i, s] : v) {
            const auto& bs = it->second.at(i);
            add_entry(phi.comp[{bs.b, bs.a}], bs.j, s);
        }
        for (auto c = phi.comp.begin(); c != phi.comp.end();) c = c->second.empty() ? phi.comp.erase(c) : std::next(c);
        return phi;
    }

    std::size_t dim(int degree) const {
        auto it = basis.find(degree);
        return it == basis.end() ? 0 : it->second.size();
    }

    CochainComplex<F> as_cochain() const {
        CochainComplex<F> c;
        if (basis.empty()) return c;
        int lo = basis.begin()->first, hi = basis.rbegin()->first;
        c.lowest = lo;
        const auto& field = x->cat->field();
        for (int k = lo; k <= hi; ++k) c.dims.push_back(dim(k));
        for (int k = lo; k < hi; ++k) {
            auto it = d.find(k);
            c.d.push_back(it != d.end() ? it->second : SparseMatrix<F>(field, dim(k + 1), dim(k)));
        }
        return c;
    }

    // The hom space as a graded space with differential, for categories built from complexes.
    HomSpace<F> as_hom_space() const {
        HomSpace<F> h;
        for (const auto& [k, bs] : basis) {
            auto& labels = h.basis[k];
            for (const auto& e : bs)
                labels.push_back(std::to_string(e.a) + ">" + std::to_string(e.b) + ":" + x->cat->hom(x->object(e.a), y->object(e.b)).basis.at(e.k).at(e.j));
        }
        for (const auto& [k, m] : d)
            if (!m.is_zero_matrix()) h.differential.emplace(k, m);
        return h;
    }
};

// Optional degree window [lo, hi]: basis restricted to it and d built only between degrees inside it.
template <class F>
HomComplex<F> hom_complex(ComplexPtr<F> x, ComplexPtr<F> y, std::optional<std::pair<int, int>> window = std::nullopt) {
    if (x->cat != y->cat) throw std::invalid_argument("hom_complex across different categories");
    HomComplex<F> h{x, y, {}, {}, {}};
    const auto& c = *x->cat;
    for (std::size_t a = 0; a < x->size(); ++a)
        for (std::size_t b = 0; b < y->size(); ++b)
            for (const auto& [k, labels] : c.hom(x->object(a), y->object(b)).basis) {
                if (labels.empty()) continue;
                int deg = h.degree_of(a, b, k);
                if (window && (deg < window->first || deg > window->second)) continue;
                auto& bs = h.basis[deg];
                h.offset[{a, b, k}] = bs.size();
                for (std::size_t j = 0; j < labels.size(); ++j) bs.push_back({a, b, k, j});
            }
    auto y_out = detail::out_edges(*y);
    auto x_in = detail::in_edges(*x);
    for (const auto& [deg, bs] : h.basis) {
        std::size_t rows = h.dim(deg + 1);
        if (rows == 0) continue;
        SparseMatrix<F> m(c.field(), rows, bs.size());
        for (std::size_t i = 0; i < bs.size(); ++i) {
            TwMorphism<F> phi{x, y, deg, {}};
            phi.comp[{bs[i].b, bs[i].a}] = Vec<F>{{bs[i].j, c.field().one()}};
            m.set_col(i, h.to_vector(detail::hom_differential(phi, y_out, x_in)));
        }
        h.d.emplace(deg, std::move(m));
    }
    return h;
}

template <class F>
std::map<int, std::size_t> cohomology(const HomComplex<F>& h) {
    return cohomology_dims(h.as_cochain());
}

template <class F>
std::map<int, std::size_t> ext(ComplexPtr<F> x, ComplexPtr<F> y) {
    return cohomology(hom_complex(x, y));
}

// [id] = 0 in H^0 End(X).
template <class F>
bool is_zero_object(ComplexPtr<F> x) {
    if (x->size() == 0) return true;
    auto h = hom_complex(x, x, std::pair{-1, 0});
    auto id = h.to_vector(identity_morphism(x));
    auto it = h.d.find(-1);
    if (it == h.d.end()) return false;
    return solve(it->second, id).has_value();
}

template <class F>
bool is_zero_object(const TwistedComplex<F>& x) {
    return is_zero_object(share(x));
}

template <class F>
bool is_quasi_iso(const TwMorphism<F>& f) {
    return is_zero_object(share(cone(f)));
}

template <class F>
TwistedComplex<F> apply_functor(const FunctorData<F>& fd, const TwistedComplex<F>& x) {
    TwistedComplex<F> y{fd.target, {}, {}};
    for (const auto& s : x.summands) y.summands.push_back({fd.object_map.at(s.object), s.shift});
    for (const auto& [e, v] : x.delta) y.set(e.first, e.second, fd.apply(x.object(e.second), x.object(e.first), x.entry_degree(e.first, e.second), v));
    return y;
}

template <class F>
TwMorphism<F> apply_functor(const FunctorData<F>& fd, const TwMorphism<F>& phi, ComplexPtr<F> src, ComplexPtr<F> dst) {
    TwMorphism<F> out{src, dst, phi.degree, {}};
    for (const auto& [e, v] : phi.comp)
        out.add(e.first, e.second, fd.target->field().one(),
                fd.apply(phi.src->object(e.second), phi.dst->object(e.first), phi.component_degree(e.first, e.second), v));
    return out;
}

template <class F>
struct Minimized {
    ComplexPtr<F> complex;
    TwMorphism<F> to_min;    // X -> M
    TwMorphism<F> from_min;  // M -> X
};

// Gaussian elimination of isomorphism entries c*id. Needs a ground category
// without differential. Returns M with mutually inverse homotopy equivalences.
template <class F>
Minimized<F> minimize(ComplexPtr<F> x) {
    const auto& c = *x->cat;
    if (c.has_differential()) throw std::invalid_argument("minimize needs a category without differential");
    const auto& field = c.field();
    using Row = std::map<std::size_t, Vec<F>>;
    std::size_t n = x->size();
    std::vector<bool> alive(n, true);
    std::map<Entry, Vec<F>> delta = x->delta;
    std::vector<std::set<std::size_t>> outs(n), ins(n);
    for (const auto& [e, v] : delta) outs[e.second].insert(e.first), ins[e.first].insert(e.second);
    std::vector<Row> f(n), g(n);  // f[y][x]: X_x -> M_y ; g[y][x]: M_y -> X_x
    for (std::size_t a = 0; a < n; ++a) {
        f[a][a] = c.identity(x->object(a));
        g[a][a] = c.identity(x->object(a));
    }
    auto deg = [&](std::size_t b, std::size_t a) { return 1 - x->shift(a) + x->shift(b); };
    auto iso_scalar = [&](std::size_t b, std::size_t a, const Vec<F>& v) -> std::optional<typename F::value_type> {
        if (x->object(a) != x->object(b) || deg(b, a) != 0 || v.empty()) return std::nullopt;
        const auto& id = c.identity(x->object(a));
        if (id.empty() || v.front().first != id.front().first) return std::nullopt;
        auto s = v.front().second / id.front().second;
        if (scaled(id, s) != v) return std::nullopt;
        return s;
    };
    auto set_entry = [&](std::size_t b, std::size_t a, Vec<F> v) {
        if (v.empty()) {
            delta.erase({b, a});
            outs[a].erase(b), ins[b].erase(a);
        } else {
            delta[{b, a}] = std::move(v);
            outs[a].insert(b), ins[b].insert(a);
        }
    };
    for (;;) {
        std::optional<std::pair<Entry, typename F::value_type>> pivot;
        for (const auto& [e, v] : delta)
            if (auto s = iso_scalar(e.first, e.second, v)) {
                pivot = {e, *s};
                break;
            }
        if (!pivot) break;
        auto [b, a] = pivot->first;
        auto cinv = field.one() / pivot->second;
        std::size_t ob = x->object(b);
        std::vector<std::size_t> ys(outs[a].begin(), outs[a].end()), xs(ins[b].begin(), ins[b].end());
        for (std::size_t y : ys) {
            if (y == b) continue;
            Vec<F> dya = delta.at({y, a});
            for (std::size_t xx : xs) {
                if (xx == a) continue;
                const Vec<F>& dbx = delta.at({b, xx});
                auto prod = c.compose(x->object(xx), ob, x->object(y), deg(y, a), dya, deg(b, xx), dbx);
                auto it = delta.find({y, xx});
                Vec<F> cur = it == delta.end() ? Vec<F>{} : it->second;
                axpy(cur, -cinv, prod);
                set_entry(y, xx, std::move(cur));
            }
            // f_y -= cinv * delta_ya o f_b
            for (const auto& [src, w] : f[b]) {
                auto prod = c.compose(x->object(src), ob, x->object(y), deg(y, a), dya, x->shift(b) - x->shift(src), w);
                axpy(f[y][src], -cinv, prod);
                if (f[y][src].empty()) f[y].erase(src);
            }
        }
        for (std::size_t xx : xs) {
            if (xx == a) continue;
            const Vec<F> dbx = delta.at({b, xx});
            // g_x -= cinv * g_a o delta_bx
            for (const auto& [dst, w] : g[a]) {
                auto prod = c.compose(x->object(xx), ob, x->object(dst), x->shift(dst) - x->shift(a), w, deg(b, xx), dbx);
                axpy(g[xx][dst], -cinv, prod);
                if (g[xx][dst].empty()) g[xx].erase(dst);
            }
        }
        for (std::size_t k : {a, b}) {
            alive[k] = false;
            for (std::size_t t : std::vector<std::size_t>(outs[k].begin(), outs[k].end())) set_entry(t, k, {});
            for (std::size_t s : std::vector<std::size_t>(ins[k].begin(), ins[k].end())) set_entry(k, s, {});
            f[k].clear(), g[k].clear();
        }
    }
    std::vector<std::size_t> index(n, n);
    TwistedComplex<F> m{x->cat, {}, {}};
    for (std::size_t a = 0; a < n; ++a)
        if (alive[a]) {
            index[a] = m.summands.size();
            m.summands.push_back(x->summands[a]);
        }
    for (const auto& [e, v] : delta) m.delta[{index[e.first], index[e.second]}] = v;
    auto mp = share(std::move(m));
    TwMorphism<F> to{x, mp, 0, {}}, from{mp, x, 0, {}};
    for (std::size_t a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (const auto& [src, w] : f[a]) to.comp[{index[a], src}] = w;
        for (const auto& [dst, w] : g[a]) from.comp[{dst, index[a]}] = w;
    }
    return {mp, std::move(to), std::move(from)};
}

// A diagonal +-identity isomorphism X -> Y matching summands by (object, shift), if one exists.
template <class F>
std::optional<TwMorphism<F>> signed_relabeling(ComplexPtr<F> x, ComplexPtr<F> y) {
    if (x->size() != y->size() || x->cat != y->cat) return std::nullopt;
    const auto& field = x->cat->field();
    std::size_t n = x->size();
    std::vector<std::size_t> pi(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (!used[b] && x->summands[a] == y->summands[b]) {
                pi[a] = b;
                used[b] = true;
                break;
            }
        if (pi[a] == n) return std::nullopt;
    }
    std::map<Entry, const Vec<F>*> ymap;
    for (const auto& [e, v] : y->delta) ymap[e] = &v;
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);  // neighbour, relative sign
    std::size_t matched = 0;
    for (const auto& [e, v] : x->delta) {
        auto it = ymap.find({pi[e.first], pi[e.second]});
        if (it == ymap.end()) return std::nullopt;
        int rel;
        if (*it->second == v) rel = 1;
        else if (*it->second == scaled(v, -field.one())) rel = -1;
        else return std::nullopt;
        ++matched;
        adj[e.first].emplace_back(e.second, rel);
        adj[e.second].emplace_back(e.first, rel);
    }
    if (matched != y->delta.size()) return std::nullopt;
    std::vector<int> eps(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (eps[s]) continue;
        eps[s] = 1;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop_front();
            for (auto [v, rel] : adj[u]) {
                int want = eps[u] * rel;
                if (!eps[v]) {
                    eps[v] = want;
                    q.push_back(v);
                } else if (eps[v] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    TwMorphism<F> phi{x, y, 0, {}};
    for (std::size_t a = 0; a < n; ++a) phi.add(pi[a], a, sign_of(field, eps[a] > 0 ? 0 : 1), x->cat->identity(x->object(a)));
    return phi;
}

// The dg category whose objects are the given complexes.
template <class F>
std::shared_ptr<LinearCategory<F>> tw_subcategory(const std::vector<ComplexPtr<F>>& objects, std::vector<std::string> labels, std::string name) {
    if (objects.empty()) throw std::invalid_argument("tw_subcategory needs objects");
    std::size_t n = objects.size();
    auto homs = std::make_shared<std::vector<HomComplex<F>>>();
    homs->reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) homs->push_back(hom_complex(objects[i], objects[j]));
    auto cat = std::make_shared<LinearCategory<F>>(objects[0]->cat->field(), std::move(name), std::move(labels));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cat->set_hom(i, j, (*homs)[i * n + j].as_hom_space());
        cat->set_identity(i, (*homs)[i * n + i].to_vector(identity_morphism(objects[i])));
    }
    cat->set_composer([homs, n](std::size_t a, std::size_t b, std::size_t c, int kg, std::size_t g, int kf, std::size_t f) {
        const auto& hg = (*homs)[b * n + c];
        const auto& hf = (*homs)[a * n + b];
        auto gm = hg.from_vector(kg, Vec<F>{{g, hg.x->cat->field().one()}});
        auto fm = hf.from_vector(kf, Vec<F>{{f, hf.x->cat->field().one()}});
        return (*homs)[a * n + c].to_vector(compose(gm, fm));
    });
    return cat;
}

}  // namespace skeleta
