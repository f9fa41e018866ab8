#pragma once

#include "ext_table.hpp"
#include "koszul.hpp"
#include "posetalg.hpp"
#include "toric.hpp"

namespace skeleta {

struct GenerationFailure : std::runtime_error {
    Face witness;
    GenerationFailure(Face I, const std::string& why) : std::runtime_error("generation fails at " + I.to_string() + ": " + why), witness(I) {}
};

// Cochain-level map Hom(D_I, D_J) -> Hom(D_{I+L}, D_{J+L}) in a given degree.
template <class F>
using Translation = std::function<Vec<F>(Face I, Face J, Face L, int degree, const Vec<F>& v)>;

// For categories where Hom(D_{I+L}, D_{J+L}) and Hom(D_I, D_J) share one basis
// (C_n, the Cech model: same weight, same complex).
template <class F>
Translation<F> identity_translation() {
    return [](Face, Face, Face, int, const Vec<F>& v) { return v; };
}

template <class F>
struct KMonomialCandidate {
    SimplicialComplex K;
    CategoryPtr<F> D;
    FunctorData<F> functor;
    Translation<F> translation;  // optional

    KMonomialCandidate(SimplicialComplex k, CategoryPtr<F> d, FunctorData<F> f, Translation<F> t = {})
        : K(std::move(k)), D(std::move(d)), functor(std::move(f)), translation(std::move(t)) {
        std::size_t count = std::size_t{1} << K.n();
        if (functor.source->size() != count) throw std::invalid_argument("candidate functor must start at C_n");
        if (functor.target != D) throw std::invalid_argument("candidate functor must land in D");
        auto seen = functor.object_map;
        std::sort(seen.begin(), seen.end());
        if (seen.size() != D->size() || std::adjacent_find(seen.begin(), seen.end()) != seen.end() || (!seen.empty() && seen.back() >= D->size()))
            throw std::invalid_argument("candidate functor must be bijective on objects");
    }

    int n() const { return K.n(); }
    std::size_t object(Face I) const { return functor.object_map.at(I.bits); }
    ComplexPtr<F> generator(Face I) const { return share(single<F>(D, object(I))); }
    GradedCohomology<F> hom_cohomology(Face I, Face J) const { return GradedCohomology<F>(D->field(), D->hom(object(I), object(J))); }
};

namespace detail {

inline std::vector<std::uint64_t> all_subsets(int n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) out.push_back(s);
    return out;
}

// Deterministic merge of independently computed cases; a throwing case fails.
template <class Item, class Fn>
Report parallel_report(std::string axiom, const std::vector<Item>& items, Fn&& fn) {
    std::vector<std::vector<Case>> parts(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
        try {
            parts[i] = fn(items[i]);
        } catch (const std::exception& e) {
            parts[i] = {{"case " + std::to_string(i), false, {{"error", e.what()}}}};
        }
    });
    Report r{std::move(axiom), {}};
    for (auto& p : parts)
        for (auto& c : p) r.cases.push_back(std::move(c));
    return r;
}

inline nlohmann::json dims_json(const Dims& d) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : d) j[std::to_string(k)] = v;
    return j;
}

}  // namespace detail

template <class F>
Report check_axiom1(const KMonomialCandidate<F>& c) {
    auto r = check_delta_fully_faithful(c.functor, c.n());
    r.axiom = "axiom 1";
    return r;
}

// For disjoint I, J, {k} with I in K and I+k not in K: F(e_k) : K_I{J} -> K_I{J+k} is an isomorphism in tw(D).
template <class F>
Report check_axiom2(const KMonomialCandidate<F>& c) {
    struct Triple {
        Face I, J;
        int k;
    };
    std::vector<Triple> triples;
    Face all = Face::full(c.n());
    for (Face I : c.K.faces())
        for (int k : (all - I).vertices()) {
            if (c.K.contains(I | Face::vertex(k))) continue;
            for (Face J : subsets(all - I - Face::vertex(k))) triples.push_back({I, J, k});
        }
    return detail::parallel_report("axiom 2", triples, [&](const Triple& t) {
        KoszulSpec spec{t.I, t.J, {}};
        auto src = share(build_koszul(spec, c.functor));
        auto dst = share(build_koszul(KoszulSpec{t.I, t.J | Face::vertex(t.k), {}}, c.functor));
        auto e = koszul_e_map(spec, t.k, c.functor, src, dst);
        bool closed = is_closed(e);
        bool iso = closed && is_quasi_iso(e);
        std::string label = "(I=" + t.I.to_string() + ",J=" + t.J.to_string() + ",k=" + std::to_string(t.k + 1) + ")";
        nlohmann::json w = {{"closed", closed}, {"cone_acyclic", iso}};
        if (closed && !iso) w["cone_end"] = detail::dims_json(strip_zeros(ext(share(cone(e)), share(cone(e)))));
        return std::vector<Case>{{label, iso, w}};
    });
}

// For disjoint I, J, L: Hom(D_{I+L}, D_{J+L}) and Hom(D_I, D_J) have equal graded
// dimensions; with a translation, it is a quasi-isomorphism commuting with
// composition by every generator e_k on either side.
template <class F>
Report check_axiom3(const KMonomialCandidate<F>& c) {
    struct Triple {
        Face I, J, L;
    };
    std::vector<Triple> triples;
    Face all = Face::full(c.n());
    for (Face L : subsets(all)) {
        if (L.empty()) continue;
        for (Face I : subsets(all - L))
            for (Face J : subsets(all - L - I)) triples.push_back({I, J, L});
    }
    const auto& field = c.D->field();
    return detail::parallel_report("axiom 3", triples, [&](const Triple& t) {
        std::vector<Case> out;
        std::string label = "(I=" + t.I.to_string() + ",J=" + t.J.to_string() + ",L=" + t.L.to_string() + ")";
        auto small = c.hom_cohomology(t.I, t.J);
        auto big = c.hom_cohomology(t.I | t.L, t.J | t.L);
        bool dims = small.dims() == big.dims();
        out.push_back({label + " dims", dims, {{"small", detail::dims_json(small.dims())}, {"big", detail::dims_json(big.dims())}}});
        if (!c.translation || !dims) return out;
        auto T = [&](Face i, Face j, int deg, const Vec<F>& v) { return c.translation(i, j, t.L, deg, v); };
        bool ok = true;
        std::string why;
        auto check = [&](bool cond, const std::string& what) {
            if (!cond && ok) {
                ok = false;
                why = what;
            }
        };
        Face bi = t.I | t.L, bj = t.J | t.L;
        for (const auto& [deg, d] : small.dims()) {
            Echelon<F> image(field, false);
            for (const auto& z : small.reps(deg)) {
                auto tz = T(t.I, t.J, deg, z);
                check(c.D->differential(c.object(bi), c.object(bj), deg, tz).empty(), "translation of a cocycle is not closed");
                if (!ok) break;
                image.insert(big.class_of(deg, tz));
                // post-composition by e_k, k outside J+L and I
                for (int k : (all - bj - t.I).vertices()) {
                    Face jk = t.J | Face::vertex(k);
                    auto ek_small = c.functor.apply(t.J.bits, jk.bits, 0, Vec<F>{{0, field.one()}});
                    auto ek_big = c.functor.apply(bj.bits, (bj | Face::vertex(k)).bits, 0, Vec<F>{{0, field.one()}});
                    auto lhs = T(t.I, jk, deg, c.D->compose(c.object(t.I), c.object(t.J), c.object(jk), 0, ek_small, deg, z));
                    auto rhs = c.D->compose(c.object(bi), c.object(bj), c.object(bj | Face::vertex(k)), 0, ek_big, deg, tz);
                    auto target = c.hom_cohomology(bi, bj | Face::vertex(k));
                    check(target.class_of(deg, lhs) == target.class_of(deg, rhs), "post-composition by e" + std::to_string(k + 1));
                }
                // pre-composition by e_k : D_{I-k} -> D_I, k in I
                for (int k : t.I.vertices()) {
                    Face ik = t.I - Face::vertex(k);
                    auto ek_small = c.functor.apply(ik.bits, t.I.bits, 0, Vec<F>{{0, field.one()}});
                    auto ek_big = c.functor.apply((ik | t.L).bits, bi.bits, 0, Vec<F>{{0, field.one()}});
                    auto lhs = T(ik, t.J, deg, c.D->compose(c.object(ik), c.object(t.I), c.object(t.J), deg, z, 0, ek_small));
                    auto rhs = c.D->compose(c.object(ik | t.L), c.object(bi), c.object(bj), deg, tz, 0, ek_big);
                    auto target = c.hom_cohomology(ik | t.L, bj);
                    check(target.class_of(deg, lhs) == target.class_of(deg, rhs), "pre-composition by e" + std::to_string(k + 1));
                }
            }
            check(image.rank() == d, "translation is not injective on cohomology");
        }
        out.push_back({label + " natural", ok, ok ? nlohmann::json::object() : nlohmann::json{{"reason", why}}});
        return out;
    });
}

// Consequence of the axioms: incomparable faces have no morphisms in any degree.
template <class F>
Report check_notcomp(const KMonomialCandidate<F>& c) {
    Report r{"notcomp", {}};
    for (Face s : c.K.faces())
        for (Face t : c.K.faces()) {
            if (s.subset_of(t) || t.subset_of(s)) continue;
            auto dims = c.hom_cohomology(s, t).dims();
            r.add("(" + s.to_string() + "," + t.to_string() + ")", dims.empty(), detail::dims_json(dims));
        }
    return r;
}

// The rotation of D_I over {D_sigma : sigma in K}; throws GenerationFailure.
template <class F>
ComplexPtr<F> generate(Representer<F>& rep, const KMonomialCandidate<F>& c, Face I) {
    try {
        auto x = rep.rep(I);
        if (!check_mc(*x)) throw GenerationFailure(I, "rotation violates Maurer-Cartan");
        auto target = c.generator(I);
        auto h = hom_complex(x, target, std::pair{-1, 1});
        GradedCohomology<F> gc(c.D->field(), h.as_hom_space());
        if (gc.dim(0) != 1) throw GenerationFailure(I, "H^0 Hom(rotation, D_I) has dimension " + std::to_string(gc.dim(0)));
        if (!is_quasi_iso(h.from_vector(0, gc.reps(0)[0]))) throw GenerationFailure(I, "augmentation is not a quasi-isomorphism");
        return x;
    } catch (const GenerationFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw GenerationFailure(I, e.what());
    }
}

template <class F>
Report check_generation(const KMonomialCandidate<F>& c) {
    Report r{"generation", {}};
    Representer<F> rep(c.K, c.D, [&c](Face s) { return c.object(s); });
    for (std::uint64_t bits : detail::all_subsets(c.n())) {
        Face I(bits);
        if (c.K.contains(I)) continue;
        std::string label = I.to_string() + " d=" + std::to_string(nonface_distance(c.K, I));
        try {
            auto x = generate(rep, c, I);
            r.add(label, true, {{"summands", x->size()}});
        } catch (const GenerationFailure& e) {
            r.add(label, false, {{"reason", e.what()}});
        }
    }
    return r;
}

template <class F>
std::vector<Report> check_all_axioms(const KMonomialCandidate<F>& c) {
    return {check_axiom1(c), check_axiom2(c), check_axiom3(c), check_notcomp(c), check_generation(c)};
}

// Ext table restricted to generators sigma in K; equal for any two K-monomial candidates.
template <class F>
ExtTable face_ext_table(const KMonomialCandidate<F>& c) {
    auto full = tw_ext_table(c.functor, c.n());
    ExtTable t{c.n(), {}};
    for (const auto& [key, d] : full.entries)
        if (c.K.contains(Face(key.first)) && c.K.contains(Face(key.second))) t.entries[key] = d;
    return t;
}

template <class F>
KMonomialCandidate<F> b_candidate(const SimplicialComplex& k, const F& field = F{}) {
    auto [cat, fd] = build_B_category(k, field);
    return KMonomialCandidate<F>(k, cat, fd, identity_translation<F>());
}

template <class F>
KMonomialCandidate<F> monomial_candidate(const SimplicialComplex& k, const F& field = F{}) {
    CategoryPtr<F> c = build_monomial_category<F>(k.n(), field);
    return KMonomialCandidate<F>(k, c, identity_functor<F>(c), identity_translation<F>());
}

}  // namespace skeleta
