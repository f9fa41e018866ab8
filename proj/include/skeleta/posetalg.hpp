#pragma once

#include "ext_table.hpp"
#include "koszul.hpp"

#include <random>

namespace skeleta {

// Projectives P_sigma of the face-poset algebra: Hom(P_s, P_t) is one-dimensional iff s is inside t.
template <class F>
struct PosetCategory {
    SimplicialComplex K;
    std::shared_ptr<LinearCategory<F>> cat;  // object i is K.faces()[i]

    std::size_t object_of(Face s) const {
        int i = K.index_of(s);
        if (i < 0) throw NotAFace("not a face: " + s.to_string());
        return static_cast<std::size_t>(i);
    }
    Face face(std::size_t i) const { return K.faces().at(i); }
};

template <class F>
std::shared_ptr<const PosetCategory<F>> build_P_K(const SimplicialComplex& k, const F& field = F{}) {
    const auto& faces = k.faces();
    std::vector<std::string> labels;
    for (Face f : faces) labels.push_back("P" + f.to_string());
    auto cat = std::make_shared<LinearCategory<F>>(field, "P_K", labels);
    for (std::size_t a = 0; a < faces.size(); ++a) {
        for (std::size_t b = 0; b < faces.size(); ++b) {
            HomSpace<F> h;
            if (faces[a].subset_of(faces[b])) h.basis[0] = {"p" + (faces[b] - faces[a]).to_string()};
            cat->set_hom(a, b, std::move(h));
        }
        cat->set_identity(a, Vec<F>{{0, field.one()}});
    }
    cat->set_composer([field](std::size_t, std::size_t, std::size_t, int, std::size_t, int, std::size_t) {
        return Vec<F>{{0, field.one()}};
    });
    return std::make_shared<const PosetCategory<F>>(PosetCategory<F>{k, cat});
}

struct RepresentError : std::logic_error {
    using std::logic_error::logic_error;
};

// Lexicographically least among the smallest non-faces inside I.
inline std::optional<Face> least_nonface(const SimplicialComplex& k, Face I) {
    std::optional<Face> best;
    for (Face s : subsets(I)) {
        if (k.contains(s)) continue;
        if (!best || s.size() < best->size() || (s.size() == best->size() && lex_less(s, *best))) best = s;
    }
    return best;
}

// Expresses every D_I as a twisted complex over P_K. For I not in K, with R the
// least non-face inside I and J = I - R, the Koszul complex K_R{J} is rotated:
// D_I ~ Tot over S < R of rep(J+S)[|R-S| - 1], edges signed e_k, and the
// higher components solved so that the Maurer-Cartan equation holds.
template <class F>
class Representer {
public:
    using ObjectOf = std::function<std::size_t(Face)>;

    // Over any category holding objects D_sigma for the faces of K.
    Representer(SimplicialComplex k, CategoryPtr<F> cat, ObjectOf object_of, std::uint64_t sgn_seed = 0)
        : k_(std::move(k)), cat_(std::move(cat)), object_of_(std::move(object_of)), seed_(sgn_seed),
          point_(share(single<F>(cat_, object_of_(Face())))) {}

    explicit Representer(std::shared_ptr<const PosetCategory<F>> pk, std::uint64_t sgn_seed = 0)
        : Representer(pk->K, pk->cat, [pk](Face s) { return pk->object_of(s); }, sgn_seed) {}

    const SimplicialComplex& complex() const { return k_; }

    ComplexPtr<F> rep(Face I) {
        if (auto it = reps_.find(I.bits); it != reps_.end()) return it->second;
        ComplexPtr<F> out = k_.contains(I) ? share(single<F>(cat_, object_of_(I))) : rotate(I);
        reps_.emplace(I.bits, out);
        return out;
    }

    // Closed degree-0 map rep(A) -> rep(A+k) representing e_k, normalized on P_{} -> rep.
    const TwMorphism<F>& rho(Face A, int k) {
        std::pair<std::uint64_t, int> key{A.bits, k};
        if (auto it = rhos_.find(key); it != rhos_.end()) return it->second;
        Face B = A | Face::vertex(k);
        auto x = rep(A), y = rep(B);
        auto h = hom_complex(x, y, std::pair{-1, 1});
        GradedCohomology<F> gc(field(), h.as_hom_space());
        if (gc.dim(0) != 1) throw RepresentError("H^0 Hom(" + A.to_string() + ", " + B.to_string() + ") is not one-dimensional");
        auto r = h.from_vector(0, gc.reps(0)[0]);
        const auto& [u_a, hu_a, gu_a] = unit(A);
        const auto& [u_b, hu_b, gu_b] = unit(B);
        auto cls = gu_b.class_of(0, hu_b.to_vector(compose(r, u_a)));
        if (cls.size() != 1) throw RepresentError("e_k does not act on the unit class");
        auto inv = field().one() / cls[0].second;
        for (auto& [e, v] : r.comp) v = scaled(v, inv);
        return rhos_.emplace(key, std::move(r)).first->second;
    }

    // Composite of rho along the vertices of J - I in increasing order.
    TwMorphism<F> chain(Face I, Face J) {
        if (!I.subset_of(J)) throw std::invalid_argument("chain needs I inside J");
        auto m = identity_morphism(rep(I));
        Face cur = I;
        for (int k : (J - I).vertices()) {
            m = compose(rho(cur, k), m);
            cur = cur | Face::vertex(k);
        }
        return m;
    }

    std::vector<int> sign_order(Face R) const {
        auto order = R.vertices();
        if (seed_ != 0) {
            std::mt19937_64 rng(seed_ * 0x9e3779b97f4a7c15ULL + R.bits);
            std::shuffle(order.begin(), order.end(), rng);
        }
        return order;
    }

private:
    struct Unit {
        TwMorphism<F> u;
        HomComplex<F> h;
        GradedCohomology<F> gc;
    };

    const F& field() const { return cat_->field(); }

    const Unit& unit(Face A) {
        if (auto it = units_.find(A.bits); it != units_.end()) return it->second;
        auto h = hom_complex(point_, rep(A), std::pair{-1, 1});
        GradedCohomology<F> gc(field(), h.as_hom_space());
        if (gc.dim(0) != 1) throw RepresentError("H^0 Hom(P_{}, " + A.to_string() + ") is not one-dimensional");
        auto u = h.from_vector(0, gc.reps(0)[0]);
        return units_.emplace(A.bits, Unit{std::move(u), std::move(h), std::move(gc)}).first->second;
    }

    ComplexPtr<F> rotate(Face I) {
        Face R = *least_nonface(k_, I);
        Face J = I - R;
        KoszulSpec spec{R, J, sign_order(R)};
        std::vector<Face> parts;
        for (Face s : subsets(R))
            if (s != R) parts.push_back(s);
        std::map<std::uint64_t, ComplexPtr<F>> block;
        std::map<std::uint64_t, std::size_t> offset;
        TwistedComplex<F> tot{cat_, {}, {}};
        for (Face s : parts) {
            auto x = share(shift(*rep(J | s), (R - s).size() - 1));
            offset[s.bits] = tot.size();
            for (const auto& [e, v] : x->delta) tot.delta[{e.first + tot.size(), e.second + tot.size()}] = v;
            tot.summands.insert(tot.summands.end(), x->summands.begin(), x->summands.end());
            block[s.bits] = x;
        }
        std::map<std::pair<std::uint64_t, std::uint64_t>, TwMorphism<F>> comp;  // (target block, source block)
        for (Face s : parts)
            for (int k : (R - s).vertices()) {
                Face t = s | Face::vertex(k);
                if (t == R) continue;
                TwMorphism<F> m{block[s.bits], block[t.bits], 1, {}};
                auto sign = sign_of(field(), spec.sign_exponent(k, s));
                for (const auto& [e, v] : rho(J | s, k).comp) m.add(e.first, e.second, sign, v);
                comp.emplace(std::pair{t.bits, s.bits}, std::move(m));
            }
        for (int len = 2; len < R.size(); ++len)
            for (Face s : parts)
                for (Face t : parts) {
                    if (!s.subset_of(t) || (t - s).size() != len) continue;
                    TwMorphism<F> obstruction{block[s.bits], block[t.bits], 2, {}};
                    for (Face mid : parts) {
                        if (mid == s || mid == t || !s.subset_of(mid) || !mid.subset_of(t)) continue;
                        auto hi = comp.find({t.bits, mid.bits});
                        auto lo = comp.find({mid.bits, s.bits});
                        if (hi == comp.end() || lo == comp.end()) continue;
                        for (const auto& [e, v] : compose(hi->second, lo->second).comp) obstruction.add(e.first, e.second, field().one(), v);
                    }
                    if (obstruction.is_zero()) continue;
                    auto h = hom_complex(block[s.bits], block[t.bits], std::pair{1, 2});
                    auto target = scaled(h.to_vector(obstruction), -field().one());
                    auto d = h.d.find(1);
                    std::optional<Vec<F>> fix;
                    if (d != h.d.end()) fix = solve(d->second, target);
                    if (!fix) throw RepresentError("rotation of " + I.to_string() + ": obstruction is not exact");
                    auto m = h.from_vector(1, *fix);
                    if (!m.is_zero()) comp.emplace(std::pair{t.bits, s.bits}, std::move(m));
                }
        for (const auto& [key, m] : comp) {
            std::size_t to = offset[key.first], from = offset[key.second];
            for (const auto& [e, v] : m.comp) tot.delta[{e.first + to, e.second + from}] = v;
        }
        return share(std::move(tot));
    }

    SimplicialComplex k_;
    CategoryPtr<F> cat_;
    ObjectOf object_of_;
    std::uint64_t seed_;
    ComplexPtr<F> point_;
    std::map<std::uint64_t, ComplexPtr<F>> reps_;
    std::map<std::pair<std::uint64_t, int>, TwMorphism<F>> rhos_;
    std::map<std::uint64_t, Unit> units_;
};

template <class F>
ComplexPtr<F> represent_subset(const SimplicialComplex& k, Face I, const F& field = F{}) {
    Representer<F> r(build_P_K(k, field));
    return r.rep(I);
}

template <class F>
ExtTable ext_table_A(const SimplicialComplex& k, const F& field = F{}, std::uint64_t sgn_seed = 0) {
    Representer<F> r(build_P_K(k, field), sgn_seed);
    std::vector<ComplexPtr<F>> objects;
    for (std::size_t I = 0; I < (std::size_t{1} << k.n()); ++I) objects.push_back(r.rep(Face(I)));
    return ext_table_of(k.n(), objects);
}

// D_A: the full dg subcategory of tw(P_K) on rep(I), I inside [n], with C_I -> rep(I).
template <class F>
struct AModel {
    std::shared_ptr<const PosetCategory<F>> poset;
    std::vector<ComplexPtr<F>> reps;
    CategoryPtr<F> cochains;
    FunctorData<F> cochain_functor;  // e_{J-I} -> rho chain; strict only up to homotopy
    CohomologyCategory<F> cohomology;
    FunctorData<F> functor;          // C_n -> H(D_A), strict
};

template <class F>
AModel<F> build_A_model(const SimplicialComplex& k, const F& field = F{}, std::uint64_t sgn_seed = 0) {
    auto pk = build_P_K(k, field);
    Representer<F> r(pk, sgn_seed);
    int n = k.n();
    std::size_t count = std::size_t{1} << n;
    std::vector<ComplexPtr<F>> reps;
    std::vector<std::string> labels;
    for (std::size_t I = 0; I < count; ++I) {
        reps.push_back(r.rep(Face(I)));
        labels.push_back("D" + Face(I).to_string());
    }
    CategoryPtr<F> dg = tw_subcategory(reps, labels, "D_A");
    FunctorData<F> fd{build_monomial_category<F>(n, field), dg, {}, {}};
    for (std::size_t I = 0; I < count; ++I) {
        fd.object_map.push_back(I);
        for (std::size_t J = 0; J < count; ++J)
            if (Face(I).subset_of(Face(J))) fd.images[{I, J, 0, 0}] = hom_complex(reps[I], reps[J]).to_vector(r.chain(Face(I), Face(J)));
    }
    auto hc = cohomology_category<F>(dg, "H(D_A)");
    auto hf = to_cohomology(fd, hc);
    return {pk, std::move(reps), dg, std::move(fd), std::move(hc), std::move(hf)};
}

}  // namespace skeleta
