#pragma once

#include "twisted.hpp"

namespace skeleta {

struct KoszulError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// order lists the vertices of I (0-based) in sgn order; empty means increasing.
struct KoszulSpec {
    Face I;
    Face J;
    std::vector<int> order;

    std::vector<int> sequence() const { return order.empty() ? I.vertices() : order; }

    void validate() const {
        if (!I.disjoint(J)) throw KoszulError("Koszul complex needs I and J disjoint: " + I.to_string() + ", " + J.to_string());
        if (order.empty()) return;
        Face seen;
        for (int v : order) {
            if (!I.contains(v) || seen.contains(v)) throw KoszulError("sgn must be a bijection onto I");
            seen = seen | Face::vertex(v);
        }
        if (seen != I) throw KoszulError("sgn must be a bijection onto I");
    }

    // sgn(i) + #{i' in S : sgn(i') < sgn(i)}
    int sign_exponent(int i, Face s) const {
        auto seq = sequence();
        int pos = 0;
        int before = 0;
        for (std::size_t p = 0; p < seq.size(); ++p) {
            if (seq[p] == i) {
                pos = static_cast<int>(p) + 1;
                break;
            }
            if (s.contains(seq[p])) ++before;
        }
        return pos + before;
    }
};

template <class F>
Vec<F> monomial_image(const FunctorData<F>& fd, Face from, Face to) {
    return fd.apply(from.bits, to.bits, 0, Vec<F>{{0, fd.source->field().one()}});
}

// Summands C_{I'+J}[|I - I'|] for I' in subsets(I) (numeric order).
template <class F>
TwistedComplex<F> build_koszul(const KoszulSpec& spec, const FunctorData<F>& fd) {
    spec.validate();
    if (!(spec.I | spec.J).subset_of(Face(fd.source->size() - 1))) throw KoszulError("Koszul complex outside [n]");
    const auto& field = fd.target->field();
    TwistedComplex<F> k{fd.target, {}, {}};
    auto parts = subsets(spec.I);
    std::map<std::uint64_t, std::size_t> index;
    for (Face p : parts) {
        index[p.bits] = k.summands.size();
        k.summands.push_back({fd.object_map.at((p | spec.J).bits), (spec.I - p).size()});
    }
    for (Face p : parts)
        for (int i : (spec.I - p).vertices()) {
            Face q = p | Face::vertex(i);
            auto v = monomial_image(fd, p | spec.J, q | spec.J);
            k.set(index[q.bits], index[p.bits], scaled(v, sign_of(field, spec.sign_exponent(i, p))));
        }
    return k;
}

// The map e_k : K_I{J} -> K_I{J+k}, componentwise F(e_k).
template <class F>
TwMorphism<F> koszul_e_map(const KoszulSpec& spec, int k, const FunctorData<F>& fd, ComplexPtr<F> src, ComplexPtr<F> dst) {
    TwMorphism<F> e{src, dst, 0, {}};
    auto parts = subsets(spec.I);
    for (std::size_t p = 0; p < parts.size(); ++p)
        e.add(p, p, fd.target->field().one(), monomial_image(fd, parts[p] | spec.J, parts[p] | spec.J | Face::vertex(k)));
    return e;
}

template <class F>
struct KoszulTriangle {
    TwMorphism<F> e_k;
    ComplexPtr<F> cone;
    ComplexPtr<F> target;                   // K_{I+k}{J}
    std::optional<TwMorphism<F>> witness;  // cone(e_k) -> K_{I+k}{J}
    bool verified = false;
};

template <class F>
KoszulTriangle<F> koszul_triangle(Face I, Face J, int k, const FunctorData<F>& fd) {
    Face kf = Face::vertex(k);
    if (!I.disjoint(J) || !I.disjoint(kf) || !J.disjoint(kf)) throw KoszulError("I, J, {k} must be pairwise disjoint");
    KoszulSpec base{I, J, {}};
    auto src = share(build_koszul(base, fd));
    auto dst = share(build_koszul(KoszulSpec{I, J | kf, {}}, fd));
    auto e = koszul_e_map(base, k, fd, src, dst);
    auto c = share(cone(e));
    auto target = share(build_koszul(KoszulSpec{I | kf, J, {}}, fd));
    auto w = signed_relabeling(c, target);
    bool ok = w && is_closed(*w) && is_quasi_iso(*w);
    return {std::move(e), c, target, std::move(w), ok};
}

template <class F>
bool acyclicity_test(const KoszulSpec& spec, const FunctorData<F>& fd) {
    return is_zero_object(build_koszul(spec, fd));
}

}  // namespace skeleta
