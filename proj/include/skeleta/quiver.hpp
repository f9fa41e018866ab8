#pragma once

#include "lincat.hpp"

#include <json.hpp>

#include <sstream>

namespace skeleta {

struct QuiverArrow {
    std::string name;
    std::size_t src = 0, dst = 0;  // generator indices (subset bitmasks)
    bool invertible = false;
};

struct QuiverRelation {
    std::size_t src = 0, dst = 0;
    std::string text;
};

struct HigherClass {
    int degree = 0;
    std::size_t src = 0, dst = 0;
    std::size_t dim = 0;
};

// Degree-0 quiver with relations of a graded category on generators X_I, plus
// the nonzero Ext classes in the other degrees.
struct Quiver {
    std::vector<std::string> objects;  // indexed by subset bitmask
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation> relations;
    std::vector<HigherClass> higher;

    std::string higher_label(const HigherClass& c) const {
        std::string s = "f[" + std::to_string(c.degree) + "]: " + objects[c.src] + " → " + objects[c.dst];
        if (c.dim > 1) s += " (dim " + std::to_string(c.dim) + ")";
        return s;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "objects:";
        for (const auto& o : objects) os << ' ' << o;
        os << "\narrows: " << arrows.size() << '\n';
        for (const auto& a : arrows)
            os << "  " << a.name << ": " << objects[a.src] << " → " << objects[a.dst] << (a.invertible ? " (invertible)" : "") << '\n';
        os << "relations: " << relations.size() << '\n';
        for (const auto& r : relations) os << "  " << r.text << "  [" << objects[r.src] << " → " << objects[r.dst] << "]\n";
        os << "higher: " << higher.size() << '\n';
        for (const auto& c : higher) os << "  " << higher_label(c) << '\n';
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["objects"] = objects;
        j["arrows"] = nlohmann::json::array();
        for (const auto& a : arrows)
            j["arrows"].push_back({{"name", a.name}, {"src", objects[a.src]}, {"dst", objects[a.dst]}, {"invertible", a.invertible}});
        j["relations"] = nlohmann::json::array();
        for (const auto& r : relations) j["relations"].push_back({{"src", objects[r.src]}, {"dst", objects[r.dst]}, {"relation", r.text}});
        j["higher"] = nlohmann::json::array();
        for (const auto& c : higher)
            j["higher"].push_back({{"degree", c.degree}, {"src", objects[c.src]}, {"dst", objects[c.dst]}, {"dim", c.dim}});
        return j;
    }
};

namespace detail {

template <class F>
std::string relation_string(const F& field, const std::vector<std::string>& terms, const Vec<F>& rel) {
    if (rel.size() == 2 && rel[1].second == field.one() && rel[0].second == -field.one())
        return terms[rel[1].first] + " = " + terms[rel[0].first];
    if (rel.size() == 1) return terms[rel[0].first] + " = 0";
    std::string s;
    for (std::size_t i = rel.size(); i-- > 0;) {
        const auto& [t, c] = rel[i];
        std::string coeff = c == field.one() ? "" : c == -field.one() ? "-" : "(" + scalar_string(c) + ") ";
        s += (s.empty() ? "" : " + ") + coeff + terms[t];
    }
    return s + " = 0";
}

}  // namespace detail

// Arrows between X_I and X_J span H^0(I, J) modulo composites through other
// generators (and the identity when I = J). One-step inclusions J = I + k are
// named e_k, everything else g1, g2, ... Relations are the linear dependencies
// among paths of length two (with the identity on loops), written g f for g o f.
template <class F>
Quiver extract_quiver(const LinearCategory<F>& h, const std::vector<std::size_t>& object_map, int n) {
    const F& field = h.field();
    std::size_t count = std::size_t{1} << n;
    if (object_map.size() != count) throw std::invalid_argument("need one generator per subset");
    Quiver q;
    for (std::size_t I = 0; I < count; ++I) q.objects.push_back(h.object(object_map[I]));
    auto obj = [&](std::size_t I) { return object_map[I]; };
    std::vector<Vec<F>> values;  // arrow representatives
    int generic = 0;
    for (std::size_t I = 0; I < count; ++I)
        for (std::size_t J = 0; J < count; ++J) {
            std::size_t d0 = h.hom(obj(I), obj(J)).dim(0);
            if (d0 == 0) continue;
            Echelon<F> span(field);
            if (I == J) span.insert(h.identity(obj(I)));
            for (std::size_t C = 0; C < count; ++C) {
                if (C == I || C == J) continue;
                std::size_t df = h.hom(obj(I), obj(C)).dim(0), dg = h.hom(obj(C), obj(J)).dim(0);
                for (std::size_t f = 0; f < df; ++f)
                    for (std::size_t g = 0; g < dg; ++g) span.insert(h.compose_basis(obj(I), obj(C), obj(J), 0, g, 0, f));
            }
            Face a(I), b(J);
            bool step = a.subset_of(b) && (b - a).size() == 1;
            std::vector<std::size_t> picked;
            for (std::size_t i = 0; i < d0; ++i)
                if (span.insert(Vec<F>{{i, field.one()}})) picked.push_back(i);
            for (std::size_t i : picked) {
                std::string name = step && picked.size() == 1 ? "e_" + std::to_string((b - a).vertices()[0] + 1) : "g" + std::to_string(++generic);
                q.arrows.push_back({name, I, J, false});
                values.push_back(Vec<F>{{i, field.one()}});
            }
        }
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        auto& arrow = q.arrows[k];
        std::size_t a = obj(arrow.src), b = obj(arrow.dst);
        std::size_t back = h.hom(b, a).dim(0), da = h.hom(a, a).dim(0);
        if (back == 0) continue;
        SparseMatrix<F> m(field, da + h.hom(b, b).dim(0), back);
        for (std::size_t w = 0; w < back; ++w) {
            Vec<F> col = h.compose(a, b, a, 0, Vec<F>{{w, field.one()}}, 0, values[k]);
            for (const auto& [i, v] : h.compose(b, a, b, 0, values[k], 0, Vec<F>{{w, field.one()}})) add_entry(col, da + i, v);
            m.set_col(w, col);
        }
        Vec<F> target = h.identity(a);
        for (const auto& [i, v] : h.identity(b)) add_entry(target, da + i, v);
        arrow.invertible = solve(m, target).has_value();
    }
    for (std::size_t I = 0; I < count; ++I)
        for (std::size_t J = 0; J < count; ++J) {
            std::vector<std::string> terms;
            std::vector<Vec<F>> cols;
            if (I == J) {
                terms.push_back("1");
                cols.push_back(h.identity(obj(I)));
            }
            for (std::size_t x = 0; x < q.arrows.size(); ++x) {
                if (q.arrows[x].src != I) continue;
                for (std::size_t y = 0; y < q.arrows.size(); ++y) {
                    if (q.arrows[y].src != q.arrows[x].dst || q.arrows[y].dst != J) continue;
                    terms.push_back(q.arrows[y].name + " " + q.arrows[x].name);
                    cols.push_back(h.compose(obj(I), obj(q.arrows[x].dst), obj(J), 0, values[y], 0, values[x]));
                }
            }
            if (terms.size() < (I == J ? 2u : 1u)) continue;
            SparseMatrix<F> m(field, h.hom(obj(I), obj(J)).dim(0), cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
            for (const auto& rel : kernel_basis(m)) q.relations.push_back({I, J, detail::relation_string(field, terms, rel)});
        }
    for (std::size_t I = 0; I < count; ++I)
        for (std::size_t J = 0; J < count; ++J)
            for (const auto& [k, basis] : h.hom(obj(I), obj(J)).basis)
                if (k != 0 && !basis.empty()) q.higher.push_back({k, I, J, basis.size()});
    std::stable_sort(q.higher.begin(), q.higher.end(), [](const HigherClass& x, const HigherClass& y) { return x.degree < y.degree; });
    return q;
}

}  // namespace skeleta
