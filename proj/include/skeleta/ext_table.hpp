#pragma once

#include "parallel.hpp"
#include "twisted.hpp"

#include <json.hpp>

#include <sstream>

namespace skeleta {

using Dims = std::map<int, std::size_t>;

// Graded Ext dimensions between the generators indexed by subsets of [n].
struct ExtTable {
    int n = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Dims> entries;  // (source, target) -> degree -> dim

    const Dims& at(Face a, Face b) const {
        static const Dims none;
        auto it = entries.find({a.bits, b.bits});
        return it == entries.end() ? none : it->second;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n;
        j["table"] = nlohmann::json::object();
        std::size_t count = std::size_t{1} << n;
        for (std::size_t a = 0; a < count; ++a) {
            auto& row = j["table"][Face(a).to_string()];
            row = nlohmann::json::object();
            for (std::size_t b = 0; b < count; ++b) {
                nlohmann::json cell = nlohmann::json::object();
                for (const auto& [k, d] : at(Face(a), Face(b))) cell[std::to_string(k)] = d;
                row[Face(b).to_string()] = cell;
            }
        }
        return j;
    }

    std::string to_tsv() const {
        std::ostringstream os;
        os << "source\ttarget\tdegree\tdim\n";
        for (const auto& [key, dims] : entries)
            for (const auto& [k, d] : dims) os << Face(key.first).to_string() << '\t' << Face(key.second).to_string() << '\t' << k << '\t' << d << '\n';
        return os.str();
    }

    // Labels of entries that differ, e.g. "{1,2}->{}: {1:1} vs {}".
    std::vector<std::string> differences(const ExtTable& other) const {
        std::vector<std::string> out;
        auto show = [](const Dims& d) {
            std::string s = "{";
            for (const auto& [k, v] : d) s += (s.size() > 1 ? "," : "") + std::to_string(k) + ":" + std::to_string(v);
            return s + "}";
        };
        std::size_t count = std::size_t{1} << std::max(n, other.n);
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b) {
                const auto& x = at(Face(a), Face(b));
                const auto& y = other.at(Face(a), Face(b));
                if (x != y) out.push_back(Face(a).to_string() + "->" + Face(b).to_string() + ": " + show(x) + " vs " + show(y));
            }
        return out;
    }

    bool operator==(const ExtTable& o) const { return n == o.n && differences(o).empty(); }
};

inline Dims strip_zeros(Dims d) {
    for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
    return d;
}

// Ext table of arbitrary objects X_I given per subset.
template <class F>
ExtTable ext_table_of(int n, const std::vector<ComplexPtr<F>>& objects) {
    ExtTable t;
    t.n = n;
    std::size_t count = std::size_t{1} << n;
    if (objects.size() != count) throw std::invalid_argument("need one object per subset");
    std::vector<Dims> cells(count * count);
    parallel_for(count * count, [&](std::size_t i) { cells[i] = strip_zeros(ext(objects[i / count], objects[i % count])); });
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!cells[i].empty()) t.entries[{i / count, i % count}] = std::move(cells[i]);
    return t;
}

// tw-level Ext table of the generators F(C_I) of a candidate.
template <class F>
ExtTable tw_ext_table(const FunctorData<F>& fd, int n) {
    std::size_t count = std::size_t{1} << n;
    std::vector<ComplexPtr<F>> objects;
    for (std::size_t I = 0; I < count; ++I) objects.push_back(share(single(fd.target, fd.object_map.at(I))));
    return ext_table_of(n, objects);
}

}  // namespace skeleta
