#pragma once

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace skeleta {

struct Case {
    std::string label;
    bool pass = true;
    nlohmann::json witness = nlohmann::json::object();
};

struct Report {
    std::string axiom;
    std::vector<Case> cases;

    bool passed() const {
        return std::all_of(cases.begin(), cases.end(), [](const Case& c) { return c.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const Case& c) { return !c.pass; }));
    }
    std::optional<Case> first_failure() const {
        for (const auto& c : cases)
            if (!c.pass) return c;
        return std::nullopt;
    }
    void add(std::string label, bool pass, nlohmann::json witness = nlohmann::json::object()) {
        cases.push_back({std::move(label), pass, std::move(witness)});
    }
    void append(const Report& other) {
        for (const auto& c : other.cases) cases.push_back({other.axiom + ": " + c.label, c.pass, c.witness});
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["axiom"] = axiom;
        j["cases"] = nlohmann::json::array();
        for (const auto& c : cases) j["cases"].push_back({{"triple", c.label}, {"verdict", c.pass ? "pass" : "fail"}, {"witness_dims", c.witness}});
        return j;
    }

    std::string to_tsv() const {
        std::ostringstream os;
        os << "axiom\tcase\tverdict\twitness\n";
        for (const auto& c : cases) os << axiom << '\t' << c.label << '\t' << (c.pass ? "pass" : "fail") << '\t' << c.witness.dump() << '\n';
        return os.str();
    }
};

}  // namespace skeleta
