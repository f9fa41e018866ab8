#pragma once

#include "flow.hpp"
#include "kmonomial.hpp"
#include "quiver.hpp"
#include "toric.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>

namespace skeleta {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

struct RunConfig {
    std::string command;
    std::string input;             // complex JSON {"n": .., "facets": [[1,2], ...]}
    std::string field = "q";       // q | fp:P
    std::string pipeline = "both"; // a | b | both
    std::string out = "tsv";       // tsv | json
    int n_cap = kMaxVertices;
    std::string weight;            // i,j,...
    std::string subset;            // koszul: i,j,... (1-based); empty means all
    int catalogue = -1;            // verify: every vertex-complete complex on [N]
    std::string dump;              // write the category dump here
    std::string load;              // verify a category dump instead of D_B
    std::string start;             // flow-check orbit start x1..xn,y1..yn
    double horizon = 1.0;          // flow-check orbit length
    std::string orbit_csv;
    FlowParams flow;
};

inline SimplicialComplex parse_complex(const nlohmann::json& j) {
    try {
        int n = j.at("n").get<int>();
        if (n < 0 || n > kMaxVertices) throw InputError("n must lie in [0, " + std::to_string(kMaxVertices) + "]");
        std::vector<Face> gens;
        for (const auto& facet : j.at("facets")) {
            Face f;
            for (const auto& v : facet) {
                int i = v.get<int>();
                if (i < 1 || i > n) throw InputError("vertex " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
                f = f | Face::vertex(i - 1);
            }
            gens.push_back(f);
        }
        return closure(n, gens, false);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed complex: ") + e.what());
    } catch (const InvalidComplex& e) {
        throw InputError(e.what());
    }
}

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline SimplicialComplex load_complex(const RunConfig& c) {
    if (c.input.empty()) throw InputError("--input is required for " + c.command);
    auto k = parse_complex(read_json(c.input));
    if (k.n() > c.n_cap) throw InputError("n = " + std::to_string(k.n()) + " exceeds the cap " + std::to_string(c.n_cap));
    return k;
}

inline std::vector<int> parse_ints(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("bad " + what + ": " + s);
        }
    }
    return out;
}

inline std::vector<double> parse_reals(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("bad " + what + ": " + s);
        }
    }
    return out;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

inline std::string reals(const std::vector<double>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str() + ")";
}

inline bool all_passed(const std::vector<Report>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const Report& r) { return r.passed(); });
}

// One line per report: name, verdict, case count, first failure.
inline void emit_reports(const std::vector<Report>& reports, const RunConfig& c, std::ostream& out) {
    if (c.out == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(r.to_json());
        out << j.dump(2) << '\n';
        return;
    }
    out << "suite\tverdict\tcases\tfirst_failure\n";
    for (const auto& r : reports) {
        auto f = r.first_failure();
        out << r.axiom << '\t' << (r.passed() ? "pass" : "fail") << '\t' << r.cases.size() << '\t'
            << (f ? f->label + " " + f->witness.dump() : "-") << '\n';
    }
}

}  // namespace detail

inline int cmd_components(const RunConfig& c, std::ostream& out) {
    auto k = load_complex(c);
    auto comps = components(k);
    if (c.out == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& comp : comps) {
            auto p = component_point(comp, k.n(), c.flow.epsilon);
            rows.push_back({{"face", comp.sigma.to_string()}, {"component", comp.to_string()}, {"x", p.x}, {"y", p.y}});
        }
        out << nlohmann::json{{"count", comps.size()}, {"components", rows}}.dump(2) << '\n';
        return kPass;
    }
    out << "face\tcomponent\tx\ty\n";
    for (const auto& comp : comps) {
        auto p = component_point(comp, k.n(), c.flow.epsilon);
        out << comp.sigma.to_string() << '\t' << comp.to_string() << '\t' << detail::reals(p.x) << '\t' << detail::reals(p.y) << '\n';
    }
    return kPass;
}

template <class F>
int cmd_ext_table(const RunConfig& c, const F& field, std::ostream& out) {
    auto k = load_complex(c);
    std::optional<ExtTable> a, b;
    if (c.pipeline != "b") a = ext_table_A(k, field);
    if (c.pipeline != "a") b = tw_ext_table(build_B_category(k, field).second, k.n());
    if (a && b) {
        auto diff = a->differences(*b);
        if (c.out == "json") {
            out << nlohmann::json{{"A", a->to_json()}, {"B", b->to_json()}, {"differences", diff}}.dump(2) << '\n';
        } else {
            out << "source\ttarget\tdegree\tdim_A\tdim_B\n";
            std::size_t count = std::size_t{1} << k.n();
            for (std::size_t s = 0; s < count; ++s)
                for (std::size_t t = 0; t < count; ++t) {
                    Dims da = a->at(Face(s), Face(t)), db = b->at(Face(s), Face(t));
                    std::set<int> degrees;
                    for (const auto& [d, v] : da) degrees.insert(d);
                    for (const auto& [d, v] : db) degrees.insert(d);
                    for (int d : degrees)
                        out << Face(s).to_string() << '\t' << Face(t).to_string() << '\t' << d << '\t' << da[d] << '\t' << db[d] << '\n';
                }
            out << "# differences: " << diff.size() << '\n';
        }
        return diff.empty() ? kPass : kVerificationFailure;
    }
    const ExtTable& t = a ? *a : *b;
    out << (c.out == "json" ? t.to_json().dump(2) + "\n" : t.to_tsv());
    return kPass;
}

template <class F>
int cmd_quiver(const RunConfig& c, const F& field, std::ostream& out) {
    auto k = load_complex(c);
    Quiver q;
    if (c.pipeline == "a") {
        auto m = build_A_model(k, field);
        q = extract_quiver(*m.cohomology.h, m.functor.object_map, k.n());
    } else {
        auto m = build_B_model(k, field);
        q = extract_quiver(*m.cohomology.h, m.functor.object_map, k.n());
    }
    out << (c.out == "json" ? q.to_json().dump(2) + "\n" : q.to_text());
    return kPass;
}

template <class F>
int cmd_koszul(const RunConfig& c, const F& field, std::ostream& out) {
    auto k = load_complex(c);
    if (c.pipeline == "a") throw InputError("koszul runs on the b pipeline (the A-side functor is strict only on cohomology)");
    auto fd = build_B_category(k, field).second;
    std::vector<Face> subsets_to_test;
    if (c.subset.empty()) {
        for (std::uint64_t I = 0; I < (std::uint64_t{1} << k.n()); ++I) subsets_to_test.emplace_back(I);
    } else {
        Face I;
        for (int v : parse_ints(c.subset, "subset")) {
            if (v < 1 || v > k.n()) throw InputError("subset vertex out of range");
            I = I | Face::vertex(v - 1);
        }
        subsets_to_test.push_back(I);
    }
    std::vector<char> acyclic(subsets_to_test.size());
    parallel_for(subsets_to_test.size(), [&](std::size_t i) { acyclic[i] = acyclicity_test(KoszulSpec{subsets_to_test[i], Face(), {}}, fd); });
    bool ok = true;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream tsv;
    tsv << "subset\tface\tacyclic\tsupport_empty\tagree\n";
    for (std::size_t i = 0; i < subsets_to_test.size(); ++i) {
        Face I = subsets_to_test[i];
        bool face = k.contains(I), empty_support = koszul_support_check(k, I);
        bool agree = static_cast<bool>(acyclic[i]) == !face && empty_support == !face;
        ok = ok && agree;
        rows.push_back({{"subset", I.to_string()}, {"face", face}, {"acyclic", static_cast<bool>(acyclic[i])}, {"support_empty", empty_support}, {"agree", agree}});
        tsv << I.to_string() << '\t' << face << '\t' << static_cast<int>(acyclic[i]) << '\t' << empty_support << '\t' << agree << '\n';
    }
    out << (c.out == "json" ? rows.dump(2) + "\n" : tsv.str());
    return ok ? kPass : kVerificationFailure;
}

template <class F>
int cmd_cohomology(const RunConfig& c, const F& field, std::ostream& out) {
    auto k = load_complex(c);
    if (c.weight.empty()) throw InputError("--weight is required for cohomology");
    Weight m = parse_ints(c.weight, "weight");
    if (static_cast<int>(m.size()) != k.n()) throw InputError("weight length must equal n");
    auto dims = strip_zeros(cohomology_weight(ToricCover(k), m, field));
    if (c.out == "json") {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [d, v] : dims) j[std::to_string(d)] = v;
        out << nlohmann::json{{"weight", m}, {"dims", j}}.dump(2) << '\n';
    } else {
        out << "weight\tdegree\tdim\n";
        for (const auto& [d, v] : dims) out << weight_string(m) << '\t' << d << '\t' << v << '\n';
    }
    return kPass;
}

template <class F>
std::vector<Report> verify_complex(const SimplicialComplex& k, const F& field, const std::string& pipeline) {
    std::vector<Report> reports;
    if (pipeline != "a") {
        auto cand = b_candidate(k, field);
        reports = check_all_axioms(cand);
        Report duality{"koszul support", {}};
        for (std::uint64_t I = 0; I < (std::uint64_t{1} << k.n()); ++I) {
            bool acyclic = acyclicity_test(KoszulSpec{Face(I), Face(), {}}, cand.functor);
            bool empty_support = koszul_support_check(k, Face(I));
            bool face = k.contains(Face(I));
            duality.add(Face(I).to_string(), acyclic == !face && empty_support == !face,
                        {{"acyclic", acyclic}, {"support_empty", empty_support}, {"face", face}});
        }
        reports.push_back(duality);
    }
    if (pipeline == "both") {
        Report mirror{"ext tables A = B", {}};
        auto a = ext_table_A(k, field);
        auto b = tw_ext_table(build_B_category(k, field).second, k.n());
        auto diff = a.differences(b);
        mirror.add(k.to_string(), diff.empty(), {{"differences", diff}});
        reports.push_back(mirror);
    }
    if (pipeline == "a") {
        auto model = build_A_model(k, field);
        reports.push_back(check_delta_fully_faithful(model.functor, k.n()));
    }
    return reports;
}

template <class F>
int cmd_verify(const RunConfig& c, const F& field, std::ostream& out) {
    std::vector<Report> reports;
    if (!c.load.empty()) {
        auto k = load_complex(c);
        auto [cat, fd] = load_category<F>(read_json(c.load), field);
        if (!fd) throw InputError("category dump has no functor");
        if (fd->source->size() != (std::size_t{1} << k.n())) throw InputError("dump does not match the complex");
        CategoryPtr<F> d = cat;
        fd->target = d;
        try {
            reports = check_all_axioms(KMonomialCandidate<F>(k, d, *fd, identity_translation<F>()));
        } catch (const std::exception& e) {
            Report r{"candidate", {}};
            r.add("shape", false, {{"error", e.what()}});
            reports.push_back(r);
        }
        reports.push_back(check_category_axioms(*cat));
    } else if (c.catalogue >= 0) {
        if (c.catalogue > 3) throw InputError("--catalogue covers n <= 3");
        for (const auto& k : enumerate_complexes(c.catalogue, true))
            for (auto& r : verify_complex(k, field, c.pipeline)) {
                r.axiom = k.to_string() + " " + r.axiom;
                reports.push_back(std::move(r));
            }
    } else {
        auto k = load_complex(c);
        reports = verify_complex(k, field, c.pipeline);
        if (!c.dump.empty()) {
            auto [cat, fd] = build_B_category(k, field);
            detail::write_file(c.dump, dump_category(*cat, &fd).dump(1) + "\n");
        }
    }
    detail::emit_reports(reports, c, out);
    return detail::all_passed(reports) ? kPass : kVerificationFailure;
}

inline int cmd_flow_check(const RunConfig& c, std::ostream& out) {
    c.flow.validate();
    if (!c.start.empty()) {
        auto k = load_complex(c);
        auto v = parse_reals(c.start, "start");
        if (static_cast<int>(v.size()) != 2 * k.n()) throw InputError("--start needs 2n coordinates");
        PhasePoint p{{v.begin(), v.begin() + k.n()}, {v.begin() + k.n(), v.end()}};
        Report r{"orbit", {}};
        try {
            auto o = integrate_orbit(p, k, c.flow, c.horizon);
            if (!c.orbit_csv.empty()) detail::write_file(c.orbit_csv, o.to_csv());
            r.add("t in [0, " + std::to_string(c.horizon) + "]", true, {{"end_x", o.end().x}, {"end_y", o.end().y}});
        } catch (const SingularCrossing& e) {
            r.add("t in [0, " + std::to_string(c.horizon) + "]", false, {{"singular_time", e.time}});
        }
        detail::emit_reports({r}, c, out);
        return r.passed() ? kPass : kVerificationFailure;
    }
    auto reports = flow_battery(c.flow);
    detail::emit_reports(reports, c, out);
    return detail::all_passed(reports) ? kPass : kVerificationFailure;
}

template <class F>
int dispatch(const RunConfig& c, const F& field, std::ostream& out) {
    if (c.command == "components") return cmd_components(c, out);
    if (c.command == "verify") return cmd_verify(c, field, out);
    if (c.command == "ext-table") return cmd_ext_table(c, field, out);
    if (c.command == "quiver") return cmd_quiver(c, field, out);
    if (c.command == "koszul") return cmd_koszul(c, field, out);
    if (c.command == "cohomology") return cmd_cohomology(c, field, out);
    if (c.command == "flow-check") return cmd_flow_check(c, out);
    throw InputError("unknown command: " + c.command);
}

// Runs one subcommand; errors in the input map to exit code 2.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.pipeline != "a" && c.pipeline != "b" && c.pipeline != "both") throw InputError("--pipeline must be a, b or both");
        if (c.out != "tsv" && c.out != "json") throw InputError("--out must be tsv or json");
        if (c.n_cap < 0 || c.n_cap > kMaxVertices) throw InputError("--n-cap must lie in [0, 20]");
        if (c.field == "q") return dispatch(c, RationalField{}, out);
        if (c.field.rfind("fp:", 0) == 0) {
            long p = 0;
            try {
                p = std::stol(c.field.substr(3));
            } catch (const std::exception&) {
                throw InputError("bad prime in --field " + c.field);
            }
            if (p < 2 || p >= (1L << 31) || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("--field fp:P needs a prime P below 2^31");
            return dispatch(c, PrimeField(static_cast<std::uint32_t>(p)), out);
        }
        throw InputError("--field must be q or fp:P");
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const LoadedCategoryError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidFlowInput& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace skeleta
