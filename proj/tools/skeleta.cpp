#include <skeleta/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    skeleta::RunConfig c;
    CLI::App app{"Toric mirror checks: simplicial complexes, K-monomial categories, Ext tables, flows"};
    app.require_subcommand(1);

    auto common = [&c](CLI::App* s) {
        s->add_option("--input", c.input, "complex JSON {\"n\": N, \"facets\": [[1,2], ...]} (1-based)");
        s->add_option("--field", c.field, "q or fp:P")->capture_default_str();
        s->add_option("--pipeline", c.pipeline, "a, b or both")->capture_default_str();
        s->add_option("--out", c.out, "tsv or json")->capture_default_str();
        s->add_option("--n-cap", c.n_cap, "largest accepted n")->capture_default_str();
    };
    auto flow = [&c](CLI::App* s) {
        s->add_option("--epsilon", c.flow.epsilon, "neighbourhood scale")->capture_default_str();
        s->add_option("--w", c.flow.w, "wrapping weight")->capture_default_str();
        s->add_option("--dt", c.flow.dt, "step size")->capture_default_str();
        s->add_option("--tol", c.flow.tol, "equidistance tolerance")->capture_default_str();
        s->add_option("--grid", c.flow.grid, "fiber grid points per axis")->capture_default_str();
    };

    auto* components = app.add_subcommand("components", "signed components with sample points");
    common(components);
    components->add_option("--epsilon", c.flow.epsilon, "fiber offset scale")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "K-monomial axioms, Koszul support duality, A vs B Ext tables");
    common(verify);
    verify->add_option("--catalogue", c.catalogue, "check every vertex-complete complex on [N], N <= 3");
    verify->add_option("--dump", c.dump, "write the D_B cochain category and functor as JSON");
    verify->add_option("--load", c.load, "verify a category dump against --input instead of D_B");

    auto* ext = app.add_subcommand("ext-table", "graded Ext table between the generators");
    common(ext);

    auto* quiver = app.add_subcommand("quiver", "degree-0 quiver with relations and higher Ext classes");
    common(quiver);

    auto* koszul = app.add_subcommand("koszul", "acyclicity of K_I in the B category against the support test");
    common(koszul);
    koszul->add_option("--subset", c.subset, "I as i,j,... (default: every subset)");

    auto* coh = app.add_subcommand("cohomology", "H^*(Y_K, O) in one weight");
    common(coh);
    coh->add_option("--weight", c.weight, "weight m as i,j,...")->required();

    auto* flow_check = app.add_subcommand("flow-check", "numeric checks of the idealized Hamiltonian flow");
    common(flow_check);
    flow(flow_check);
    flow_check->add_option("--start", c.start, "orbit start x1..xn,y1..yn (needs --input)");
    flow_check->add_option("--T", c.horizon, "orbit length")->capture_default_str();
    flow_check->add_option("--orbit-csv", c.orbit_csv, "write the orbit as CSV (t, x..., y...)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : skeleta::kInputError;
    }
    c.command = app.get_subcommands().front()->get_name();
    return skeleta::run(c, std::cout, std::cerr);
}
