#include <iostream>

#include "CLI11.hpp"
#include "hallforge/cli.hpp"

int main(int argc, char** argv) {
    hallforge::RunConfig cfg;
    CLI::App app{"hallforge: cohomological Hall algebras and orientifold DT invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--quiver", cfg.quiver, "quiver JSON file");
    app.add_option("--max-dim", cfg.max_dim, "maximal total dimension")->check(CLI::NonNegativeNumber);
    app.add_option("--window", cfg.window, "weight window in q^{1/2} steps")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", cfg.seed, "seed of the property suites");

    app.add_subcommand("dt-series", "generating series of the CoHA");
    app.add_subcommand("dt-invariants", "DT invariants of a symmetric quiver");
    app.add_subcommand("ori-series", "generating series of the CoHM");
    app.add_subcommand("ori-invariants", "orientifold DT invariants");
    auto* eq = app.add_subcommand("equivariant-dt", "signed Z2-equivariant invariants");
    eq->add_option("--target", cfg.target, "self-dual class, comma separated")->required();
    auto* mul = app.add_subcommand("mul", "CoHA product");
    mul->add_option("--lhs", cfg.lhs)->required();
    mul->add_option("--rhs", cfg.rhs)->required();
    auto* act = app.add_subcommand("act", "CoHM action");
    act->add_option("--coha", cfg.coha)->required();
    act->add_option("--cohm", cfg.cohm)->required();
    auto* check = app.add_subcommand("check", "property checks");
    check->add_option("--property", cfg.property)->required();
    check->add_option("--instances", cfg.instances, "randomized instances");
    auto* dilog = app.add_subcommand("dilog-check", "ordered dilogarithm identity for type A");
    auto* thom = app.add_subcommand("thom", "Thom polynomial of a multiplicity vector");
    thom->add_option("--mults", cfg.mults, "multiplicity JSON file")->required();
    auto* pbw = app.add_subcommand("pbw-check", "ordered products against the full slice");
    pbw->add_option("kind", cfg.pbw_kind, "coha or cohm")->required()->check(CLI::IsMember({"coha", "cohm"}));
    pbw->add_option("--node-dim", cfg.node_dim, "per-node bound on the target dimension");
    pbw->add_option("--degree", cfg.degree, "polynomial degree bound");
    for (auto* sub : {dilog, pbw}) {
        sub->add_option("--type", cfg.type, "A<n>")->required();
        sub->add_option("--orient", cfg.orient, "edge orientations, R or L per edge");
        sub->add_option("--duality", cfg.duality, "orth or symp");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    hallforge::RunResult r = hallforge::dispatch(cfg);
    (r.status == 2 && cfg.format == "table" ? std::cerr : std::cout) << r.document;
    return r.status;
}
