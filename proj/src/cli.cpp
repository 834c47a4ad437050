#include "hallforge/cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "hallforge/finite_type.hpp"
#include "hallforge/io.hpp"
#include "hallforge/properties.hpp"
#include "json.hpp"

namespace hallforge {

using json = nlohmann::json;

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Output {
    json doc;
    std::string table;
    bool pass = true;
};

json truncation(const RunConfig& c) { return {{"maxdim", c.max_dim}, {"window", c.window}}; }

std::string trailer(const RunConfig& c) {
    return "# maxdim " + std::to_string(c.max_dim) + " window " + std::to_string(c.window) + "\n";
}

Quiver need_quiver(const RunConfig& c) {
    if (c.quiver.empty()) throw InputError("--quiver is required for " + c.command);
    return Quiver::load(c.quiver);
}

DimVec parse_vector(const std::string& s) {
    DimVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        int x = std::stoi(tok, &used);
        if (used != tok.size()) throw InputError("bad dimension vector " + s);
        v.push_back(x);
    }
    return v;
}

Output table_output(const InvariantTable& t, SeriesKind kind, const RunConfig& c) {
    Output o;
    o.doc = json::parse(t.to_json());
    o.doc["trunc"] = truncation(c);
    o.table = t.to_table(kind) + trailer(c);
    return o;
}

Output series_output(const QSeries& s) {
    Output o;
    o.doc = json::parse(s.to_json());
    o.table = s.to_table();
    return o;
}

Output report_output(const CheckReport& r) {
    Output o;
    o.doc = json::parse(r.to_json());
    o.pass = r.pass;
    o.table = r.property + ": " + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.instances) + " instances)\n";
    if (!r.counterexample.empty()) o.table += "counterexample: " + r.counterexample + "\n";
    if (!r.detail.empty()) o.table += r.detail + "\n";
    return o;
}

RootSystemA root_system(const RunConfig& c) {
    if (c.type.size() < 2 || c.type[0] != 'A') throw InputError("--type must be A<n>");
    int n = std::stoi(c.type.substr(1));
    if (n < 1) throw InputError("--type must be A<n> with n >= 1");
    std::string orient = c.orient.empty() ? std::string(n - 1, 'R') : c.orient;
    DualityType dt;
    if (c.duality == "orth")
        dt = DualityType::Orthogonal;
    else if (c.duality == "symp")
        dt = DualityType::Symplectic;
    else
        throw InputError("--duality must be orth or symp");
    return build_typeA(n, orient, dt);
}

using Suite = CheckReport (*)(const std::vector<PoolQuiver>&, uint64_t, int);

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> m = {
        {"associativity", check_associativity},
        {"supercommutativity", check_supercommutativity},
        {"module-axiom", check_module_axiom},
        {"unit-laws", check_unit_laws},
        {"s-antihomomorphism", check_s_antihomomorphism},
        {"module-relation", check_module_relations},
        {"parity", check_parity},
        {"sd-euler-identity", check_euler_identities},
        {"witt", check_witt_preservation},
        {"hilbert-coha", check_hilbert_coha},
        {"hilbert-cohm", check_hilbert_cohm},
    };
    return m;
}

Output run_check(const RunConfig& c) {
    Quiver q = need_quiver(c);
    if (c.instances < 1) throw InputError("--instances must be positive");
    if (c.property == "freeness") return report_output(check_freeness(q, c.max_dim, c.window));
    if (c.property == "factorization") return report_output(general_factorization_check(q, c.max_dim, c.window));
    if (c.property == "disjoint") return report_output(check_disjoint_union(q, c.max_dim, c.seed, c.instances));
    auto it = suites().find(c.property);
    if (it == suites().end()) throw InputError("unknown property " + c.property);
    std::string name = std::filesystem::path(c.quiver).stem().string();
    return report_output(it->second({{name, q}}, c.seed, c.instances));
}

Output run_thom(const RunConfig& c) {
    if (c.mults.empty()) throw InputError("--mults is required");
    json doc;
    try {
        doc = json::parse(read_file(c.mults));
    } catch (const json::exception& ex) {
        throw InputError(std::string("multiplicity file: ") + ex.what());
    }
    RunConfig rc = c;
    rc.type = "A" + std::to_string(doc.at("n").get<int>());
    rc.orient = doc.value("orientation", std::string());
    rc.duality = doc.value("duality", std::string("orth"));
    RootSystemA rs = root_system(rc);
    std::vector<int> m(rs.roots.size(), 0);
    for (auto& entry : doc.at("mults")) {
        auto r = entry.at("root").get<std::vector<int>>();
        if (r.size() != 2) throw InputError("root must be [a, b]");
        int idx = rs.index_of({r[0], r[1]});
        if (idx < 0) throw InputError("not a root");
        m[idx] = entry.at("m").get<int>();
    }
    CohmElement g = thom_polynomial(rs, m);
    Output o;
    o.doc = json::parse(cohm_element_to_json(rs.quiver, g));
    o.table = "e=" + dim_to_string(g.e) + "\n" + poly_to_string(g.poly, variable_names(rs.quiver, cohm_blocks(rs.quiver, g.e))) + "\n";
    return o;
}

Output run(const RunConfig& c) {
    if (c.max_dim < 0 || c.window < 0) throw InputError("--max-dim and --window must be nonnegative");
    const std::string& cmd = c.command;
    if (cmd == "dt-series") return series_output(dt_series(need_quiver(c), c.max_dim, c.window));
    if (cmd == "dt-invariants") return table_output(dt_invariants(need_quiver(c), c.max_dim, c.window), SeriesKind::Torus, c);
    if (cmd == "ori-series") return series_output(ori_dt_series(need_quiver(c), c.max_dim, c.window));
    if (cmd == "ori-invariants")
        return table_output(ori_dt_invariants(need_quiver(c), c.max_dim, c.window).dims, SeriesKind::Module, c);
    if (cmd == "equivariant-dt") {
        Quiver q = need_quiver(c);
        if (c.target.empty()) throw InputError("--target is required");
        DimVec e = parse_vector(c.target);
        if (static_cast<int>(e.size()) != q.num_nodes()) throw InputError("--target length differs from node count");
        q.require_admissible(e);
        SignedTable t = equivariant_dt(q, e, c.max_dim, c.window);
        Output o;
        o.doc = {{"plus", json::parse(t.plus.to_json())}, {"minus", json::parse(t.minus.to_json())},
                 {"target", e}, {"trunc", truncation(c)}};
        o.table = "# plus\n" + t.plus.to_table(SeriesKind::Torus) + "# minus\n" + t.minus.to_table(SeriesKind::Torus) + trailer(c);
        return o;
    }
    if (cmd == "mul") {
        Quiver q = need_quiver(c);
        CohaElement f = coha_element_from_json(q, read_file(c.lhs));
        CohaElement g = coha_element_from_json(q, read_file(c.rhs));
        CohaElement fg = shuffle_mul(q, f, g);
        Output o;
        o.doc = json::parse(coha_element_to_json(q, fg));
        o.table = "d=" + dim_to_string(fg.d) + "\n" + poly_to_string(fg.poly, variable_names(q, coha_blocks(fg.d))) + "\n";
        return o;
    }
    if (cmd == "act") {
        Quiver q = need_quiver(c);
        CohaElement f = coha_element_from_json(q, read_file(c.coha));
        CohmElement g = cohm_element_from_json(q, read_file(c.cohm));
        CohmElement fg = cohm_action(q, f, g);
        Output o;
        o.doc = json::parse(cohm_element_to_json(q, fg));
        o.table = "e=" + dim_to_string(fg.e) + "\n" + poly_to_string(fg.poly, variable_names(q, cohm_blocks(q, fg.e))) + "\n";
        return o;
    }
    if (cmd == "check") return run_check(c);
    if (cmd == "dilog-check") {
        RootSystemA rs = root_system(c);
        DilogReport r = dilog_identity_check(rs, c.max_dim, c.window);
        if (!r.enough_precision) throw InputError("window too small for the comparison: " + r.detail);
        Output o;
        o.pass = r.equal;
        o.doc = {{"property", "dilog"}, {"pass", r.equal}, {"detail", r.detail},
                 {"lhs", json::parse(r.lhs.to_json())}, {"rhs", json::parse(r.rhs.to_json())}};
        o.table = std::string("dilog identity: ") + (r.equal ? "pass" : "FAIL") + "\n" + (r.detail.empty() ? "" : r.detail + "\n") +
                  "# lhs\n" + r.lhs.to_table() + "# rhs\n" + r.rhs.to_table();
        return o;
    }
    if (cmd == "thom") return run_thom(c);
    if (cmd == "pbw-check") {
        RootSystemA rs = root_system(c);
        PbwBound b{c.node_dim, c.degree};
        PbwReport r;
        if (c.pbw_kind == "coha")
            r = pbw_check_coha(rs, b);
        else if (c.pbw_kind == "cohm")
            r = pbw_check_cohm(rs, b);
        else
            throw InputError("pbw-check needs coha or cohm");
        Output o;
        o.pass = r.pass;
        o.doc = {{"property", "pbw-" + c.pbw_kind}, {"pass", r.pass}, {"slices", r.slices},
                 {"counterexample", r.counterexample.empty() ? json(nullptr) : json(r.counterexample)},
                 {"bound", {{"node_dim", b.node_dim}, {"degree", b.degree}}}};
        o.table = "pbw-" + c.pbw_kind + ": " + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.slices) + " slices)\n";
        if (!r.counterexample.empty()) o.table += "counterexample: " + r.counterexample + "\n";
        return o;
    }
    throw InputError("unknown subcommand " + cmd);
}

}  // namespace

RunResult dispatch(const RunConfig& cfg) {
    RunResult res;
    if (cfg.format != "table" && cfg.format != "json") {
        res.status = 2;
        res.document = "error: --format must be table or json\n";
        return res;
    }
    try {
        Output o = run(cfg);
        res.status = o.pass ? 0 : 1;
        res.document = cfg.format == "json" ? o.doc.dump() + "\n" : o.table;
    } catch (const std::exception& ex) {
        res.status = 2;
        if (cfg.format == "json")
            res.document = json{{"error", ex.what()}}.dump() + "\n";
        else
            res.document = std::string("error: ") + ex.what() + "\n";
    }
    return res;
}

}  // namespace hallforge
