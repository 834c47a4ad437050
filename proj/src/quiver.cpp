#include "hallforge/quiver.hpp"

#include <algorithm>
#include <functional>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace hallforge {

using json = nlohmann::json;

namespace {

int sign_value(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw QuiverError(QuiverError::Code::Malformed, what + " must be +1 or -1");
    int x = v.get<int>();
    if (x != 1 && x != -1) throw QuiverError(QuiverError::Code::Malformed, what + " must be +1 or -1");
    return x;
}

}  // namespace

Quiver Quiver::parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& ex) {
        throw QuiverError(QuiverError::Code::Malformed, std::string("quiver document is not JSON: ") + ex.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw QuiverError(QuiverError::Code::Malformed, "quiver document needs a \"nodes\" array");
    std::vector<std::string> nodes;
    for (auto& n : doc["nodes"]) {
        if (!n.is_string()) throw QuiverError(QuiverError::Code::Malformed, "node ids must be strings");
        nodes.push_back(n.get<std::string>());
    }
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
        throw QuiverError(QuiverError::Code::Malformed, "duplicate node id");
    auto idx = [&](const json& v, const char* what) {
        if (!v.is_string()) throw QuiverError(QuiverError::Code::Malformed, std::string(what) + " must be a node id");
        auto it = std::lower_bound(nodes.begin(), nodes.end(), v.get<std::string>());
        if (it == nodes.end() || *it != v.get<std::string>())
            throw QuiverError(QuiverError::Code::Malformed, "unknown node " + v.get<std::string>());
        return static_cast<int>(it - nodes.begin());
    };

    std::vector<Arrow> arrows;
    if (doc.contains("arrows")) {
        if (!doc["arrows"].is_array()) throw QuiverError(QuiverError::Code::Malformed, "\"arrows\" must be an array");
        for (auto& a : doc["arrows"]) {
            if (!a.is_object() || !a.contains("id") || !a.contains("tail") || !a.contains("head") || !a["id"].is_string())
                throw QuiverError(QuiverError::Code::Malformed, "arrow needs id, tail, head");
            arrows.push_back({a["id"].get<std::string>(), idx(a["tail"], "tail"), idx(a["head"], "head")});
        }
    }
    std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    for (size_t i = 1; i < arrows.size(); ++i)
        if (arrows[i].id == arrows[i - 1].id) throw QuiverError(QuiverError::Code::Malformed, "duplicate arrow id");

    if (doc.contains("allow_odd_symplectic") && doc["allow_odd_symplectic"] == true)
        throw QuiverError(QuiverError::Code::OddSymplectic,
                          "odd dimension at a symplectic fixed node cannot be allowed");

    if (!doc.contains("sigma_nodes")) {
        if (doc.contains("sigma_arrows") || doc.contains("s") || doc.contains("tau"))
            throw QuiverError(QuiverError::Code::Malformed, "duality data given without sigma_nodes");
        return plain(nodes, arrows);
    }
    for (const char* key : {"sigma_nodes", "sigma_arrows", "s", "tau"}) {
        if (!doc.contains(key) || !doc[key].is_object())
            throw QuiverError(QuiverError::Code::Malformed, std::string("missing object \"") + key + "\"");
    }
    auto arrow_idx = [&](const std::string& id) {
        for (size_t k = 0; k < arrows.size(); ++k)
            if (arrows[k].id == id) return static_cast<int>(k);
        throw QuiverError(QuiverError::Code::Malformed, "unknown arrow " + id);
    };
    std::vector<int> sn(nodes.size(), -1), sa(arrows.size(), -1), s(nodes.size(), 0), tau(arrows.size(), 0);
    for (auto& [k, v] : doc["sigma_nodes"].items()) sn[idx(json(k), "sigma_nodes key")] = idx(v, "sigma_nodes value");
    for (auto& [k, v] : doc["sigma_arrows"].items()) {
        if (!v.is_string()) throw QuiverError(QuiverError::Code::Malformed, "sigma_arrows values must be arrow ids");
        sa[arrow_idx(k)] = arrow_idx(v.get<std::string>());
    }
    for (auto& [k, v] : doc["s"].items()) s[idx(json(k), "s key")] = sign_value(v, "s");
    for (auto& [k, v] : doc["tau"].items()) tau[arrow_idx(k)] = sign_value(v, "tau");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (sn[i] < 0) throw QuiverError(QuiverError::Code::Involution, "sigma_nodes missing node " + nodes[i]);
        if (s[i] == 0) throw QuiverError(QuiverError::Code::Malformed, "s missing node " + nodes[i]);
    }
    for (size_t a = 0; a < arrows.size(); ++a) {
        if (sa[a] < 0) throw QuiverError(QuiverError::Code::Involution, "sigma_arrows missing arrow " + arrows[a].id);
        if (tau[a] == 0) throw QuiverError(QuiverError::Code::Malformed, "tau missing arrow " + arrows[a].id);
    }
    return build(nodes, arrows, sn, sa, s, tau);
}

Quiver Quiver::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw QuiverError(QuiverError::Code::Malformed, "cannot open quiver file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Quiver Quiver::plain(std::vector<std::string> nodes, std::vector<Arrow> arrows) {
    Quiver q;
    q.nodes_ = std::move(nodes);
    q.arrows_ = std::move(arrows);
    q.has_duality_ = false;
    q.derive();
    return q;
}

Quiver Quiver::build(std::vector<std::string> nodes, std::vector<Arrow> arrows, std::vector<int> sn,
                     std::vector<int> sa, std::vector<int> s, std::vector<int> tau) {
    Quiver q;
    q.nodes_ = std::move(nodes);
    q.arrows_ = std::move(arrows);
    q.sigma_nodes_ = std::move(sn);
    q.sigma_arrows_ = std::move(sa);
    q.s_ = std::move(s);
    q.tau_ = std::move(tau);
    q.has_duality_ = true;
    const int n = q.num_nodes(), m = q.num_arrows();
    for (int i = 0; i < n; ++i) {
        int j = q.sigma_nodes_[i];
        if (j < 0 || j >= n || q.sigma_nodes_[j] != i)
            throw QuiverError(QuiverError::Code::Involution, "sigma_nodes is not an involution at " + q.nodes_[i]);
        if (q.s_[i] != q.s_[j]) throw QuiverError(QuiverError::Code::DualitySign, "s is not sigma-invariant");
    }
    for (int a = 0; a < m; ++a) {
        int b = q.sigma_arrows_[a];
        if (b < 0 || b >= m || q.sigma_arrows_[b] != a)
            throw QuiverError(QuiverError::Code::Involution, "sigma_arrows is not an involution at " + q.arrows_[a].id);
        const Arrow& x = q.arrows_[a];
        const Arrow& y = q.arrows_[b];
        if (y.tail != q.sigma_nodes_[x.head] || y.head != q.sigma_nodes_[x.tail])
            throw QuiverError(QuiverError::Code::Involution,
                              "sigma(" + x.id + ") must run from sigma(head) to sigma(tail)");
        if (x.head == q.sigma_nodes_[x.tail] && b != a)
            throw QuiverError(QuiverError::Code::Involution, "arrow " + x.id + " joins i to sigma(i) but is not fixed");
        if (q.tau_[a] * q.tau_[b] != q.s_[x.tail] * q.s_[x.head])
            throw QuiverError(QuiverError::Code::DualitySign, "tau(" + x.id + ")tau(sigma(" + x.id + ")) != s_i s_j");
    }
    q.derive();
    return q;
}

Quiver Quiver::loop(int m, int s, const std::vector<int>& tau) {
    std::vector<Arrow> arrows;
    std::vector<int> sa;
    for (int k = 0; k < m; ++k) {
        // zero-padded ids keep the canonical order equal to creation order
        std::string id = "l" + std::string(k < 10 ? "0" : "") + std::to_string(k);
        arrows.push_back({id, 0, 0});
        sa.push_back(k);
    }
    return build({"1"}, arrows, {0}, sa, {s}, tau);
}

void Quiver::derive() {
    const int n = num_nodes(), m = num_arrows();
    node_class_.assign(n, NodeClass::Fixed);
    arrow_class_.assign(m, NodeClass::Fixed);
    if (!has_duality_) return;
    for (int i = 0; i < n; ++i) {
        int j = sigma_nodes_[i];
        if (j == i) continue;
        node_class_[i] = nodes_[i] < nodes_[j] ? NodeClass::Plus : NodeClass::Minus;
    }
    for (int a = 0; a < m; ++a) {
        int b = sigma_arrows_[a];
        if (b == a) continue;
        arrow_class_[a] = arrows_[a].id < arrows_[b].id ? NodeClass::Plus : NodeClass::Minus;
    }
}

std::string Quiver::to_json() const {
    json doc;
    doc["nodes"] = nodes_;
    doc["arrows"] = json::array();
    for (auto& a : arrows_) doc["arrows"].push_back({{"id", a.id}, {"tail", nodes_[a.tail]}, {"head", nodes_[a.head]}});
    if (has_duality_) {
        json sn = json::object(), sa = json::object(), s = json::object(), t = json::object();
        for (int i = 0; i < num_nodes(); ++i) {
            sn[nodes_[i]] = nodes_[sigma_nodes_[i]];
            s[nodes_[i]] = s_[i];
        }
        for (int a = 0; a < num_arrows(); ++a) {
            sa[arrows_[a].id] = arrows_[sigma_arrows_[a]].id;
            t[arrows_[a].id] = tau_[a];
        }
        doc["sigma_nodes"] = sn;
        doc["sigma_arrows"] = sa;
        doc["s"] = s;
        doc["tau"] = t;
    }
    return doc.dump();
}

int Quiver::node_index(const std::string& id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) throw QuiverError(QuiverError::Code::Malformed, "unknown node " + id);
    return static_cast<int>(it - nodes_.begin());
}

int Quiver::euler_form(const DimVec& d, const DimVec& dp) const {
    int r = 0;
    for (int i = 0; i < num_nodes(); ++i) r += d[i] * dp[i];
    for (auto& a : arrows_) r -= d[a.tail] * dp[a.head];
    return r;
}

int Quiver::sd_euler_form(const DimVec& d) const {
    if (!has_duality_) throw QuiverError(QuiverError::Code::NoDuality, "quiver has no duality structure");
    int r = 0;
    for (int i = 0; i < num_nodes(); ++i) {
        if (node_class_[i] == NodeClass::Fixed) r += d[i] * (d[i] - s_[i]) / 2;
        if (node_class_[i] == NodeClass::Plus) r += d[sigma_nodes_[i]] * d[i];
    }
    for (int a = 0; a < num_arrows(); ++a) {
        const Arrow& x = arrows_[a];
        if (arrow_class_[a] == NodeClass::Fixed) r -= d[x.head] * (d[x.head] + tau_[a] * s_[x.head]) / 2;
        if (arrow_class_[a] == NodeClass::Plus) r -= d[sigma_nodes_[x.tail]] * d[x.head];
    }
    return r;
}

DimVec Quiver::sigma(const DimVec& d) const {
    if (!has_duality_) throw QuiverError(QuiverError::Code::NoDuality, "quiver has no involution");
    DimVec r(d.size());
    for (int i = 0; i < num_nodes(); ++i) r[sigma_nodes_[i]] = d[i];
    return r;
}

DimVec Quiver::hyperbolic(const DimVec& d) const { return add(d, sigma(d)); }

int Quiver::arrow_count(int i, int j) const {
    int c = 0;
    for (auto& a : arrows_)
        if (a.tail == i && a.head == j) ++c;
    return c;
}

bool Quiver::is_symmetric() const {
    for (int i = 0; i < num_nodes(); ++i)
        for (int j = i + 1; j < num_nodes(); ++j)
            if (arrow_count(i, j) != arrow_count(j, i)) return false;
    return true;
}

bool Quiver::is_sigma_symmetric() const {
    if (!has_duality_ || !is_symmetric()) return false;
    for (int i = 0; i < num_nodes(); ++i) {
        int into = 0, out = 0;
        for (int a = 0; a < num_arrows(); ++a) {
            const Arrow& x = arrows_[a];
            if (x.head == i && x.tail == sigma_nodes_[i]) into += tau_[a];
            if (x.tail == i && x.head == sigma_nodes_[i]) out += tau_[a];
        }
        if (into != out) return false;
    }
    return true;
}

bool Quiver::supercommutativity_criterion() const {
    if (!is_symmetric()) throw QuiverError(QuiverError::Code::NotSymmetric, "supercommutativity criterion needs a symmetric quiver");
    for (int i = 0; i < num_nodes(); ++i)
        for (int j = 0; j < num_nodes(); ++j) {
            if (i == j) continue;
            int lhs = arrow_count(i, j) % 2;
            int rhs = ((1 + arrow_count(i, i)) * (1 + arrow_count(j, j))) % 2;
            if (lhs != rhs) return false;
        }
    return true;
}

std::vector<int> Quiver::witt_class(const DimVec& e) const {
    std::vector<int> w;
    for (int i = 0; i < num_nodes(); ++i)
        if (node_class_[i] == NodeClass::Fixed) w.push_back(e[i] % 2);
    return w;
}

bool Quiver::admissible(const DimVec& e) const {
    if (!has_duality_) return false;
    if (static_cast<int>(e.size()) != num_nodes()) return false;
    for (int i = 0; i < num_nodes(); ++i) {
        if (e[i] < 0 || e[i] != e[sigma_nodes_[i]]) return false;
        if (node_class_[i] == NodeClass::Fixed && s_[i] == -1 && e[i] % 2 != 0) return false;
    }
    return true;
}

void Quiver::require_admissible(const DimVec& e) const {
    if (!has_duality_) throw QuiverError(QuiverError::Code::NoDuality, "quiver has no duality structure");
    for (int i = 0; i < num_nodes(); ++i) {
        if (e[i] < 0 || e[i] != e[sigma_nodes_[i]])
            throw QuiverError(QuiverError::Code::Malformed, "dimension vector is not sigma-invariant: " + dim_to_string(e));
        if (node_class_[i] == NodeClass::Fixed && s_[i] == -1 && e[i] % 2 != 0)
            throw QuiverError(QuiverError::Code::OddSymplectic,
                              "odd dimension at symplectic fixed node " + nodes_[i] + ": " + dim_to_string(e));
    }
}

int total(const DimVec& d) { return std::accumulate(d.begin(), d.end(), 0); }

DimVec add(const DimVec& a, const DimVec& b) {
    DimVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DimVec sub(const DimVec& a, const DimVec& b) {
    DimVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DimVec scale(const DimVec& a, int k) {
    DimVec r(a);
    for (auto& x : r) x *= k;
    return r;
}

bool leq(const DimVec& a, const DimVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool is_zero(const DimVec& d) {
    for (int x : d)
        if (x != 0) return false;
    return true;
}

bool graded_less(const DimVec& a, const DimVec& b) {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a < b;
}

std::vector<DimVec> box_vectors(const DimVec& box) {
    std::vector<DimVec> out;
    DimVec cur(box.size(), 0);
    while (true) {
        out.push_back(cur);
        size_t k = 0;
        while (k < box.size() && cur[k] == box[k]) cur[k++] = 0;
        if (k == box.size()) break;
        ++cur[k];
    }
    std::sort(out.begin(), out.end(), graded_less);
    return out;
}

std::vector<DimVec> vectors_up_to(int n, int maxdim) {
    std::vector<DimVec> out;
    DimVec cur(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
        cur[i] = 0;
    };
    rec(0, maxdim);
    std::sort(out.begin(), out.end(), graded_less);
    return out;
}

std::string dim_to_string(const DimVec& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

}  // namespace hallforge
