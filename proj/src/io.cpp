#include "hallforge/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hallforge {

using json = nlohmann::json;

std::vector<std::string> variable_names(const Quiver& q, const BlockSpec& blocks) {
    std::vector<std::string> names(block_nvars(blocks));
    for (auto& b : blocks)
        for (int j = 0; j < b.count; ++j)
            names[b.offset + j] = std::string(b.bcd ? "z:" : "x:") + q.nodes()[b.node] + ":" + std::to_string(j + 1);
    return names;
}

std::string poly_to_string(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        bool unit = m.degree(p.nvars()) == 0;
        Q a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0 && (a == -1) && !unit) {
            os << "-";
            a = 1;
        }
        first = false;
        bool wrote = false;
        if (unit || a != 1) {
            os << q_to_string(a);
            wrote = true;
        }
        for (int v = 0; v < p.nvars(); ++v) {
            if (m.e[v] == 0) continue;
            if (wrote) os << "*";
            os << names.at(v);
            if (m.e[v] > 1) os << "^" << m.e[v];
            wrote = true;
        }
    }
    return os.str();
}

static json poly_json(const Poly& p, const std::vector<std::string>& names) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json exp = json::object();
        for (int v = 0; v < p.nvars(); ++v)
            if (m.e[v] != 0) exp[names.at(v)] = m.e[v];
        terms.push_back({{"exp", exp}, {"c", q_to_string(c)}});
    }
    return terms;
}

static Poly poly_parse(const json& terms, const std::vector<std::string>& names) {
    int n = static_cast<int>(names.size());
    if (!terms.is_array()) throw std::invalid_argument("polynomial must be a term list");
    std::vector<std::pair<Mono, Q>> buf;
    for (auto& t : terms) {
        Mono m;
        for (auto& [name, k] : t.at("exp").items()) {
            int v = -1;
            for (int i = 0; i < n; ++i)
                if (names[i] == name) v = i;
            if (v < 0) throw std::invalid_argument("unknown variable " + name);
            int e = k.get<int>();
            if (e < 0) throw std::invalid_argument("negative exponent on " + name);
            m.e[v] = static_cast<int16_t>(e);
        }
        buf.emplace_back(m, q_from_string(t.at("c").get<std::string>()));
    }
    return Poly::from_terms(n, std::move(buf));
}

std::string poly_to_json(const Poly& p, const std::vector<std::string>& names) { return poly_json(p, names).dump(); }

Poly poly_from_json(const std::string& text, const std::vector<std::string>& names) {
    return poly_parse(json::parse(text), names);
}

std::string coha_element_to_json(const Quiver& q, const CohaElement& f) {
    json doc;
    doc["d"] = f.d;
    doc["poly"] = poly_json(f.poly, variable_names(q, coha_blocks(f.d)));
    return doc.dump();
}

std::string cohm_element_to_json(const Quiver& q, const CohmElement& g) {
    json doc;
    doc["e"] = g.e;
    doc["poly"] = poly_json(g.poly, variable_names(q, cohm_blocks(q, g.e)));
    return doc.dump();
}

static DimVec read_dim(const Quiver& q, const json& doc, const char* key) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("element file lacks \"") + key + "\"");
    auto d = doc.at(key).get<DimVec>();
    if (static_cast<int>(d.size()) != q.num_nodes()) throw std::invalid_argument("dimension vector length mismatch");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("negative dimension");
    return d;
}

CohaElement coha_element_from_json(const Quiver& q, const std::string& text) {
    json doc = json::parse(text);
    DimVec d = read_dim(q, doc, "d");
    return CohaElement::make(d, poly_parse(doc.at("poly"), variable_names(q, coha_blocks(d))));
}

CohmElement cohm_element_from_json(const Quiver& q, const std::string& text) {
    json doc = json::parse(text);
    DimVec e = read_dim(q, doc, "e");
    q.require_admissible(e);
    return CohmElement::make(q, e, poly_parse(doc.at("poly"), variable_names(q, cohm_blocks(q, e))));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hallforge
