#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallforge {

using DimVec = std::vector<int>;

class QuiverError : public std::runtime_error {
public:
    enum class Code { Malformed, Involution, DualitySign, OddSymplectic, NotSymmetric, NoDuality };
    QuiverError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
    Code code;
};

enum class NodeClass { Minus, Fixed, Plus };

struct Arrow {
    std::string id;
    int tail = 0;
    int head = 0;
};

class Quiver {
public:
    // Parses the JSON quiver document; sigma/s/tau may be absent for a plain quiver.
    static Quiver parse(const std::string& json_text);
    static Quiver load(const std::string& path);
    std::string to_json() const;

    // Builders used by tests and the finite-type module.
    static Quiver loop(int m, int s, const std::vector<int>& tau);
    static Quiver plain(std::vector<std::string> nodes, std::vector<Arrow> arrows);
    static Quiver build(std::vector<std::string> nodes, std::vector<Arrow> arrows,
                        std::vector<int> sigma_nodes, std::vector<int> sigma_arrows, std::vector<int> s,
                        std::vector<int> tau);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int node_index(const std::string& id) const;
    bool has_duality() const { return has_duality_; }

    int sigma_node(int i) const { return sigma_nodes_[i]; }
    int sigma_arrow(int a) const { return sigma_arrows_[a]; }
    int s(int i) const { return s_[i]; }
    int tau(int a) const { return tau_[a]; }
    NodeClass node_class(int i) const { return node_class_[i]; }
    NodeClass arrow_class(int a) const { return arrow_class_[a]; }

    int euler_form(const DimVec& d, const DimVec& dp) const;
    int sd_euler_form(const DimVec& d) const;
    DimVec sigma(const DimVec& d) const;
    DimVec hyperbolic(const DimVec& d) const;
    bool is_symmetric() const;
    bool is_sigma_symmetric() const;
    bool supercommutativity_criterion() const;
    std::vector<int> witt_class(const DimVec& e) const;
    // sigma-invariant and even at symplectic fixed nodes
    bool admissible(const DimVec& e) const;
    void require_admissible(const DimVec& e) const;
    int arrow_count(int i, int j) const;

private:
    void derive();
    std::vector<std::string> nodes_;
    std::vector<Arrow> arrows_;
    bool has_duality_ = false;
    std::vector<int> sigma_nodes_, sigma_arrows_, s_, tau_;
    std::vector<NodeClass> node_class_, arrow_class_;
};

int total(const DimVec& d);
DimVec add(const DimVec& a, const DimVec& b);
DimVec sub(const DimVec& a, const DimVec& b);
DimVec scale(const DimVec& a, int k);
bool leq(const DimVec& a, const DimVec& b);
bool is_zero(const DimVec& d);
// All d with 0 <= d <= box componentwise, in (total, lex) order.
std::vector<DimVec> box_vectors(const DimVec& box);
// All d with total(d) <= maxdim on n nodes, in (total, lex) order.
std::vector<DimVec> vectors_up_to(int n, int maxdim);
// (total, lex) comparison used for output ordering.
bool graded_less(const DimVec& a, const DimVec& b);
std::string dim_to_string(const DimVec& d);

}  // namespace hallforge
