#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hallforge/poly.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge {

constexpr int kExact = 1 << 28;

// Laurent series in q^{1/2}: coefficient of q^{k/2} at key k. Terms with
// k <= prec are exact, nothing is known above prec (kExact = polynomial).
struct Laurent {
    std::map<int, Q> c;
    int prec = kExact;

    static Laurent monomial(int k, const Q& a = 1);
    static Laurent zero(int prec = kExact);
    bool is_zero() const { return c.empty(); }
    int valuation() const { return c.empty() ? kExact : c.begin()->first; }
    Q at(int k) const;
    void truncate(int p);
    void add_term(int k, const Q& a);
    Laurent shifted(int k) const;
    Laurent negated() const;
    // q^{1/2} -> q^{n/2}
    Laurent inflated(int n) const;
    Laurent scaled(const Q& a) const;
    bool operator==(const Laurent& o) const { return c == o.c && prec == o.prec; }
};

Laurent operator+(const Laurent& a, const Laurent& b);
Laurent operator-(const Laurent& a, const Laurent& b);
Laurent operator*(const Laurent& a, const Laurent& b);
// 1/(1-q^{n/2 * 2}) = sum_j q^{jn}, i.e. keys 2nj, through key bound.
Laurent geometric(int step_halfunits, int bound);
// 1/prod_{j=1}^{n}(1-q^{j*base}) through key bound (keys are q^{1/2} powers).
Laurent inverse_qfactorial(int n, int base, int bound);
// [n]_{q^b} = 1 + q^b + ... + q^{b(n-1)}
Laurent quantum_integer(int n, int b);
std::string laurent_to_string(const Laurent& l);

enum class SeriesKind { Torus, Module };

class QSeries {
public:
    QSeries() = default;
    QSeries(SeriesKind kind, int nodes, int maxdim, int window) : kind_(kind), nodes_(nodes), maxdim_(maxdim), window_(window) {}

    static QSeries one(SeriesKind kind, int nodes, int maxdim, int window);

    SeriesKind kind() const { return kind_; }
    int nodes() const { return nodes_; }
    int maxdim() const { return maxdim_; }
    int window() const { return window_; }
    void set_window(int w) { window_ = w; }
    const std::map<DimVec, Laurent>& terms() const { return terms_; }

    bool in_range(const DimVec& d) const { return total(d) <= maxdim_; }
    // zero (exact) when d is within range but absent
    Laurent coeff(const DimVec& d) const;
    void set(const DimVec& d, Laurent l);
    void add(const DimVec& d, const Laurent& l);
    QSeries truncated(int maxdim) const;

    std::string to_json() const;
    static QSeries from_json(const std::string& text);
    // Rows "t^(..) : poly" in (total, lex) order.
    std::string to_table() const;

private:
    SeriesKind kind_ = SeriesKind::Torus;
    int nodes_ = 0;
    int maxdim_ = 0;
    int window_ = 0;
    std::map<DimVec, Laurent> terms_;
};

// Series arithmetic. torus_mul twists by q^{x/2} with x = chi(d,d')-chi(d',d);
// module_star by q^{x/2} with x = chi(d,e)-chi(e,d)+E(sigma d)-E(d).
// Weight uses (-q^{1/2})^{-x} instead, which is the shift in cohomological
// weight of the CoHA product and action, so Poincare series multiply.
enum class TwistConvention { Formal, Weight };
QSeries torus_mul(const Quiver& q, const QSeries& a, const QSeries& b,
                  TwistConvention conv = TwistConvention::Formal);
QSeries module_star(const Quiver& q, const QSeries& a, const QSeries& x,
                    TwistConvention conv = TwistConvention::Formal);
// Untwisted (commutative) product and arithmetic.
QSeries commutative_mul(const QSeries& a, const QSeries& b);
QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_sub(const QSeries& a, const QSeries& b);
QSeries commutative_inverse(const QSeries& a);
QSeries series_log(const QSeries& a);
QSeries series_exp(const QSeries& a);

// (q^{k/2} t^d; q)_inf and (q^{k/2} t^d; q^2)_inf
QSeries qpochhammer_inf(int k, const DimVec& d, int maxdim, int window, SeriesKind kind = SeriesKind::Torus);
QSeries qpochhammer_q2(int k, const DimVec& d, int maxdim, int window, SeriesKind kind = SeriesKind::Torus);
// E_q(t) = (q^{1/2} t; q)_inf on one node
QSeries qdilog(int maxdim, int window);
// E_q(q^{k/2} t^d) and E_{q^2}(q^{k/2} t^d)
QSeries qdilog_at(int k, const DimVec& d, int maxdim, int window);
QSeries qdilog2_at(int k, const DimVec& d, int maxdim, int window);

// Multiplicity table of a DT-type invariant; mult is the dimension of the
// (d,k) component, rendered as mult * (-q^{1/2})^k.
struct InvariantTable {
    int nodes = 0;
    int maxdim = 0;
    std::map<DimVec, std::map<int, long long>> mult;
    std::map<DimVec, int> prec;  // weights k <= prec are complete

    long long at(const DimVec& d, int k) const;
    void set(const DimVec& d, int k, long long m);
    // Sum mult (-q^{1/2})^k x^d as a series of the given kind.
    QSeries to_series(SeriesKind kind, int window) const;
    std::string to_json() const;
    std::string to_table(SeriesKind kind) const;
};

struct SignedTable {
    InvariantTable plus, minus;
};

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A = prod (q^{k/2} t^d; q)_inf^{-(-1)^k mult_{d,k}} inverted via the formal log.
InvariantTable invert_pochhammer_factorization(const QSeries& a);
// prod (q^{k/2+delta} x^e; q^2)_inf^{-(-1)^k mult}, delta = 1 on the minus part.
QSeries pochhammer_q2_product(const SignedTable& t, int maxdim, int window);
QSeries pochhammer_product(const InvariantTable& t, int maxdim, int window);

struct SeriesComparison {
    bool equal = true;
    bool enough_precision = true;
    std::string detail;
};
// Compares coefficients up to the common precision; min_window asks for at
// least that many q^{1/2} steps above the given lower bound per class.
SeriesComparison compare_series(const QSeries& a, const QSeries& b,
                                const std::function<int(const DimVec&)>& kmin = nullptr, int min_window = 0);

}  // namespace hallforge
