#include "hallforge/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace hallforge {

using json = nlohmann::json;

namespace {

int sat_add(int a, int b) {
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
}

// Finite truncation bound for expanding infinite series next to l.
int finite_bound(const Laurent& l, int fallback) { return l.prec < kExact ? l.prec : fallback; }

std::string var_name(SeriesKind k) { return k == SeriesKind::Torus ? "t" : "xi"; }

std::string exponent_string(int k) {
    if (k % 2 == 0) return std::to_string(k / 2);
    return std::to_string(k) + "/2";
}

}  // namespace

Laurent Laurent::monomial(int k, const Q& a) {
    Laurent l;
    if (a != 0) l.c[k] = a;
    return l;
}

Laurent Laurent::zero(int prec) {
    Laurent l;
    l.prec = prec;
    return l;
}

Q Laurent::at(int k) const {
    auto it = c.find(k);
    return it == c.end() ? Q(0) : it->second;
}

void Laurent::truncate(int p) {
    if (p < prec) prec = p;
    while (!c.empty() && c.rbegin()->first > prec) c.erase(std::prev(c.end()));
}

void Laurent::add_term(int k, const Q& a) {
    if (k > prec || a == 0) return;
    auto [it, fresh] = c.emplace(k, 0);
    it->second += a;
    if (it->second == 0) c.erase(it);
}

Laurent Laurent::shifted(int k) const {
    Laurent r;
    r.prec = sat_add(prec, k);
    for (auto& [e, a] : c) r.c.emplace(e + k, a);
    return r;
}

Laurent Laurent::negated() const {
    Laurent r = *this;
    for (auto& kv : r.c) kv.second = -kv.second;
    return r;
}

Laurent Laurent::inflated(int n) const {
    Laurent r;
    r.prec = prec >= kExact ? kExact : prec * n + (n - 1);
    for (auto& [e, a] : c) r.c.emplace(e * n, a);
    return r;
}

Laurent Laurent::scaled(const Q& a) const {
    if (a == 0) return zero(prec);
    Laurent r = *this;
    for (auto& kv : r.c) kv.second *= a;
    return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r;
    r.prec = std::min(a.prec, b.prec);
    for (auto& [k, x] : a.c) r.add_term(k, x);
    for (auto& [k, x] : b.c) r.add_term(k, x);
    return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + b.negated(); }

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    r.prec = std::min(sat_add(a.prec, b.valuation()), sat_add(b.prec, a.valuation()));
    for (auto& [ka, xa] : a.c) {
        for (auto& [kb, xb] : b.c) {
            if (ka + kb > r.prec) break;
            r.add_term(ka + kb, xa * xb);
        }
    }
    return r;
}

Laurent geometric(int step, int bound) {
    Laurent r;
    r.prec = bound;
    for (int k = 0; k <= bound; k += step) r.c[k] = 1;
    return r;
}

Laurent inverse_qfactorial(int n, int base, int bound) {
    // keys in q^{1/2} units, parts j*base in q units
    Laurent r;
    r.prec = bound;
    if (bound < 0) return r;
    std::vector<Q> c(bound + 1, 0);
    c[0] = 1;
    for (int j = 1; j <= n; ++j) {
        int step = 2 * j * base;
        for (int m = step; m <= bound; ++m) c[m] += c[m - step];
    }
    for (int m = 0; m <= bound; ++m)
        if (c[m] != 0) r.c[m] = c[m];
    return r;
}

Laurent quantum_integer(int n, int b) {
    Laurent r;
    for (int j = 0; j < n; ++j) r.add_term(2 * b * j, 1);
    return r;
}

std::string laurent_to_string(const Laurent& l) {
    std::string s;
    for (auto& [k, a] : l.c) {
        Q mag = abs(a);
        bool neg = a < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        bool unit = mag == 1;
        if (k == 0) {
            s += q_to_string(mag);
        } else {
            if (!unit) s += q_to_string(mag);
            s += "q^{" + exponent_string(k) + "}";
        }
    }
    if (l.prec < kExact) {
        if (!s.empty()) s += " + ";
        s += "O(q^{" + exponent_string(l.prec + 1) + "})";
    }
    if (s.empty()) s = "0";
    return s;
}

QSeries QSeries::one(SeriesKind kind, int nodes, int maxdim, int window) {
    QSeries s(kind, nodes, maxdim, window);
    s.set(DimVec(nodes, 0), Laurent::monomial(0));
    return s;
}

Laurent QSeries::coeff(const DimVec& d) const {
    auto it = terms_.find(d);
    if (it != terms_.end()) return it->second;
    if (!in_range(d)) return Laurent::zero(-kExact);
    return Laurent::zero();
}

void QSeries::set(const DimVec& d, Laurent l) {
    if (!in_range(d)) return;
    if (l.c.empty() && l.prec >= kExact) {
        terms_.erase(d);
        return;
    }
    terms_[d] = std::move(l);
}

void QSeries::add(const DimVec& d, const Laurent& l) {
    if (!in_range(d)) return;
    set(d, coeff(d) + l);
}

QSeries QSeries::truncated(int maxdim) const {
    QSeries r(kind_, nodes_, std::min(maxdim, maxdim_), window_);
    for (auto& [d, l] : terms_) r.set(d, l);
    return r;
}

std::string QSeries::to_json() const {
    json doc;
    doc["kind"] = kind_ == SeriesKind::Torus ? "torus" : "module";
    doc["trunc"] = {{"maxdim", maxdim_}, {"window", window_}};
    std::vector<DimVec> keys;
    for (auto& kv : terms_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), graded_less);
    json terms = json::array(), precs = json::array();
    for (auto& d : keys) {
        const Laurent& l = terms_.at(d);
        for (auto& [k, a] : l.c) terms.push_back({{"d", d}, {"k", k}, {"c", q_to_string(a)}});
        if (l.prec < kExact) precs.push_back({{"d", d}, {"k", l.prec}});
    }
    doc["terms"] = terms;
    doc["precision"] = precs;
    doc["nodes"] = nodes_;
    return doc.dump();
}

QSeries QSeries::from_json(const std::string& text) {
    json doc = json::parse(text);
    SeriesKind kind = doc.at("kind").get<std::string>() == "torus" ? SeriesKind::Torus : SeriesKind::Module;
    int nodes = doc.at("nodes").get<int>();
    QSeries s(kind, nodes, doc.at("trunc").at("maxdim").get<int>(), doc.at("trunc").at("window").get<int>());
    std::map<DimVec, Laurent> acc;
    if (doc.contains("precision"))
        for (auto& p : doc["precision"]) acc[p.at("d").get<DimVec>()].prec = p.at("k").get<int>();
    for (auto& t : doc.at("terms")) {
        auto d = t.at("d").get<DimVec>();
        acc[d].c[t.at("k").get<int>()] = q_from_string(t.at("c").get<std::string>());
    }
    for (auto& [d, l] : acc) s.set(d, l);
    return s;
}

std::string QSeries::to_table() const {
    std::vector<DimVec> keys;
    for (auto& kv : terms_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), graded_less);
    std::ostringstream os;
    for (auto& d : keys) {
        std::string mono = var_name(kind_) + "^" + (nodes_ == 1 ? std::to_string(d[0]) : dim_to_string(d));
        os << mono << " : " << laurent_to_string(terms_.at(d)) << "\n";
    }
    os << "# maxdim " << maxdim_ << " window " << window_ << "\n";
    return os.str();
}

namespace {

QSeries product(const QSeries& a, const QSeries& b, int maxdim,
                const std::function<std::pair<DimVec, int>(const DimVec&, const DimVec&)>& combine,
                SeriesKind kind, TwistConvention conv = TwistConvention::Formal) {
    QSeries r(kind, b.nodes(), maxdim, std::min(a.window(), b.window()));
    std::map<DimVec, Laurent> acc;
    for (auto& [da, la] : a.terms()) {
        for (auto& [db, lb] : b.terms()) {
            auto [d, shift] = combine(da, db);
            if (total(d) > maxdim) continue;
            Laurent t = (la * lb).shifted(conv == TwistConvention::Formal ? shift : -shift);
            if (conv == TwistConvention::Weight && shift % 2 != 0) t = t.negated();
            auto it = acc.find(d);
            if (it == acc.end())
                acc.emplace(d, t);
            else
                it->second = it->second + t;
        }
    }
    for (auto& [d, l] : acc) r.set(d, l);
    return r;
}

}  // namespace

QSeries torus_mul(const Quiver& q, const QSeries& a, const QSeries& b, TwistConvention conv) {
    if (a.kind() != SeriesKind::Torus || b.kind() != SeriesKind::Torus)
        throw std::invalid_argument("torus_mul expects two torus series");
    return product(a, b, std::min(a.maxdim(), b.maxdim()),
                   [&](const DimVec& x, const DimVec& y) {
                       return std::make_pair(add(x, y), q.euler_form(x, y) - q.euler_form(y, x));
                   },
                   SeriesKind::Torus, conv);
}

QSeries module_star(const Quiver& q, const QSeries& a, const QSeries& x, TwistConvention conv) {
    if (a.kind() != SeriesKind::Torus || x.kind() != SeriesKind::Module)
        throw std::invalid_argument("module_star expects a torus series acting on a module series");
    return product(a, x, std::min(x.maxdim(), 2 * a.maxdim() + 1),
                   [&](const DimVec& d, const DimVec& e) {
                       int shift = q.euler_form(d, e) - q.euler_form(e, d) + q.sd_euler_form(q.sigma(d)) -
                                   q.sd_euler_form(d);
                       return std::make_pair(add(q.hyperbolic(d), e), shift);
                   },
                   SeriesKind::Module, conv);
}

QSeries commutative_mul(const QSeries& a, const QSeries& b) {
    if (a.kind() != b.kind()) throw std::invalid_argument("series kinds differ");
    return product(a, b, std::min(a.maxdim(), b.maxdim()),
                   [](const DimVec& x, const DimVec& y) { return std::make_pair(add(x, y), 0); }, a.kind());
}

QSeries series_add(const QSeries& a, const QSeries& b) {
    if (a.kind() != b.kind()) throw std::invalid_argument("series kinds differ");
    QSeries r(a.kind(), a.nodes(), std::min(a.maxdim(), b.maxdim()), std::min(a.window(), b.window()));
    for (auto& [d, l] : a.terms()) r.add(d, l);
    for (auto& [d, l] : b.terms()) r.add(d, l);
    return r;
}

QSeries series_sub(const QSeries& a, const QSeries& b) {
    QSeries nb(b.kind(), b.nodes(), b.maxdim(), b.window());
    for (auto& [d, l] : b.terms()) nb.set(d, l.negated());
    return series_add(a, nb);
}

namespace {

QSeries scalar_series(const QSeries& a, const Q& c) {
    QSeries r(a.kind(), a.nodes(), a.maxdim(), a.window());
    for (auto& [d, l] : a.terms()) r.set(d, l.scaled(c));
    return r;
}

void require_unit(const QSeries& a) {
    Laurent c0 = a.coeff(DimVec(a.nodes(), 0));
    if (!(c0.c.size() == 1 && c0.c.count(0) && c0.at(0) == 1))
        throw FactorizationError("series does not have constant term 1");
}

}  // namespace

QSeries commutative_inverse(const QSeries& a) {
    require_unit(a);
    const DimVec zero(a.nodes(), 0);
    QSeries x(a.kind(), a.nodes(), a.maxdim(), a.window());
    x.set(zero, Laurent::monomial(0));
    for (auto& d : vectors_up_to(a.nodes(), a.maxdim())) {
        if (is_zero(d)) continue;
        Laurent acc;
        for (auto& [dp, l] : a.terms()) {
            if (is_zero(dp) || !leq(dp, d)) continue;
            acc = acc + l * x.coeff(sub(d, dp));
        }
        x.set(d, acc.negated());
    }
    return x;
}

QSeries series_log(const QSeries& a) {
    require_unit(a);
    QSeries y = a;
    y.set(DimVec(a.nodes(), 0), Laurent());
    QSeries result(a.kind(), a.nodes(), a.maxdim(), a.window());
    QSeries power = y;
    for (int j = 1; j <= a.maxdim(); ++j) {
        Q c(j % 2 == 1 ? 1 : -1, j);
        result = series_add(result, scalar_series(power, c));
        power = commutative_mul(power, y);
    }
    return result;
}

QSeries series_exp(const QSeries& a) {
    Laurent c0 = a.coeff(DimVec(a.nodes(), 0));
    if (!c0.c.empty()) throw FactorizationError("exp needs a series without constant term");
    QSeries result = QSeries::one(a.kind(), a.nodes(), a.maxdim(), a.window());
    QSeries power = QSeries::one(a.kind(), a.nodes(), a.maxdim(), a.window());
    Q fact = 1;
    for (int j = 1; j <= a.maxdim(); ++j) {
        power = commutative_mul(power, a);
        fact *= j;
        result = series_add(result, scalar_series(power, Q(1) / fact));
    }
    return result;
}

namespace {

QSeries pochhammer_generic(int k, const DimVec& d, int maxdim, int window, SeriesKind kind, int base) {
    if (is_zero(d)) throw std::invalid_argument("q-Pochhammer needs a nonzero dimension vector");
    QSeries s = QSeries::one(kind, static_cast<int>(d.size()), maxdim, window);
    for (int n = 1; total(d) * n <= maxdim; ++n) {
        // (-1)^n q^{base n(n-1)/2} x^n / (q^base;q^base)_n
        int val = base * n * (n - 1) + n * k;
        Laurent l = inverse_qfactorial(n, base, window).shifted(val);
        s.set(scale(d, n), n % 2 ? l.negated() : l);
    }
    return s;
}

}  // namespace

QSeries qpochhammer_inf(int k, const DimVec& d, int maxdim, int window, SeriesKind kind) {
    return pochhammer_generic(k, d, maxdim, window, kind, 1);
}

QSeries qpochhammer_q2(int k, const DimVec& d, int maxdim, int window, SeriesKind kind) {
    return pochhammer_generic(k, d, maxdim, window, kind, 2);
}

QSeries qdilog(int maxdim, int window) { return qpochhammer_inf(1, {1}, maxdim, window); }

QSeries qdilog_at(int k, const DimVec& d, int maxdim, int window) { return qpochhammer_inf(k + 1, d, maxdim, window); }

QSeries qdilog2_at(int k, const DimVec& d, int maxdim, int window) { return qpochhammer_q2(k + 2, d, maxdim, window); }

long long InvariantTable::at(const DimVec& d, int k) const {
    auto it = mult.find(d);
    if (it == mult.end()) return 0;
    auto jt = it->second.find(k);
    return jt == it->second.end() ? 0 : jt->second;
}

void InvariantTable::set(const DimVec& d, int k, long long m) {
    if (m == 0) {
        auto it = mult.find(d);
        if (it != mult.end()) {
            it->second.erase(k);
            if (it->second.empty()) mult.erase(it);
        }
        return;
    }
    mult[d][k] = m;
}

QSeries InvariantTable::to_series(SeriesKind kind, int window) const {
    QSeries s(kind, nodes, maxdim, window);
    for (auto& [d, p] : prec) {
        Laurent l = Laurent::zero(p);
        auto it = mult.find(d);
        if (it != mult.end())
            for (auto& [k, m] : it->second) l.add_term(k, Q(static_cast<long>(k % 2 == 0 ? m : -m)));
        s.set(d, l);
    }
    return s;
}

std::string InvariantTable::to_json() const {
    json doc;
    json entries = json::array();
    std::vector<DimVec> keys;
    for (auto& kv : mult) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), graded_less);
    for (auto& d : keys)
        for (auto& [k, m] : mult.at(d)) entries.push_back({{"d", d}, {"k", k}, {"mult", m}});
    doc["entries"] = entries;
    json precs = json::array();
    std::vector<DimVec> pk;
    for (auto& kv : prec) pk.push_back(kv.first);
    std::sort(pk.begin(), pk.end(), graded_less);
    for (auto& d : pk)
        if (prec.at(d) < kExact) precs.push_back({{"d", d}, {"k", prec.at(d)}});
    doc["precision"] = precs;
    doc["maxdim"] = maxdim;
    return doc.dump();
}

std::string InvariantTable::to_table(SeriesKind kind) const {
    std::vector<DimVec> keys;
    for (auto& kv : mult)
        if (!is_zero(kv.first)) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), graded_less);
    if (keys.empty()) return "1\n";
    std::ostringstream os;
    for (auto& d : keys) {
        Laurent l;
        for (auto& [k, m] : mult.at(d)) l.add_term(k, Q(static_cast<long>(k % 2 == 0 ? m : -m)));
        std::string mono = var_name(kind) + "^" + (nodes == 1 ? std::to_string(d[0]) : dim_to_string(d));
        os << mono << " : " << laurent_to_string(l) << "\n";
    }
    return os.str();
}

InvariantTable invert_pochhammer_factorization(const QSeries& a) {
    QSeries lg = series_log(a);
    InvariantTable t;
    t.nodes = a.nodes();
    t.maxdim = a.maxdim();
    std::map<DimVec, Laurent> f;  // F_d = sum_k (-1)^k mult q^{k/2}
    const Laurent one_minus_q = Laurent::monomial(0) - Laurent::monomial(2);
    for (auto& d : vectors_up_to(a.nodes(), a.maxdim())) {
        if (is_zero(d)) continue;
        Laurent ld = lg.coeff(d);
        int bound = finite_bound(ld, ld.valuation() + a.window());
        Laurent r = ld;
        int g = 0;
        for (int x : d) g = std::gcd(g, x);
        for (int n = 2; n <= g; ++n) {
            bool divides = true;
            for (int x : d) divides = divides && x % n == 0;
            if (!divides) continue;
            DimVec dn = d;
            for (auto& x : dn) x /= n;
            Laurent corr = (f.at(dn).inflated(n) * geometric(2 * n, bound)).scaled(Q(1, n));
            r = r - corr;
        }
        Laurent fd = r * one_minus_q;
        fd.truncate(bound);
        f[d] = fd;
        t.prec[d] = fd.prec;
        for (auto& [k, c] : fd.c) {
            if (c.get_den() != 1)
                throw FactorizationError("non-integer exponent at " + dim_to_string(d) + ", k=" + std::to_string(k));
            long long m = c.get_num().get_si();
            if (k % 2 != 0) m = -m;
            t.set(d, k, m);
        }
    }
    return t;
}

namespace {

Laurent table_laurent(const InvariantTable& t, const DimVec& d) {
    auto pt = t.prec.find(d);
    Laurent l = Laurent::zero(pt == t.prec.end() ? kExact : pt->second);
    auto it = t.mult.find(d);
    if (it != t.mult.end())
        for (auto& [k, m] : it->second) l.add_term(k, Q(static_cast<long>(k % 2 == 0 ? m : -m)));
    return l;
}

void add_log_terms(QSeries& lg, const InvariantTable& t, int shift_per_n, int base, int window) {
    for (auto& [d, p] : t.prec) {
        if (is_zero(d)) continue;
        Laurent fd = table_laurent(t, d);
        for (int n = 1; total(d) * n <= lg.maxdim(); ++n) {
            Laurent term = fd.inflated(n).shifted(shift_per_n * n);
            int bound = finite_bound(term, term.valuation() + window);
            if (term.valuation() >= kExact && term.prec >= kExact) continue;
            term = (term * geometric(2 * base * n, std::max(bound, 0))).scaled(Q(1, n));
            lg.add(scale(d, n), term);
        }
    }
}

}  // namespace

QSeries pochhammer_product(const InvariantTable& t, int maxdim, int window) {
    QSeries lg(SeriesKind::Torus, t.nodes, maxdim, window);
    add_log_terms(lg, t, 0, 1, window);
    return series_exp(lg);
}

QSeries pochhammer_q2_product(const SignedTable& t, int maxdim, int window) {
    int nodes = std::max(t.plus.nodes, t.minus.nodes);
    QSeries lg(SeriesKind::Module, nodes, maxdim, window);
    add_log_terms(lg, t.plus, 0, 2, window);
    add_log_terms(lg, t.minus, 2, 2, window);
    return series_exp(lg);
}

SeriesComparison compare_series(const QSeries& a, const QSeries& b, const std::function<int(const DimVec&)>& kmin,
                                int min_window) {
    SeriesComparison r;
    int md = std::min(a.maxdim(), b.maxdim());
    std::vector<DimVec> keys;
    for (auto& kv : a.terms())
        if (total(kv.first) <= md) keys.push_back(kv.first);
    for (auto& kv : b.terms())
        if (total(kv.first) <= md && !a.terms().count(kv.first)) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), graded_less);
    for (auto& d : keys) {
        Laurent la = a.coeff(d), lb = b.coeff(d);
        int p = std::min(la.prec, lb.prec);
        if (kmin && p < kExact && p - kmin(d) < min_window) {
            r.enough_precision = false;
            r.detail += "insufficient window at " + dim_to_string(d) + "; ";
        }
        la.truncate(p);
        lb.truncate(p);
        if (la.c != lb.c) {
            r.equal = false;
            r.detail += "mismatch at " + dim_to_string(d) + ": " + laurent_to_string(la) + " vs " +
                        laurent_to_string(lb) + "; ";
        }
    }
    return r;
}

}  // namespace hallforge
