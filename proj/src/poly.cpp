#include "hallforge/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace hallforge {

LinForm LinForm::sum(int a, int ca, int b, int cb) {
    LinForm l;
    if (a == b) {
        if (ca + cb != 0) l.t.push_back({a, ca + cb});
        return l;
    }
    if (a > b) {
        std::swap(a, b);
        std::swap(ca, cb);
    }
    if (ca != 0) l.t.push_back({a, ca});
    if (cb != 0) l.t.push_back({b, cb});
    return l;
}

int LinForm::normalize() {
    if (t.empty()) return 1;
    if (t.front().second > 0) return 1;
    for (auto& p : t) p.second = -p.second;
    return -1;
}

void Poly::check_nvars(int n) {
    if (n < 0 || n > kMaxVars)
        throw std::invalid_argument("polynomial variable count out of range: " + std::to_string(n));
}

Poly Poly::constant(int nvars, const Q& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Mono{}, c});
    return p;
}

Poly Poly::monomial(int nvars, const Mono& m, const Q& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::variable(int nvars, int v, const Q& c) {
    Mono m;
    m.e[v] = 1;
    return monomial(nvars, m, c);
}

Poly Poly::from_linear(int nvars, const LinForm& l) {
    std::vector<std::pair<Mono, Q>> t;
    for (auto [v, c] : l.t) {
        Mono m;
        m.e[v] = 1;
        t.push_back({m, Q(c)});
    }
    return from_terms(nvars, std::move(t));
}

Poly Poly::from_terms(int nvars, std::vector<std::pair<Mono, Q>> terms) {
    Poly p(nvars);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
}

void Poly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::pair<Mono, Q>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            if (!out.empty() && out.back().second == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().second == 0) out.pop_back();
    terms_ = std::move(out);
}

int Poly::degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.first.degree(nvars_));
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.front().first.degree(nvars_);
    for (auto& t : terms_)
        if (t.first.degree(nvars_) != d) return false;
    return true;
}

bool Poly::has_negative_exponent() const {
    for (auto& t : terms_)
        for (int i = 0; i < nvars_; ++i)
            if (t.first.e[i] < 0) return true;
    return false;
}

Q Poly::coeff(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& a, const Mono& b) { return a.first > b; });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.nvars_ > nvars_) nvars_ = o.nvars_;
    std::vector<std::pair<Mono, Q>> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Q c = terms_[i].second + o.terms_[j].second;
            if (c != 0) out.push_back({terms_[i].first, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator*(const Q& c) const {
    if (c == 0) return Poly(nvars_);
    Poly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    int nv = std::max(nvars_, o.nvars_);
    if (terms_.empty() || o.terms_.empty()) return Poly(nv);
    PolyAccumulator acc(nv);
    Q c;
    for (auto& a : terms_) {
        for (auto& b : o.terms_) {
            Mono m;
            for (int k = 0; k < nv; ++k) m.e[k] = static_cast<int16_t>(a.first.e[k] + b.first.e[k]);
            c = a.second * b.second;
            acc.add(m, c);
        }
    }
    return acc.take();
}

bool Poly::operator==(const Poly& o) const { return terms_ == o.terms_; }

Poly Poly::mul_monomial(const Mono& m, const Q& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
        Mono n = t.first;
        for (int k = 0; k < nvars_; ++k) n.e[k] = static_cast<int16_t>(n.e[k] + m.e[k]);
        r.terms_.push_back({n, t.second * c});
    }
    return r;
}

Poly Poly::mul_linear(const LinForm& l) const {
    Poly r(nvars_);
    for (auto [v, c] : l.t) {
        Mono m;
        m.e[v] = 1;
        r += mul_monomial(m, Q(c));
    }
    return r;
}

Poly Poly::div_linear(const LinForm& l) const {
    if (l.t.empty()) throw DivisionError("division by the zero linear form");
    const int v = l.t.front().first;
    const Q lc = l.t.front().second;
    std::map<Mono, Q, std::greater<Mono>> rem;
    for (auto& t : terms_) rem.emplace(t.first, t.second);
    std::vector<std::pair<Mono, Q>> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        Mono qm = it->first;
        if (qm.e[v] < 1) throw DivisionError("inexact division by a linear form");
        qm.e[v] -= 1;
        Q qc = it->second / lc;
        rem.erase(it);
        for (size_t k = 1; k < l.t.size(); ++k) {
            Mono m = qm;
            m.e[l.t[k].first] += 1;
            auto [jt, fresh] = rem.emplace(m, 0);
            jt->second -= qc * l.t[k].second;
            if (jt->second == 0) rem.erase(jt);
        }
        quot.push_back({qm, qc});
    }
    Poly r(nvars_);
    r.terms_ = std::move(quot);
    return r;
}

Poly Poly::div_exact(const Poly& d) const {
    if (d.is_zero()) throw DivisionError("division by zero polynomial");
    const Mono lm = d.terms_.front().first;
    const Q lc = d.terms_.front().second;
    std::map<Mono, Q, std::greater<Mono>> rem;
    for (auto& t : terms_) rem.emplace(t.first, t.second);
    std::vector<std::pair<Mono, Q>> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        Mono qm;
        for (int k = 0; k < kMaxVars; ++k) {
            int x = it->first.e[k] - lm.e[k];
            if (x < 0) throw DivisionError("inexact polynomial division");
            qm.e[k] = static_cast<int16_t>(x);
        }
        Q qc = it->second / lc;
        for (auto& t : d.terms_) {
            Mono m;
            for (int k = 0; k < kMaxVars; ++k) m.e[k] = static_cast<int16_t>(qm.e[k] + t.first.e[k]);
            auto [jt, fresh] = rem.emplace(m, 0);
            jt->second -= qc * t.second;
            if (jt->second == 0) rem.erase(jt);
        }
        quot.push_back({qm, qc});
    }
    Poly r(std::max(nvars_, d.nvars_));
    r.terms_ = std::move(quot);
    return r;
}

Poly Poly::pow(int k) const {
    Poly r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Poly Poly::substitute(const std::vector<VarImage>& map, int new_nvars) const {
    PolyAccumulator acc(new_nvars);
    for (auto& t : terms_) {
        Mono m;
        Q c = t.second;
        bool zero = false;
        for (int k = 0; k < nvars_; ++k) {
            int ex = t.first.e[k];
            if (ex == 0) continue;
            if (k >= static_cast<int>(map.size()) || (map[k].target < 0 && map[k].sign != 0))
                throw std::invalid_argument("substitution does not cover variable " + std::to_string(k));
            if (map[k].sign == 0) {
                zero = true;
                break;
            }
            if (map[k].sign < 0 && (ex & 1)) c = -c;
            m.e[map[k].target] = static_cast<int16_t>(m.e[map[k].target] + ex);
        }
        if (!zero) acc.add(m, c);
    }
    return acc.take();
}

Poly Poly::inflate(int k) const {
    Poly r = *this;
    for (auto& t : r.terms_)
        for (int i = 0; i < nvars_; ++i) t.first.e[i] = static_cast<int16_t>(t.first.e[i] * k);
    return r;
}

Poly Poly::shifted(int offset, int new_nvars) const {
    Poly r(new_nvars);
    for (auto& t : terms_) {
        Mono m;
        for (int i = 0; i < nvars_; ++i) m.e[i + offset] = t.first.e[i];
        r.terms_.push_back({m, t.second});
    }
    r.canonicalize();
    return r;
}

void PolyAccumulator::add(const Mono& m, const Q& c) {
    if (c != 0) buf_.push_back({m, c});
    if (buf_.size() > (1u << 16)) {
        Poly p = Poly::from_terms(nvars_, std::move(buf_));
        buf_ = p.terms();
    }
}

void PolyAccumulator::add(const Poly& p, const Q& scale) {
    for (auto& t : p.terms()) buf_.push_back({t.first, t.second * scale});
}

Poly PolyAccumulator::take() { return Poly::from_terms(nvars_, std::move(buf_)); }

std::string q_to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q q_from_string(const std::string& s) {
    Q q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

}  // namespace hallforge
