#include "hallforge/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace hallforge {

Poly reduce(const RationalExpr& e) {
    Poly p = e.num;
    for (auto& l : e.den) {
        if (p.is_zero()) break;
        p = p.div_linear(l);
    }
    return p;
}

LinForm lin(SVar a, int ca, SVar b, int cb) { return LinForm::sum(a.var, ca * a.sign, b.var, cb * b.sign); }

LinForm lin(SVar a, int ca) {
    LinForm l;
    if (ca * a.sign != 0) l.t.push_back({a.var, ca * a.sign});
    return l;
}

namespace {

// Makes l primitive with positive leading coefficient; returns the factor
// that was divided out.
int canonical(LinForm& l) {
    int g = 0;
    for (auto& p : l.t) g = std::gcd(g, std::abs(p.second));
    if (g > 1)
        for (auto& p : l.t) p.second /= g;
    return g * l.normalize();
}

}  // namespace

KernelPlan::KernelPlan(int nvars, int nf, int ng, std::vector<KernelTerm> terms) : nvars_(nvars), nf_(nf), ng_(ng) {
    if (!terms.empty()) degree_shift_ = static_cast<int>(terms.front().num.size() - terms.front().den.size());
    struct Pending {
        KernelTerm* t;
        std::map<LinForm, int> num, den;
    };
    std::vector<Pending> pend;
    std::map<LinForm, int> lcm;
    for (auto& t : terms) {
        Pending p{&t, {}, {}};
        bool vanishes = false;
        for (auto l : t.num) {
            if (l.is_zero()) {
                vanishes = true;
                break;
            }
            t.scalar *= canonical(l);
            ++p.num[l];
        }
        if (vanishes) continue;
        for (auto l : t.den) {
            if (l.is_zero()) throw DivisionError("kernel denominator vanishes on a shuffle term");
            t.scalar /= canonical(l);
            ++p.den[l];
        }
        // cancel common factors
        for (auto it = p.den.begin(); it != p.den.end();) {
            auto jt = p.num.find(it->first);
            if (jt != p.num.end()) {
                int c = std::min(it->second, jt->second);
                it->second -= c;
                jt->second -= c;
                if (jt->second == 0) p.num.erase(jt);
            }
            if (it->second == 0)
                it = p.den.erase(it);
            else
                ++it;
        }
        for (auto& [l, c] : p.den) lcm[l] = std::max(lcm[l], c);
        pend.push_back(std::move(p));
    }
    for (auto& [l, c] : lcm)
        for (int k = 0; k < c; ++k) lcm_.push_back(l);
    for (auto& p : pend) {
        Poly m = Poly::constant(nvars_, p.t->scalar);
        for (auto& [l, c] : p.num)
            for (int k = 0; k < c; ++k) m = m.mul_linear(l);
        for (auto& [l, c] : lcm) {
            auto it = p.den.find(l);
            int missing = c - (it == p.den.end() ? 0 : it->second);
            for (int k = 0; k < missing; ++k) m = m.mul_linear(l);
        }
        terms_.push_back({std::move(p.t->map_f), std::move(p.t->map_g), std::move(m)});
    }
}

RationalExpr KernelPlan::assemble(const Poly& f, const Poly& g) const {
    if (f.nvars() != nf_ || g.nvars() != ng_) throw std::invalid_argument("kernel operand has the wrong variable count");
    PolyAccumulator acc(nvars_);
    for (auto& t : terms_) {
        Poly a = f.substitute(t.map_f, nvars_);
        if (a.is_zero()) continue;
        Poly b = g.substitute(t.map_g, nvars_);
        if (b.is_zero()) continue;
        acc.add(a * b * t.mult);
    }
    return {acc.take(), lcm_};
}

namespace {

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, std::shared_ptr<const KernelPlan>>& cache_map() {
    static std::map<std::string, std::shared_ptr<const KernelPlan>> c;
    return c;
}

}  // namespace

std::shared_ptr<const KernelPlan> cached_plan(const std::string& key, const std::function<KernelPlan()>& build) {
    {
        std::lock_guard<std::mutex> lk(cache_mutex());
        auto it = cache_map().find(key);
        if (it != cache_map().end()) return it->second;
    }
    auto plan = std::make_shared<const KernelPlan>(build());
    std::lock_guard<std::mutex> lk(cache_mutex());
    return cache_map().emplace(key, plan).first->second;
}

void clear_plan_cache() {
    std::lock_guard<std::mutex> lk(cache_mutex());
    cache_map().clear();
}

void for_each_shuffle_tuple(const std::vector<std::vector<int>>& sizes,
                            const std::function<void(const std::vector<Shuffle>&)>& fn) {
    std::vector<Shuffle> cur(sizes.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == sizes.size()) {
            fn(cur);
            return;
        }
        for_each_shuffle(sizes[i], [&](const Shuffle& s) {
            cur[i] = s;
            rec(i + 1);
        });
    };
    rec(0);
}

int worker_count() {
    const char* env = std::getenv("HALLFORGE_THREADS");
    if (env && *env) {
        int n = std::atoi(env);
        return n <= 0 ? 1 : n;
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(hw, 1, 8);
}

bool RowReducer::insert(std::vector<Q> v) {
    reduce(v);
    int c = 0;
    while (c < ncols_ && v[c] == 0) ++c;
    if (c == ncols_) return false;
    Q inv = 1 / v[c];
    for (int j = c; j < ncols_; ++j)
        if (v[j] != 0) v[j] *= inv;
    for (auto& r : rows_) {
        if (r[c] == 0) continue;
        Q f = r[c];
        for (int j = c; j < ncols_; ++j)
            if (v[j] != 0) r[j] -= f * v[j];
    }
    // keep rows ordered by pivot
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), c) - piv_.begin();
    piv_.insert(piv_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

void RowReducer::reduce(std::vector<Q>& v) const {
    if (static_cast<int>(v.size()) != ncols_) throw std::invalid_argument("row length mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        int c = piv_[r];
        if (v[c] == 0) continue;
        Q f = v[c];
        const auto& row = rows_[r];
        for (int j = c; j < ncols_; ++j)
            if (row[j] != 0) v[j] -= f * row[j];
    }
}

bool RowReducer::in_span(std::vector<Q> v) const {
    reduce(v);
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

std::vector<int> RowReducer::pivots() const { return piv_; }

std::vector<int> RowReducer::free_columns() const {
    std::vector<int> out;
    size_t k = 0;
    for (int c = 0; c < ncols_; ++c) {
        if (k < piv_.size() && piv_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

SliceCoords::SliceCoords(const BlockSpec& blocks, int degree) : blocks_(blocks), nvars_(block_nvars(blocks)) {
    monos_ = dominant_monomials(blocks, degree);
    for (int i = 0; i < static_cast<int>(monos_.size()); ++i) index_.emplace(monos_[i], i);
}

std::vector<Q> SliceCoords::coords(const Poly& p) const {
    std::vector<Q> v(monos_.size());
    for (auto& [m, c] : p.terms()) {
        auto it = index_.find(m);
        if (it != index_.end()) v[it->second] = c;
    }
    return v;
}

Poly SliceCoords::basis_poly(int i) const { return orbit_poly(blocks_, monos_[i]); }

Poly orbit_poly(const BlockSpec& blocks, const Mono& m) {
    const int nv = block_nvars(blocks);
    Poly p = Poly::constant(nv, 1);
    for (auto& b : blocks) {
        Partition lam;
        for (int i = 0; i < b.count; ++i) lam.push_back(b.bcd ? m.e[b.offset + i] / 2 : m.e[b.offset + i]);
        std::sort(lam.rbegin(), lam.rend());
        lam = trim(lam);
        if (lam.empty()) continue;
        Poly f = monomial_sym(lam, var_range(b.offset, b.count), nv);
        if (b.bcd) f = f.inflate(2);
        p = p * f;
    }
    return p;
}

}  // namespace hallforge
