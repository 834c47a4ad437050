#include "hallforge/symfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hallforge {

int block_nvars(const BlockSpec& b) {
    int n = 0;
    for (auto& x : b) n = std::max(n, x.offset + x.count);
    return n;
}

std::vector<int> var_range(int offset, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) v[i] = offset + i;
    return v;
}

std::vector<Partition> partitions(int n, int maxparts) {
    std::vector<Partition> out;
    if (n < 0) return out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (maxparts <= 0) return out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == maxparts) return;
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

long long partition_count(int n, int maxparts) {
    if (n < 0) return 0;
    // p(n, <= k parts) = p(n, parts <= k)
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int j = 1; j <= maxparts; ++j)
        for (int m = j; m <= n; ++m) c[m] += c[m - j];
    return c[n];
}

Partition trim(Partition p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly complete_h(int k, const std::vector<int>& vars, int nvars) {
    if (k < 0) return Poly(nvars);
    if (k == 0) return Poly::constant(nvars, 1);
    std::vector<std::pair<Mono, Q>> terms;
    Mono m;
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i + 1 == vars.size()) {
            m.e[vars[i]] = static_cast<int16_t>(left);
            terms.push_back({m, Q(1)});
            m.e[vars[i]] = 0;
            return;
        }
        for (int a = left; a >= 0; --a) {
            m.e[vars[i]] = static_cast<int16_t>(a);
            rec(i + 1, left - a);
        }
        m.e[vars[i]] = 0;
    };
    if (vars.empty()) return Poly(nvars);
    rec(0, k);
    return Poly::from_terms(nvars, std::move(terms));
}

Poly elementary_e(int k, const std::vector<int>& vars, int nvars) {
    if (k < 0 || k > static_cast<int>(vars.size())) return Poly(nvars);
    std::vector<std::pair<Mono, Q>> terms;
    for_each_shuffle({k, static_cast<int>(vars.size()) - k}, [&](const Shuffle& s) {
        Mono m;
        for (int p : s[0]) m.e[vars[p]] = 1;
        terms.push_back({m, Q(1)});
    });
    return Poly::from_terms(nvars, std::move(terms));
}

Poly schur(const Partition& lambda_in, const std::vector<int>& vars, int nvars) {
    Partition lambda = trim(lambda_in);
    for (size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) throw std::invalid_argument("partition must be weakly decreasing");
    const int l = static_cast<int>(lambda.size());
    if (l > static_cast<int>(vars.size())) throw std::invalid_argument("partition longer than the variable count");
    if (l == 0) return Poly::constant(nvars, 1);
    std::map<int, Poly> h;
    auto hk = [&](int k) -> const Poly& {
        auto it = h.find(k);
        if (it == h.end()) it = h.emplace(k, complete_h(k, vars, nvars)).first;
        return it->second;
    };
    // det of rows r..l-1 against the column set cols, Laplace along row r
    std::unordered_map<unsigned, Poly> memo;
    std::function<Poly(int, unsigned)> det = [&](int r, unsigned cols) -> Poly {
        if (r == l) return Poly::constant(nvars, 1);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        Poly acc(nvars);
        int sign = 1;
        for (int j = 0; j < l; ++j) {
            if (!(cols & (1u << j))) continue;
            int k = lambda[r] - r + j;
            if (k >= 0) {
                Poly minor = det(r + 1, cols & ~(1u << j));
                if (!minor.is_zero()) {
                    Poly t = hk(k) * minor;
                    if (sign > 0)
                        acc += t;
                    else
                        acc -= t;
                }
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return det(0, (1u << l) - 1);
}

Poly monomial_sym(const Partition& lambda_in, const std::vector<int>& vars, int nvars) {
    Partition lambda = trim(lambda_in);
    if (lambda.size() > vars.size()) throw std::invalid_argument("partition longer than the variable count");
    std::vector<int> ex(vars.size(), 0);
    for (size_t i = 0; i < lambda.size(); ++i) ex[i] = lambda[i];
    std::sort(ex.begin(), ex.end());
    std::vector<std::pair<Mono, Q>> terms;
    do {
        Mono m;
        for (size_t i = 0; i < vars.size(); ++i) m.e[vars[i]] = static_cast<int16_t>(ex[i]);
        terms.push_back({m, Q(1)});
    } while (std::next_permutation(ex.begin(), ex.end()));
    return Poly::from_terms(nvars, std::move(terms));
}

namespace {

// Distributes the degree over blocks; calls fn with per-block partitions.
void for_each_block_choice(const BlockSpec& blocks, int degree,
                           const std::function<void(const std::vector<Partition>&)>& fn) {
    std::vector<Partition> choice(blocks.size());
    std::function<void(size_t, int)> rec = [&](size_t b, int left) {
        if (b == blocks.size()) {
            if (left == 0) fn(choice);
            return;
        }
        const Block& bl = blocks[b];
        int step = bl.bcd ? 2 : 1;
        for (int take = 0; take <= left; take += step) {
            int size = bl.bcd ? take / 2 : take;
            if (bl.count == 0 && size > 0) break;
            for (auto& p : partitions(size, bl.count)) {
                choice[b] = p;
                rec(b + 1, left - take);
            }
        }
    };
    rec(0, degree);
}

std::vector<Poly> block_products(const BlockSpec& blocks, int degree, bool use_schur) {
    const int nv = block_nvars(blocks);
    std::vector<Poly> out;
    for_each_block_choice(blocks, degree, [&](const std::vector<Partition>& ch) {
        Poly p = Poly::constant(nv, 1);
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (ch[b].empty()) continue;
            auto vars = var_range(blocks[b].offset, blocks[b].count);
            Poly f = use_schur ? schur(ch[b], vars, nv) : monomial_sym(ch[b], vars, nv);
            if (blocks[b].bcd) f = f.inflate(2);
            p = p * f;
        }
        out.push_back(std::move(p));
    });
    return out;
}

}  // namespace

std::vector<Poly> weight_basis(const BlockSpec& blocks, int degree) { return block_products(blocks, degree, true); }

std::vector<Poly> monomial_basis(const BlockSpec& blocks, int degree) { return block_products(blocks, degree, false); }

long long slice_dimension(const BlockSpec& blocks, int degree) {
    long long n = 0;
    for_each_block_choice(blocks, degree, [&](const std::vector<Partition>&) { ++n; });
    return n;
}

std::vector<Mono> dominant_monomials(const BlockSpec& blocks, int degree) {
    std::vector<Mono> out;
    for_each_block_choice(blocks, degree, [&](const std::vector<Partition>& ch) {
        Mono m;
        for (size_t b = 0; b < blocks.size(); ++b)
            for (size_t i = 0; i < ch[b].size(); ++i)
                m.e[blocks[b].offset + i] = static_cast<int16_t>(blocks[b].bcd ? 2 * ch[b][i] : ch[b][i]);
        out.push_back(m);
    });
    return out;
}

bool is_dominant(const BlockSpec& blocks, const Mono& m) {
    for (auto& b : blocks) {
        for (int i = 0; i < b.count; ++i) {
            int x = m.e[b.offset + i];
            if (x < 0) return false;
            if (b.bcd && (x & 1)) return false;
            if (i > 0 && x > m.e[b.offset + i - 1]) return false;
        }
    }
    return true;
}

bool is_invariant(const BlockSpec& blocks, const Poly& p) {
    const int nv = p.nvars();
    for (auto& b : blocks) {
        // adjacent transpositions generate the symmetric group
        for (int i = 0; i + 1 < b.count; ++i) {
            std::vector<Poly::VarImage> map(nv);
            for (int v = 0; v < nv; ++v) map[v] = {v, 1};
            map[b.offset + i] = {b.offset + i + 1, 1};
            map[b.offset + i + 1] = {b.offset + i, 1};
            if (p.substitute(map, nv) != p) return false;
        }
        if (b.bcd && b.count > 0) {
            std::vector<Poly::VarImage> map(nv);
            for (int v = 0; v < nv; ++v) map[v] = {v, 1};
            map[b.offset] = {b.offset, -1};
            if (p.substitute(map, nv) != p) return false;
        }
    }
    return true;
}

void for_each_shuffle(const std::vector<int>& sizes, const std::function<void(const Shuffle&)>& fn) {
    int n = 0;
    for (int s : sizes) n += s;
    Shuffle sh(sizes.size());
    std::vector<char> used(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t part, int start) {
        if (part == sizes.size()) {
            fn(sh);
            return;
        }
        if (static_cast<int>(sh[part].size()) == sizes[part]) {
            rec(part + 1, 0);
            return;
        }
        // the last part takes whatever is left
        if (part + 1 == sizes.size()) {
            for (int p = 0; p < n; ++p)
                if (!used[p]) sh[part].push_back(p);
            fn(sh);
            sh[part].clear();
            return;
        }
        for (int p = start; p < n; ++p) {
            if (used[p]) continue;
            used[p] = 1;
            sh[part].push_back(p);
            rec(part, p + 1);
            sh[part].pop_back();
            used[p] = 0;
        }
    };
    rec(0, 0);
}

std::vector<Shuffle> shuffles(const std::vector<int>& sizes) {
    std::vector<Shuffle> out;
    for_each_shuffle(sizes, [&](const Shuffle& s) { out.push_back(s); });
    return out;
}

long long multinomial(const std::vector<int>& sizes) {
    long long r = 1;
    int n = 0;
    for (int s : sizes) {
        for (int k = 1; k <= s; ++k) {
            ++n;
            r = r * n / k;
        }
    }
    return r;
}

}  // namespace hallforge
