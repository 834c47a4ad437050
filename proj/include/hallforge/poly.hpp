#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hallforge {

using Q = mpq_class;

constexpr int kMaxVars = 24;

struct Mono {
    std::array<int16_t, kMaxVars> e{};

    int degree(int nvars) const {
        int s = 0;
        for (int i = 0; i < nvars; ++i) s += e[i];
        return s;
    }
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator!=(const Mono& o) const { return e != o.e; }
    // lex with variable 0 most significant
    bool operator<(const Mono& o) const { return e < o.e; }
    bool operator>(const Mono& o) const { return o.e < e; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= static_cast<uint16_t>(m.e[i]);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

class DivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear form sum c_v * x_v with small integer coefficients.
struct LinForm {
    std::vector<std::pair<int, int>> t;  // (var, coeff), sorted by var, no zero coeffs

    static LinForm var(int v, int c = 1) { return LinForm{{{v, c}}}; }
    static LinForm sum(int a, int ca, int b, int cb);
    bool is_zero() const { return t.empty(); }
    // Makes the first coefficient positive; returns the sign that was divided out.
    int normalize();
    bool operator<(const LinForm& o) const { return t < o.t; }
    bool operator==(const LinForm& o) const { return t == o.t; }
};

// Sparse polynomial over Q in nvars variables. Terms sorted with the
// lex-largest monomial first; no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) { check_nvars(nvars); }
    static Poly constant(int nvars, const Q& c);
    static Poly monomial(int nvars, const Mono& m, const Q& c = 1);
    static Poly variable(int nvars, int v, const Q& c = 1);
    static Poly from_linear(int nvars, const LinForm& l);

    int nvars() const { return nvars_; }
    const std::vector<std::pair<Mono, Q>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    // -1 for the zero polynomial
    int degree() const;
    bool is_homogeneous() const;
    bool has_negative_exponent() const;
    Q coeff(const Mono& m) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Q& c) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly mul_linear(const LinForm& l) const;
    Poly mul_monomial(const Mono& m, const Q& c) const;
    // Exact division; throws DivisionError when l does not divide *this.
    Poly div_linear(const LinForm& l) const;
    Poly div_exact(const Poly& d) const;
    Poly pow(int k) const;

    // Each variable v maps to sign * target(v); sign 0 sends it to zero.
    struct VarImage {
        int target = -1;
        int sign = 1;
    };
    Poly substitute(const std::vector<VarImage>& map, int new_nvars) const;
    // Multiplies every exponent by k (f(x) -> f(x^k)).
    Poly inflate(int k) const;
    // Embeds into a bigger variable space with an index shift.
    Poly shifted(int offset, int new_nvars) const;

    static Poly from_terms(int nvars, std::vector<std::pair<Mono, Q>> terms);

private:
    static void check_nvars(int n);
    void canonicalize();
    int nvars_ = 0;
    std::vector<std::pair<Mono, Q>> terms_;
};

// Accumulates terms in a hash map; used by the kernels.
class PolyAccumulator {
public:
    explicit PolyAccumulator(int nvars) : nvars_(nvars) {}
    void add(const Mono& m, const Q& c);
    void add(const Poly& p, const Q& scale = 1);
    Poly take();

private:
    int nvars_;
    std::vector<std::pair<Mono, Q>> buf_;
};

std::string q_to_string(const Q& q);
Q q_from_string(const std::string& s);

}  // namespace hallforge
