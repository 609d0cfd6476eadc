#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetlie {

using Scalar = mpq_class;

enum class VarKind : std::uint8_t { GroupX, GroupY, GroupZ, DensityX, Param, AuxT, Deform };

// A variable is identified by (kind, index). Parameters use the index as a
// slot in a process-wide name registry. Invertibility is a fixed property of
// the identity: the linear jet coordinates x1, y1, z1 and the opaque units t_k.
struct Variable {
    VarKind kind = VarKind::GroupX;
    int index = 0;

    static constexpr int kIndexOffset = 1 << 10;

    std::uint32_t key() const {
        return (static_cast<std::uint32_t>(kind) << 20) |
               static_cast<std::uint32_t>(index + kIndexOffset);
    }
    static Variable from_key(std::uint32_t k) {
        return {static_cast<VarKind>(k >> 20), static_cast<int>(k & 0xFFFFF) - kIndexOffset};
    }
    bool invertible() const;
    std::string name() const;

    friend bool operator==(const Variable& a, const Variable& b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

inline Variable xv(int i) { return {VarKind::GroupX, i}; }
inline Variable yv(int i) { return {VarKind::GroupY, i}; }
inline Variable zv(int i) { return {VarKind::GroupZ, i}; }
inline Variable sv(int i) { return {VarKind::DensityX, i}; }
inline Variable tv(int i = 0) { return {VarKind::AuxT, i}; }
inline Variable hv() { return {VarKind::Deform, 0}; }
// Registers the name on first use; the slot is stable for the process lifetime.
Variable param(std::string_view name);
std::string param_name(int slot);

struct SubstituteSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Monomial {
public:
    using Factor = std::pair<std::uint32_t, int>;

    Monomial() = default;
    explicit Monomial(Variable v, int e = 1);
    static Monomial from_factors(std::vector<Factor> f);

    const std::vector<Factor>& factors() const { return f_; }
    int degree() const { return deg_; }
    bool is_one() const { return f_.empty(); }
    int exponent(Variable v) const;
    int exponent(std::uint32_t key) const;

    Monomial operator*(const Monomial& o) const;
    // Fails if a non-invertible variable would get a negative exponent.
    std::optional<Monomial> inverse() const;
    Monomial without(std::uint32_t key) const;
    Monomial pow(int e) const;

    std::string render() const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    // Graded order: total degree ascending, then lex with the larger exponent
    // of the smaller variable key first.
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> f_;
    int deg_ = 0;
};

class Poly {
public:
    using Term = std::pair<Monomial, Scalar>;

    Poly() = default;
    Poly(long c);
    Poly(const Scalar& c);
    Poly(Variable v, int e = 1);
    Poly(const Monomial& m, const Scalar& c);
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    Scalar constant_term() const;
    Scalar coeff(const Monomial& m) const;
    std::size_t size() const { return t_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Scalar& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
    friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int e) const;
    Poly derivative(Variable v) const;
    Poly substitute(const std::map<std::uint32_t, Poly>& bindings) const;
    Poly substitute(Variable v, const Poly& value) const { return substitute({{v.key(), value}}); }
    // Coefficients of v^k for every k present.
    std::map<int, Poly> collect(Variable v) const;
    int max_exponent(Variable v) const;
    int min_exponent(Variable v) const;
    // Drops terms whose exponent of v exceeds maxExp.
    Poly truncate_var(Variable v, int maxExp) const;
    Poly truncate_degree(int maxDegree) const;
    template <class Pred>
    Poly filter(Pred keep) const {
        Poly r;
        for (const auto& t : t_)
            if (keep(t.first)) r.t_.push_back(t);
        return r;
    }
    // Largest index of a variable of the given kind, or nullopt.
    std::optional<int> max_index(VarKind kind) const;
    bool mentions(Variable v) const;

    std::string render() const;
    static Poly parse(std::string_view text);

private:
    std::vector<Term> t_;
    void normalize_sorted_terms(std::vector<Term>& v);
};

// n*d + sum n_s (i_s - 1) for h^n x_{i1}^{n1}...; parameters weigh 0.
std::optional<int> graded_degree(const Monomial& m, int d);

std::string render_scalar(const Scalar& c);
Scalar parse_scalar(std::string_view s);

}  // namespace jetlie
