#pragma once

#include "jetlie/poly.hpp"

#include <array>
#include <climits>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetlie {

enum class SVar : int { u = 0, v = 1, w = 2 };

struct VarMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonNilpotentConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonzeroConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonUnitConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kInf = INT_MAX / 4;

// Truncated power series in up to three formal variables u, v, w. A
// coefficient is known iff every exponent is within its per-variable bound
// and the exponent sum is within the total bound. kInf means exact.
class Series {
public:
    using Exp = std::array<int, 3>;

    Series() = default;
    static Series constant(const Poly& c);
    static Series variable(SVar s);
    // sum_i coeffs[i] s^i with the given bound on s.
    static Series univariate(SVar s, const std::vector<Poly>& coeffs, int bound = kInf);

    unsigned vars() const { return vars_; }
    bool has_var(SVar s) const { return vars_ & (1u << static_cast<int>(s)); }
    int bound(SVar s) const { return bound_[static_cast<int>(s)]; }
    int total_bound() const { return total_; }
    const std::map<Exp, Poly>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    bool known(const Exp& e) const;
    // Throws UnknownCoefficient if e is beyond the truncation.
    Poly coeff(const Exp& e) const;
    Poly coeff(int i, int j = 0, int k = 0) const { return coeff(Exp{i, j, k}); }
    void set(const Exp& e, const Poly& p);
    void add_to(const Exp& e, const Poly& p);

    // Minimal exponent of s among stored terms (bound+1 if empty).
    int valuation(SVar s) const;
    int total_valuation() const;

    Series truncated(SVar s, int b) const;
    Series truncated_total(int b) const;
    Series declare_var(SVar s) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Poly& c);
    friend Series operator*(const Poly& c, const Series& a) { return a * c; }
    friend bool operator==(const Series& a, const Series& b);

    Series derivative(SVar s) const;
    // perm[i] is the new name of variable i.
    Series rename(const std::array<SVar, 3>& perm) const;
    // outer must be univariate in u; computes outer(inner).
    Series compose(const Series& inner) const;
    Series comp_inverse(int N) const;
    Series exp(int N) const;
    // (this)^lambda for a unit constant term, lambda a polynomial exponent.
    Series binomial_power(const Poly& lambda, int N) const;
    Series map_coeffs(const std::function<Poly(const Poly&)>& f) const;

    std::string render() const;

private:
    unsigned vars_ = 0;
    Exp bound_{kInf, kInf, kInf};
    int total_ = kInf;
    std::map<Exp, Poly> c_;

    void prune();
    // A univariate series keeps its truncation as a bound on that variable,
    // so it stays usable after a rename or inside a multivariate product.
    Series& fold_total();
};

Poly binomial_coefficient(const Poly& lambda, int k);

}  // namespace jetlie
