#pragma once

#include "jetlie/jet.hpp"
#include "jetlie/parallel.hpp"
#include "jetlie/poly.hpp"
#include "jetlie/report.hpp"
#include "jetlie/series.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace jetlie {

struct DegreeTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisibilityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// phi(u,v) = sum lam_{mn} u^m v^n, antisymmetric, complete through total
// degree D (kInf when the stored table is the whole function).
struct PhiFunction {
    int min_index = 1;
    int D = kInf;
    std::string tag = "custom";
    std::map<std::pair<int, int>, Poly> lam;  // keys with m < n

    Poly at(int m, int n) const;
    void set(int m, int n, const Poly& v);
    bool exact() const { return D >= kInf; }
    Series series() const;
    int min_total_degree() const;
    bool divisible_by_uv() const;
    // Replaces coefficients with f(coefficient), e.g. a parameter substitution.
    PhiFunction map(const std::function<Poly(const Poly&)>& f) const;
    // One entry per line: "m n <polynomial>"; '#' starts a comment.
    static PhiFunction parse_table(std::string_view text, int D, int minIndex);
};

// uv(u^d - v^d)
PhiFunction phi_power_family(int d);
// Expansion of {(d-1)uv(v^d-u^d) + lambda d u^2v^2(u^{d-1}-v^{d-1})} / ((d-1)(1-lambda u)(1-lambda v)).
PhiFunction phi_extended_family(int d, int D, const Poly& lambda);
// u - v
PhiFunction phi_linear();
// e^{lambda u} - e^{lambda v}
PhiFunction phi_exponential(const Poly& lambda, int D);

struct PoissonStructure {
    int n = 0;
    int start = 1;
    int nil = 0;
    VarKind kind = VarKind::GroupX;
    std::string tag;
    std::map<std::pair<int, int>, Poly> omega;  // i < j

    Poly at(int i, int j) const;
    Variable coord(int i) const { return Variable{kind, i}; }
    // Drops every bracket whose indices exceed m.
    PoissonStructure block(int m) const;
};

// omega_{ij} = [u^i v^j](phi(u,v) x'(u) x'(v) - phi(x(u), x(v))).
// For start = 0 the monomials of index-0 degree above nil are dropped.
PoissonStructure build_omega(const PhiFunction& phi, int n, int start, int nil = -1);
// Components of the power family written out term by term.
PoissonStructure omega_power_closed_form(int d, int n);
// i(j+1)x_i x_{j+1} - (i+1)j x_{i+1} x_j - x_i delta_j0 + x_j delta_i0.
PoissonStructure omega_linear_closed_form(int n);

Report verify_jacobi(const PoissonStructure& w, Exec exec = Exec::Parallel);
// For start = 0 the structure must be built at a padded level N; pairs up to
// N - nil - 2 are compared modulo index-0 degree >= nil.
Report verify_multiplicativity(const PoissonStructure& w, Exec exec = Exec::Parallel);
Series phi_equation_residual(const PhiFunction& phi, int Dcheck);
Report verify_phi_equation(const PhiFunction& phi, int Dcheck);
Report verify_inversion_antipoisson(const PoissonStructure& w, Exec exec = Exec::Parallel);
// Component-wise comparison against a printed table.
Report compare_brackets(const std::string& check, const PoissonStructure& w,
                        const std::map<std::pair<int, int>, Poly>& expected);

}  // namespace jetlie
