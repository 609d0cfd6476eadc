#pragma once

#include "jetlie/parallel.hpp"
#include "jetlie/poisson.hpp"
#include "jetlie/poly.hpp"
#include "jetlie/report.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jetlie {

// [e_i, e_j] = C_k^{ij} e_k
Scalar witt_structure_constant(int i, int j, int k);

// r = r_ij e_i ^ e_j, finitely supported, indices >= min_index.
struct RMatrix {
    int min_index = 0;
    std::string tag = "custom";
    std::map<std::pair<int, int>, Scalar> r;  // i < j

    Scalar at(int i, int j) const;
    void set(int i, int j, const Scalar& v);
    int max_index() const;
};

// r_ij = lambda_{i+1,j+1} for i, j <= R. Coefficients must be rational.
RMatrix rmatrix_from_phi(const PhiFunction& phi, int R);

// alpha(e_n) = alpha^n_ij e_i ^ e_j, summed over all ordered pairs, so the
// coefficient of e_i ^ e_j with i < j is 2 alpha^n_ij. Entries are exact
// values of a function; `reach` bounds the support: alpha^n_ij = 0 once
// max(i, j) > n + reach (kInf when unbounded).
struct WedgeCochain {
    int min_index = 0;
    int reach = 0;
    std::string tag;
    std::function<Scalar(int, int, int)> f;

    Scalar at(int n, int i, int j) const;
    // "c*e_i^e_j + ..." over i < j <= N
    std::string render(int n, int N) const;
};

// Builds alpha from the written form alpha(e_n) = sum W(n,a,b) e_a ^ e_b over
// ordered pairs, i.e. alpha^n_ij = (W(n,i,j) - W(n,j,i)) / 2.
WedgeCochain cochain_from_written(int minIndex, int reach, std::string tag,
                                  std::function<Scalar(int, int, int)> written);

WedgeCochain coboundary(const RMatrix& r);

enum class Family { PowerFamily, ExtendedFamily, Witt, Sl2First, Sl2Second };
// lambda is used by ExtendedFamily only and must be rational.
WedgeCochain explicit_family(Family kind, int d = 1, const Scalar& lambda = 0);

// Cochains compared entrywise for n, i < j in [min, N]; reports the sign s
// with a = s b when one exists.
Report compare_cochains(const std::string& check, const WedgeCochain& a, const WedgeCochain& b, int N);

Report verify_cocycle(const WedgeCochain& alpha, int N, Exec exec = Exec::Parallel);
Report verify_cojacobi(const WedgeCochain& alpha, int N, Exec exec = Exec::Parallel);

// Left side of the CYBE in the k-summed form, at (n, j, l).
Scalar cybe_residual(const RMatrix& r, int n, int j, int l);
// <r,r> component from the structure constants.
Scalar rr_component(const RMatrix& r, int n, int j, int l);
Report verify_cybe(const RMatrix& r, int N, Exec exec = Exec::Parallel);
Report verify_rr_invariance(const RMatrix& r, int N, Exec exec = Exec::Parallel);

// beta^n_ij = d omega_ij / d x_n at the identity against the lambda formula
// and the generating series A_n.
Report beta_correspondence(const PoissonStructure& w, const PhiFunction& phi, int N);
Poly beta_entry(const PoissonStructure& w, int n, int i, int j);
Series beta_generating_series(const PhiFunction& phi, int n, int N);

std::vector<Scalar> witt_a_sequence(int N);  // index k holds a_k, k >= 2

// Normalized lambda_{1,d+1} = 1; `free` supplies lambda_{1n} for n in
// [d+2, 2d] and n >= 2d+2. The table is complete through total degree D.
PhiFunction classify_branch_d(int d, const std::map<int, Poly>& free, int D);
// Free lambda_{1n} as parameters l1n.
PhiFunction classify_branch_d_symbolic(int d, int D);
// Normalized lambda_01 = 1; `free` supplies lambda_{0n} for n >= 2.
PhiFunction classify_g0_branch(const std::map<int, Poly>& free, int D);
PhiFunction classify_g0_branch_symbolic(int D);

}  // namespace jetlie
