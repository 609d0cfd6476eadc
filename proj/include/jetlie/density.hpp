#pragma once

#include "jetlie/jet.hpp"
#include "jetlie/poisson.hpp"
#include "jetlie/report.hpp"

#include <vector>

namespace jetlie {

// x(u) (du)^lambda with coordinates x_0..x_n.
struct DensityElement {
    int n = 0;
    Poly lambda;
    std::vector<Poly> coords;

    Series as_series() const;
};

DensityElement symbolic_density(int n, const Poly& lambda);

// z(u) = x(y(u)) y'(u)^lambda, where y'(u)^lambda = t (1 + w)^lambda and t
// stands for y_1^lambda. t is kept opaque.
DensityElement density_act(const JetElement& y, const DensityElement& x, Variable t = tv());

// omega_ij = [u^i v^j](phi x'(u)x'(v) + lambda phi_u x(u)x'(v)
//                      + lambda phi_v x'(u)x(v) + lambda^2 phi_uv x(u)x(v))
// for 0 <= i < j <= n in the density coordinates. phi must be divisible by uv.
PoissonStructure build_omega_density(const PhiFunction& phi, const Poly& lambda, int n);

// The functional equation of the action at truncation n: both sides are
// compared coefficientwise for u^i v^j, i, j <= n.
Report verify_density_action(const PhiFunction& phi, const Poly& lambda, int n);
// Same check with a supplied density structure, e.g. a perturbed one. The
// identity holds for every phi divisible by uv; only the structure on the
// densities can break it.
Report verify_density_action(const PhiFunction& phi, const Poly& lambda, const PoissonStructure& dens);
Report verify_density_jacobi(const PhiFunction& phi, const Poly& lambda, int n, Exec exec = Exec::Parallel);

}  // namespace jetlie
