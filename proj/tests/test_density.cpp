#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "jetlie/bialgebra.hpp"
#include "jetlie/density.hpp"

using namespace jetlie;

namespace {

const Poly kLam{param("lambda")};

Poly sx(int i) { return i < 0 ? Poly() : Poly(sv(i)); }

// omega_ij = sum_{m,n} lambda_mn (i-m+1 + lambda m)(j-n+1 + lambda n) x_{i-m+1} x_{j-n+1},
// read off the four-term expression one coefficient at a time.
Poly omega_oracle(const PhiFunction& phi, const Poly& lam, int i, int j) {
    Poly r;
    for (int m = 0; m <= i + 1; ++m)
        for (int n = 0; n <= j + 1; ++n) {
            if (m == n) continue;
            Poly c = phi.at(m, n);
            if (c.is_zero()) continue;
            r += c * (Poly(i - m + 1) + lam * Scalar(m)) * (Poly(j - n + 1) + lam * Scalar(n)) * sx(i - m + 1) *
                 sx(j - n + 1);
        }
    return r;
}

DensityElement with_t(const DensityElement& x, const Poly& factor) {
    DensityElement r = x;
    for (auto& c : r.coords) c = c * factor;
    return r;
}

}  // namespace

TEST_CASE("action of the identity and lambda = 0") {
    DensityElement x = symbolic_density(4, kLam);
    DensityElement z = density_act(jet_identity(5, 1), x);
    CHECK(z.n == 4);
    CHECK(z.coords == with_t(x, Poly(tv())).coords);

    JetElement y = symbolic_jet(VarKind::GroupY, 4, 1);
    DensityElement x0 = symbolic_density(3, Poly());
    DensityElement z0 = density_act(y, x0);
    Series plain = x0.as_series().compose(y.as_series());
    for (int i = 0; i <= 3; ++i) CHECK(z0.coords[i] == plain.coeff(i) * Poly(tv()));

    // frozen: z_1 = t (x_1 y_1 + 2 lambda x_0 y_2 / y_1)
    Poly z1 = density_act(y, x).coords[1];
    CHECK(z1 == Poly(tv()) * (sx(1) * Poly(yv(1)) + kLam * sx(0) * Poly(yv(2)) * Poly(yv(1)).pow(-1) * Scalar(2)));

    JetElement bad = y;
    bad.coords[1] = Poly(yv(2));
    CHECK_THROWS_AS(density_act(bad, x), NotInvertible);
}

TEST_CASE("action is a right action") {
    // act(y2, act(y1, x)) = act(y1 o y2, x) with t = t1 t2
    const int n = 3;
    JetElement y1 = symbolic_jet(VarKind::GroupY, n + 2, 1), y2 = symbolic_jet(VarKind::GroupZ, n + 2, 1);
    DensityElement x = symbolic_density(n + 1, kLam);
    DensityElement lhs = density_act(y2, density_act(y1, x, tv(1)), tv(2));
    DensityElement rhs = density_act(jet_compose(y1, y2), x, tv(0));
    // the composite leading coefficient y1_1 y2_1 is a product of units
    REQUIRE(lhs.n == n + 1);
    for (int i = 0; i <= n + 1; ++i) {
        CAPTURE(i);
        CHECK(lhs.coords[i] == rhs.coords[i].substitute(tv(0), Poly(tv(1)) * Poly(tv(2))));
    }
}

TEST_CASE("density structures") {
    for (int d = 1; d <= 3; ++d)
        for (const Poly& lam : {kLam, Poly(Scalar(1, 2)), Poly()}) {
            PhiFunction phi = phi_power_family(d);
            PoissonStructure w = build_omega_density(phi, lam, 4);
            for (int i = 0; i <= 4; ++i)
                for (int j = i + 1; j <= 4; ++j) {
                    CAPTURE(d);
                    CAPTURE(i);
                    CAPTURE(j);
                    CHECK(w.at(i, j) == omega_oracle(phi, lam, i, j));
                    CHECK(w.at(i, j).max_exponent(param("lambda")) <= 2);
                }
        }
    // frozen d=1 entries
    PoissonStructure w1 = build_omega_density(phi_power_family(1), kLam, 3);
    CHECK(w1.at(0, 1) == sx(0) * sx(0) * kLam * kLam * Scalar(-2));
    CHECK(w1.at(1, 2) == sx(0) * sx(2) * (kLam * Scalar(4) + kLam * kLam * Scalar(2)) -
                             sx(1) * sx(1) * (Poly(1) + kLam * Scalar(3) + kLam * kLam * Scalar(2)));
    // a constant density is a Casimir point at lambda = 0
    PoissonStructure w0 = build_omega_density(phi_power_family(2), Poly(), 4);
    std::map<std::uint32_t, Poly> one{{sv(0).key(), Poly(1)}};
    for (int k = 1; k <= 4; ++k) one[sv(k).key()] = Poly();
    for (const auto& [ij, p] : w0.omega) CHECK(p.substitute(one).is_zero());

    CHECK_THROWS_AS(build_omega_density(phi_linear(), kLam, 3), DivisibilityViolation);
    CHECK_THROWS_AS(build_omega_density(phi_extended_family(2, 4, kLam), kLam, 4), DegreeTooLow);
}

TEST_CASE("the action is Poisson") {
    Report main = verify_density_action(phi_power_family(1), kLam, 3);
    CHECK(main.pass);
    CHECK(std::count(main.params.begin(), main.params.end(), std::pair<std::string, std::string>{"t_balanced", "yes"}) == 1);
    CHECK(verify_density_action(phi_power_family(2), Poly(Scalar(1, 2)), 3).pass);
    CHECK(verify_density_action(phi_power_family(2), Poly(), 3).pass);
    CHECK(verify_density_action(phi_extended_family(2, 14, Poly(Scalar(1, 3))), Poly(Scalar(2)), 3).pass);

    // the identity does not see the phi-equation: a phi failing it still passes
    PhiFunction bad;
    bad.set(1, 2, Poly(1));
    bad.set(1, 3, Poly(1));
    CHECK(verify_density_action(bad, kLam, 3).pass);
    CHECK_FALSE(verify_density_jacobi(bad, kLam, 3).pass);

    // a perturbed density structure breaks it at the perturbed coefficient
    PoissonStructure w = build_omega_density(phi_power_family(1), kLam, 3);
    w.omega[{1, 2}] += Poly(sv(0)) * Poly(sv(1));
    Report r = verify_density_action(phi_power_family(1), kLam, w);
    CHECK_FALSE(r.pass);
    CHECK(r.indices == std::vector<int>{1, 2});
}

TEST_CASE("density Jacobi") {
    CHECK(verify_density_jacobi(phi_power_family(1), kLam, 3).pass);
    CHECK(verify_density_jacobi(phi_power_family(2), Poly(Scalar(1, 2)), 3).pass);
    CHECK(verify_density_jacobi(phi_power_family(2), kLam, 4).pass);
    for (int d = 1; d <= 3; ++d) CHECK(verify_density_jacobi(phi_power_family(d), Poly(), 4).pass);
    CHECK(verify_density_jacobi(classify_branch_d_symbolic(2, 10), kLam, 3).pass);

    PoissonStructure w = build_omega_density(phi_power_family(1), kLam, 3);
    w.omega[{0, 2}] += Poly(sv(1));
    Report r = verify_jacobi(w);
    CHECK_FALSE(r.pass);
    CHECK(r.indices.size() == 3);
}
