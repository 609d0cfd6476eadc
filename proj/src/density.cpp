#include "jetlie/density.hpp"

#include <stdexcept>

namespace jetlie {

namespace {

const SVar U = SVar::u, V = SVar::v;
const std::array<SVar, 3> kSwapUV{SVar::v, SVar::u, SVar::w};

Poly unit_inverse(const Poly& p) {
    try {
        return p.pow(-1);
    } catch (const std::domain_error&) {
        throw NotInvertible("leading coefficient " + p.render() + " is not an invertible monomial");
    }
}

// (1 + w)^e with J = y_1 (1 + w), known through u^{n-1}.
Series unit_jacobian_power(const JetElement& y, const Poly& e) {
    if (y.start != 1) throw NotInvertible("densities are acted on by jets fixing the origin");
    if (y.n < 2) return Series::constant(Poly(1)).declare_var(U).truncated(U, y.n - 1);
    Poly inv = unit_inverse(y.coords.at(1));
    std::vector<Poly> c(y.n);
    c[0] = Poly(1);
    for (int i = 2; i <= y.n; ++i) c[i - 1] = y.coords[i] * inv * Scalar(i);
    Series p = Series::univariate(U, c, y.n - 1).binomial_power(e, y.n - 1);
    // binomial_power bounds the total degree; restate it as a bound on u so the
    // series can be renamed and multiplied into bivariate products
    std::vector<Poly> out;
    for (int i = 0; i < y.n; ++i) out.push_back(p.coeff(i));
    return Series::univariate(U, out, y.n - 1);
}

Series bivariate(const PoissonStructure& w, int lo, int hi) {
    Series s = Series().declare_var(U).declare_var(V).truncated(U, hi).truncated(V, hi);
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; j <= hi; ++j)
            if (i != j) s.set({i, j, 0}, w.at(i, j));
    return s;
}

}  // namespace

Series DensityElement::as_series() const { return Series::univariate(U, coords, n); }

DensityElement symbolic_density(int n, const Poly& lambda) {
    DensityElement x;
    x.n = n;
    x.lambda = lambda;
    for (int i = 0; i <= n; ++i) x.coords.emplace_back(sv(i));
    return x;
}

DensityElement density_act(const JetElement& y, const DensityElement& x, Variable t) {
    Series J = unit_jacobian_power(y, x.lambda) * Poly(t);
    Series z = (x.as_series().compose(y.as_series()) * J);
    DensityElement r;
    r.n = std::min(x.n, y.n - 1);
    r.lambda = x.lambda;
    for (int i = 0; i <= r.n; ++i) r.coords.push_back(z.coeff(i));
    return r;
}

PoissonStructure build_omega_density(const PhiFunction& phi, const Poly& lambda, int n) {
    if (!phi.divisible_by_uv()) throw DivisibilityViolation("density structures need phi divisible by uv");
    std::vector<Poly> xc;
    for (int i = 0; i <= n; ++i) xc.emplace_back(sv(i));
    Series xu = Series::univariate(U, xc), xv_ = xu.rename(kSwapUV);
    Series dxu = xu.derivative(U), dxv = dxu.rename(kSwapUV);
    Series P = phi.series().declare_var(U).declare_var(V);
    Series Pu = P.derivative(U), Pv = P.derivative(V), Puv = Pu.derivative(V);
    Series om = P * dxu * dxv + Pu * xu * dxv * lambda + Pv * dxu * xv_ * lambda + Puv * xu * xv_ * (lambda * lambda);
    PoissonStructure w;
    w.n = n;
    w.start = 0;
    w.kind = VarKind::DensityX;
    w.tag = "density(" + phi.tag + ", lambda=" + lambda.render() + ")";
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Poly c;
            try {
                c = om.coeff(i, j);
            } catch (const UnknownCoefficient&) {
                throw DegreeTooLow("phi is not known far enough for omega_" + std::to_string(i) + std::to_string(j));
            }
            if (!c.is_zero()) w.omega[{i, j}] = c;
        }
    return w;
}

Report verify_density_action(const PhiFunction& phi, const Poly& lambda, int n) {
    return verify_density_action(phi, lambda, build_omega_density(phi, lambda, n));
}

Report verify_density_action(const PhiFunction& phi, const Poly& lambda, const PoissonStructure& dens) {
    const int n = dens.n;
    Report rep;
    rep.check = "density_action";
    rep.param("phi", phi.tag).param("lambda", lambda.render()).param("n", n);

    const Variable t = tv();
    DensityElement x = symbolic_density(n + 1, lambda);
    JetElement y = symbolic_jet(VarKind::GroupY, n + 2, 1);
    // left side: the density structure evaluated at z_lambda
    DensityElement zl = density_act(y, x, t);
    std::map<std::uint32_t, Poly> toZ;
    for (int k = 0; k <= n; ++k) toZ[sv(k).key()] = zl.coords[k];
    PoissonStructure atZ = dens;
    for (auto& [ij, p] : atZ.omega) p = p.substitute(toZ);
    Series lhs = bivariate(atZ, 0, n);

    // Omega(y(u), y(v); x) J(u)^lambda J(v)^lambda
    Series Ju = unit_jacobian_power(y, lambda) * Poly(t);
    Series Jv = Ju.rename(kSwapUV);
    Series Y = y.as_series().truncated(U, n);
    std::vector<Series> Yu{Series::constant(Poly(1))};
    for (int i = 1; i <= n; ++i) Yu.push_back((Yu.back() * Y).truncated(U, n));
    Series first = Series().declare_var(U).declare_var(V).truncated(U, n).truncated(V, n);
    for (const auto& [ij, p] : dens.omega) {
        auto [i, j] = ij;
        first += (Yu[i] * Yu[j].rename(kSwapUV) - Yu[j] * Yu[i].rename(kSwapUV)) * p;
    }
    first = first * Ju * Jv;

    // the group part, with the group structure in the y coordinates
    PoissonStructure g = build_omega(phi, n + 1, 1);
    std::map<std::uint32_t, Poly> toY;
    for (int k = 1; k <= n + 3; ++k) toY[xv(k).key()] = Poly(yv(k));
    for (auto& [ij, p] : g.omega) p = p.substitute(toY);
    Series Ob = bivariate(g, 1, n + 1);
    Series Obu = Ob.derivative(U), Obv = Ob.derivative(V), Obuv = Obu.derivative(V);
    Poly inv = unit_inverse(y.coords[1]);
    Series Ju1 = unit_jacobian_power(y, lambda - Poly(1)) * (Poly(t) * inv);
    Series zu = x.as_series().compose(y.as_series());
    Series dzu = zu.derivative(U);
    Series A = zu * Ju1, dA = dzu * Ju1;  // z(u) J^{lambda-1}, z'(u) J^{lambda-1}
    Series B = A.rename(kSwapUV), dB = dA.rename(kSwapUV);
    Series rhs = first + Ob * dA * dB + Obu * A * dB * lambda + Obv * dA * B * lambda + Obuv * A * B * (lambda * lambda);

    // every term on both sides carries t^2, one factor per density slot
    bool balanced = true;
    for (const Series* s : {&lhs, &rhs})
        for (const auto& [e, p] : s->coeffs())
            if (e[0] <= n && e[1] <= n)
                for (const auto& [k, c] : p.collect(t)) balanced = balanced && k == 2;
    rep.param("t_balanced", balanced ? "yes" : "no");

    long compared = 0;
    for (int i = 0; i <= n && rep.pass; ++i)
        for (int j = 0; j <= n; ++j) {
            Poly d = lhs.coeff(i, j) - rhs.coeff(i, j);
            ++compared;
            if (!d.is_zero()) {
                rep.fail({i, j}, d.render());
                break;
            }
        }
    rep.param("coefficients", compared);
    return rep;
}

Report verify_density_jacobi(const PhiFunction& phi, const Poly& lambda, int n, Exec exec) {
    Report r = verify_jacobi(build_omega_density(phi, lambda, n), exec);
    r.check = "density_jacobi";
    r.params.insert(r.params.begin(), {"lambda", lambda.render()});
    return r;
}

}  // namespace jetlie
