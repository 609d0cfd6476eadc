#include "jetlie/jet.hpp"

#include <algorithm>

namespace jetlie {

namespace {

int index0_degree(const Monomial& m) {
    int a = 0;
    for (auto [k, e] : m.factors()) {
        Variable v = Variable::from_key(k);
        bool group = v.kind == VarKind::GroupX || v.kind == VarKind::GroupY || v.kind == VarKind::GroupZ;
        if (group && v.index == 0) a += e;
    }
    return a;
}

using UPoly = std::vector<Poly>;

UPoly umul(const UPoly& a, const UPoly& b, int n, int start, int nil) {
    UPoly r(n + 1);
    for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    if (start == 0)
        for (int j = 0; j <= n; ++j) r[j] = g0_reduce(r[j], j, n, nil);
    return r;
}

}  // namespace

Poly g0_reduce(const Poly& p, int coeffIndex, int n, int nil) {
    return p.filter([&](const Monomial& m) {
        int a = index0_degree(m);
        return a + coeffIndex <= n && a <= nil;
    });
}

Series JetElement::as_series() const {
    return Series::univariate(SVar::u, coords, n);
}

JetElement jet_identity(int n, int start, int nil) {
    JetElement e;
    e.start = start;
    e.n = n;
    e.nil = nil < 0 ? n : nil;
    e.coords.assign(n + 1, Poly());
    if (n >= 1) e.coords[1] = Poly(1);
    return e;
}

JetElement symbolic_jet(VarKind kind, int n, int start, int nil) {
    JetElement x = jet_identity(n, start, nil);
    for (int i = 0; i <= n; ++i) x.coords[i] = i < start ? Poly() : Poly(Variable{kind, i});
    return x;
}

JetElement jet_compose(const JetElement& x, const JetElement& y) {
    if (x.n != y.n || x.start != y.start) throw ShapeMismatch("jets differ in truncation or start index");
    const int n = x.n;
    const int nil = std::min(x.nil, y.nil);
    JetElement z = jet_identity(n, x.start, nil);
    std::fill(z.coords.begin(), z.coords.end(), Poly());
    UPoly ys(y.coords.begin(), y.coords.end());
    UPoly pw(n + 1);
    pw[0] = Poly(1);
    for (int i = 0; i <= n; ++i) {
        if (i > 0) pw = umul(pw, ys, n, x.start, nil);
        if (i < x.start || x.coords[i].is_zero()) continue;
        for (int j = 0; j <= n; ++j)
            if (!pw[j].is_zero()) z.coords[j] += x.coords[i] * pw[j];
    }
    if (x.start == 0)
        for (int j = 0; j <= n; ++j) z.coords[j] = g0_reduce(z.coords[j], j, n, nil);
    return z;
}

JetElement jet_inverse(const JetElement& x) {
    if (x.start != 1) throw NotInvertible("inverse is defined for jets fixing the origin");
    Series inv = x.as_series().comp_inverse(x.n);
    JetElement r = jet_identity(x.n, 1);
    for (int i = 1; i <= x.n; ++i) r.coords[i] = inv.coeff(i);
    return r;
}

JetElement jet_project(const JetElement& x, int m) {
    if (m < 1 || m > x.n) throw ShapeMismatch("projection target out of range");
    JetElement r = x;
    r.n = m;
    r.nil = std::min(x.nil, m);
    r.coords.resize(m + 1);
    if (x.start == 0)
        for (int j = 0; j <= m; ++j) r.coords[j] = g0_reduce(r.coords[j], j, m, r.nil);
    return r;
}

Poly VectorField::apply(const Poly& f, VarKind kind) const {
    Poly r;
    for (const auto& [i, c] : comp) {
        Poly d = f.derivative(Variable{kind, i});
        if (!d.is_zero()) r += c * d;
    }
    return r;
}

VectorField VectorField::operator*(const Scalar& c) const {
    VectorField r;
    for (const auto& [i, p] : comp) {
        Poly q = p * c;
        if (!q.is_zero()) r.comp.emplace(i, std::move(q));
    }
    return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
    VectorField r = *this;
    for (const auto& [i, p] : o.comp) {
        r.comp[i] -= p;
        if (r.comp[i].is_zero()) r.comp.erase(i);
    }
    return r;
}

std::string VectorField::render() const {
    if (comp.empty()) return "0";
    std::string s;
    for (const auto& [i, p] : comp) {
        if (!s.empty()) s += " + ";
        s += "(" + p.render() + ")*d/dx" + std::to_string(i);
    }
    return s;
}

VectorField commutator(const VectorField& a, const VectorField& b) {
    std::map<int, Poly> acc;
    for (const auto& [j, bj] : b.comp) acc[j] += a.apply(bj);
    for (const auto& [j, aj] : a.comp) acc[j] -= b.apply(aj);
    VectorField r;
    for (auto& [j, p] : acc)
        if (!p.is_zero()) r.comp.emplace(j, std::move(p));
    return r;
}

VectorField left_invariant_field(int k, int n) {
    VectorField X;
    for (int i = 1; i <= n - k + 1; ++i) X.comp[i + k - 1] = Poly(xv(i)) * Scalar(i);
    return X;
}

std::vector<VectorField> left_invariant_fields(int n) {
    std::vector<VectorField> r(n + 1);
    for (int k = 1; k <= n; ++k) r[k] = left_invariant_field(k, n);
    return r;
}

}  // namespace jetlie
