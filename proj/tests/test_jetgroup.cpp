#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetlie/jet.hpp"

using namespace jetlie;

namespace {

Poly P(const char* s) { return Poly::parse(s); }

// Brute-force composition: expand x(y(u)) with plain polynomials in u and keep
// the monomials of the G0 quotient. Independent of the jet kernel.
std::vector<Poly> brute_compose(const JetElement& x, const JetElement& y) {
    const int n = x.n;
    Variable u{VarKind::AuxT, 7};
    Poly yu;
    for (int j = 0; j <= n; ++j) yu += y.coords[j] * Poly(u, j);
    Poly acc, pw(1);
    for (int i = 0; i <= n; ++i) {
        if (i >= x.start) acc += x.coords[i] * pw;
        pw = (pw * yu).truncate_var(u, n);
    }
    auto parts = acc.collect(u);
    std::vector<Poly> r(n + 1);
    for (int j = 0; j <= n && j < static_cast<int>(parts.size()); ++j)
        r[j] = x.start == 0 ? g0_reduce(parts[j], j, n, std::min(x.nil, y.nil)) : parts[j];
    return r;
}

}  // namespace

TEST_CASE("group law coordinates") {
    JetElement x = symbolic_jet(VarKind::GroupX, 4, 1), y = symbolic_jet(VarKind::GroupY, 4, 1);
    JetElement z = jet_compose(x, y);
    CHECK(z[1] == P("x1*y1"));
    CHECK(z[2] == P("x1*y2 + x2*y1^2"));
    CHECK(z[3] == P("x1*y3 + 2*x2*y1*y2 + x3*y1^3"));
    CHECK(z[4] == P("x1*y4 + x2*(y2^2 + 2*y1*y3) + 3*x3*y1^2*y2 + x4*y1^4"));
    for (int n = 1; n <= 6; ++n) {
        JetElement a = symbolic_jet(VarKind::GroupX, n, 1), b = symbolic_jet(VarKind::GroupY, n, 1);
        CHECK(jet_compose(a, b).coords == brute_compose(a, b));
    }
}

TEST_CASE("identity") {
    CHECK(jet_identity(3, 1).coords == std::vector<Poly>{Poly(), Poly(1), Poly(), Poly()});
    CHECK(jet_identity(3, 0).coords == std::vector<Poly>{Poly(), Poly(1), Poly(), Poly()});
    for (int start : {0, 1}) {
        JetElement e = jet_identity(5, start, 3);
        JetElement x = symbolic_jet(VarKind::GroupX, 5, start, 3);
        CHECK(jet_compose(e, e) == e);
        CHECK(jet_compose(x, e) == x);
        CHECK(jet_compose(e, x) == x);
    }
}

TEST_CASE("associativity with symbolic coordinates") {
    for (int n = 1; n <= 6; ++n) {
        JetElement x = symbolic_jet(VarKind::GroupX, n, 1);
        JetElement y = symbolic_jet(VarKind::GroupY, n, 1);
        JetElement z = symbolic_jet(VarKind::GroupZ, n, 1);
        CHECK(jet_compose(jet_compose(x, y), z) == jet_compose(x, jet_compose(y, z)));
    }
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 3; ++m) {
            JetElement x = symbolic_jet(VarKind::GroupX, n, 0, m);
            JetElement y = symbolic_jet(VarKind::GroupY, n, 0, m);
            JetElement z = symbolic_jet(VarKind::GroupZ, n, 0, m);
            CAPTURE(n);
            CAPTURE(m);
            CHECK(jet_compose(jet_compose(x, y), z) == jet_compose(x, jet_compose(y, z)));
            CHECK(jet_compose(x, y).coords == brute_compose(x, y));
        }
}

TEST_CASE("G0 composition keeps the filtration") {
    JetElement x = symbolic_jet(VarKind::GroupX, 2, 0, 2), y = symbolic_jet(VarKind::GroupY, 2, 0, 2);
    JetElement z = jet_compose(x, y);
    // z0 = x0 + x1 y0 + x2 y0^2 with y0 of weight 1
    CHECK(z[0] == P("x0 + x1*y0 + x2*y0^2"));
    CHECK(z[1] == P("x1*y1 + 2*x2*y0*y1"));
    CHECK(z[2] == P("x1*y2 + x2*y1^2"));
}

TEST_CASE("inverse") {
    JetElement e = jet_identity(4, 1);
    CHECK(jet_inverse(e) == e);
    JetElement x2 = symbolic_jet(VarKind::GroupX, 2, 1);
    JetElement i2 = jet_inverse(x2);
    CHECK(i2[1] == P("x1^-1"));
    CHECK(i2[2] == P("-x2*x1^-3"));
    JetElement x = symbolic_jet(VarKind::GroupX, 5, 1);
    CHECK(jet_compose(x, jet_inverse(x)) == jet_identity(5, 1));
    CHECK(jet_compose(jet_inverse(x), x) == jet_identity(5, 1));
    CHECK_THROWS_AS(jet_inverse(symbolic_jet(VarKind::GroupX, 3, 0)), NotInvertible);
}

TEST_CASE("projection is a homomorphism") {
    JetElement x = symbolic_jet(VarKind::GroupX, 5, 1), y = symbolic_jet(VarKind::GroupY, 5, 1);
    JetElement p = jet_project(x, 3);
    CHECK(p.coords == std::vector<Poly>{Poly(), P("x1"), P("x2"), P("x3")});
    for (int m = 1; m < 5; ++m)
        CHECK(jet_project(jet_compose(x, y), m) == jet_compose(jet_project(x, m), jet_project(y, m)));
    CHECK(jet_project(jet_identity(5, 1), 2) == jet_identity(2, 1));
    JetElement a = symbolic_jet(VarKind::GroupX, 4, 0, 2), b = symbolic_jet(VarKind::GroupY, 4, 0, 2);
    CHECK(jet_project(jet_compose(a, b), 3) == jet_compose(jet_project(a, 3), jet_project(b, 3)));
    CHECK_THROWS_AS(jet_project(x, 6), ShapeMismatch);
}

TEST_CASE("left-invariant fields") {
    auto X = left_invariant_fields(3);
    CHECK(X[1].comp == std::map<int, Poly>{{1, P("x1")}, {2, P("2*x2")}, {3, P("3*x3")}});
    CHECK(X[3].comp == std::map<int, Poly>{{3, P("x1")}});
    const int N = 8;
    auto F = left_invariant_fields(N);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            VectorField rhs = a + b - 1 <= N ? left_invariant_field(a + b - 1, N) * Scalar(a - b) : VectorField{};
            CHECK(commutator(F[a], F[b]) == rhs);
        }
}

TEST_CASE("fields are the left translates of coordinate derivations") {
    // dz_n/dy_m at y = e equals (n-m+1) x_{n-m+1}: the column for y_k is X_k.
    const int n = 6;
    JetElement x = symbolic_jet(VarKind::GroupX, n, 1), y = symbolic_jet(VarKind::GroupY, n, 1);
    JetElement z = jet_compose(x, y);
    std::map<std::uint32_t, Poly> at_e;
    for (int i = 1; i <= n; ++i) at_e[yv(i).key()] = i == 1 ? Poly(1) : Poly();
    for (int k = 1; k <= n; ++k) {
        VectorField col;
        for (int i = 1; i <= n; ++i) {
            Poly d = z[i].derivative(yv(k)).substitute(at_e);
            if (!d.is_zero()) col.comp[i] = d;
        }
        CHECK(col == left_invariant_field(k, n));
    }
}

TEST_CASE("shifted fields satisfy the Witt bracket") {
    const int N = 8;
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            VectorField lhs = commutator(left_invariant_field(a + 1, N), left_invariant_field(b + 1, N));
            CHECK(lhs == left_invariant_field(a + b + 1, N) * Scalar(a - b));
        }
}
