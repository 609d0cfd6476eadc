#pragma once

#include "jetlie/poly.hpp"
#include "jetlie/series.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace jetlie {

struct ShapeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated jet. coords[i] is the coefficient of u^i for i = start..n; for
// start = 1 the slot coords[0] is unused and kept zero.
//
// For start = 0 the degree-0 coordinates are modeled through a weight
// filtration: u and every index-0 group variable have weight 1, and a term of
// coefficient j survives only while j + (index-0 degree) <= n. That quotient
// is closed under substitution, so the truncated law is exactly associative.
// A separate cap drops monomials whose total index-0 degree exceeds `nil`.
struct JetElement {
    int start = 1;
    int n = 0;
    int nil = 0;
    std::vector<Poly> coords;

    const Poly& operator[](int i) const { return coords.at(i); }
    friend bool operator==(const JetElement& a, const JetElement& b) {
        return a.start == b.start && a.n == b.n && a.coords == b.coords;
    }
    Series as_series() const;
};

JetElement jet_identity(int n, int start, int nil = -1);
// Coordinates kind_start..kind_n as free variables.
JetElement symbolic_jet(VarKind kind, int n, int start, int nil = -1);
JetElement jet_compose(const JetElement& x, const JetElement& y);
JetElement jet_inverse(const JetElement& x);
JetElement jet_project(const JetElement& x, int m);
// Applies the filtration and nilpotency cap of the start = 0 model.
Poly g0_reduce(const Poly& p, int coeffIndex, int n, int nil);

// Component map: coordinate index -> coefficient of d/dx_index.
struct VectorField {
    std::map<int, Poly> comp;

    Poly apply(const Poly& f, VarKind kind = VarKind::GroupX) const;
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.comp == b.comp; }
    VectorField operator*(const Scalar& c) const;
    VectorField operator-(const VectorField& o) const;
    std::string render() const;
};

VectorField commutator(const VectorField& a, const VectorField& b);
// X_1..X_n; X_k = sum_{i=1}^{n-k+1} i x_i d/dx_{i+k-1}. Index 0 is empty.
std::vector<VectorField> left_invariant_fields(int n);
// X_k for any k >= 1 (zero past the truncation).
VectorField left_invariant_field(int k, int n);

}  // namespace jetlie
