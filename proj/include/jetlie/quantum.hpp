#pragma once

#include "jetlie/parallel.hpp"
#include "jetlie/poisson.hpp"
#include "jetlie/report.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace jetlie {

struct UnknownParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// A rule whose correction term has an h-free part would not terminate.
struct BadRule : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Generator indices 1..n stored one per char. Canonical iff non-increasing.
using Word = std::string;

Word make_word(std::initializer_list<int> letters);
Word letter(int i);
bool is_canonical(const Word& w);
std::string render_word(const Word& w);  // "x_3 x_1^2", "1" for the empty word

// Sum of words with coefficients in Q[h, params], truncated above h^K.
struct NCElement {
    int n = 0;
    int K = 0;
    std::map<Word, Poly> terms;

    NCElement() = default;
    NCElement(int n_, int K_) : n(n_), K(K_) {}
    static NCElement word(int n, int K, const Word& w, const Poly& c = Poly(1));

    void add(const Word& w, const Poly& c);
    NCElement& operator+=(const NCElement& o);
    NCElement& operator-=(const NCElement& o);
    friend NCElement operator+(NCElement a, const NCElement& b) { return a += b; }
    friend NCElement operator-(NCElement a, const NCElement& b) { return a -= b; }
    NCElement scaled(const Poly& c) const;
    NCElement truncated(int K) const;

    bool is_zero() const { return terms.empty(); }
    bool is_canonical() const;
    std::string render() const;

    friend bool operator==(const NCElement&, const NCElement&) = default;
};

// Concatenation product, truncated but not reduced.
NCElement nc_multiply(const NCElement& a, const NCElement& b);

// Rewrite rules x_i x_j -> x_j x_i + f_ij for i < j. Missing pairs commute.
struct RelationSet {
    int d = 0;
    int n = 0;
    int K = 0;
    std::string tag;
    std::vector<std::string> params;
    std::map<std::pair<int, int>, NCElement> rules;

    const NCElement& rule(int i, int j) const;
    // The subalgebra on x_1..x_m; every rule among them must stay inside it.
    RelationSet restrict(int m) const;
    RelationSet with_order(int K) const;
    RelationSet substituted(const std::map<std::string, Poly>& values) const;
};

// Normal form: rewrite the leftmost ascending pair until every word is
// non-increasing. Terms above h^{a.K} are dropped along the way.
NCElement nc_reduce(const NCElement& a, const RelationSet& R);
// Same, with the rewrite site drawn at random; used to probe confluence.
NCElement nc_reduce_random(const NCElement& a, const RelationSet& R, std::uint64_t seed);

Report pbw_overlap_check(const RelationSet& R, Exec exec = Exec::Parallel);

enum class QuantumSet { R1, R2, R3, R2Ansatz };
std::string quantum_set_name(QuantumSet s);
QuantumSet quantum_set_from_name(std::string_view name);
int default_order(QuantumSet s);

// The relation sets as printed. `corrected` repairs the x_2^2 term of rule
// (2,4) of R2 (and of the ansatz) and of rule (2,5) of R3. Unset parameters
// stay symbolic. hOrder < 0 picks default_order.
RelationSet relation_set_catalog(QuantumSet which, const std::map<std::string, Poly>& params = {}, int hOrder = -1,
                                 bool corrected = false);

Report verify_quasiclassical(const RelationSet& R, const PoissonStructure& w);
Report verify_grading(const RelationSet& R);

struct TensorElement {
    int n = 0;
    int K = 0;
    std::map<std::pair<Word, Word>, Poly> terms;

    void add(const Word& a, const Word& b, const Poly& c);
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    bool is_zero() const { return terms.empty(); }
    std::string render(std::size_t maxTerms = 0) const;
    friend bool operator==(const TensorElement&, const TensorElement&) = default;
};

TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b);
// Delta(x_i) = sum_k x_k (x) sum_{j_1+...+j_k=i} x_{j_1}...x_{j_k}.
TensorElement delta_generator(int i, int n, int K = 0);
// Delta extended multiplicatively to an element of the free algebra.
TensorElement delta_of(const NCElement& a);
TensorElement tensor_reduce(const TensorElement& t, const RelationSet& R);

Report verify_delta_homomorphism(const RelationSet& R, Exec exec = Exec::Parallel);
Report verify_counit_coassoc(const RelationSet& R);

// One rule per line, "x_i x_j -> x_j x_i + (coef)*x_a x_b^2 + ...", after
// header lines "d = ", "n = ", "K = ", "params = ". '#' starts a comment.
std::string emit_relations(const RelationSet& R);
RelationSet parse_relations(std::string_view text);

}  // namespace jetlie
