#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetlie/quantum.hpp"

using namespace jetlie;

namespace {

const Poly h{hv()};

Poly operator*(long a, const Poly& p) { return p * Scalar(a); }

Word w(std::initializer_list<int> l) { return make_word(l); }

Word ones(std::initializer_list<int> prefix, int k) {
    Word r = make_word(prefix);
    r.append(static_cast<std::size_t>(k), static_cast<char>(1));
    return r;
}

RelationSet corrected(QuantumSet s) { return relation_set_catalog(s, {}, -1, true); }

int degree_of(const Word& x, const Poly& c, int d) {
    int g = 0;
    for (char ch : x) g += ch - 1;
    return g + d * c.min_exponent(hv());
}

NCElement random_element(std::mt19937& rng, int n, int K, int maxLen) {
    NCElement e(n, K);
    std::uniform_int_distribution<int> gen(1, n), len(1, maxLen), coef(-3, 3), hp(0, 2);
    for (int t = 0; t < 3; ++t) {
        Word x;
        int L = len(rng);
        for (int k = 0; k < L; ++k) x.push_back(static_cast<char>(gen(rng)));
        e.add(x, h.pow(hp(rng)) * Scalar(coef(rng)));
    }
    return e;
}

}  // namespace

TEST_CASE("free products") {
    const int n = 5, K = 3;
    NCElement x1 = NCElement::word(n, K, letter(1)), x2 = NCElement::word(n, K, letter(2));
    CHECK(nc_multiply(x1, x2).terms == std::map<Word, Poly>{{w({1, 2}), Poly(1)}});
    CHECK(nc_multiply(NCElement::word(n, K, w({2, 1})), NCElement::word(n, K, letter(3))).terms.count(w({2, 1, 3})) == 1);
    NCElement hk = NCElement::word(n, K, Word(), h.pow(K)), h1 = NCElement::word(n, K, Word(), h);
    CHECK(nc_multiply(hk, h1).is_zero());
    CHECK_THROWS_AS(nc_multiply(x1, NCElement::word(4, K, letter(1))), ShapeMismatch);
    CHECK(render_word(ones({3, 2, 2}, 2)) == "x_3 x_2^2 x_1^2");
    CHECK(is_canonical(w({3, 3, 1})));
    CHECK_FALSE(is_canonical(w({1, 3})));
}

TEST_CASE("catalog entries") {
    RelationSet R2 = relation_set_catalog(QuantumSet::R2);
    NCElement want(5, 8);
    want.add(ones({2, 2}, 3), 3 * h);
    want.add(w({2, 2}), -4 * h);
    CHECK(R2.rule(2, 4) == want);
    CHECK(R2.params == std::vector<std::string>{"C"});
    NCElement fixed(5, 8);
    fixed.add(ones({2, 2}, 2), 3 * h);
    fixed.add(w({2, 2}), -4 * h);
    CHECK(corrected(QuantumSet::R2).rule(2, 4) == fixed);

    RelationSet R1 = relation_set_catalog(QuantumSet::R1);
    NCElement r12(4, 10);
    r12.add(ones({}, 3), h);
    r12.add(ones({}, 2), -h);
    CHECK(R1.rule(1, 2) == r12);
    CHECK(relation_set_catalog(QuantumSet::R3).rule(2, 3).is_zero());

    RelationSet fixedC = relation_set_catalog(QuantumSet::R2, {{"C", Poly(2)}});
    CHECK(fixedC.params.empty());
    CHECK(fixedC.rule(3, 5).terms.at(ones({}, 8)) == h.pow(3) * Scalar(2));
    CHECK_THROWS_AS(relation_set_catalog(QuantumSet::R2, {{"C7", Poly(1)}}), UnknownParameters);
    CHECK_THROWS_AS(relation_set_catalog(QuantumSet::R3, {{"C", Poly(1)}}), UnknownParameters);
    CHECK(quantum_set_from_name("R2_ansatz") == QuantumSet::R2Ansatz);
    CHECK(relation_set_catalog(QuantumSet::R3, {}, 6).K == 6);
}

TEST_CASE("reduction") {
    RelationSet R2 = corrected(QuantumSet::R2);
    NCElement r = nc_reduce(NCElement::word(5, 8, w({1, 3})), R2);
    NCElement want(5, 8);
    want.add(w({3, 1}), Poly(1));
    want.add(w({1, 1}), -h);
    want.add(ones({}, 4), h);
    CHECK(r == want);

    NCElement canon = NCElement::word(5, 8, ones({5, 3, 3}, 2), h);
    CHECK(nc_reduce(canon, R2) == canon);

    // x4 x5 - x5 x4 in R3 is the correction term of the last rule
    RelationSet R3 = relation_set_catalog(QuantumSet::R3);
    NCElement c = NCElement::word(5, 4, w({4, 5})) - NCElement::word(5, 4, w({5, 4}));
    NCElement f(5, 4);
    f.add(ones({4, 2}, 3), 4 * h);
    f.add(w({4, 2}), -8 * h);
    f.add(ones({5}, 1), 5 * h);
    f.add(ones({5}, 4), -h);
    f.add(ones({2}, 1), 3 * h * h);
    CHECK(nc_reduce(c, R3) == f);
    CHECK(nc_reduce(c, R3).is_canonical());

    // a term without h would never stop spawning
    RelationSet bad = R3;
    bad.rules[{1, 2}].add(ones({}, 3), Poly(1));
    CHECK_THROWS_AS(nc_reduce(NCElement::word(5, 4, w({1, 2})), bad), BadRule);
}

TEST_CASE("reduction properties") {
    std::mt19937 rng(7);
    for (QuantumSet s : {QuantumSet::R1, QuantumSet::R2, QuantumSet::R3}) {
        RelationSet R = corrected(s);
        if (s == QuantumSet::R1) R = R.substituted({{"C5", Poly::parse("2*C3^2 + 36*C3 + 4*C4 - 38")}});
        for (int trial = 0; trial < 12; ++trial) {
            NCElement a = random_element(rng, R.n, R.K, 4);
            NCElement r = nc_reduce(a, R);
            CAPTURE(a.render());
            CHECK(r.is_canonical());
            CHECK(nc_reduce(r, R) == r);
            CHECK(nc_reduce_random(a, R, 1000 + trial) == r);
        }
        // homogeneous inputs stay homogeneous
        for (int trial = 0; trial < 12; ++trial) {
            NCElement a = random_element(rng, R.n, R.K, 4);
            auto it = a.terms.begin();
            NCElement one = NCElement::word(R.n, R.K, it->first, it->second.collect(hv()).begin()->second *
                                                                      h.pow(it->second.min_exponent(hv())));
            int g = degree_of(it->first, one.terms.begin()->second, R.d);
            for (const auto& [x, c] : nc_reduce(one, R).terms)
                for (const auto& [k, part] : c.collect(hv())) CHECK(degree_of(x, h.pow(k), R.d) == g);
        }
    }
}

TEST_CASE("overlaps") {
    Report r2 = pbw_overlap_check(corrected(QuantumSet::R2));
    CHECK(r2.pass);
    CHECK(std::find(r2.params.begin(), r2.params.end(), std::pair<std::string, std::string>{"recheck", "K+2 agrees"}) !=
          r2.params.end());
    CHECK(pbw_overlap_check(corrected(QuantumSet::R3)).pass);

    // the misprinted factors x_1^3 and x_1^4 break confluence
    Report p2 = pbw_overlap_check(relation_set_catalog(QuantumSet::R2));
    CHECK_FALSE(p2.pass);
    CHECK(p2.indices == std::vector<int>{1, 4, 5});
    Report p3 = pbw_overlap_check(relation_set_catalog(QuantumSet::R3));
    CHECK_FALSE(p3.pass);
    CHECK(p3.indices == std::vector<int>{2, 4, 5});
    CHECK(p3.residual == "(4*h^2)*x_2^2 x_1^5 + (12*h^2)*x_2^2 x_1^7 + (-16*h^2)*x_2^2 x_1^8");

    // R1 resolves only on a quadric in the constants
    Report p1 = pbw_overlap_check(relation_set_catalog(QuantumSet::R1));
    CHECK_FALSE(p1.pass);
    CHECK(p1.indices == std::vector<int>{2, 3, 4});
    NCElement d(4, 10);
    Poly k = Poly::parse("-190 + 180*C3 + 20*C4 - 5*C5 + 10*C3^2") * h.pow(6);
    d.add(ones({}, 3), k);
    d.add(ones({}, 9), -k);
    CHECK(p1.residual == d.render());
    RelationSet R1fix = relation_set_catalog(QuantumSet::R1, {{"C5", Poly::parse("2*C3^2 + 36*C3 + 4*C4 - 38")}});
    CHECK(pbw_overlap_check(R1fix).pass);
}

TEST_CASE("ansatz constraint") {
    for (int c1 : {0, 1}) {
        RelationSet A = relation_set_catalog(QuantumSet::R2Ansatz, {{"C1", Poly(c1)}}, -1, true).restrict(4);
        Report r = pbw_overlap_check(A);
        CAPTURE(c1);
        CHECK(r.pass == (c1 == 0));
        if (c1 == 1) {
            CHECK(r.indices == std::vector<int>{2, 3, 4});
            CHECK(r.residual == "(4*h^3)*x_1^3 + (-4*h^3)*x_1^9");
        }
    }
    // the printed x_1^3 in rule (2,4) fails for every C1
    for (int c1 : {0, 1}) CHECK_FALSE(pbw_overlap_check(relation_set_catalog(QuantumSet::R2Ansatz, {{"C1", Poly(c1)}}).restrict(4)).pass);

    // on all five generators the overlap (1,3,5) pins C2 = 9/2
    RelationSet A = relation_set_catalog(QuantumSet::R2Ansatz, {{"C1", Poly(0)}}, -1, true);
    Report full = pbw_overlap_check(A);
    CHECK(full.indices == std::vector<int>{1, 3, 5});
    CHECK(full.residual == "(-9*h^3 + 2*C2*h^3)*x_1^3 + (9*h^3 - 2*C2*h^3)*x_1^9");
    CHECK(verify_delta_homomorphism(A).pass);
    RelationSet solved = A.substituted({{"C2", Poly(Scalar(9, 2))}, {"C3", Poly(param("C"))}});
    CHECK(pbw_overlap_check(solved).pass);
    CHECK(solved.rules == corrected(QuantumSet::R2).rules);
}

TEST_CASE("comultiplication") {
    TensorElement d1 = delta_generator(1, 5);
    CHECK(d1.terms == std::map<std::pair<Word, Word>, Poly>{{{letter(1), letter(1)}, Poly(1)}});
    CHECK(delta_generator(2, 5).render() == "(1)*x_1 (x) x_2 + (1)*x_2 (x) x_1^2");
    CHECK(delta_generator(3, 5).render() == "(1)*x_1 (x) x_3 + (1)*x_2 (x) x_1 x_2 + (1)*x_2 (x) x_2 x_1 + (1)*x_3 (x) x_1^3");
    for (int i = 1; i <= 5; ++i) CHECK(delta_generator(i, 5).terms.size() == std::size_t{1} << (i - 1));
    // the last term of Delta x_5 is x_5 (x) x_1^5
    CHECK(delta_generator(5, 5).terms.rbegin()->first == std::pair<Word, Word>{letter(5), ones({}, 5)});
    CHECK_THROWS_AS(delta_generator(6, 5), std::out_of_range);

    // Delta is multiplicative on words
    NCElement x = NCElement::word(5, 4, w({2, 3}));
    TensorElement prod = tensor_multiply(delta_generator(2, 5, 4), delta_generator(3, 5, 4));
    CHECK(delta_of(x) == prod);
}

TEST_CASE("bialgebra checks") {
    for (QuantumSet s : {QuantumSet::R1, QuantumSet::R2, QuantumSet::R3}) {
        RelationSet R = corrected(s);
        CAPTURE(R.tag);
        CHECK(verify_delta_homomorphism(R).pass);
        CHECK(verify_counit_coassoc(R).pass);
        CHECK(verify_grading(R).pass);
        CHECK(verify_grading(relation_set_catalog(s)).pass);
    }
    Report bad = verify_delta_homomorphism(relation_set_catalog(QuantumSet::R2));
    CHECK_FALSE(bad.pass);
    CHECK(bad.indices == std::vector<int>{2, 4});
    CHECK(verify_delta_homomorphism(relation_set_catalog(QuantumSet::R3)).indices == std::vector<int>{2, 5});

    RelationSet R = corrected(QuantumSet::R2);
    R.rules[{1, 3}].add(ones({}, 2), h);
    Report c = verify_counit_coassoc(R);
    CHECK_FALSE(c.pass);
    CHECK(c.indices == std::vector<int>{1, 3});
    CHECK(c.residual == "1*h");

    RelationSet G = corrected(QuantumSet::R3);
    G.rules[{1, 2}].add(ones({}, 2), h);
    Report g = verify_grading(G);
    CHECK_FALSE(g.pass);
    CHECK(g.indices == std::vector<int>{1, 2});
}

TEST_CASE("quasiclassical limit") {
    struct Case {
        QuantumSet s;
        int d, n;
    };
    for (Case c : {Case{QuantumSet::R1, 1, 4}, Case{QuantumSet::R2, 2, 5}, Case{QuantumSet::R3, 3, 5}}) {
        PoissonStructure w = build_omega(phi_power_family(c.d), c.n, 1);
        CAPTURE(c.d);
        CHECK(verify_quasiclassical(corrected(c.s), w).pass);
    }
    Report r = verify_quasiclassical(relation_set_catalog(QuantumSet::R2), build_omega(phi_power_family(2), 5, 1));
    CHECK_FALSE(r.pass);
    CHECK(r.indices == std::vector<int>{2, 4});
    CHECK(r.residual == Poly::parse("3*x1^3*x2^2 - 3*x1^2*x2^2").render());
}

TEST_CASE("text form") {
    for (QuantumSet s : {QuantumSet::R1, QuantumSet::R2, QuantumSet::R3, QuantumSet::R2Ansatz}) {
        RelationSet R = relation_set_catalog(s);
        std::string text = emit_relations(R);
        RelationSet back = parse_relations(text);
        CAPTURE(text);
        CHECK(back.rules == R.rules);
        CHECK(back.params == R.params);
        CHECK(back.tag == R.tag);
        CHECK(back.d == R.d);
        CHECK(back.K == R.K);
        CHECK(emit_relations(back) == text);
    }
    RelationSet R = parse_relations("# two generators\nd = 1\nn = 2\nK = 3\nx_1 x_2 -> x_2 x_1 + (h)*x_1^3 + (-h)*x_1^2\n");
    CHECK(R.rule(1, 2).terms == relation_set_catalog(QuantumSet::R1).rule(1, 2).terms);
    CHECK(emit_relations(R).find("x_1 x_2 -> x_2 x_1 + (-1*h)*x_1^2 + (1*h)*x_1^3") != std::string::npos);
    CHECK_THROWS_AS(parse_relations("n = 2\nx_2 x_1 -> x_1 x_2\n"), ParseError);
    CHECK_THROWS_AS(parse_relations("n = 2\nx_1 x_2 -> x_1 x_2\n"), ParseError);
    CHECK_THROWS_AS(parse_relations("n = 2\nx_1 x_2 -> x_2 x_1 + h\n"), ParseError);
    CHECK_THROWS_AS(parse_relations("colour = red\n"), ParseError);
}

TEST_CASE("serial and parallel agree") {
    for (QuantumSet s : {QuantumSet::R1, QuantumSet::R2, QuantumSet::R3}) {
        RelationSet R = relation_set_catalog(s);
        CHECK(pbw_overlap_check(R, Exec::Serial) == pbw_overlap_check(R, Exec::Parallel));
        CHECK(verify_delta_homomorphism(R, Exec::Serial) == verify_delta_homomorphism(R, Exec::Parallel));
    }
}
