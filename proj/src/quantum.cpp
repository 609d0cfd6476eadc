#include "jetlie/quantum.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace jetlie {

namespace {

const Variable H = hv();

Poly operator*(long a, const Poly& p) { return p * Scalar(a); }

int hmin(const Poly& c) { return c.min_exponent(H); }
Poly trunc(const Poly& c, int K) { return c.truncate_var(H, K); }

using Terms = std::map<Word, Poly>;

void accumulate(Terms& t, const Word& w, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

struct RuleTerm {
    Word w;
    Poly c;
    int low;
};

// Normal forms of single words modulo h^{b+1}. Not thread-safe; one per task.
class Reducer {
public:
    explicit Reducer(const RelationSet& R) : n_(R.n), table_((R.n + 1) * (R.n + 1)) {
        for (const auto& [ij, f] : R.rules)
            for (const auto& [w, c] : f.terms) {
                if (hmin(c) < 1) throw BadRule("rule (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                                               ") has a term without h");
                table_[ij.first * (n_ + 1) + ij.second].push_back({w, c, hmin(c)});
            }
    }

    const Terms& nf(const Word& w, int b) {
        static const Terms empty;
        if (b < 0) return empty;
        std::string key = w;
        key.push_back(static_cast<char>(b + 1));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Terms res;
        std::size_t p = site(w);
        if (p == Word::npos) {
            res.emplace(w, Poly(1));
        } else {
            expand(w, p, b, res, [this](const Word& x, int bb) -> const Terms& { return nf(x, bb); });
        }
        return memo_.emplace(std::move(key), std::move(res)).first->second;
    }

    Terms nf_random(const Word& w, int b, std::mt19937_64& rng) {
        Terms res;
        if (b < 0) return res;
        std::vector<std::size_t> sites;
        for (std::size_t p = 0; p + 1 < w.size(); ++p)
            if (w[p] < w[p + 1]) sites.push_back(p);
        if (sites.empty()) {
            res.emplace(w, Poly(1));
            return res;
        }
        std::size_t p = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
        Terms scratch;
        expand(w, p, b, res, [&](const Word& x, int bb) -> const Terms& {
            scratch = nf_random(x, bb, rng);
            return scratch;
        });
        return res;
    }

private:
    int n_;
    std::vector<std::vector<RuleTerm>> table_;
    std::unordered_map<std::string, Terms> memo_;

    static std::size_t site(const Word& w) {
        for (std::size_t p = 0; p + 1 < w.size(); ++p)
            if (w[p] < w[p + 1]) return p;
        return Word::npos;
    }

    template <class Sub>
    void expand(const Word& w, std::size_t p, int b, Terms& res, Sub&& sub) {
        const int i = w[p], j = w[p + 1];
        Word swapped = w;
        std::swap(swapped[p], swapped[p + 1]);
        for (const auto& [x, c] : sub(swapped, b)) accumulate(res, x, c);
        for (const auto& rt : table_[i * (n_ + 1) + j]) {
            if (rt.low > b) continue;
            Word x = w.substr(0, p) + rt.w + w.substr(p + 2);
            Poly c = trunc(rt.c, b);
            for (const auto& [y, cy] : sub(x, b - rt.low)) accumulate(res, y, trunc(c * cy, b));
        }
    }
};

Terms reduce_terms(const Terms& in, int K, Reducer& r) {
    Terms out;
    for (const auto& [w, c] : in) {
        int low = hmin(c);
        if (low > K) continue;
        for (const auto& [x, cx] : r.nf(w, K - low)) accumulate(out, x, trunc(c * cx, K));
    }
    return out;
}

std::string abbreviate(const std::vector<std::string>& parts, std::size_t maxTerms) {
    if (parts.empty()) return "0";
    std::string s;
    std::size_t shown = maxTerms == 0 ? parts.size() : std::min(maxTerms, parts.size());
    for (std::size_t k = 0; k < shown; ++k) s += (k ? " + " : "") + parts[k];
    if (shown < parts.size()) s += " + ... (" + std::to_string(parts.size()) + " terms)";
    return s;
}

std::string term_text(const Poly& c, const Word& w) {
    std::string s = "(" + c.render() + ")";
    if (!w.empty()) s += "*" + render_word(w);
    return s;
}

}  // namespace

// ---------------------------------------------------------------- words

Word make_word(std::initializer_list<int> letters) {
    Word w;
    for (int i : letters) w.push_back(static_cast<char>(i));
    return w;
}

Word letter(int i) { return Word(1, static_cast<char>(i)); }

bool is_canonical(const Word& w) {
    for (std::size_t p = 0; p + 1 < w.size(); ++p)
        if (w[p] < w[p + 1]) return false;
    return true;
}

std::string render_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t p = 0; p < w.size();) {
        std::size_t q = p;
        while (q < w.size() && w[q] == w[p]) ++q;
        if (!s.empty()) s += " ";
        s += "x_" + std::to_string(static_cast<int>(w[p]));
        if (q - p > 1) s += "^" + std::to_string(q - p);
        p = q;
    }
    return s;
}

// ---------------------------------------------------------------- NCElement

NCElement NCElement::word(int n, int K, const Word& w, const Poly& c) {
    NCElement e(n, K);
    e.add(w, c);
    return e;
}

void NCElement::add(const Word& w, const Poly& c) { accumulate(terms, w, trunc(c, K)); }

NCElement& NCElement::operator+=(const NCElement& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
}

NCElement& NCElement::operator-=(const NCElement& o) {
    for (const auto& [w, c] : o.terms) add(w, -c);
    return *this;
}

NCElement NCElement::scaled(const Poly& c) const {
    NCElement r(n, K);
    for (const auto& [w, a] : terms) r.add(w, a * c);
    return r;
}

NCElement NCElement::truncated(int K2) const {
    NCElement r(n, K2);
    for (const auto& [w, a] : terms) r.add(w, a);
    return r;
}

bool NCElement::is_canonical() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return jetlie::is_canonical(t.first); });
}

std::string NCElement::render() const {
    std::vector<std::string> parts;
    for (const auto& [w, c] : terms) parts.push_back(term_text(c, w));
    return abbreviate(parts, 0);
}

NCElement nc_multiply(const NCElement& a, const NCElement& b) {
    if (a.n != b.n || a.K != b.K) throw ShapeMismatch("nc_multiply: generator count or h-order differ");
    NCElement r(a.n, a.K);
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms) r.add(u + v, cu * cv);
    return r;
}

// ---------------------------------------------------------------- relation sets

const NCElement& RelationSet::rule(int i, int j) const {
    static const NCElement zero;
    auto it = rules.find({i, j});
    return it == rules.end() ? zero : it->second;
}

RelationSet RelationSet::restrict(int m) const {
    RelationSet r = *this;
    r.n = m;
    r.rules.clear();
    for (const auto& [ij, f] : rules) {
        if (ij.second > m) continue;
        for (const auto& [w, c] : f.terms)
            for (char ch : w)
                if (ch > m) throw ShapeMismatch("rule leaves the subalgebra on x_1..x_" + std::to_string(m));
        NCElement g = f;
        g.n = m;
        r.rules[ij] = g;
    }
    return r;
}

RelationSet RelationSet::with_order(int K2) const {
    RelationSet r = *this;
    r.K = K2;
    for (auto& [ij, f] : r.rules) f = f.truncated(K2);
    return r;
}

RelationSet RelationSet::substituted(const std::map<std::string, Poly>& values) const {
    std::map<std::uint32_t, Poly> bind;
    for (const auto& [name, v] : values) {
        if (std::find(params.begin(), params.end(), name) == params.end())
            throw UnknownParameters("relation set " + tag + " has no parameter " + name);
        bind[param(name).key()] = v;
    }
    RelationSet r = *this;
    std::erase_if(r.params, [&](const std::string& p) { return values.count(p) > 0; });
    for (auto& [ij, f] : r.rules) {
        NCElement g(f.n, f.K);
        for (const auto& [w, c] : f.terms) g.add(w, c.substitute(bind));
        f = g;
    }
    return r;
}

NCElement nc_reduce(const NCElement& a, const RelationSet& R) {
    Reducer r(R);
    NCElement out(a.n, a.K);
    out.terms = reduce_terms(a.terms, a.K, r);
    return out;
}

NCElement nc_reduce_random(const NCElement& a, const RelationSet& R, std::uint64_t seed) {
    Reducer r(R);
    std::mt19937_64 rng(seed);
    NCElement out(a.n, a.K);
    for (const auto& [w, c] : a.terms) {
        int low = hmin(c);
        if (low > a.K) continue;
        for (const auto& [x, cx] : r.nf_random(w, a.K - low, rng)) out.add(x, c * cx);
    }
    return out;
}

// ---------------------------------------------------------------- overlaps

namespace {

std::vector<std::array<int, 3>> triples(int n) {
    std::vector<std::array<int, 3>> t;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) t.push_back({i, j, k});
    return t;
}

// x_i x_j x_k with (ij) rewritten first minus with (jk) rewritten first.
NCElement overlap_difference(const RelationSet& R, int i, int j, int k, Reducer& red) {
    const int n = R.n, K = R.K;
    NCElement a = NCElement::word(n, K, make_word({j, i, k}));
    a += nc_multiply(R.rule(i, j).truncated(K), NCElement::word(n, K, letter(k)));
    NCElement b = NCElement::word(n, K, make_word({i, k, j}));
    b += nc_multiply(NCElement::word(n, K, letter(i)), R.rule(j, k).truncated(K));
    NCElement d(n, K);
    d.terms = reduce_terms(a.terms, K, red);
    NCElement db(n, K);
    db.terms = reduce_terms(b.terms, K, red);
    return d - db;
}

std::vector<NCElement> overlap_all(const RelationSet& R, Exec exec) {
    auto tr = triples(R.n);
    return index_map(
        tr.size(),
        [&](std::size_t t) -> NCElement {
            Reducer red(R);
            return overlap_difference(R, tr[t][0], tr[t][1], tr[t][2], red);
        },
        exec);
}

}  // namespace

Report pbw_overlap_check(const RelationSet& R, Exec exec) {
    Report rep;
    rep.check = "pbw_overlap";
    rep.param("set", R.tag).param("n", R.n).param("hOrder", R.K);
    auto tr = triples(R.n);
    auto base = overlap_all(R, exec);
    // a second pass two orders higher must not change the verdict or the
    // residuals below h^K
    auto high = overlap_all(R.with_order(R.K + 2), exec);
    bool agrees = true;
    for (std::size_t t = 0; t < tr.size(); ++t) agrees = agrees && high[t].truncated(R.K) == base[t];
    rep.param("triples", static_cast<long>(tr.size()));
    rep.param("recheck", agrees ? "K+2 agrees" : "K+2 differs");
    for (std::size_t t = 0; t < tr.size(); ++t) {
        const NCElement& d = !base[t].is_zero() ? base[t] : high[t];
        if (!d.is_zero()) {
            rep.fail({tr[t][0], tr[t][1], tr[t][2]}, d.render());
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- catalog

std::string quantum_set_name(QuantumSet s) {
    switch (s) {
        case QuantumSet::R1: return "R1";
        case QuantumSet::R2: return "R2";
        case QuantumSet::R3: return "R3";
        case QuantumSet::R2Ansatz: return "R2_ansatz";
    }
    return "?";
}

QuantumSet quantum_set_from_name(std::string_view name) {
    for (QuantumSet s : {QuantumSet::R1, QuantumSet::R2, QuantumSet::R3, QuantumSet::R2Ansatz})
        if (quantum_set_name(s) == name) return s;
    throw std::invalid_argument("unknown relation set " + std::string(name));
}

int default_order(QuantumSet s) {
    switch (s) {
        case QuantumSet::R1: return 10;
        case QuantumSet::R3: return 4;
        default: return 8;
    }
}

namespace {

// Adds c * prefix x_1^ones.
void put(NCElement& e, const Poly& c, std::initializer_list<int> prefix, int ones) {
    Word w = make_word(prefix);
    w.append(static_cast<std::size_t>(ones), static_cast<char>(1));
    e.add(w, c);
}

using Table = std::map<std::pair<int, int>, NCElement>;

Poly q(long a, long b = 1) { return Poly(Scalar(a, b)); }

// Order-h parts shared by R2 and the ansatz.
Table r2_first_order(int K, bool corrected) {
    const int n = 5;
    const Poly h(H);
    Table t;
    auto rule = [&](int i, int j) -> NCElement& { return t.try_emplace({i, j}, n, K).first->second; };
    rule(1, 2);
    put(rule(1, 3), -h, {}, 2);
    put(rule(1, 3), h, {}, 4);
    put(rule(2, 3), h, {2}, 3);
    put(rule(2, 3), -2 * h, {2}, 1);
    put(rule(1, 4), 3 * h, {2}, 3);
    put(rule(1, 4), -2 * h, {2}, 1);
    put(rule(2, 4), 3 * h, {2, 2}, corrected ? 2 : 3);
    put(rule(2, 4), -4 * h, {2, 2}, 0);
    put(rule(3, 4), 4 * h, {4}, 1);
    put(rule(3, 4), -h, {4}, 3);
    put(rule(3, 4), 3 * h, {3, 2}, 2);
    put(rule(3, 4), -6 * h, {3, 2}, 0);
    put(rule(1, 5), 3 * h, {3}, 3);
    put(rule(1, 5), -3 * h, {3}, 1);
    put(rule(1, 5), 3 * h, {2, 2}, 2);
    put(rule(2, 5), 3 * h, {2, 2, 2}, 1);
    put(rule(2, 5), 3 * h, {3, 2}, 2);
    put(rule(2, 5), -6 * h, {3, 2}, 0);
    put(rule(3, 5), 5 * h, {5}, 1);
    put(rule(3, 5), -h, {5}, 3);
    put(rule(3, 5), 3 * h, {3, 3}, 2);
    put(rule(3, 5), -9 * h, {3, 3}, 0);
    put(rule(3, 5), 3 * h, {3, 2, 2}, 1);
    put(rule(4, 5), 10 * h, {5, 2}, 0);
    put(rule(4, 5), -3 * h, {5, 2}, 2);
    put(rule(4, 5), 3 * h, {4, 3}, 2);
    put(rule(4, 5), -12 * h, {4, 3}, 0);
    put(rule(4, 5), 3 * h, {4, 2, 2}, 1);
    return t;
}

RelationSet make_r2(int K, bool corrected) {
    RelationSet R{2, 5, K, "R2", {"C"}, r2_first_order(K, corrected)};
    const Poly h(H), h2 = h * h, h3 = h2 * h, C(param("C"));
    auto& t = R.rules;
    put(t[{3, 4}], 2 * h2, {2}, 1);
    put(t[{1, 5}], -6 * h2, {}, 4);
    put(t[{1, 5}], q(9, 2) * h2, {}, 6);
    put(t[{1, 5}], q(3, 2) * h2, {}, 2);
    put(t[{2, 5}], 6 * h2, {2}, 1);
    put(t[{2, 5}], -9 * h2, {2}, 3);
    put(t[{2, 5}], q(9, 2) * h2, {2}, 5);
    put(t[{3, 5}], q(-15, 2) * h2, {3}, 1);
    put(t[{3, 5}], 6 * h2, {3}, 3);
    put(t[{3, 5}], q(3, 2) * h2, {3}, 5);
    put(t[{3, 5}], h3 * C, {}, 8);
    put(t[{3, 5}], -h3 * C, {}, 2);
    put(t[{4, 5}], -24 * h2, {4}, 1);
    put(t[{4, 5}], 9 * h2, {4}, 3);
    put(t[{4, 5}], q(3, 2) * h2, {4}, 5);
    put(t[{4, 5}], 6 * h2, {3, 2}, 0);
    put(t[{4, 5}], -(6 + 2 * C) * h3, {2}, 1);
    put(t[{4, 5}], 3 * C * h3, {2}, 7);
    return R;
}

// The ansatz with f_1, f_2 in terms of C_1 and f_3..f_11 in their solved
// forms, C_2 and C_3 left free.
RelationSet make_ansatz(int K, bool corrected) {
    RelationSet R{2, 5, K, "R2_ansatz", {"C1", "C2", "C3"}, r2_first_order(K, corrected)};
    const Poly h(H), h2 = h * h, h3 = h2 * h;
    const Poly C1(param("C1")), C2(param("C2")), C3(param("C3"));
    auto& t = R.rules;
    // f1 = C1 (x^6 - x^2)
    put(t[{2, 4}], h2 * C1, {}, 6);
    put(t[{2, 4}], -h2 * C1, {}, 2);
    // x2 f2, f2 = (2 - 2C1) x + 2C1 x^5
    put(t[{3, 4}], h2 * (2 - 2 * C1), {2}, 1);
    put(t[{3, 4}], 2 * h2 * C1, {2}, 5);
    // f3 = 6x^2 - 6x^4 + C2 (x^6 - x^2)
    put(t[{1, 5}], h2 * (6 - C2), {}, 2);
    put(t[{1, 5}], -6 * h2, {}, 4);
    put(t[{1, 5}], h2 * C2, {}, 6);
    // x2 f4, f4 = (15 - 2C2) x - 9x^3 + C2 x^5
    put(t[{2, 5}], h2 * (15 - 2 * C2), {2}, 1);
    put(t[{2, 5}], -9 * h2, {2}, 3);
    put(t[{2, 5}], h2 * C2, {2}, 5);
    // x3 f5 + x2^2 f6 + h f7, f6 = 0, f7 = C3 (x^8 - x^2)
    put(t[{3, 5}], h2 * (6 - 3 * C2), {3}, 1);
    put(t[{3, 5}], 6 * h2, {3}, 3);
    put(t[{3, 5}], h2 * (C2 - 3), {3}, 5);
    put(t[{3, 5}], h3 * C3, {}, 8);
    put(t[{3, 5}], -h3 * C3, {}, 2);
    // x4 f8 + x3 x2 f9 + x2^3 f10 + h x2 f11, f9 = 6, f10 = 0
    put(t[{4, 5}], h2 * (-6 - 4 * C2), {4}, 1);
    put(t[{4, 5}], 9 * h2, {4}, 3);
    put(t[{4, 5}], h2 * (C2 - 3), {4}, 5);
    put(t[{4, 5}], 6 * h2, {3, 2}, 0);
    put(t[{4, 5}], h3 * (3 - 2 * C2 - 2 * C3), {2}, 1);
    put(t[{4, 5}], 3 * h3 * C3, {2}, 7);
    return R;
}

RelationSet make_r3(int K, bool corrected) {
    RelationSet R{3, 5, K, "R3", {}, {}};
    const Poly h(H);
    auto rule = [&](int i, int j) -> NCElement& { return R.rules.try_emplace({i, j}, 5, K).first->second; };
    rule(1, 2);
    rule(1, 3);
    rule(2, 3);
    put(rule(1, 4), h, {}, 5);
    put(rule(1, 4), -h, {}, 2);
    put(rule(2, 4), h, {2}, 4);
    put(rule(2, 4), -2 * h, {2}, 1);
    put(rule(3, 4), h, {3}, 4);
    put(rule(3, 4), -3 * h, {3}, 1);
    put(rule(1, 5), 4 * h, {2}, 4);
    put(rule(1, 5), -2 * h, {2}, 1);
    put(rule(2, 5), 4 * h, {2, 2}, corrected ? 3 : 4);
    put(rule(2, 5), -4 * h, {2, 2}, 0);
    put(rule(3, 5), 4 * h, {3, 2}, 3);
    put(rule(3, 5), -6 * h, {3, 2}, 0);
    put(rule(4, 5), 4 * h, {4, 2}, 3);
    put(rule(4, 5), -8 * h, {4, 2}, 0);
    put(rule(4, 5), 5 * h, {5}, 1);
    put(rule(4, 5), -h, {5}, 4);
    put(rule(4, 5), 3 * h * h, {2}, 1);
    return R;
}

RelationSet make_r1(int K) {
    RelationSet R{1, 4, K, "R1", {"C3", "C4", "C5"}, {}};
    const Poly h(H), h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h;
    const Poly C3(param("C3")), C4(param("C4")), C5(param("C5"));
    auto rule = [&](int i, int j) -> NCElement& { return R.rules.try_emplace({i, j}, 4, K).first->second; };
    NCElement& r12 = rule(1, 2);
    put(r12, h, {}, 3);
    put(r12, -h, {}, 2);

    NCElement& r13 = rule(1, 3);
    put(r13, 2 * h, {2}, 2);
    put(r13, -2 * h, {2}, 1);
    put(r13, 2 * h2, {}, 4);
    put(r13, -3 * h2, {}, 3);
    put(r13, h2, {}, 2);

    NCElement& r23 = rule(2, 3);
    put(r23, 3 * h, {3}, 1);
    put(r23, -h, {3}, 2);
    put(r23, 2 * h, {2, 2}, 1);
    put(r23, -4 * h, {2, 2}, 0);
    put(r23, 3 * h2, {2}, 2);
    put(r23, -3 * h2, {2}, 1);
    put(r23, (2 - 2 * C3) * h3, {}, 5);
    put(r23, -(2 - 2 * C3) * h3, {}, 2);

    NCElement& r14 = rule(1, 4);
    put(r14, -3 * h, {3}, 1);
    put(r14, 2 * h, {3}, 2);
    put(r14, h, {2, 2}, 1);
    put(r14, 3 * h2, {2}, 1);
    put(r14, -8 * h2, {2}, 2);
    put(r14, 5 * h2, {2}, 3);
    put(r14, 5 * h3, {}, 5);
    put(r14, -12 * h3, {}, 4);
    put(r14, 7 * h3, {}, 3);
    put(r14, C3 * h3, {}, 5);
    put(r14, -C3 * h3, {}, 2);

    NCElement& r24 = rule(2, 4);
    put(r24, 4 * h, {4}, 1);
    put(r24, -h, {4}, 2);
    put(r24, 2 * h, {3, 2}, 1);
    put(r24, -6 * h, {3, 2}, 0);
    put(r24, h, {2, 2, 2}, 0);
    put(r24, 3 * h2, {2, 2}, 2);
    put(r24, -10 * h2, {2, 2}, 1);
    put(r24, 12 * h2, {2, 2}, 0);
    put(r24, 12 * h2, {3}, 2);
    put(r24, -2 * h2, {3}, 3);
    put(r24, -15 * h2, {3}, 1);
    put(r24, (9 + 2 * C3) * h3, {2}, 1);
    put(r24, -17 * h3, {2}, 2);
    put(r24, 6 * h3, {2}, 3);
    put(r24, (5 - 5 * C3) * h3, {2}, 4);
    put(r24, (22 - 22 * C3) * h4, {}, 2);
    put(r24, (-4 + 4 * C3) * h4, {}, 3);
    put(r24, (-18 + 18 * C3) * h4, {}, 5);
    put(r24, C4 * h4, {}, 6);
    put(r24, -C4 * h4, {}, 2);

    NCElement& r34 = rule(3, 4);
    put(r34, 8 * h, {4, 2}, 0);
    put(r34, -2 * h, {4, 2}, 1);
    put(r34, h, {3, 2, 2}, 0);
    put(r34, -9 * h, {3, 3}, 0);
    put(r34, 2 * h, {3, 3}, 1);
    put(r34, -h2, {3, 2}, 2);
    put(r34, 16 * h2, {3, 2}, 1);
    put(r34, -24 * h2, {3, 2}, 0);
    put(r34, -7 * h2, {4}, 2);
    put(r34, 16 * h2, {4}, 1);
    put(r34, (10 - 10 * C3) * h3, {2, 2}, 3);
    put(r34, (-9 + 8 * C3) * h3, {2, 2}, 0);
    put(r34, (-5 + 5 * C3) * h3, {3}, 4);
    put(r34, 16 * h3, {3}, 2);
    put(r34, -(6 + 9 * C3) * h3, {3}, 1);
    put(r34, (8 - 9 * C3 - 2 * C4) * h4, {2}, 1);
    put(r34, (9 - 8 * C3) * h4, {2}, 2);
    put(r34, (10 - 10 * C3) * h4, {2}, 4);
    put(r34, (2 * C4 - 18 + 18 * C3) * h4, {2}, 5);
    put(r34, (C4 + 2 * C3 - 2) * h5, {}, 2);
    put(r34, (4 - 4 * C3 - C4) * h5, {}, 6);
    put(r34, (2 * C3 - 2) * h5, {}, 5);
    put(r34, C5 * h5, {}, 7);
    put(r34, -C5 * h5, {}, 2);
    return R;
}

}  // namespace

RelationSet relation_set_catalog(QuantumSet which, const std::map<std::string, Poly>& params, int hOrder,
                                 bool corrected) {
    const int K = hOrder < 0 ? default_order(which) : hOrder;
    RelationSet R;
    switch (which) {
        case QuantumSet::R1: R = make_r1(K); break;
        case QuantumSet::R2: R = make_r2(K, corrected); break;
        case QuantumSet::R3: R = make_r3(K, corrected); break;
        case QuantumSet::R2Ansatz: R = make_ansatz(K, corrected); break;
    }
    if (corrected && which != QuantumSet::R1) R.tag += "_corrected";
    return params.empty() ? R : R.substituted(params);
}

// ---------------------------------------------------------------- checks

namespace {

Poly commutative(const Word& w) {
    Poly p(1);
    for (char c : w) p = p * Poly(xv(c));
    return p;
}

}  // namespace

Report verify_quasiclassical(const RelationSet& R, const PoissonStructure& w) {
    Report rep;
    rep.check = "quasiclassical";
    rep.param("set", R.tag).param("structure", w.tag).param("n", R.n);
    Reducer red(R);
    const int m = std::min(R.n, w.n);
    for (int i = 1; i <= m && rep.pass; ++i)
        for (int j = i + 1; j <= m; ++j) {
            Terms t{{make_word({i, j}), Poly(1)}, {make_word({j, i}), Poly(-1)}};
            Terms red_t = reduce_terms(t, std::min(R.K, 1), red);
            Poly at0, at1;
            for (const auto& [x, c] : red_t) {
                auto parts = c.collect(H);
                if (parts.count(0)) at0 += parts[0] * commutative(x);
                if (parts.count(1)) at1 += parts[1] * commutative(x);
            }
            Poly diff = at1 - w.at(i, j);
            if (!at0.is_zero()) {
                rep.fail({i, j}, "order h^0: " + at0.render());
                break;
            }
            if (!diff.is_zero()) {
                rep.fail({i, j}, diff.render());
                break;
            }
        }
    return rep;
}

Report verify_grading(const RelationSet& R) {
    Report rep;
    rep.check = "grading";
    rep.param("set", R.tag).param("d", R.d);
    long terms = 0;
    for (const auto& [ij, f] : R.rules) {
        const int want = ij.first + ij.second - 2;
        for (const auto& [w, c] : f.terms) {
            int wd = 0;
            for (char ch : w) wd += ch - 1;
            for (const auto& [mono, a] : c.terms()) {
                ++terms;
                auto g = graded_degree(mono, R.d);
                if (!g || *g + wd != want) {
                    rep.fail({ij.first, ij.second}, term_text(Poly(mono, a), w) + " has degree " +
                                                        (g ? std::to_string(*g + wd) : std::string("?")) +
                                                        ", expected " + std::to_string(want));
                    return rep.param("terms", terms);
                }
            }
        }
    }
    return rep.param("terms", terms);
}

// ---------------------------------------------------------------- tensors

void TensorElement::add(const Word& a, const Word& b, const Poly& c) {
    Poly t = trunc(c, K);
    if (t.is_zero()) return;
    auto [it, fresh] = terms.try_emplace({a, b}, t);
    if (!fresh) {
        it->second += t;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    for (const auto& [ab, c] : o.terms) add(ab.first, ab.second, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    for (const auto& [ab, c] : o.terms) add(ab.first, ab.second, -c);
    return *this;
}

std::string TensorElement::render(std::size_t maxTerms) const {
    std::vector<std::string> parts;
    for (const auto& [ab, c] : terms)
        parts.push_back("(" + c.render() + ")*" + render_word(ab.first) + " (x) " + render_word(ab.second));
    return abbreviate(parts, maxTerms);
}

TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b) {
    if (a.n != b.n || a.K != b.K) throw ShapeMismatch("tensor_multiply: generator count or h-order differ");
    TensorElement r{a.n, a.K, {}};
    for (const auto& [p, cp] : a.terms)
        for (const auto& [q2, cq] : b.terms) r.add(p.first + q2.first, p.second + q2.second, cp * cq);
    return r;
}

namespace {

// Ordered compositions of `total` into k positive parts, lexicographic.
void compositions(int total, int k, Word& cur, std::vector<Word>& out) {
    if (k == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int first = 1; first <= total - (k - 1); ++first) {
        cur.push_back(static_cast<char>(first));
        compositions(total - first, k - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TensorElement delta_generator(int i, int n, int K) {
    if (i < 1 || i > n) throw std::out_of_range("delta_generator: index outside 1..n");
    TensorElement t{n, K, {}};
    for (int k = 1; k <= i; ++k) {
        std::vector<Word> rs;
        Word cur;
        compositions(i, k, cur, rs);
        for (const Word& r : rs) t.add(letter(k), r, Poly(1));
    }
    return t;
}

TensorElement delta_of(const NCElement& a) {
    std::vector<TensorElement> gens;
    for (int i = 1; i <= a.n; ++i) gens.push_back(delta_generator(i, a.n, a.K));
    TensorElement r{a.n, a.K, {}};
    for (const auto& [w, c] : a.terms) {
        TensorElement p{a.n, a.K, {}};
        p.add(Word(), Word(), c);
        for (char ch : w) p = tensor_multiply(p, gens.at(ch - 1));
        r += p;
    }
    return r;
}

namespace {

TensorElement tensor_reduce_with(const TensorElement& t, Reducer& red) {
    TensorElement out{t.n, t.K, {}};
    for (const auto& [ab, c] : t.terms) {
        int low = hmin(c);
        if (low > t.K) continue;
        const Terms& A = red.nf(ab.first, t.K - low);
        const Terms& B = red.nf(ab.second, t.K - low);
        for (const auto& [x, cx] : A) {
            Poly cc = trunc(c * cx, t.K);
            if (cc.is_zero()) continue;
            for (const auto& [y, cy] : B) out.add(x, y, cc * cy);
        }
    }
    return out;
}

}  // namespace

TensorElement tensor_reduce(const TensorElement& t, const RelationSet& R) {
    Reducer red(R);
    return tensor_reduce_with(t, red);
}

Report verify_delta_homomorphism(const RelationSet& R, Exec exec) {
    Report rep;
    rep.check = "delta_homomorphism";
    rep.param("set", R.tag).param("n", R.n).param("hOrder", R.K);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= R.n; ++i)
        for (int j = i + 1; j <= R.n; ++j) pairs.emplace_back(i, j);
    auto res = index_map(
        pairs.size(),
        [&](std::size_t k) -> TensorElement {
            auto [i, j] = pairs[k];
            Reducer red(R);
            TensorElement di = delta_generator(i, R.n, R.K), dj = delta_generator(j, R.n, R.K);
            TensorElement t = tensor_multiply(di, dj);
            t -= tensor_multiply(dj, di);
            t -= delta_of(R.rule(i, j).truncated(R.K));
            return tensor_reduce_with(t, red);
        },
        exec);
    rep.param("rules", static_cast<long>(pairs.size()));
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (!res[k].is_zero()) {
            rep.fail({pairs[k].first, pairs[k].second}, res[k].render(12));
            break;
        }
    return rep;
}

namespace {

bool counit_word(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c == 1; });
}

using Triple = std::map<std::tuple<Word, Word, Word>, Poly>;

void add3(Triple& t, const Word& a, const Word& b, const Word& c, const Poly& p) {
    auto [it, fresh] = t.try_emplace({a, b, c}, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) t.erase(it);
    }
}

}  // namespace

Report verify_counit_coassoc(const RelationSet& R) {
    Report rep;
    rep.check = "counit_coassoc";
    rep.param("set", R.tag).param("n", R.n);
    for (const auto& [ij, f] : R.rules) {
        Poly c;
        for (const auto& [w, a] : f.terms)
            if (counit_word(w)) c += a;
        if (!c.is_zero()) {
            rep.param("part", "counit on relations");
            return rep.fail({ij.first, ij.second}, c.render());
        }
    }
    for (int i = 1; i <= R.n; ++i) {
        TensorElement d = delta_generator(i, R.n, R.K);
        Terms left, right;
        for (const auto& [ab, c] : d.terms) {
            if (counit_word(ab.first)) accumulate(left, ab.second, c);
            if (counit_word(ab.second)) accumulate(right, ab.first, c);
        }
        const Terms want{{letter(i), Poly(1)}};
        if (left != want || right != want) {
            rep.param("part", "counit on generators");
            return rep.fail({i}, "c(x) x Delta or x c Delta differs from the generator");
        }
        Triple a, b;
        for (const auto& [ab, c] : d.terms) {
            for (const auto& [pq, e] : delta_generator(ab.first[0], R.n, R.K).terms)
                add3(a, pq.first, pq.second, ab.second, c * e);
            for (const auto& [pq, e] : delta_of(NCElement::word(R.n, R.K, ab.second)).terms)
                add3(b, ab.first, pq.first, pq.second, c * e);
        }
        if (a != b) {
            rep.param("part", "coassociativity");
            return rep.fail({i}, "(Delta x id)Delta and (id x Delta)Delta differ");
        }
    }
    return rep.param("part", "all");
}

// ---------------------------------------------------------------- text form

std::string emit_relations(const RelationSet& R) {
    std::ostringstream os;
    os << "tag = " << R.tag << "\n";
    os << "d = " << R.d << "\nn = " << R.n << "\nK = " << R.K << "\nparams =";
    for (std::size_t k = 0; k < R.params.size(); ++k) os << (k ? ", " : " ") << R.params[k];
    os << "\n";
    for (int i = 1; i <= R.n; ++i)
        for (int j = i + 1; j <= R.n; ++j) {
            os << "x_" << i << " x_" << j << " -> x_" << j << " x_" << i;
            for (const auto& [w, c] : R.rule(i, j).terms) os << " + " << term_text(c, w);
            os << "\n";
        }
    return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

class RuleParser {
public:
    RuleParser(std::string_view s, int line) : s_(s), line_(line) {}

    void skip() {
        while (p_ < s_.size() && s_[p_] == ' ') ++p_;
    }
    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(p_, tok.size()) != tok) return false;
        p_ += tok.size();
        return true;
    }
    bool at_letter() {
        skip();
        return s_.substr(p_, 2) == "x_";
    }
    int integer() {
        std::size_t b = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (b == p_) fail("expected an integer");
        return std::stoi(std::string(s_.substr(b, p_ - b)));
    }
    Word word() {
        Word w;
        while (at_letter()) {
            p_ += 2;
            int g = integer();
            int e = 1;
            if (p_ < s_.size() && s_[p_] == '^') {
                ++p_;
                e = integer();
            }
            w.append(static_cast<std::size_t>(e), static_cast<char>(g));
        }
        return w;
    }
    Poly coefficient() {
        if (!eat("(")) fail("expected '('");
        int depth = 1;
        std::size_t b = p_;
        while (p_ < s_.size() && depth > 0) {
            if (s_[p_] == '(') ++depth;
            if (s_[p_] == ')') --depth;
            ++p_;
        }
        if (depth) fail("unbalanced parentheses");
        return Poly::parse(s_.substr(b, p_ - 1 - b));
    }
    bool done() {
        skip();
        return p_ >= s_.size();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("relations line " + std::to_string(line_) + ": " + msg);
    }

private:
    std::string_view s_;
    std::size_t p_ = 0;
    int line_;
};

}  // namespace

RelationSet parse_relations(std::string_view text) {
    RelationSet R;
    std::vector<std::tuple<int, int, Terms>> rules;
    int lineNo = 0;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.find("->") == std::string_view::npos) {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError("relations line " + std::to_string(lineNo) + ": expected key = value");
            std::string key(trim(line.substr(0, eq)));
            std::string_view val = trim(line.substr(eq + 1));
            if (key == "tag") {
                R.tag = val;
            } else if (key == "d" || key == "n" || key == "K") {
                int v = std::stoi(std::string(val));
                (key == "d" ? R.d : key == "n" ? R.n : R.K) = v;
            } else if (key == "params") {
                while (!val.empty()) {
                    auto comma = val.find(',');
                    std::string_view p = trim(val.substr(0, comma));
                    if (!p.empty()) R.params.emplace_back(p);
                    val = comma == std::string_view::npos ? std::string_view() : val.substr(comma + 1);
                }
            } else {
                throw ParseError("relations line " + std::to_string(lineNo) + ": unknown key " + key);
            }
            continue;
        }
        RuleParser p(line, lineNo);
        Word lhs = p.word();
        if (lhs.size() != 2 || lhs[0] >= lhs[1]) p.fail("left side must be x_i x_j with i < j");
        if (!p.eat("->")) p.fail("expected '->'");
        Word swapped = p.word();
        if (swapped != Word{lhs[1], lhs[0]}) p.fail("right side must start with x_j x_i");
        Terms f;
        while (!p.done()) {
            if (!p.eat("+")) p.fail("expected '+'");
            Poly c = p.coefficient();
            Word w;
            if (p.eat("*")) w = p.word();
            accumulate(f, w, c);
        }
        rules.emplace_back(lhs[0], lhs[1], std::move(f));
    }
    for (auto& [i, j, f] : rules) {
        if (j > R.n) throw ParseError("rule (" + std::to_string(i) + "," + std::to_string(j) + ") exceeds n");
        NCElement e(R.n, R.K);
        for (const auto& [w, c] : f) e.add(w, c);
        R.rules[{i, j}] = e;
    }
    return R;
}

}  // namespace jetlie
