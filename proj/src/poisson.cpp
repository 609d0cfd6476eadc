#include "jetlie/poisson.hpp"

#include <algorithm>
#include <sstream>

namespace jetlie {

// ---------------------------------------------------------------- PhiFunction

Poly PhiFunction::at(int m, int n) const {
    if (m == n) return {};
    if (m + n > D)
        throw UnknownCoefficient("lambda_" + std::to_string(m) + "," + std::to_string(n) +
                                 " lies beyond the table degree " + std::to_string(D));
    auto it = lam.find({std::min(m, n), std::max(m, n)});
    if (it == lam.end()) return {};
    return m < n ? it->second : -it->second;
}

void PhiFunction::set(int m, int n, const Poly& v) {
    if (m == n) {
        if (!v.is_zero()) throw std::invalid_argument("diagonal entries of phi vanish");
        return;
    }
    Poly val = m < n ? v : -v;
    std::pair<int, int> key{std::min(m, n), std::max(m, n)};
    if (val.is_zero())
        lam.erase(key);
    else
        lam[key] = val;
}

Series PhiFunction::series() const {
    Series s;
    s = s.declare_var(SVar::u).declare_var(SVar::v);
    if (!exact()) s = s.truncated_total(D);
    for (const auto& [k, v] : lam) {
        s.add_to({k.first, k.second, 0}, v);
        s.add_to({k.second, k.first, 0}, -v);
    }
    return s;
}

int PhiFunction::min_total_degree() const {
    int p = kInf;
    for (const auto& [k, v] : lam) p = std::min(p, k.first + k.second);
    return p;
}

bool PhiFunction::divisible_by_uv() const {
    return std::none_of(lam.begin(), lam.end(), [](const auto& e) { return e.first.first == 0; });
}

PhiFunction PhiFunction::map(const std::function<Poly(const Poly&)>& f) const {
    PhiFunction r = *this;
    r.lam.clear();
    for (const auto& [k, v] : lam) r.set(k.first, k.second, f(v));
    return r;
}

PhiFunction PhiFunction::parse_table(std::string_view text, int D, int minIndex) {
    PhiFunction phi;
    phi.D = D;
    phi.min_index = minIndex;
    phi.tag = "table";
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int m, n;
        if (!(ls >> m >> n)) continue;
        std::string rest;
        std::getline(ls, rest);
        if (m < minIndex || n < minIndex) throw ParseError("table index below the minimum index");
        phi.set(m, n, phi.at(m, n) + Poly::parse(rest));
    }
    return phi;
}

PhiFunction phi_power_family(int d) {
    PhiFunction phi;
    phi.tag = "power d=" + std::to_string(d);
    phi.set(d + 1, 1, Poly(1));
    return phi;
}

PhiFunction phi_extended_family(int d, int D, const Poly& lambda) {
    if (d < 2) throw std::invalid_argument("the extended family needs d >= 2");
    Series num;
    num = num.declare_var(SVar::u).declare_var(SVar::v);
    const Scalar inv = Scalar(1) / (d - 1);
    auto put = [&](int a, int b, const Poly& c) { num.add_to({a, b, 0}, c); };
    put(1, d + 1, Poly(1));
    put(d + 1, 1, Poly(-1));
    put(d + 1, 2, lambda * Scalar(d) * inv);
    put(2, d + 1, -(lambda * Scalar(d) * inv));
    std::vector<Poly> geo(D + 1);
    geo[0] = Poly(1);
    for (int a = 1; a <= D; ++a) geo[a] = geo[a - 1] * lambda;
    Series gu = Series::univariate(SVar::u, geo, D);
    Series gv = Series::univariate(SVar::v, geo, D);
    Series s = (num.truncated_total(D) * gu * gv).truncated_total(D);
    PhiFunction phi;
    phi.D = D;
    phi.tag = "extended d=" + std::to_string(d);
    for (const auto& [e, c] : s.coeffs())
        if (e[0] < e[1]) phi.set(e[0], e[1], c);
    return phi;
}

PhiFunction phi_linear() {
    PhiFunction phi;
    phi.min_index = 0;
    phi.tag = "linear";
    phi.set(1, 0, Poly(1));
    return phi;
}

PhiFunction phi_exponential(const Poly& lambda, int D) {
    PhiFunction phi;
    phi.min_index = 0;
    phi.D = D;
    phi.tag = "exponential";
    Poly c(1);
    for (int k = 1; k <= D; ++k) {
        c = c * lambda * (Scalar(1) / k);
        phi.set(k, 0, c);
    }
    return phi;
}

// ---------------------------------------------------------------- structures

Poly PoissonStructure::at(int i, int j) const {
    if (i == j) return {};
    auto it = omega.find({std::min(i, j), std::max(i, j)});
    if (it == omega.end()) return {};
    return i < j ? it->second : -it->second;
}

PoissonStructure PoissonStructure::block(int m) const {
    PoissonStructure r = *this;
    r.n = m;
    std::erase_if(r.omega, [m](const auto& e) { return e.first.second > m; });
    return r;
}

namespace {

int index0_degree(const Monomial& m) {
    int a = 0;
    for (auto [k, e] : m.factors()) {
        Variable v = Variable::from_key(k);
        if (v.index == 0 && v.kind != VarKind::Param && v.kind != VarKind::Deform && v.kind != VarKind::AuxT)
            a += e;
    }
    return a;
}

Poly cap_index0(const Poly& p, int nil) {
    return p.filter([nil](const Monomial& m) { return index0_degree(m) <= nil; });
}

}  // namespace

PoissonStructure build_omega(const PhiFunction& phi, int n, int start, int nil) {
    if (start == 1 && !phi.divisible_by_uv())
        throw DivisibilityViolation("phi must be divisible by uv on the group fixing the origin");
    if (nil < 0) nil = n;
    const int lim = start == 1 ? n : n + 1;
    const int maxPow = start == 1 ? n : n + nil;
    const int need = start == 1 ? 2 * n - 1 : 2 * maxPow;
    if (!phi.exact() && phi.D < need)
        throw DegreeTooLow("phi is complete through degree " + std::to_string(phi.D) + " but truncation " +
                           std::to_string(n) + " needs " + std::to_string(need));
    auto X = [&](int k) { return (k >= start && k <= lim) ? Poly(xv(k)) : Poly(); };
    std::vector<Poly> xp(n + 1);
    for (int k = 0; k <= n; ++k) xp[k] = X(k + 1) * Scalar(k + 1);
    // P[m][i] = [u^i] x(u)^m
    std::vector<std::vector<Poly>> P(maxPow + 1, std::vector<Poly>(n + 1));
    P[0][0] = Poly(1);
    for (int m = 1; m <= maxPow; ++m)
        for (int i = 0; i <= n; ++i) {
            Poly acc;
            for (int k = start; k <= i; ++k)
                if (!P[m - 1][i - k].is_zero()) acc += X(k) * P[m - 1][i - k];
            P[m][i] = start == 0 ? cap_index0(acc, nil) : acc;
        }
    std::vector<std::pair<std::pair<int, int>, Poly>> entries;
    for (const auto& [k, v] : phi.lam) {
        entries.push_back({k, v});
        entries.push_back({{k.second, k.first}, -v});
    }
    PoissonStructure w;
    w.n = n;
    w.start = start;
    w.nil = nil;
    w.tag = phi.tag;
    for (int i = start; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Poly acc;
            for (const auto& [mk, lam] : entries) {
                auto [m, mm] = mk;
                if (m > i || mm > j) continue;
                Poly t = xp[i - m] * xp[j - mm];
                if (m <= maxPow && mm <= maxPow) t -= P[m][i] * P[mm][j];
                if (!t.is_zero()) acc += lam * t;
            }
            if (start == 0) acc = cap_index0(acc, nil);
            if (!acc.is_zero()) w.omega[{i, j}] = acc;
        }
    return w;
}

PoissonStructure omega_power_closed_form(int d, int n) {
    auto X = [&](int k) { return (k >= 1 && k <= n) ? Poly(xv(k)) : Poly(); };
    // S[p][k] = sum over compositions of k into p positive parts
    std::vector<std::vector<Poly>> S(d + 2, std::vector<Poly>(n + 1));
    S[0][0] = Poly(1);
    for (int p = 1; p <= d + 1; ++p)
        for (int k = 1; k <= n; ++k)
            for (int s = 1; s <= k; ++s)
                if (!S[p - 1][k - s].is_zero()) S[p][k] += X(s) * S[p - 1][k - s];
    PoissonStructure w;
    w.n = n;
    w.tag = "power closed form d=" + std::to_string(d);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Poly v = X(j) * X(i - d) * Scalar((i - d) * j) - X(i) * X(j - d) * Scalar(i * (j - d)) +
                     X(i) * S[d + 1][j] - X(j) * S[d + 1][i];
            if (!v.is_zero()) w.omega[{i, j}] = v;
        }
    return w;
}

PoissonStructure omega_linear_closed_form(int n) {
    PoissonStructure w;
    w.n = n;
    w.start = 0;
    w.nil = n;
    w.tag = "linear closed form";
    auto X = [](int k) { return Poly(xv(k)); };
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Poly v = X(i) * X(j + 1) * Scalar(i * (j + 1)) - X(i + 1) * X(j) * Scalar((i + 1) * j);
            if (j == 0) v -= X(i);
            if (i == 0) v += X(j);
            if (!v.is_zero()) w.omega[{i, j}] = v;
        }
    return w;
}

// ---------------------------------------------------------------- verifiers

Report verify_jacobi(const PoissonStructure& w, Exec exec) {
    Report rep;
    rep.check = "jacobi";
    rep.param("structure", w.tag).param("n", w.n).param("start", w.start);
    auto closed = [&](const Poly& p) {
        for (const auto& t : p.terms())
            for (auto [k, e] : t.first.factors()) {
                Variable v = Variable::from_key(k);
                if (v.kind == w.kind && (v.index < w.start || v.index > w.n)) return false;
            }
        return true;
    };
    std::vector<std::array<int, 3>> triples;
    for (int j = w.start; j <= w.n; ++j)
        for (int k = j + 1; k <= w.n; ++k)
            for (int l = k + 1; l <= w.n; ++l) triples.push_back({j, k, l});
    struct Out {
        bool skipped = false;
        Poly residual;
    };
    auto results = index_map(triples.size(), [&](std::size_t t) {
        auto [j, k, l] = triples[t];
        Out o;
        Poly wkl = w.at(k, l), wlj = w.at(l, j), wjk = w.at(j, k);
        if (!closed(wkl) || !closed(wlj) || !closed(wjk)) {
            o.skipped = true;
            return o;
        }
        for (int i = w.start; i <= w.n; ++i) {
            Variable xi = w.coord(i);
            Poly a = wkl.derivative(xi), b = wlj.derivative(xi), c = wjk.derivative(xi);
            if (!a.is_zero()) o.residual += w.at(i, j) * a;
            if (!b.is_zero()) o.residual += w.at(i, k) * b;
            if (!c.is_zero()) o.residual += w.at(i, l) * c;
        }
        return o;
    }, exec);
    long checked = 0, skipped = 0;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        if (results[t].skipped) {
            ++skipped;
            continue;
        }
        ++checked;
        if (rep.pass && !results[t].residual.is_zero()) {
            auto [j, k, l] = triples[t];
            rep.fail({j, k, l}, results[t].residual.render());
        }
    }
    rep.param("checked", checked).param("skipped", skipped);
    return rep;
}

Report verify_multiplicativity(const PoissonStructure& w, Exec exec) {
    Report rep;
    rep.check = "multiplicativity";
    rep.param("structure", w.tag).param("n", w.n).param("start", w.start);
    const int N = w.n;
    const int ncheck = w.start == 1 ? N : N - w.nil - 2;
    if (w.start == 0) rep.param("nil", w.nil).param("compared_up_to", ncheck);
    if (ncheck < w.start + 1) throw DegreeTooLow("structure is too short to compare any bracket");
    JetElement X = symbolic_jet(VarKind::GroupX, N, w.start, w.nil);
    JetElement Y = symbolic_jet(VarKind::GroupY, N, w.start, w.nil);
    JetElement Z = jet_compose(X, Y);
    std::map<std::uint32_t, Poly> toZ, toY;
    for (int k = w.start; k <= N; ++k) {
        toZ[xv(k).key()] = Z[k];
        toY[xv(k).key()] = Poly(yv(k));
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = w.start; i <= ncheck; ++i)
        for (int j = i + 1; j <= ncheck; ++j) pairs.emplace_back(i, j);
    std::vector<std::vector<Poly>> dx(ncheck + 1, std::vector<Poly>(N + 1)), dy = dx;
    for (int i = w.start; i <= ncheck; ++i)
        for (int k = w.start; k <= N; ++k) {
            dx[i][k] = Z[i].derivative(xv(k));
            dy[i][k] = Z[i].derivative(yv(k));
        }
    std::map<std::pair<int, int>, Poly> wy;
    for (const auto& [k, v] : w.omega) wy[k] = v.substitute(toY);
    auto compare_mod = [&](const Poly& p) {
        if (w.start == 1) return p;
        return p.filter([&](const Monomial& m) { return index0_degree(m) < w.nil; });
    };
    auto results = index_map(pairs.size(), [&](std::size_t t) {
        auto [i, j] = pairs[t];
        Poly lhs = w.at(i, j).substitute(toZ);
        Poly rhs;
        for (const auto& [kl, v] : w.omega) {
            auto [k, l] = kl;
            if (k > N || l > N) continue;
            Poly gx = dx[i][k] * dx[j][l] - dx[i][l] * dx[j][k];
            if (!gx.is_zero()) rhs += v * gx;
            Poly gy = dy[i][k] * dy[j][l] - dy[i][l] * dy[j][k];
            if (!gy.is_zero()) rhs += wy.at(kl) * gy;
        }
        return compare_mod(lhs - rhs);
    }, exec);
    for (std::size_t t = 0; t < pairs.size(); ++t)
        if (!results[t].is_zero()) {
            rep.fail({pairs[t].first, pairs[t].second}, results[t].render());
            break;
        }
    rep.param("pairs", static_cast<long>(pairs.size()));
    return rep;
}

Series phi_equation_residual(const PhiFunction& phi, int Dcheck) {
    const int p = phi.min_total_degree();
    if (!phi.exact() && p < kInf && Dcheck > phi.D + p - 1)
        throw DegreeTooLow("phi table of degree " + std::to_string(phi.D) + " determines the residual only through degree " +
                           std::to_string(phi.D + p - 1));
    using A = std::array<SVar, 3>;
    const SVar u = SVar::u, v = SVar::v, w = SVar::w;
    Series P = phi.series().truncated_total(Dcheck + 1);
    Series Q = P.derivative(v);
    auto Pr = [&](SVar a, SVar b, SVar c) { return P.rename(A{a, b, c}); };
    auto Qr = [&](SVar a, SVar b, SVar c) { return Q.rename(A{a, b, c}); };
    // phi(a,b) with (u,v,w) -> renamed: first argument a, second b.
    Series Puv = P, Pvw = Pr(v, w, u), Pwu = Pr(w, u, v);
    Series Qwu = Qr(w, u, v), Qwv = Qr(w, v, u), Quv = Q, Quw = Qr(u, w, v), Qvw = Qr(v, w, u), Qvu = Qr(v, u, w);
    Series r = Puv * (Qwu + Qwv) + Pvw * (Quv + Quw) + Pwu * (Qvw + Qvu);
    return r.truncated_total(Dcheck);
}

Report verify_phi_equation(const PhiFunction& phi, int Dcheck) {
    Report rep;
    rep.check = "phi_equation";
    rep.param("phi", phi.tag).param("degree", Dcheck);
    Series r = phi_equation_residual(phi, Dcheck);
    if (!r.is_zero()) {
        std::vector<std::pair<Series::Exp, Poly>> v(r.coeffs().begin(), r.coeffs().end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            int sa = a.first[0] + a.first[1] + a.first[2], sb = b.first[0] + b.first[1] + b.first[2];
            return sa != sb ? sa < sb : a.first < b.first;
        });
        rep.fail({v[0].first[0], v[0].first[1], v[0].first[2]}, v[0].second.render());
    }
    return rep;
}

Report verify_inversion_antipoisson(const PoissonStructure& w, Exec exec) {
    if (w.start != 1) throw NotInvertible("inversion is checked on the group fixing the origin");
    Report rep;
    rep.check = "inversion_antipoisson";
    rep.param("structure", w.tag).param("n", w.n);
    const int n = w.n;
    JetElement X = symbolic_jet(VarKind::GroupX, n, 1);
    JetElement Xi = jet_inverse(X);
    std::map<std::uint32_t, Poly> bind;
    for (int k = 1; k <= n; ++k) bind[xv(k).key()] = Xi[k];
    std::vector<std::vector<Poly>> d(n + 1, std::vector<Poly>(n + 1));
    for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= n; ++k) d[m][k] = Xi[m].derivative(xv(k));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    auto results = index_map(pairs.size(), [&](std::size_t t) {
        auto [m, q] = pairs[t];
        Poly lhs = w.at(m, q).substitute(bind);
        Poly rhs;
        for (const auto& [kl, v] : w.omega) {
            auto [k, l] = kl;
            Poly g = d[m][k] * d[q][l] - d[m][l] * d[q][k];
            if (!g.is_zero()) rhs += v * g;
        }
        return lhs + rhs;
    }, exec);
    for (std::size_t t = 0; t < pairs.size(); ++t)
        if (!results[t].is_zero()) {
            rep.fail({pairs[t].first, pairs[t].second}, results[t].render());
            break;
        }
    return rep;
}

Report compare_brackets(const std::string& check, const PoissonStructure& w,
                        const std::map<std::pair<int, int>, Poly>& expected) {
    Report rep;
    rep.check = check;
    rep.param("structure", w.tag).param("n", w.n);
    long mismatches = 0;
    for (const auto& [ij, e] : expected) {
        Poly diff = w.at(ij.first, ij.second) - e;
        if (diff.is_zero()) continue;
        ++mismatches;
        if (rep.pass) rep.fail({ij.first, ij.second}, diff.render());
    }
    rep.param("entries", static_cast<long>(expected.size())).param("mismatches", mismatches);
    return rep;
}

}  // namespace jetlie
