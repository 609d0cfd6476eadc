#include "jetlie/bialgebra.hpp"

#include "jetlie/catalog.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace jetlie {

Scalar witt_structure_constant(int i, int j, int k) { return k == i + j ? Scalar(i - j) : Scalar(0); }

// ---------------------------------------------------------------- RMatrix

Scalar RMatrix::at(int i, int j) const {
    if (i == j) return 0;
    auto it = r.find({std::min(i, j), std::max(i, j)});
    if (it == r.end()) return 0;
    return i < j ? it->second : Scalar(-it->second);
}

void RMatrix::set(int i, int j, const Scalar& v) {
    if (i == j) {
        if (v != 0) throw std::invalid_argument("diagonal entries of r vanish");
        return;
    }
    if (std::min(i, j) < min_index) throw std::invalid_argument("r index below the minimum index");
    Scalar val = i < j ? v : Scalar(-v);
    val.canonicalize();
    std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    if (val == 0)
        r.erase(key);
    else
        r[key] = val;
}

int RMatrix::max_index() const {
    int m = min_index;
    for (const auto& [k, v] : r) m = std::max(m, k.second);
    return m;
}

RMatrix rmatrix_from_phi(const PhiFunction& phi, int R) {
    RMatrix r;
    r.min_index = phi.min_index - 1;
    r.tag = phi.tag;
    for (int i = r.min_index; i <= R; ++i)
        for (int j = i + 1; j <= R; ++j) {
            Poly v = phi.at(i + 1, j + 1);
            if (!v.is_constant() && !v.is_zero())
                throw std::invalid_argument("r-matrix entries must be rational; specialize the parameters first");
            r.set(i, j, v.constant_term());
        }
    return r;
}

// ---------------------------------------------------------------- cochains

Scalar WedgeCochain::at(int n, int i, int j) const {
    if (i == j || n < min_index || i < min_index || j < min_index) return 0;
    if (reach < kInf && std::max(i, j) > n + reach) return 0;
    return f(n, i, j);
}

std::string WedgeCochain::render(int n, int N) const {
    std::string s;
    for (int i = min_index; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            Scalar c = at(n, i, j) * 2;
            if (c == 0) continue;
            if (s.empty())
                s += render_scalar(c);
            else
                s += (c < 0 ? " - " : " + ") + render_scalar(abs(c));
            s += "*e" + std::to_string(i) + "^e" + std::to_string(j);
        }
    return s.empty() ? "0" : s;
}

WedgeCochain cochain_from_written(int minIndex, int reach, std::string tag,
                                  std::function<Scalar(int, int, int)> written) {
    WedgeCochain a;
    a.min_index = minIndex;
    a.reach = reach;
    a.tag = std::move(tag);
    a.f = [w = std::move(written)](int n, int i, int j) -> Scalar {
        Scalar v = (w(n, i, j) - w(n, j, i)) / 2;
        v.canonicalize();
        return v;
    };
    return a;
}

WedgeCochain coboundary(const RMatrix& r) {
    WedgeCochain a;
    a.min_index = r.min_index;
    a.reach = std::max(0, r.max_index() - r.min_index);
    a.tag = "coboundary(" + r.tag + ")";
    a.f = [r](int n, int i, int j) -> Scalar {
        Scalar v = Scalar(2 * n - i) * r.at(i - n, j) + Scalar(2 * n - j) * r.at(i, j - n);
        return v;
    };
    return a;
}

namespace {

Scalar spow(const Scalar& x, int e) {
    Scalar r = 1;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

}  // namespace

WedgeCochain explicit_family(Family kind, int d, const Scalar& lambda) {
    switch (kind) {
        case Family::PowerFamily:
            // alpha(e_n) = 2n e_d ^ e_n - 2(n-d) e_0 ^ e_{d+n}
            return cochain_from_written(0, d, "power_family_cochain d=" + std::to_string(d), [d](int n, int a, int b) -> Scalar {
                Scalar c = 0;
                if (a == d && b == n) c += 2 * n;
                if (a == 0 && b == d + n) c -= 2 * (n - d);
                return c;
            });
        case Family::ExtendedFamily: {
            if (d < 2) throw std::invalid_argument("the extended family needs d >= 2");
            const Scalar inv = Scalar(2, d - 1);
            return cochain_from_written(0, kInf, "extended_family_cochain d=" + std::to_string(d) + " lambda=" + render_scalar(lambda),
                                        [d, lambda, inv](int n, int a, int b) -> Scalar {
                                            Scalar c = 0;
                                            if (a == 0 && b >= d + n) c += 2 * (2 * n - b) * spow(lambda, b - n - d);
                                            if (b == n && a >= d) c -= 2 * n * spow(lambda, a - d);
                                            if (a >= d + n && b >= 1 && b <= d - 1)
                                                c += inv * (2 * n - a) * spow(lambda, a + b - n - d);
                                            if (a >= d && b >= n + 1 && b <= d + n - 1)
                                                c += inv * (2 * n - b) * spow(lambda, a + b - n - d);
                                            return c;
                                        });
        }
        case Family::Witt:
            // alpha(e_n) = -2n e_{-1} ^ e_n + 2(n+1) e_0 ^ e_{n-1}
            return cochain_from_written(-1, 0, "witt_cochain", [](int n, int a, int b) -> Scalar {
                Scalar c = 0;
                if (a == -1 && b == n) c -= 2 * n;
                if (a == 0 && b == n - 1) c += 2 * (n + 1);
                return c;
            });
        case Family::Sl2First:
            return cochain_from_written(-1, 2, "sl2 first", [](int n, int a, int b) -> Scalar {
                Scalar c = 0;
                if (n == 0 && a == 0 && b == -1) c += 2;
                if (n == 1 && a == -1 && b == 1) c -= 2;
                return c;
            });
        case Family::Sl2Second:
            return cochain_from_written(-1, 2, "sl2 second", [](int n, int a, int b) -> Scalar {
                Scalar c = 0;
                if (n == -1 && a == 1 && b == -1) c += 2;
                if (n == 0 && a == 0 && b == 1) c -= 2;
                return c;
            });
    }
    throw std::invalid_argument("unknown family");
}

Report compare_cochains(const std::string& check, const WedgeCochain& a, const WedgeCochain& b, int N) {
    Report rep;
    rep.check = check;
    rep.param("left", a.tag).param("right", b.tag).param("N", N);
    const int lo = std::min(a.min_index, b.min_index);
    std::vector<std::array<int, 3>> idx;
    for (int n = lo; n <= N; ++n)
        for (int i = lo; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) idx.push_back({n, i, j});
    int sign = 0;
    for (auto [n, i, j] : idx) {
        Scalar x = a.at(n, i, j), y = b.at(n, i, j);
        if (y != 0 && x != 0) {
            sign = x == y ? 1 : (x == -y ? -1 : 0);
            break;
        }
        if (x != 0 || y != 0) break;
    }
    if (sign == 0) sign = 1;
    for (auto [n, i, j] : idx) {
        Scalar diff = a.at(n, i, j) - b.at(n, i, j) * sign;
        if (diff != 0) {
            rep.fail({n, i, j}, render_scalar(diff * 2));
            break;
        }
    }
    rep.param("sign", rep.pass ? (sign > 0 ? "+1" : "-1") : "none");
    return rep;
}

Report verify_cocycle(const WedgeCochain& alpha, int N, Exec exec) {
    Report rep;
    rep.check = "cocycle";
    rep.param("cochain", alpha.tag).param("N", N);
    const int lo = alpha.min_index;
    std::vector<std::pair<int, int>> nm;
    for (int n = lo; n <= N; ++n)
        for (int m = n + 1; m <= N; ++m) nm.emplace_back(n, m);
    struct Hit {
        bool bad = false;
        std::array<int, 4> at{};
        Scalar res;
    };
    auto results = index_map(nm.size(), [&](std::size_t t) {
        auto [n, m] = nm[t];
        Hit h;
        for (int i = lo; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) {
                Scalar lhs = Scalar(n - m) * alpha.at(n + m, i, j);
                Scalar rhs = Scalar(2 * n - i) * alpha.at(m, i - n, j) + Scalar(2 * n - j) * alpha.at(m, i, j - n) -
                             Scalar(2 * m - i) * alpha.at(n, i - m, j) - Scalar(2 * m - j) * alpha.at(n, i, j - m);
                if (lhs != rhs) {
                    h.bad = true;
                    h.at = {n, m, i, j};
                    h.res = lhs - rhs;
                    return h;
                }
            }
        return h;
    }, exec);
    for (const auto& h : results)
        if (h.bad) {
            rep.fail({h.at[0], h.at[1], h.at[2], h.at[3]}, render_scalar(h.res));
            break;
        }
    rep.param("equations", static_cast<long>(nm.size()));
    return rep;
}

Report verify_cojacobi(const WedgeCochain& alpha, int N, Exec exec) {
    if (alpha.reach >= kInf) throw std::invalid_argument("co-Jacobi sums need a cochain of bounded reach");
    Report rep;
    rep.check = "cojacobi";
    rep.param("cochain", alpha.tag).param("N", N);
    const int lo = alpha.min_index;
    std::vector<int> ns;
    for (int n = lo; n <= N; ++n) ns.push_back(n);
    struct Hit {
        bool bad = false;
        std::array<int, 4> at{};
        Scalar res;
    };
    auto results = index_map(ns.size(), [&](std::size_t t) {
        const int n = ns[t];
        Hit h;
        const int jmax = n + alpha.reach;
        for (int i = lo; i <= N; ++i)
            for (int s = i + 1; s <= N; ++s)
                for (int p = s + 1; p <= N; ++p) {
                    Scalar acc = 0;
                    for (int j = lo; j <= jmax; ++j)
                        acc += alpha.at(n, i, j) * alpha.at(j, s, p) + alpha.at(n, p, j) * alpha.at(j, i, s) +
                               alpha.at(n, s, j) * alpha.at(j, p, i);
                    if (acc != 0) {
                        h.bad = true;
                        h.at = {n, i, s, p};
                        h.res = acc;
                        return h;
                    }
                }
        return h;
    }, exec);
    for (const auto& h : results)
        if (h.bad) {
            rep.fail({h.at[0], h.at[1], h.at[2], h.at[3]}, render_scalar(h.res));
            break;
        }
    return rep;
}

// ---------------------------------------------------------------- CYBE

Scalar cybe_residual(const RMatrix& r, int n, int j, int l) {
    Scalar acc = 0;
    for (int k = r.min_index; k <= r.max_index(); ++k) {
        if (k == 0) continue;
        Scalar t = (r.at(n - k, l) + r.at(n, l - k)) * r.at(k, j) + (r.at(j, n - k) + r.at(j - k, n)) * r.at(k, l) +
                   (r.at(l, j - k) + r.at(l - k, j)) * r.at(k, n);
        acc += t * k;
    }
    return acc;
}

Scalar rr_component(const RMatrix& r, int n, int j, int l) {
    if (std::min({n, j, l}) < r.min_index) return 0;
    Scalar acc = 0;
    const int lo = r.min_index, hi = r.max_index();
    // C_n^{ik} r_ij r_kl + C_j^{ik} r_il r_kn + C_l^{ik} r_in r_kj with k = target - i
    for (int i = lo; i <= hi; ++i) {
        acc += witt_structure_constant(i, n - i, n) * r.at(i, j) * r.at(n - i, l);
        acc += witt_structure_constant(i, j - i, j) * r.at(i, l) * r.at(j - i, n);
        acc += witt_structure_constant(i, l - i, l) * r.at(i, n) * r.at(l - i, j);
    }
    return acc;
}

namespace {

std::vector<std::array<int, 3>> ordered_triples(int lo, int N) {
    std::vector<std::array<int, 3>> t;
    for (int a = lo; a <= N; ++a)
        for (int b = a + 1; b <= N; ++b)
            for (int c = b + 1; c <= N; ++c) t.push_back({a, b, c});
    return t;
}

}  // namespace

Report verify_cybe(const RMatrix& r, int N, Exec exec) {
    Report rep;
    rep.check = "cybe";
    rep.param("r", r.tag).param("N", N);
    auto triples = ordered_triples(r.min_index, N);
    auto res = index_map(triples.size(), [&](std::size_t t) -> Scalar {
        auto [n, j, l] = triples[t];
        return cybe_residual(r, n, j, l);
    }, exec);
    for (std::size_t t = 0; t < triples.size(); ++t)
        if (res[t] != 0) {
            rep.fail({triples[t][0], triples[t][1], triples[t][2]}, render_scalar(res[t]));
            break;
        }
    return rep;
}

Report verify_rr_invariance(const RMatrix& r, int N, Exec exec) {
    Report rep;
    rep.check = "rr_invariance";
    rep.param("r", r.tag).param("N", N);
    auto triples = ordered_triples(r.min_index, N);
    auto act = [&](int m, int a, int b, int c) -> Scalar {
        return Scalar(2 * m - a) * rr_component(r, a - m, b, c) + Scalar(2 * m - b) * rr_component(r, a, b - m, c) +
               Scalar(2 * m - c) * rr_component(r, a, b, c - m);
    };
    // e_0.<r,r> against (n+j+l) times the CYBE residual, with a sign to be found
    auto ident = index_map(triples.size(), [&](std::size_t t) {
        auto [a, b, c] = triples[t];
        return std::pair<Scalar, Scalar>(act(0, a, b, c), Scalar(cybe_residual(r, a, b, c) * (a + b + c)));
    }, exec);
    int sign = 0;
    for (const auto& [e0, cy] : ident)
        if (cy != 0) {
            sign = e0 == cy ? 1 : (e0 == -cy ? -1 : 0);
            break;
        }
    bool identity = true;
    for (std::size_t t = 0; t < triples.size() && identity; ++t) {
        const auto& [e0, cy] = ident[t];
        Scalar s = sign == 0 ? Scalar(-1) : Scalar(sign);
        if (e0 != cy * s) {
            identity = false;
            rep.fail({0, triples[t][0], triples[t][1], triples[t][2]}, render_scalar(e0 - cy * s));
        }
    }
    rep.param("e0_identity", identity ? "holds" : "fails");
    rep.param("sign", sign == 0 ? "undetermined" : (sign > 0 ? "+1" : "-1"));
    if (!identity) return rep;
    std::vector<std::array<int, 4>> work;
    for (int m = r.min_index; m <= N; ++m)
        for (auto [a, b, c] : triples) work.push_back({m, a, b, c});
    auto res = index_map(work.size(), [&](std::size_t t) -> Scalar {
        auto [m, a, b, c] = work[t];
        return act(m, a, b, c);
    }, exec);
    for (std::size_t t = 0; t < work.size(); ++t)
        if (res[t] != 0) {
            rep.fail({work[t][0], work[t][1], work[t][2], work[t][3]}, render_scalar(res[t]));
            break;
        }
    return rep;
}

// ---------------------------------------------------------------- tangent data

Poly beta_entry(const PoissonStructure& w, int n, int i, int j) {
    std::map<std::uint32_t, Poly> e;
    for (int k = w.start; k <= w.n + 1; ++k) e[xv(k).key()] = k == 1 ? Poly(1) : Poly();
    return w.at(i, j).derivative(xv(n)).substitute(e);
}

Series beta_generating_series(const PhiFunction& phi, int n, int N) {
    const SVar u = SVar::u, v = SVar::v;
    Series P = phi.series();
    auto mono = [](SVar s, int k) -> Series {
        std::vector<Poly> c(k + 1);
        c[k] = Poly(1);
        return Series::univariate(s, c);
    };
    Series A = P * (mono(u, n - 1) + mono(v, n - 1)) * Poly(n) -
               (mono(u, n) * P.derivative(u) + mono(v, n) * P.derivative(v));
    return A.truncated(u, N).truncated(v, N);
}

Report beta_correspondence(const PoissonStructure& w, const PhiFunction& phi, int N) {
    Report rep;
    rep.check = "beta_correspondence";
    rep.param("structure", w.tag).param("N", N);
    if (!phi.exact() && phi.D < 2 * N)
        throw DegreeTooLow("beta comparison through " + std::to_string(N) + " needs phi through degree " +
                           std::to_string(2 * N));
    auto lam = [&](int a, int b) -> Poly { return (a < phi.min_index || b < phi.min_index) ? Poly() : phi.at(a, b); };
    for (int n = 1; n <= N && rep.pass; ++n) {
        Series A = beta_generating_series(phi, n, N);
        for (int i = 1; i <= N && rep.pass; ++i)
            for (int j = 1; j <= N; ++j) {
                Poly b = i == j ? Poly() : beta_entry(w, n, i, j);
                Poly f = lam(i - n + 1, j) * Scalar(2 * n - i - 1) + lam(i, j - n + 1) * Scalar(2 * n - j - 1);
                if (b != f) {
                    rep.fail({n, i, j}, "formula: " + (b - f).render());
                    break;
                }
                Poly g = A.coeff(i, j);
                if (b != g) {
                    rep.fail({n, i, j}, "series: " + (b - g).render());
                    break;
                }
            }
    }
    return rep;
}

// ---------------------------------------------------------------- recursions

std::vector<Scalar> witt_a_sequence(int N) {
    if (N < 2) throw std::invalid_argument("the sequence starts at a_2");
    std::vector<Scalar> a(N + 1);
    a[2] = 1;
    if (N >= 3) a[3] = 3;
    for (int n = 3; n + 1 <= N; ++n) {
        Scalar t = Scalar(2 * n, (n - 1) * (n + 2)) + Scalar(2 * (n + 1), n + 2) * a[n] -
                   Scalar((n + 1) * (n - 2), (n - 1) * (n + 2)) * a[n - 1];
        t.canonicalize();
        a[n + 1] = t;
    }
    return a;
}

PhiFunction classify_branch_d(int d, const std::map<int, Poly>& free, int D) {
    if (d < 1) throw std::invalid_argument("branch label d must be positive");
    const int top = D - 1 + d;
    std::vector<Poly> l1(top + 1), ld(std::max(D, 1) + 1);  // l1[n] = lambda_{1n}, ld[n] = lambda_{d+1,n}
    auto need = [&](int n) -> Poly {
        auto it = free.find(n);
        if (it == free.end())
            throw std::invalid_argument("classify_branch_d: missing free parameter lambda_{1," + std::to_string(n) + "}");
        return it->second;
    };
    for (int n = 1; n <= top; ++n) {
        if (n <= d) continue;
        if (n == d + 1)
            l1[n] = Poly(1);
        else if (n != 2 * d + 1)
            l1[n] = need(n);
    }
    auto L1 = [&](int n) -> Poly { return n >= 1 && n <= top ? l1[n] : Poly(); };
    auto Ls = [&](int s) -> Poly { return -ld[s]; };  // lambda_{s,d+1}
    auto fill_ld = [&](int n) {
        Poly acc = L1(n + d) * Scalar(d);
        for (int s = 1; s <= n - 1; ++s) acc -= L1(n + d - s + 1) * Ls(s) * Scalar(n + d - 2 * s + 1);
        ld[n] = acc * Scalar(-1, d - n + 1);
    };
    const int last = static_cast<int>(ld.size()) - 1;
    for (int n = 1; n <= std::min(d, last); ++n) fill_ld(n);
    if (2 * d + 1 <= top) {
        Poly acc;
        for (int s = 2; s <= d; ++s) acc += L1(2 * d + 2 - s) * Ls(s) * Scalar(2 * (d + 1 - s));
        l1[2 * d + 1] = acc * Scalar(-1, d);
    }
    for (int n = d + 2; n <= last; ++n) fill_ld(n);
    PhiFunction phi;
    phi.D = D;
    phi.tag = "branch d=" + std::to_string(d);
    auto LD = [&](int n) -> Poly { return n >= 1 && n <= last ? ld[n] : Poly(); };
    for (int m = 1; 2 * m + 1 <= D; ++m)
        for (int n = m + 1; m + n <= D; ++n) phi.set(m, n, L1(m) * LD(n) - L1(n) * LD(m));
    return phi;
}

PhiFunction classify_branch_d_symbolic(int d, int D) {
    std::map<int, Poly> free;
    for (int n = d + 2; n <= D - 1 + d; ++n)
        if (n != 2 * d + 1) free[n] = Poly(lambda_symbol(1, n));
    return classify_branch_d(d, free, D);
}

PhiFunction classify_g0_branch(const std::map<int, Poly>& free, int D) {
    const int top = D + 1;
    std::vector<Poly> l0(top + 1), l1(D + 1);
    l0[1] = Poly(1);
    for (int n = 2; n <= top; ++n) {
        auto it = free.find(n);
        if (it == free.end())
            throw std::invalid_argument("classify_g0_branch: missing free parameter lambda_{0," + std::to_string(n) + "}");
        l0[n] = it->second;
    }
    auto L0 = [&](int n) -> Poly { return n >= 0 && n <= top ? l0[n] : Poly(); };
    if (D >= 0) l1[0] = Poly(-1);
    for (int r = 1; r <= D; ++r) {
        Poly acc = L0(2) * L0(r) * Scalar(2);
        for (int s = 0; s <= r - 1; ++s) acc += L0(r - s + 1) * l1[s] * Scalar(r - 2 * s + 1);
        l1[r] = acc * Scalar(1, r);
    }
    PhiFunction phi;
    phi.D = D;
    phi.min_index = 0;
    phi.tag = "g0 branch";
    for (int n = 0; 2 * n + 1 <= D; ++n)
        for (int r = n + 1; n + r <= D; ++r) phi.set(n, r, L0(n) * l1[r] - l1[n] * L0(r));
    return phi;
}

PhiFunction classify_g0_branch_symbolic(int D) {
    std::map<int, Poly> free;
    for (int n = 2; n <= D + 1; ++n) free[n] = Poly(lambda_symbol(0, n));
    return classify_g0_branch(free, D);
}

}  // namespace jetlie
