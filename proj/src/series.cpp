#include "jetlie/series.hpp"

#include <algorithm>

namespace jetlie {

namespace {

int sat_add(int a, int b) {
    if (a >= kInf || b >= kInf) return kInf;
    long s = static_cast<long>(a) + b;
    return s >= kInf ? kInf : static_cast<int>(s);
}

int sat_mul(int a, int b) {
    if (a >= kInf || b >= kInf) return kInf;
    long s = static_cast<long>(a) * b;
    return s >= kInf ? kInf : static_cast<int>(s);
}

int exp_sum(const Series::Exp& e) { return e[0] + e[1] + e[2]; }

const char* kVarName[3] = {"u", "v", "w"};

}  // namespace

Series Series::constant(const Poly& c) {
    Series s;
    if (!c.is_zero()) s.c_[{0, 0, 0}] = c;
    return s;
}

Series Series::variable(SVar v) {
    Series s;
    int i = static_cast<int>(v);
    s.vars_ = 1u << i;
    Exp e{0, 0, 0};
    e[i] = 1;
    s.c_[e] = Poly(1);
    return s;
}

Series Series::univariate(SVar v, const std::vector<Poly>& coeffs, int bound) {
    Series s;
    int i = static_cast<int>(v);
    s.vars_ = 1u << i;
    s.bound_[i] = bound;
    for (int k = 0; k < static_cast<int>(coeffs.size()) && k <= bound; ++k) {
        Exp e{0, 0, 0};
        e[i] = k;
        s.set(e, coeffs[k]);
    }
    return s;
}

bool Series::known(const Exp& e) const {
    for (int i = 0; i < 3; ++i)
        if (e[i] < 0 || e[i] > bound_[i]) return false;
    return exp_sum(e) <= total_;
}

Poly Series::coeff(const Exp& e) const {
    if (!known(e))
        throw UnknownCoefficient("coefficient (" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                                 "," + std::to_string(e[2]) + ") is beyond the truncation");
    auto it = c_.find(e);
    return it == c_.end() ? Poly() : it->second;
}

void Series::set(const Exp& e, const Poly& p) {
    if (!known(e)) return;
    for (int i = 0; i < 3; ++i)
        if (e[i] != 0) vars_ |= 1u << i;
    if (p.is_zero())
        c_.erase(e);
    else
        c_[e] = p;
}

void Series::add_to(const Exp& e, const Poly& p) {
    if (!known(e) || p.is_zero()) return;
    for (int i = 0; i < 3; ++i)
        if (e[i] != 0) vars_ |= 1u << i;
    auto it = c_.find(e);
    if (it == c_.end()) {
        c_.emplace(e, p);
    } else {
        it->second += p;
        if (it->second.is_zero()) c_.erase(it);
    }
}

int Series::valuation(SVar s) const {
    int i = static_cast<int>(s);
    if (c_.empty()) return sat_add(bound_[i], 1);
    int v = kInf;
    for (const auto& [e, p] : c_) v = std::min(v, e[i]);
    return v;
}

int Series::total_valuation() const {
    if (c_.empty()) return sat_add(total_, 1);
    int v = kInf;
    for (const auto& [e, p] : c_) v = std::min(v, exp_sum(e));
    return v;
}

void Series::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (!known(it->first) || it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
}

Series Series::truncated(SVar s, int b) const {
    Series r = *this;
    int i = static_cast<int>(s);
    r.bound_[i] = std::min(r.bound_[i], b);
    r.prune();
    return r;
}

Series Series::truncated_total(int b) const {
    Series r = *this;
    r.total_ = std::min(r.total_, b);
    r.prune();
    return r;
}

Series Series::declare_var(SVar s) const {
    Series r = *this;
    r.vars_ |= 1u << static_cast<int>(s);
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& [e, p] : r.c_) p = -p;
    return r;
}

Series& Series::operator+=(const Series& o) {
    vars_ |= o.vars_;
    for (int i = 0; i < 3; ++i) bound_[i] = std::min(bound_[i], o.bound_[i]);
    total_ = std::min(total_, o.total_);
    prune();
    for (const auto& [e, p] : o.c_) add_to(e, p);
    return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series operator*(const Series& a, const Series& b) {
    Series r;
    r.vars_ = a.vars_ | b.vars_;
    for (int i = 0; i < 3; ++i) {
        SVar s = static_cast<SVar>(i);
        r.bound_[i] = std::min(sat_add(a.bound_[i], b.valuation(s)), sat_add(b.bound_[i], a.valuation(s)));
    }
    r.total_ = std::min(sat_add(a.total_, b.total_valuation()), sat_add(b.total_, a.total_valuation()));
    std::map<Series::Exp, std::vector<Poly>> parts;
    for (const auto& [ea, pa] : a.c_)
        for (const auto& [eb, pb] : b.c_) {
            Series::Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            if (!r.known(e)) continue;
            parts[e].push_back(pa * pb);
        }
    for (auto& [e, ps] : parts) {
        Poly sum;
        for (auto& p : ps) sum += p;
        if (!sum.is_zero()) r.c_.emplace(e, std::move(sum));
    }
    return r;
}

Series operator*(const Series& a, const Poly& c) {
    Series r = a;
    for (auto& [e, p] : r.c_) p = p * c;
    r.prune();
    return r;
}

bool operator==(const Series& a, const Series& b) { return (a - b).c_.empty(); }

Series Series::derivative(SVar s) const {
    if (!has_var(s)) throw VarMismatch(std::string("series does not depend on ") + kVarName[static_cast<int>(s)]);
    int i = static_cast<int>(s);
    Series r;
    r.vars_ = vars_;
    r.bound_ = bound_;
    r.total_ = total_;
    if (r.bound_[i] < kInf) r.bound_[i] -= 1;
    if (r.total_ < kInf) r.total_ -= 1;
    for (const auto& [e, p] : c_) {
        if (e[i] == 0) continue;
        Exp f = e;
        f[i] -= 1;
        r.c_.emplace(f, p * Scalar(e[i]));
    }
    return r;
}

Series Series::rename(const std::array<SVar, 3>& perm) const {
    Series r;
    r.total_ = total_;
    for (int i = 0; i < 3; ++i) {
        int j = static_cast<int>(perm[i]);
        r.bound_[j] = bound_[i];
        if (vars_ & (1u << i)) r.vars_ |= 1u << j;
    }
    for (const auto& [e, p] : c_) {
        Exp f{0, 0, 0};
        for (int i = 0; i < 3; ++i) f[static_cast<int>(perm[i])] += e[i];
        r.c_.emplace(f, p);
    }
    return r;
}

Series Series::compose(const Series& inner) const {
    if (vars_ & ~1u) throw VarMismatch("outer series of a composition must be univariate in u");
    int maxK = 0;
    for (const auto& [e, p] : c_) maxK = std::max(maxK, e[0]);
    const int outerBound = std::min(bound_[0], total_);
    Series r;
    r.vars_ = inner.vars_;
    r.bound_ = inner.bound_;
    r.total_ = inner.total_;
    if (outerBound < kInf) {
        const int vt = inner.total_valuation();
        if (vt < 1) throw NonNilpotentConstantTerm("inner series has a constant term and the outer series is truncated");
        r.total_ = std::min(r.total_, sat_mul(outerBound + 1, vt) - 1);
        for (int i = 0; i < 3; ++i) {
            int vi = inner.valuation(static_cast<SVar>(i));
            if (vi >= 1 && vi < kInf) r.bound_[i] = std::min(r.bound_[i], sat_mul(outerBound + 1, vi) - 1);
        }
    }
    Series power;
    power.bound_ = r.bound_;
    power.total_ = r.total_;
    power.set({0, 0, 0}, Poly(1));
    for (int k = 0; k <= maxK; ++k) {
        if (k > 0) {
            Series next = power * inner;
            next.bound_ = r.bound_;
            next.total_ = r.total_;
            next.prune();
            power = std::move(next);
        }
        auto it = c_.find({k, 0, 0});
        if (it == c_.end()) continue;
        for (const auto& [e, p] : power.c_) r.add_to(e, it->second * p);
    }
    return r.fold_total();
}

Series& Series::fold_total() {
    for (int i = 0; i < 3; ++i)
        if (vars_ == (1u << i)) {
            bound_[i] = std::min(bound_[i], total_);
            total_ = kInf;
        }
    return *this;
}

Series Series::comp_inverse(int N) const {
    if (vars_ & ~1u) throw VarMismatch("compositional inverse needs a univariate series in u");
    if (bound_[0] < N || total_ < N) throw UnknownCoefficient("series is truncated below the requested order");
    if (!coeff(0).is_zero()) throw NotInvertible("series has a constant term");
    Poly a1 = coeff(1);
    if (a1.size() != 1 || !a1.terms()[0].first.inverse())
        throw NotInvertible("linear coefficient is not an invertible monomial");
    Poly inv1 = a1.pow(-1);
    std::vector<Poly> b(N + 1);
    b[1] = inv1;
    for (int k = 2; k <= N; ++k) {
        Series bs = univariate(SVar::u, b, k);
        Poly acc;
        Series pw = bs;
        for (int i = 2; i <= k; ++i) {
            pw = pw * bs;
            Poly ai = coeff(i);
            if (!ai.is_zero()) acc += ai * pw.coeff(k);
        }
        b[k] = -(inv1 * acc);
    }
    return univariate(SVar::u, b, N);
}

Series Series::exp(int N) const {
    auto it = c_.find({0, 0, 0});
    if (it != c_.end()) throw NonzeroConstantTerm("exp of a series with a constant term");
    Series r = constant(Poly(1));
    r.vars_ = vars_;
    r.bound_ = bound_;
    r.total_ = std::min(total_, N);
    Series pw = r;
    Scalar fact = 1;
    for (int k = 1; k <= N; ++k) {
        pw = (pw * *this).truncated_total(N);
        fact *= k;
        r += pw * Poly(Scalar(1) / fact);
    }
    return r.fold_total();
}

Poly binomial_coefficient(const Poly& lambda, int k) {
    Poly r(1);
    for (int j = 0; j < k; ++j) r = r * (lambda - Poly(j));
    Scalar fact = 1;
    for (int j = 2; j <= k; ++j) fact *= j;
    return r * (Scalar(1) / fact);
}

Series Series::binomial_power(const Poly& lambda, int N) const {
    auto it = c_.find({0, 0, 0});
    if (it == c_.end() || it->second != Poly(1))
        throw NonUnitConstantTerm("binomial power needs constant term 1");
    Series w = *this - constant(Poly(1));
    Series r = constant(Poly(1));
    r.vars_ = vars_;
    r.bound_ = bound_;
    r.total_ = std::min(total_, N);
    Series pw = r;
    for (int k = 1; k <= N; ++k) {
        pw = (pw * w).truncated_total(N);
        if (pw.is_zero()) break;
        r += pw * binomial_coefficient(lambda, k);
    }
    return r.fold_total();
}

Series Series::map_coeffs(const std::function<Poly(const Poly&)>& f) const {
    Series r = *this;
    for (auto& [e, p] : r.c_) p = f(p);
    r.prune();
    return r;
}

std::string Series::render() const {
    if (c_.empty()) return "0";
    std::vector<std::pair<Exp, const Poly*>> v;
    for (const auto& [e, p] : c_) v.emplace_back(e, &p);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        int sa = exp_sum(a.first), sb = exp_sum(b.first);
        if (sa != sb) return sa < sb;
        return a.first > b.first;
    });
    std::string s;
    for (const auto& [e, p] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + p->render() + ")";
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            s += std::string("*") + kVarName[i];
            if (e[i] != 1) s += "^" + std::to_string(e[i]);
        }
    }
    return s;
}

}  // namespace jetlie
