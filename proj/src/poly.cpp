#include "jetlie/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace jetlie {

namespace {

struct ParamRegistry {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> slots;

    ParamRegistry() {
        // Pre-registered so that their relative order is fixed regardless of
        // which suite touches them first.
        for (const char* n : {"C", "C1", "C2", "C3", "C4", "C5", "lambda", "c"}) add(n);
    }
    int add(const std::string& n) {
        auto it = slots.find(n);
        if (it != slots.end()) return it->second;
        int s = static_cast<int>(names.size());
        names.push_back(n);
        slots.emplace(n, s);
        return s;
    }
};

ParamRegistry& registry() {
    static ParamRegistry r;
    return r;
}

}  // namespace

Variable param(std::string_view name) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return {VarKind::Param, r.add(std::string(name))};
}

std::string param_name(int slot) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    if (slot < 0 || slot >= static_cast<int>(r.names.size())) return "p?" + std::to_string(slot);
    return r.names[slot];
}

bool Variable::invertible() const {
    switch (kind) {
        case VarKind::GroupX:
        case VarKind::GroupY:
        case VarKind::GroupZ: return index == 1;
        case VarKind::AuxT: return true;
        default: return false;
    }
}

std::string Variable::name() const {
    auto idx = [this] {
        return index < 0 ? "m" + std::to_string(-index) : std::to_string(index);
    };
    switch (kind) {
        case VarKind::GroupX: return "x" + idx();
        case VarKind::GroupY: return "y" + idx();
        case VarKind::GroupZ: return "z" + idx();
        case VarKind::DensityX: return "s" + idx();
        case VarKind::AuxT: return "t" + idx();
        case VarKind::Deform: return "h";
        case VarKind::Param: return param_name(index);
    }
    return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Variable v, int e) {
    if (e != 0) {
        f_.emplace_back(v.key(), e);
        deg_ = e;
    }
}

Monomial Monomial::from_factors(std::vector<Factor> f) {
    std::sort(f.begin(), f.end());
    Monomial m;
    for (auto& [k, e] : f) {
        if (!m.f_.empty() && m.f_.back().first == k)
            m.f_.back().second += e;
        else
            m.f_.emplace_back(k, e);
    }
    std::erase_if(m.f_, [](const Factor& x) { return x.second == 0; });
    for (auto& [k, e] : m.f_) m.deg_ += e;
    return m;
}

int Monomial::exponent(std::uint32_t key) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), Factor{key, INT32_MIN});
    return (it != f_.end() && it->first == key) ? it->second : 0;
}

int Monomial::exponent(Variable v) const { return exponent(v.key()); }

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() || b != o.f_.end()) {
        if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
            r.f_.push_back(*a++);
        } else if (a == f_.end() || b->first < a->first) {
            r.f_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) r.f_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

std::optional<Monomial> Monomial::inverse() const {
    Monomial r;
    for (auto [k, e] : f_) {
        if (!Variable::from_key(k).invertible()) return std::nullopt;
        r.f_.emplace_back(k, -e);
    }
    r.deg_ = -deg_;
    return r;
}

Monomial Monomial::without(std::uint32_t key) const {
    Monomial r;
    for (auto fe : f_)
        if (fe.first != key) {
            r.f_.push_back(fe);
            r.deg_ += fe.second;
        }
    return r;
}

Monomial Monomial::pow(int e) const {
    if (e == 0) return {};
    Monomial r = *this;
    for (auto& fe : r.f_) fe.second *= e;
    r.deg_ *= e;
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    auto i = a.f_.begin(), j = b.f_.begin();
    while (i != a.f_.end() || j != b.f_.end()) {
        std::uint32_t ka = i != a.f_.end() ? i->first : UINT32_MAX;
        std::uint32_t kb = j != b.f_.end() ? j->first : UINT32_MAX;
        std::uint32_t k = std::min(ka, kb);
        int ea = ka == k ? i->second : 0;
        int eb = kb == k ? j->second : 0;
        if (ea != eb) return ea > eb;
        if (ka == k) ++i;
        if (kb == k) ++j;
    }
    return false;
}

std::string Monomial::render() const {
    std::string s;
    for (auto [k, e] : f_) {
        if (!s.empty()) s += '*';
        s += Variable::from_key(k).name();
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::optional<int> graded_degree(const Monomial& m, int d) {
    int g = 0;
    for (auto [k, e] : m.factors()) {
        Variable v = Variable::from_key(k);
        switch (v.kind) {
            case VarKind::GroupX: g += e * (v.index - 1); break;
            case VarKind::Deform: g += e * d; break;
            case VarKind::Param: break;
            default: return std::nullopt;
        }
    }
    return g;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
    if (c != 0) t_.emplace_back(Monomial{}, Scalar(c));
}

// mpq_class(num, den) does not reduce, so every entry point canonicalizes.
Poly::Poly(const Scalar& c) {
    if (c != 0) {
        t_.emplace_back(Monomial{}, c);
        t_.back().second.canonicalize();
    }
}

Poly::Poly(Variable v, int e) : Poly(Monomial(v, e), Scalar(1)) {}

Poly::Poly(const Monomial& m, const Scalar& c) {
    for (auto [k, e] : m.factors())
        if (e < 0 && !Variable::from_key(k).invertible())
            throw std::domain_error("negative exponent on non-invertible variable " +
                                    Variable::from_key(k).name());
    if (c != 0) {
        t_.emplace_back(m, c);
        t_.back().second.canonicalize();
    }
}

void Poly::normalize_sorted_terms(std::vector<Term>& v) {
    std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    t_.clear();
    for (auto& t : v) {
        if (!t_.empty() && t_.back().first == t.first)
            t_.back().second += t.second;
        else {
            if (!t_.empty() && t_.back().second == 0) t_.pop_back();
            t_.push_back(std::move(t));
        }
    }
    if (!t_.empty() && t_.back().second == 0) t_.pop_back();
}

Poly Poly::from_terms(std::vector<Term> terms) {
    for (const auto& [m, c] : terms)
        for (auto [k, e] : m.factors())
            if (e < 0 && !Variable::from_key(k).invertible())
                throw std::domain_error("negative exponent on non-invertible variable " +
                                        Variable::from_key(k).name());
    Poly p;
    p.normalize_sorted_terms(terms);
    return p;
}

Scalar Poly::constant_term() const { return coeff(Monomial{}); }

Scalar Poly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.first < x; });
    return (it != t_.end() && it->first == m) ? it->second : Scalar(0);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) return *this;
    std::vector<Term> r;
    r.reserve(t_.size() + o.t_.size());
    auto a = t_.begin();
    auto b = o.t_.begin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->first < b->first)) {
            r.push_back(std::move(*a++));
        } else if (a == t_.end() || b->first < a->first) {
            r.push_back(*b++);
        } else {
            Scalar c = a->second + b->second;
            if (c != 0) r.emplace_back(std::move(a->first), std::move(c));
            ++a;
            ++b;
        }
    }
    t_ = std::move(r);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Scalar& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    Scalar k = c;
    k.canonicalize();
    for (auto& t : t_) t.second *= k;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    if (b.is_constant()) return a * b.t_[0].second;
    if (a.is_constant()) return b * a.t_[0].second;
    std::vector<Poly::Term> v;
    v.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) v.emplace_back(ma * mb, ca * cb);
    Poly r;
    r.normalize_sorted_terms(v);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) {
        if (t_.size() != 1) throw std::domain_error("negative power of a non-monomial");
        auto inv = t_[0].first.inverse();
        if (!inv || t_[0].second == 0) throw std::domain_error("monomial is not invertible");
        return Poly(*inv, 1 / t_[0].second).pow(-e);
    }
    Poly r(1), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Poly Poly::derivative(Variable v) const {
    const auto key = v.key();
    std::vector<Term> r;
    for (const auto& [m, c] : t_) {
        int e = m.exponent(key);
        if (e == 0) continue;
        r.emplace_back(m * Monomial(v, -1), c * e);
    }
    Poly p;
    p.normalize_sorted_terms(r);
    return p;
}

Poly Poly::substitute(const std::map<std::uint32_t, Poly>& bindings) const {
    // Power cache keyed by (variable key, exponent).
    std::map<std::pair<std::uint32_t, int>, Poly> cache;
    auto power = [&](std::uint32_t k, const Poly& val, int e) -> const Poly& {
        auto it = cache.find({k, e});
        if (it != cache.end()) return it->second;
        Poly p;
        if (e < 0) {
            if (val.t_.size() != 1 || !val.t_[0].first.inverse())
                throw SubstituteSingular("cannot invert the value bound to " +
                                         Variable::from_key(k).name());
            p = val.pow(e);
        } else {
            p = val.pow(e);
        }
        return cache.emplace(std::pair{k, e}, std::move(p)).first->second;
    };
    Poly result;
    std::vector<Term> acc;
    for (const auto& [m, c] : t_) {
        Poly term;
        bool touched = false;
        std::vector<Monomial::Factor> rest;
        for (auto [k, e] : m.factors()) {
            auto it = bindings.find(k);
            if (it == bindings.end()) {
                rest.emplace_back(k, e);
            } else {
                term = touched ? term * power(k, it->second, e) : power(k, it->second, e);
                touched = true;
            }
        }
        if (!touched) {
            acc.emplace_back(m, c);
            continue;
        }
        Monomial restm = Monomial::from_factors(std::move(rest));
        for (auto& t : term.t_) acc.emplace_back(t.first * restm, t.second * c);
    }
    result.normalize_sorted_terms(acc);
    return result;
}

std::map<int, Poly> Poly::collect(Variable v) const {
    std::map<int, std::vector<Term>> parts;
    const auto key = v.key();
    for (const auto& [m, c] : t_) parts[m.exponent(key)].emplace_back(m.without(key), c);
    std::map<int, Poly> r;
    for (auto& [e, terms] : parts) {
        Poly p;
        p.normalize_sorted_terms(terms);
        r.emplace(e, std::move(p));
    }
    return r;
}

int Poly::max_exponent(Variable v) const {
    int r = 0;
    bool first = true;
    for (const auto& t : t_) {
        int e = t.first.exponent(v);
        if (first || e > r) r = e;
        first = false;
    }
    return r;
}

int Poly::min_exponent(Variable v) const {
    int r = 0;
    bool first = true;
    for (const auto& t : t_) {
        int e = t.first.exponent(v);
        if (first || e < r) r = e;
        first = false;
    }
    return r;
}

Poly Poly::truncate_var(Variable v, int maxExp) const {
    const auto key = v.key();
    return filter([&](const Monomial& m) { return m.exponent(key) <= maxExp; });
}

Poly Poly::truncate_degree(int maxDegree) const {
    return filter([&](const Monomial& m) { return m.degree() <= maxDegree; });
}

std::optional<int> Poly::max_index(VarKind kind) const {
    std::optional<int> r;
    for (const auto& t : t_)
        for (auto [k, e] : t.first.factors()) {
            Variable v = Variable::from_key(k);
            if (v.kind == kind && (!r || v.index > *r)) r = v.index;
        }
    return r;
}

bool Poly::mentions(Variable v) const {
    for (const auto& t : t_)
        if (t.first.exponent(v) != 0) return true;
    return false;
}

std::string render_scalar(const Scalar& c) { return c.get_str(); }

Scalar parse_scalar(std::string_view s) {
    Scalar q;
    if (q.set_str(std::string(s), 10) != 0) throw ParseError("bad rational: " + std::string(s));
    q.canonicalize();
    if (q.get_den() == 0) throw ParseError("zero denominator: " + std::string(s));
    return q;
}

std::string Poly::render() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : t_) {
        Scalar a = c;
        if (first) {
            first = false;
        } else if (c < 0) {
            s += " - ";
            a = -c;
        } else {
            s += " + ";
        }
        s += render_scalar(a);
        if (!m.is_one()) s += "*" + m.render();
    }
    return s;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Poly run() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Poly expr() {
        Poly r;
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly t = term();
        r = neg ? -t : t;
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }
    Poly term() {
        Poly r = unary();
        for (;;) {
            if (eat('*')) {
                r = r * unary();
            } else if (eat('/')) {
                Poly d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
                r *= Scalar(1) / d.constant_term();
            } else {
                return r;
            }
        }
    }
    Poly unary() {
        if (eat('-')) return -unary();
        return power();
    }
    int integer() {
        skip();
        bool neg = eat('-');
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected integer");
        int v = std::stoi(std::string(s_.substr(b, pos_ - b)));
        return neg ? -v : v;
    }
    Poly power() {
        Poly a = atom();
        if (eat('^')) {
            int e;
            if (eat('(')) {
                e = integer();
                if (!eat(')')) fail("expected ')'");
            } else {
                e = integer();
            }
            return a.pow(e);
        }
        return a;
    }
    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            // p/q literal binds tighter than division
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            return Poly(parse_scalar(s_.substr(b, pos_ - b)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return Poly(identifier(s_.substr(b, pos_ - b)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    static Variable identifier(std::string_view id) {
        if (id == "h") return hv();
        if (id.size() >= 2 && std::string_view("xyzst").find(id[0]) != std::string_view::npos) {
            std::string_view rest = id.substr(1);
            bool neg = false;
            if (rest.size() >= 2 && rest[0] == 'm') {
                neg = true;
                rest = rest.substr(1);
            }
            if (std::all_of(rest.begin(), rest.end(),
                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                int idx = std::stoi(std::string(rest)) * (neg ? -1 : 1);
                switch (id[0]) {
                    case 'x': return xv(idx);
                    case 'y': return yv(idx);
                    case 'z': return zv(idx);
                    case 's': return sv(idx);
                    default: return tv(idx);
                }
            }
        }
        return param(id);
    }
};

}  // namespace

Poly Poly::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace jetlie
