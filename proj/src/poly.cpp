#include "fnsurf/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace fnsurf {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames{"x", "y", "z", "a", "b", "c", "d", "m", "alpha"};

}  // namespace

std::string_view name(Var v) noexcept { return kNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kNumVars; ++i)
        if (kNames[i] == s) return kAllVars[i];
    return std::nullopt;
}

bool Monomial::is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

std::uint64_t Monomial::total_degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool Monomial::has_parameters() const {
    return std::any_of(exps_.begin() + 3, exps_.end(), [](auto e) { return e != 0; });
}

Monomial Monomial::state_part() const {
    Monomial m;
    std::copy_n(exps_.begin(), 3, m.exps_.begin());
    return m;
}

Monomial Monomial::parameter_part() const {
    Monomial m = *this;
    std::fill_n(m.exps_.begin(), 3, 0U);
    return m;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kNumVars; ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial operator*(const Monomial& p, const Monomial& q) {
    Monomial r;
    for (std::size_t i = 0; i < kNumVars; ++i) r.exps_[i] = p.exps_[i] + q.exps_[i];
    return r;
}

Monomial operator/(const Monomial& p, const Monomial& q) {
    Monomial r;
    for (std::size_t i = 0; i < kNumVars; ++i) r.exps_[i] = p.exps_[i] - q.exps_[i];
    return r;
}

// ---------------------------------------------------------------------------

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::term(const Rational& c, const Monomial& m) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Poly::coeff(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational{} : it->second;
}

long Poly::state_degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.state_degree()));
    return d;
}

long Poly::degree_in(Var v) const {
    long d = is_zero() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m[v]));
    return d;
}

bool Poly::has_parameters() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_parameters(); });
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
    std::vector<Poly> out(static_cast<std::size_t>(std::max(degree_in(v), 0L) + 1));
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest.set(v, 0);
        out[m[v]].add_term(c, rest);
    }
    return out;
}

std::map<Monomial, Poly, std::greater<>> Poly::by_state_monomial() const {
    std::map<Monomial, Poly, std::greater<>> out;
    for (const auto& [m, c] : terms_) out[m.state_part()].add_term(c, m.parameter_part());
    return out;
}

void Poly::add_term(const Rational& c, const Monomial& m) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(c, m);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(-c, m);
    return *this;
}

Poly& Poly::scale(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
    Poly r;
    for (const auto& [mp, cp] : p.terms_)
        for (const auto& [mq, cq] : q.terms_) r.add_term(cp * cq, mp * mq);
    return r;
}

Poly operator-(Poly p) {
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Poly Poly::pow(unsigned n) const {
    Poly result(1);
    Poly base = *this;
    while (n != 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n != 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------------------

Poly substitute(const Poly& p, const Substitution& sigma) {
    if (sigma.empty()) return p;
    // powers[v][e] caches sigma(v)^e
    std::map<Var, std::vector<Poly>> powers;
    for (const auto& [v, img] : sigma) powers[v].push_back(Poly(1));

    auto power_of = [&](Var v, std::uint32_t e) -> const Poly& {
        auto& cache = powers[v];
        while (cache.size() <= e) cache.push_back(cache.back() * sigma.at(v));
        return cache[e];
    };

    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial kept = m;
        Poly factor = Poly::term(c, Monomial{});
        for (const auto& [v, img] : sigma) {
            const auto e = m[v];
            if (e == 0) continue;
            kept.set(v, 0);
            factor = factor * power_of(v, e);
        }
        out += factor * Poly::term(Rational(1), kept);
    }
    return out;
}

Poly partial(const Poly& p, Var v) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        const auto e = m[v];
        if (e == 0) continue;
        Monomial d = m;
        d.set(v, e - 1);
        out.add_term(c * Rational(static_cast<long>(e)), d);
    }
    return out;
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    const auto& [lm, lc] = q.leading();
    Poly rem = p;
    Poly quot;
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!lm.divides(rm)) return std::nullopt;
        const Poly t = Poly::term(rc / lc, rm / lm);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

Poly substitute_fraction(const Poly& p, Var v, const Poly& num, const Poly& den) {
    const auto coeffs = p.coefficients_in(v);
    const auto n = static_cast<unsigned>(coeffs.size() - 1);
    Poly out;
    Poly num_pow(1);
    for (unsigned i = 0; i <= n; ++i) {
        if (!coeffs[i].is_zero()) out += coeffs[i] * num_pow * den.pow(n - i);
        if (i < n) num_pow = num_pow * num;
    }
    return out;
}

Poly pseudo_remainder(const Poly& p, const Poly& rel, Var v) {
    const long n = rel.degree_in(v);
    if (n <= 0) throw std::invalid_argument("pseudo_remainder: relation does not involve the main variable");
    const auto rc = rel.coefficients_in(v);
    const Poly& lead = rc.back();
    Poly r = p;
    for (long d = r.degree_in(v); d >= n; d = r.degree_in(v)) {
        const Poly top = r.coefficients_in(v).back();
        r = lead * r - top * Poly::term(Rational(1), Monomial::of(v, static_cast<std::uint32_t>(d - n))) * rel;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, Poly>> weight_components(const Poly& p, const WeightSpec& w) {
    std::map<std::uint64_t, Poly, std::greater<>> buckets;
    for (const auto& [m, c] : p.terms()) buckets[w.weight(m)].add_term(c, m);
    return {buckets.begin(), buckets.end()};
}

std::optional<std::uint64_t> weight_degree(const Poly& p, const WeightSpec& w) {
    if (p.is_zero()) return std::nullopt;
    const auto first = w.weight(p.leading().first);
    for (const auto& [m, c] : p.terms())
        if (w.weight(m) != first) return std::nullopt;
    return first;
}

}  // namespace fnsurf
