#pragma once

#include "fnsurf/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace fnsurf {

/// The nine symbols of the toolkit. Declaration order is the canonical
/// variable order used for monomial comparison and printing.
enum class Var : std::uint8_t { x, y, z, a, b, c, d, m, alpha };

inline constexpr std::size_t kNumVars = 9;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::x, Var::y, Var::z, Var::a,    Var::b,
                                                    Var::c, Var::d, Var::m, Var::alpha};
inline constexpr std::array<Var, 3> kStateVars{Var::x, Var::y, Var::z};

enum class VarKind : std::uint8_t { state, parameter };

[[nodiscard]] constexpr VarKind kind(Var v) noexcept {
    return static_cast<std::uint8_t>(v) < 3 ? VarKind::state : VarKind::parameter;
}
[[nodiscard]] constexpr bool is_state(Var v) noexcept { return kind(v) == VarKind::state; }
[[nodiscard]] std::string_view name(Var v) noexcept;
[[nodiscard]] std::optional<Var> var_from_name(std::string_view s) noexcept;

/// Exponent vector over all nine symbols.
class Monomial {
public:
    Monomial() = default;
    static Monomial of(Var v, std::uint32_t e = 1) {
        Monomial m;
        m.exps_[static_cast<std::size_t>(v)] = e;
        return m;
    }
    static Monomial state(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        Monomial m;
        m.exps_[0] = i;
        m.exps_[1] = j;
        m.exps_[2] = k;
        return m;
    }

    [[nodiscard]] std::uint32_t operator[](Var v) const { return exps_[static_cast<std::size_t>(v)]; }
    void set(Var v, std::uint32_t e) { exps_[static_cast<std::size_t>(v)] = e; }

    [[nodiscard]] bool is_one() const;
    [[nodiscard]] std::uint64_t total_degree() const;
    [[nodiscard]] std::uint64_t state_degree() const { return std::uint64_t{exps_[0]} + exps_[1] + exps_[2]; }
    [[nodiscard]] bool has_parameters() const;
    /// The monomial with all parameter exponents cleared.
    [[nodiscard]] Monomial state_part() const;
    [[nodiscard]] Monomial parameter_part() const;
    [[nodiscard]] bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& p, const Monomial& q);
    /// Requires q.divides(p).
    friend Monomial operator/(const Monomial& p, const Monomial& q);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Lexicographic on x > y > z > a > b > c > d > m > alpha.
    friend auto operator<=>(const Monomial& p, const Monomial& q) { return p.exps_ <=> q.exps_; }

private:
    std::array<std::uint32_t, kNumVars> exps_{};
};

/// Weight exponents (s_x, s_y, s_z); parameters carry weight zero.
struct WeightSpec {
    std::uint32_t sx = 1;
    std::uint32_t sy = 2;
    std::uint32_t sz = 2;

    [[nodiscard]] std::uint64_t weight(const Monomial& m) const {
        return std::uint64_t{sx} * m[Var::x] + std::uint64_t{sy} * m[Var::y] + std::uint64_t{sz} * m[Var::z];
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in decreasing monomial order; zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, std::greater<>>;

    Poly() = default;
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static Poly var(Var v) { return term(Rational(1), Monomial::of(v)); }
    static Poly term(const Rational& c, const Monomial& m);

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] Rational coeff(const Monomial& m) const;
    [[nodiscard]] Rational constant_term() const { return coeff(Monomial{}); }
    /// Largest monomial in the canonical order. Requires a nonzero polynomial.
    [[nodiscard]] const std::pair<const Monomial, Rational>& leading() const { return *terms_.begin(); }

    /// Total degree counting state variables only; -1 for the zero polynomial.
    [[nodiscard]] long state_degree() const;
    [[nodiscard]] long degree_in(Var v) const;
    [[nodiscard]] bool depends_on(Var v) const { return degree_in(v) > 0; }
    [[nodiscard]] bool has_parameters() const;

    /// Coefficients of successive powers of v (each free of v).
    [[nodiscard]] std::vector<Poly> coefficients_in(Var v) const;
    /// Groups terms by state monomial; values are polynomials in the parameters.
    [[nodiscard]] std::map<Monomial, Poly, std::greater<>> by_state_monomial() const;

    void add_term(const Rational& c, const Monomial& m);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    /// In-place multiplication by a scalar.
    Poly& scale(const Rational& c);

    friend Poly operator+(Poly p, const Poly& q) { return p += q; }
    friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
    friend Poly operator*(const Poly& p, const Poly& q);
    friend Poly operator-(Poly p);

    friend bool operator==(const Poly&, const Poly&) = default;

    [[nodiscard]] Poly pow(unsigned n) const;

private:
    TermMap terms_;
};

using Substitution = std::map<Var, Poly>;

/// Simultaneous substitution of the listed symbols.
[[nodiscard]] Poly substitute(const Poly& p, const Substitution& sigma);
[[nodiscard]] Poly partial(const Poly& p, Var v);
/// Exact quotient p / q, or nullopt when q does not divide p.
[[nodiscard]] std::optional<Poly> divide_exact(const Poly& p, const Poly& q);
/// Multiplies out v = num/den and clears the denominator:
/// returns den^deg_v(p) * p(v = num/den).
[[nodiscard]] Poly substitute_fraction(const Poly& p, Var v, const Poly& num, const Poly& den);

/// Pseudo-remainder of p by rel viewed as univariate in v.
[[nodiscard]] Poly pseudo_remainder(const Poly& p, const Poly& rel, Var v);

/// Decomposition into weight-homogeneous components, strictly decreasing weight.
[[nodiscard]] std::vector<std::pair<std::uint64_t, Poly>> weight_components(const Poly& p,
                                                                           const WeightSpec& w = {});
/// Weight degree of a weight-homogeneous nonzero polynomial; nullopt when p is
/// zero or mixes several weights.
[[nodiscard]] std::optional<std::uint64_t> weight_degree(const Poly& p, const WeightSpec& w = {});
[[nodiscard]] inline long state_degree(const Poly& p) { return p.state_degree(); }

}  // namespace fnsurf
