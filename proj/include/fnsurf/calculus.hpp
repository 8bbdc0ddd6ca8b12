#pragma once

#include "fnsurf/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fnsurf {

/// p + q sqrt(2).
class Q2 {
public:
    Q2() = default;
    Q2(const Rational& p, const Rational& q = Rational{}) : p_(p), q_(q) {}  // NOLINT(google-explicit-constructor)
    Q2(long p) : p_(p) {}                                                    // NOLINT(google-explicit-constructor)
    static Q2 sqrt2() { return {Rational{}, Rational(1)}; }

    [[nodiscard]] const Rational& rational_part() const { return p_; }
    [[nodiscard]] const Rational& sqrt2_part() const { return q_; }
    [[nodiscard]] bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
    [[nodiscard]] Q2 conjugate() const { return {p_, -q_}; }
    /// p^2 - 2 q^2.
    [[nodiscard]] Rational norm() const { return p_ * p_ - Rational(2) * q_ * q_; }
    [[nodiscard]] Q2 inverse() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;

    Q2& operator+=(const Q2& o) { p_ += o.p_; q_ += o.q_; return *this; }
    Q2& operator-=(const Q2& o) { p_ -= o.p_; q_ -= o.q_; return *this; }
    Q2& operator*=(const Q2& o);
    Q2& operator/=(const Q2& o) { return *this *= o.inverse(); }
    friend Q2 operator+(Q2 a, const Q2& b) { return a += b; }
    friend Q2 operator-(Q2 a, const Q2& b) { return a -= b; }
    friend Q2 operator*(Q2 a, const Q2& b) { return a *= b; }
    friend Q2 operator/(Q2 a, const Q2& b) { return a /= b; }
    friend Q2 operator-(const Q2& a) { return {-a.p_, -a.q_}; }
    friend bool operator==(const Q2&, const Q2&) = default;

private:
    Rational p_;
    Rational q_;
};

/// Polynomial in u, w over Q2. Keys are (deg_u, deg_w).
class UWPoly {
public:
    using Key = std::pair<std::uint32_t, std::uint32_t>;
    using TermMap = std::map<Key, Q2, std::greater<>>;

    UWPoly() = default;
    UWPoly(const Q2& c);  // NOLINT(google-explicit-constructor)
    UWPoly(long c) : UWPoly(Q2(c)) {}  // NOLINT(google-explicit-constructor)
    static UWPoly u() { return term(Q2(1), 1, 0); }
    static UWPoly w() { return term(Q2(1), 0, 1); }
    static UWPoly term(const Q2& c, std::uint32_t i, std::uint32_t j);
    /// Q = u^4 / 2 - 2 w.
    static const UWPoly& Q();

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] Q2 constant_term() const;
    [[nodiscard]] const std::pair<const Key, Q2>& leading() const { return *terms_.begin(); }
    [[nodiscard]] UWPoly d_du() const;
    [[nodiscard]] UWPoly d_dw() const;
    [[nodiscard]] double eval(double u, double w) const;
    [[nodiscard]] std::string str() const;

    void add_term(const Q2& c, const Key& k);
    UWPoly& operator+=(const UWPoly& o);
    UWPoly& operator-=(const UWPoly& o);
    UWPoly& operator*=(const Q2& c);
    friend UWPoly operator+(UWPoly a, const UWPoly& b) { return a += b; }
    friend UWPoly operator-(UWPoly a, const UWPoly& b) { return a -= b; }
    friend UWPoly operator*(const UWPoly& a, const UWPoly& b);
    friend UWPoly operator-(UWPoly a) { return a *= Q2(-1); }
    friend bool operator==(const UWPoly&, const UWPoly&) = default;

private:
    TermMap terms_;
};

/// num / den with den != 0. Equality is semantic (cross multiplication).
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(UWPoly num, UWPoly den = UWPoly(1));  // NOLINT(google-explicit-constructor)
    RatFunc(long c) : RatFunc(UWPoly(c)) {}       // NOLINT(google-explicit-constructor)

    [[nodiscard]] const UWPoly& num() const { return num_; }
    [[nodiscard]] const UWPoly& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    /// Constant value, when the function is constant.
    [[nodiscard]] std::optional<Q2> constant_value() const;
    [[nodiscard]] RatFunc d_du() const;
    [[nodiscard]] RatFunc inverse() const;
    [[nodiscard]] double eval(double u, double w) const { return num_.eval(u, w) / den_.eval(u, w); }
    [[nodiscard]] std::string str() const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    friend RatFunc operator-(const RatFunc& a) { return {-a.num_, a.den_}; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

private:
    UWPoly num_;
    UWPoly den_ = UWPoly(1);
};

/// r + s sqrt(Q).
struct Rad {
    RatFunc r;
    RatFunc s;

    [[nodiscard]] bool is_zero() const { return r.is_zero() && s.is_zero(); }
    [[nodiscard]] Rad inverse() const;
    [[nodiscard]] Rad d_du() const;
    [[nodiscard]] double eval(double u, double w) const;
    [[nodiscard]] std::string str() const;

    friend Rad operator+(const Rad& a, const Rad& b) { return {a.r + b.r, a.s + b.s}; }
    friend Rad operator-(const Rad& a, const Rad& b) { return {a.r - b.r, a.s - b.s}; }
    friend Rad operator*(const Rad& a, const Rad& b);
    friend Rad operator-(const Rad& a) { return {-a.r, -a.s}; }
};

/// coefficient * ln(argument), both algebraic.
struct LogTerm {
    Rad coefficient;
    Rad argument;
};

/// one + A_coeff A + B_coeff B + C_coeff C + sum of log terms, where
/// A' = 1/sqrtQ, B' = u^2/sqrtQ, C' = u/sqrtQ.
class DiffElem {
public:
    DiffElem() = default;
    DiffElem(Rad algebraic) : one_(std::move(algebraic)) {}  // NOLINT(google-explicit-constructor)
    DiffElem(const Q2& c) : one_{RatFunc(UWPoly(c)), {}} {}    // NOLINT(google-explicit-constructor)

    static DiffElem u();
    static DiffElem w();
    static DiffElem sqrtQ();
    static DiffElem A();
    static DiffElem B();
    static DiffElem C();
    /// ln of an algebraic element.
    static DiffElem ln(const DiffElem& argument);

    [[nodiscard]] const Rad& one() const { return one_; }
    [[nodiscard]] const Rad& a() const { return a_; }
    [[nodiscard]] const Rad& b() const { return b_; }
    [[nodiscard]] const Rad& c() const { return c_; }
    [[nodiscard]] const std::vector<LogTerm>& logs() const { return logs_; }
    /// No A, B, C or log part.
    [[nodiscard]] bool is_algebraic() const;
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] DiffElem inverse() const;
    [[nodiscard]] DiffElem pow(long n) const;
    [[nodiscard]] std::string str() const;

    DiffElem& operator+=(const DiffElem& o);
    DiffElem& operator-=(const DiffElem& o);
    friend DiffElem operator+(DiffElem a, const DiffElem& b) { return a += b; }
    friend DiffElem operator-(DiffElem a, const DiffElem& b) { return a -= b; }
    /// One factor must be algebraic; A*B and similar products are outside the model.
    friend DiffElem operator*(const DiffElem& a, const DiffElem& b);
    friend DiffElem operator/(const DiffElem& a, const DiffElem& b) { return a * b.inverse(); }
    friend DiffElem operator-(const DiffElem& a);

    friend DiffElem d_du(const DiffElem& e);

private:
    Rad one_, a_, b_, c_;
    std::vector<LogTerm> logs_;
};

[[nodiscard]] DiffElem d_du(const DiffElem& e);

/// d_du(antiderivative) - integrand == 0.
[[nodiscard]] bool check_identity(const DiffElem& integrand, const DiffElem& antiderivative);

/// Expression grammar over u, w, sqrtQ, A, B, C, sqrt2, ln(...), sqrt(...),
/// integers, + - * / and ^ with (possibly negative) integer exponents.
/// sqrt accepts only arguments of the form k*Q or k with k a rational square
/// or twice one. Throws std::invalid_argument.
[[nodiscard]] DiffElem parse_diff(std::string_view text);

/// Numeric value at (u, w) given values of A, B and C.
[[nodiscard]] double evaluate(const DiffElem& e, double u, double w, double A, double B, double C);

struct IdentityEntry {
    std::string name;
    std::string integrand;
    std::string antiderivative;
    std::optional<std::string> corrected;  // derived replacement when the printed form is wrong
};

struct SkippedEntry {
    std::string name;
    std::string reason;
};

struct Manifest {
    std::vector<IdentityEntry> identities;
    std::vector<SkippedEntry> skipped;
};

/// Throws std::invalid_argument on malformed JSON or missing fields.
[[nodiscard]] Manifest parse_manifest(std::string_view json_text);
[[nodiscard]] const Manifest& builtin_manifest();

/// Relative error between the quadrature of the integrand over [u0, u1] at
/// fixed w and the antiderivative difference, with A, B, C taken as
/// integrals from u0. nullopt for integrands that are not algebraic.
[[nodiscard]] std::optional<double> quadrature_error(const DiffElem& integrand, const DiffElem& antiderivative,
                                                     double u0 = 2.0, double u1 = 3.0, double w = 1.0);

struct IdentityOutcome {
    std::string name;
    bool passed = false;
    std::string residual;  // empty when passed
    std::optional<double> quadrature_rel_error;
    std::optional<bool> corrected_passed;
    std::optional<double> corrected_quadrature_rel_error;
};

struct SuiteReport {
    std::vector<IdentityOutcome> outcomes;
    std::vector<SkippedEntry> skipped;

    [[nodiscard]] std::size_t passed() const;
    [[nodiscard]] std::size_t failed() const { return outcomes.size() - passed(); }
    [[nodiscard]] std::string summary() const;
};

[[nodiscard]] SuiteReport appendix_suite(const Manifest& manifest = builtin_manifest());

}  // namespace fnsurf
