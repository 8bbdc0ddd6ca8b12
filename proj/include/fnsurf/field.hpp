#pragma once

#include "fnsurf/poly.hpp"

#include <optional>
#include <string>

namespace fnsurf {

/// x' = P, y' = Q, z' = R.
struct VectorField {
    Poly P;
    Poly Q;
    Poly R;
    std::string label;

    friend bool operator==(const VectorField& u, const VectorField& v) {
        return u.P == v.P && u.Q == v.Q && u.R == v.R;
    }
};

/// Numeric values for the parameters a, b, c, d, m.
struct ParamPoint {
    Rational a;
    Rational b;
    Rational c;
    Rational d;
    Rational m;

    [[nodiscard]] Substitution substitution() const;
    [[nodiscard]] std::string str() const;
};

/// Travelling-wave FitzHugh-Nagumo field:
/// x' = z, y' = b(x - d y), z' = x(x-1)(x-a) + y + c z.
[[nodiscard]] VectorField fn_system();
/// FN with the extra m x z term in y'.
[[nodiscard]] VectorField assistant_system();
/// Assistant system after (x,y,z,t) -> (alpha x, alpha^2 y, alpha^2 z, t/alpha),
/// written in the original state symbols.
[[nodiscard]] VectorField scaled_system();
/// The principal part (z, m x z, x^3) whose derivation is the operator L.
[[nodiscard]] VectorField principal_field();

[[nodiscard]] VectorField substitute(const VectorField& v, const Substitution& sigma);
[[nodiscard]] VectorField instantiate(const VectorField& v, const ParamPoint& p);

/// P f_x + Q f_y + R f_z.
[[nodiscard]] Poly lie_derivative(const VectorField& v, const Poly& f);

/// L f = z f_x + m x z f_y + x^3 f_z with m symbolic.
[[nodiscard]] Poly op_L(const Poly& f);
/// Same operator with m fixed.
[[nodiscard]] Poly op_L(const Poly& f, const Rational& m);

/// alpha^l f(x/alpha, y/alpha^2, z/alpha^2). Each term of state weight w
/// gains alpha^(l - w); throws std::domain_error when some w exceeds l.
/// Without l the largest weight present is used.
[[nodiscard]] Poly alpha_conjugate(const Poly& f, std::optional<long> l = std::nullopt);

}  // namespace fnsurf
