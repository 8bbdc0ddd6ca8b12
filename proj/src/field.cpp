#include "fnsurf/field.hpp"

#include "fnsurf/parse.hpp"

#include <sstream>
#include <stdexcept>

namespace fnsurf {

Substitution ParamPoint::substitution() const {
    return {{Var::a, Poly(a)}, {Var::b, Poly(b)}, {Var::c, Poly(c)}, {Var::d, Poly(d)}, {Var::m, Poly(m)}};
}

std::string ParamPoint::str() const {
    std::ostringstream os;
    os << "(a,b,c,d,m) = (" << a << ", " << b << ", " << c << ", " << d << ", " << m << ")";
    return os.str();
}

VectorField fn_system() {
    return {parse("z"), parse("b*(x - d*y)"), parse("x*(x-1)*(x-a) + y + c*z"), "FitzHugh-Nagumo travelling wave"};
}

VectorField assistant_system() {
    return {parse("z"), parse("b*(x - d*y) + m*x*z"), parse("x*(x-1)*(x-a) + y + c*z"), "assistant system"};
}

VectorField scaled_system() {
    return {parse("z"), parse("-alpha*b*d*y + alpha^2*b*x + m*x*z"),
            parse("x^3 - alpha*((a+1)*x^2 - y - c*z) + alpha^2*a*x"),
            "assistant system under (X,Y,Z,T) = (alpha x, alpha^2 y, alpha^2 z, t/alpha)"};
}

VectorField principal_field() { return {parse("z"), parse("m*x*z"), parse("x^3"), "principal part L"}; }

VectorField substitute(const VectorField& v, const Substitution& sigma) {
    return {substitute(v.P, sigma), substitute(v.Q, sigma), substitute(v.R, sigma), v.label};
}

VectorField instantiate(const VectorField& v, const ParamPoint& p) {
    VectorField out = substitute(v, p.substitution());
    out.label = v.label + " at " + p.str();
    return out;
}

Poly lie_derivative(const VectorField& v, const Poly& f) {
    return v.P * partial(f, Var::x) + v.Q * partial(f, Var::y) + v.R * partial(f, Var::z);
}

Poly op_L(const Poly& f) {
    static const Poly z = Poly::var(Var::z);
    static const Poly mxz = parse("m*x*z");
    static const Poly x3 = parse("x^3");
    return z * partial(f, Var::x) + mxz * partial(f, Var::y) + x3 * partial(f, Var::z);
}

Poly op_L(const Poly& f, const Rational& m) {
    static const Poly z = Poly::var(Var::z);
    static const Poly xz = parse("x*z");
    static const Poly x3 = parse("x^3");
    Poly out = z * partial(f, Var::x) + x3 * partial(f, Var::z);
    if (!m.is_zero()) out += (xz * partial(f, Var::y)).scale(m);
    return out;
}

Poly alpha_conjugate(const Poly& f, std::optional<long> l) {
    const WeightSpec w;
    long top = 0;
    for (const auto& [mono, c] : f.terms()) top = std::max(top, static_cast<long>(w.weight(mono)));
    const long level = l.value_or(top);
    Poly out;
    for (const auto& [mono, c] : f.terms()) {
        const long shift = level - static_cast<long>(w.weight(mono));
        if (shift < 0) throw std::domain_error("alpha_conjugate: term weight exceeds l");
        Monomial scaled = mono;
        scaled.set(Var::alpha, mono[Var::alpha] + static_cast<std::uint32_t>(shift));
        out.add_term(c, scaled);
    }
    return out;
}

}  // namespace fnsurf
