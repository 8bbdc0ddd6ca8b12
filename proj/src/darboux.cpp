#include "fnsurf/darboux.hpp"

#include "fnsurf/linalg.hpp"
#include "fnsurf/parse.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <map>

namespace fnsurf {

std::string ParamConstraint::str() const {
    std::vector<std::string> parts;
    for (const auto& s : substitutions) {
        std::string rhs = print(s.numerator);
        if (!(s.denominator == Poly(1))) rhs = "(" + rhs + ")/(" + print(s.denominator) + ")";
        parts.push_back(std::string(name(s.var)) + " = " + rhs);
    }
    for (const auto& r : relations) parts.push_back(print(r) + " = 0");
    for (const auto& n : nonvanishing) parts.push_back(print(n) + " != 0");
    if (parts.empty()) return "(none)";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += ", " + parts[i];
    return out;
}

namespace {

// q is a nonzero constant times a product of declared nonvanishing polynomials.
bool covered(Poly q, const std::vector<Poly>& nonvanishing) {
    if (q.is_zero()) return false;
    while (!q.is_constant()) {
        bool progress = false;
        for (const auto& n : nonvanishing) {
            if (n.is_constant()) continue;
            if (auto quotient = divide_exact(q, n)) {
                q = std::move(*quotient);
                progress = true;
                break;
            }
        }
        if (!progress) return false;
    }
    return true;
}

void check_triangular(const ParamConstraint& cons) {
    const auto& subs = cons.substitutions;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (is_state(subs[i].var)) throw ConstraintError("constraint substitutes the state variable " + std::string(name(subs[i].var)));
        for (Var v : kStateVars)
            if (subs[i].numerator.depends_on(v) || subs[i].denominator.depends_on(v))
                throw ConstraintError("substitution for " + std::string(name(subs[i].var)) + " involves the state variable " +
                                      std::string(name(v)));
        if (subs[i].denominator.is_zero()) throw ConstraintError("zero denominator in substitution for " + std::string(name(subs[i].var)));
        for (std::size_t j = i; j < subs.size(); ++j) {
            if (subs[i].numerator.depends_on(subs[j].var) || subs[i].denominator.depends_on(subs[j].var))
                throw ConstraintError("substitutions are not triangular: " + std::string(name(subs[i].var)) +
                                      " uses " + std::string(name(subs[j].var)));
        }
        if (!covered(subs[i].denominator, cons.nonvanishing))
            throw ConstraintError("denominator " + print(subs[i].denominator) + " of " + std::string(name(subs[i].var)) +
                                  " is not declared nonvanishing");
    }
}

Poly apply_substitutions(Poly p, const ParamConstraint& cons) {
    const auto& subs = cons.substitutions;
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        if (!p.depends_on(it->var)) continue;
        if (it->denominator.is_constant()) {
            Poly value = it->numerator;
            value.scale(Rational(1) / it->denominator.constant_term());
            p = substitute(p, {{it->var, value}});
        } else {
            p = substitute_fraction(p, it->var, it->numerator, it->denominator);
        }
    }
    return p;
}

Var main_variable(const Poly& rel, const std::vector<Poly>& nonvanishing) {
    static constexpr std::array<Var, 6> params{Var::a, Var::b, Var::c, Var::d, Var::m, Var::alpha};
    for (Var v : params)
        if (rel.depends_on(v) && rel.coefficients_in(v).back().is_constant()) return v;
    for (Var v : params)
        if (rel.depends_on(v) && covered(rel.coefficients_in(v).back(), nonvanishing)) return v;
    throw ConstraintError("relation " + print(rel) + " has no parameter with a nonvanishing leading coefficient");
}

}  // namespace

Poly reduce(const Poly& p, const ParamConstraint& constraints) {
    check_triangular(constraints);
    Poly r = apply_substitutions(p, constraints);
    std::vector<Poly> nonvanishing = constraints.nonvanishing;
    for (const auto& n : constraints.nonvanishing) nonvanishing.push_back(apply_substitutions(n, constraints));
    for (const auto& rel0 : constraints.relations) {
        const Poly rel = apply_substitutions(rel0, constraints);
        if (rel.is_zero()) continue;
        if (rel.is_constant()) throw ConstraintError("relation reduces to a nonzero constant");
        r = pseudo_remainder(r, rel, main_variable(rel, nonvanishing));
    }
    return r;
}

VerifyResult verify(const Poly& f, const Poly& k, const VectorField& v, const ParamConstraint& constraints) {
    VerifyResult out;
    out.residual = reduce(lie_derivative(v, f) - k * f, constraints);
    out.valid = out.residual.is_zero();
    return out;
}

std::optional<Poly> solve_cofactor(const Poly& f, const VectorField& v) {
    if (f.is_zero()) throw std::invalid_argument("solve_cofactor: f must be nonzero");
    auto q = divide_exact(lie_derivative(v, f), f);
    if (!q || q->state_degree() > 2) return std::nullopt;
    return q;
}

std::vector<Poly> fn_cofactor_candidates(const Rational& c, int max_degree) {
    std::vector<Poly> out{Poly{}};
    const int top = (max_degree + 3) / 4;
    for (int n = 1; n <= top; ++n) {
        Poly k(Rational(4 * n, 3) * c);
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
    }
    return out;
}

namespace {

std::vector<Monomial> monomials_up_to(int degree) {
    std::vector<Monomial> out;
    for (int d = degree; d >= 0; --d)
        for (int i = d; i >= 0; --i)
            for (int j = d - i; j >= 0; --j)
                out.push_back(Monomial::state(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                              static_cast<std::uint32_t>(d - i - j)));
    return out;
}

std::vector<Poly> darboux_space(const VectorField& v, int max_degree, const Poly& k) {
    std::vector<Monomial> cols = monomials_up_to(max_degree);
    if (k.is_zero()) cols.pop_back();  // the constant monomial is last
    std::map<Monomial, std::size_t, std::greater<>> row_of;
    std::vector<Poly> images;
    images.reserve(cols.size());
    for (const auto& mu : cols) {
        const Poly p = Poly::term(Rational(1), mu);
        Poly img = lie_derivative(v, p) - k * p;
        for (const auto& [m, c] : img.terms()) row_of.emplace(m, 0);
        images.push_back(std::move(img));
    }
    std::size_t r = 0;
    for (auto& [m, idx] : row_of) idx = r++;
    Matrix a(row_of.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [m, c] : images[j].terms()) a(row_of.at(m), j) = c;

    const auto kernel = null_space(a);
    if (kernel.empty()) return {};
    Matrix basis(kernel.size(), cols.size());
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) basis(i, j) = kernel[i][j];
    const RowEchelon e = rref(basis);
    std::vector<Poly> out;
    for (std::size_t i = 0; i < e.rank(); ++i) {
        Poly f;
        for (std::size_t j = 0; j < cols.size(); ++j) f.add_term(e.reduced(i, j), cols[j]);
        out.push_back(std::move(f));
    }
    return out;
}

void require_numeric(const VectorField& v) {
    if (v.P.has_parameters() || v.Q.has_parameters() || v.R.has_parameters())
        throw std::invalid_argument("search needs a vector field with numeric parameters");
}

}  // namespace

std::vector<SearchResult> search(const VectorField& v, int max_degree, const std::vector<Poly>& candidates,
                                 unsigned threads) {
    if (max_degree < 0) throw std::invalid_argument("search: negative degree bound");
    require_numeric(v);
    for (const auto& k : candidates)
        if (k.has_parameters() || k.state_degree() > 2)
            throw std::invalid_argument("search: cofactor candidate " + print(k) + " must be numeric of degree <= 2");

    std::vector<std::vector<Poly>> spaces(candidates.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < candidates.size(); ++i) spaces[i] = darboux_space(v, max_degree, candidates[i]);
    } else {
        for (std::size_t start = 0; start < candidates.size(); start += threads) {
            std::vector<std::future<std::vector<Poly>>> batch;
            const std::size_t stop = std::min(candidates.size(), start + threads);
            for (std::size_t i = start; i < stop; ++i)
                batch.push_back(std::async(std::launch::async, darboux_space, std::cref(v), max_degree, std::cref(candidates[i])));
            for (std::size_t i = start; i < stop; ++i) spaces[i] = batch[i - start].get();
        }
    }
    std::vector<SearchResult> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (!spaces[i].empty()) out.push_back({candidates[i], std::move(spaces[i])});
    return out;
}

std::vector<Poly> first_integrals(const VectorField& v, int max_degree) {
    if (max_degree <= 0) return {};
    auto found = search(v, max_degree, {Poly{}});
    return found.empty() ? std::vector<Poly>{} : std::move(found.front().basis);
}

bool independent(const Poly& f, const Poly& g) {
    const Poly fx = partial(f, Var::x), fy = partial(f, Var::y), fz = partial(f, Var::z);
    const Poly gx = partial(g, Var::x), gy = partial(g, Var::y), gz = partial(g, Var::z);
    return !(fx * gy - fy * gx).is_zero() || !(fx * gz - fz * gx).is_zero() || !(fy * gz - fz * gy).is_zero();
}

Poly phi1() { return parse("(1/2)*x^4 - z^2 + 2*x*y + (2/3)*c*x*z + ((1/9)*c^2 - 1)*x^2"); }

Poly phi2() {
    return parse("(1/2)*x^4 - z^2 - (2/3)*(a+1)*x^3 + 2*x*y + (2/3)*c*x*z - (2/9)*c*(a+1)*z"
                 " + ((1/9)*c^2 + a)*x^2 - (2/3)*(a+1)*y - (2/27)*c^2*(a+1)*x");
}

Poly phi3() { return phi1() - parse("(1/2)*d*y^2"); }

Poly phi4() {
    return parse("(1/2)*x^4 - z^2 - (1/2)*d*y^2 - (2/3)*(a+1)*x^3 + 2*x*y + (2/3)*c*x*z"
                 " - (2/9)*c*(a+1)*z + ((1/9)*c^2 + a)*x^2 - (1/3)*(a+1)*y - (2/27)*c^2*(a+1)*x");
}

Poly phi5() { return parse("(1/4)*x^4 - (1/2)*z^2 - (1/3)*(a+1)*x^3 + x*y + (1/2)*a*x^2"); }

std::string RowDiscrepancy::verdict() const {
    auto line = [](const ConditionCheck& c) {
        return c.label + " " + print(c.relation) + " = 0: " +
               (c.result.valid ? "residual 0" : "residual " + print(c.result.residual));
    };
    std::string winner = table.result.valid ? (lemma.result.valid ? "both conditions verify" : "table condition verifies")
                                            : (lemma.result.valid ? "lemma condition verifies" : "neither condition verifies");
    return "row " + std::to_string(row) + ": " + winner + "\n  " + line(table) + "\n  " + line(lemma);
}

namespace {

ParamSubstitution sub(Var v, const char* num, const char* den = "1") { return {v, parse(num), parse(den)}; }

const char* const kRow12B = "(2/27)*c^3 - (1/3)*c";
const char* const kRow34B = "(2/27)*c^3 - (1/9)*a^2*c + (1/9)*a*c - (1/9)*c";

}  // namespace

Table1Report table1_certificates() {
    const VectorField fn = fn_system();
    const Poly k43 = parse("(4/3)*c");
    Table1Report report;

    auto certify = [&](int row, std::string label, Poly f, Poly k, ParamConstraint cons) {
        DarbouxCertificate cert{row, std::move(label), std::move(f), std::move(k), std::move(cons), {}, false, true};
        const auto r = verify(cert.f, cert.k, fn, cert.constraints);
        cert.residual = r.residual;
        cert.valid = r.valid;
        report.certificates.push_back(std::move(cert));
    };

    const std::vector<Poly> nz_c_b{parse("c"), parse("b")};
    certify(1, "phi1", phi1(), k43,
            {{sub(Var::a, "-1"), sub(Var::b, kRow12B), sub(Var::d, "-c", "b")}, {}, nz_c_b});
    certify(2, "phi3", phi3(), k43,
            {{sub(Var::a, "-1"), sub(Var::b, kRow12B), sub(Var::d, "-2*c", "3*b")}, {}, nz_c_b});

    const Poly lemma_rel = parse("-(1/81)*c^2 - (1/27)*a^2 + (4/27)*a - 1/27");
    const std::vector<Poly> nz_34{parse("c"), parse("b"), parse("a + 1")};
    struct Row34 {
        int row;
        const char* label;
        Poly f;
        const char* d_num;
        const char* d_den;
        const char* table_rel;
    };
    const Row34 rows34[] = {{3, "phi2", phi2(), "-c", "b", "2*c^2 + 3*a^2 - 12*a + 3"},
                            {4, "phi4", phi4(), "-2*c", "3*b", "2*c^2 + a^2 - 7*a + 1"}};
    for (const auto& r : rows34) {
        const std::vector<ParamSubstitution> subs{sub(Var::b, kRow34B), sub(Var::d, r.d_num, r.d_den)};
        RowDiscrepancy disc;
        disc.row = r.row;
        disc.table.label = "table";
        disc.table.relation = parse(r.table_rel);
        disc.table.result = verify(r.f, k43, fn, {subs, {disc.table.relation}, nz_34});
        disc.lemma.label = "lemma";
        disc.lemma.relation = lemma_rel;
        disc.lemma.result = verify(r.f, k43, fn, {subs, {lemma_rel}, nz_34});
        const Poly& chosen = (!disc.table.result.valid && disc.lemma.result.valid) ? disc.lemma.relation : disc.table.relation;
        certify(r.row, r.label, r.f, k43, {subs, {chosen}, nz_34});
        report.discrepancies.push_back(std::move(disc));
    }

    const ParamConstraint bc0{{sub(Var::b, "0"), sub(Var::c, "0")}, {}, {}};
    certify(5, "y", parse("y"), Poly{}, bc0);
    certify(6, "phi5", phi5(), Poly{}, bc0);
    std::stable_sort(report.certificates.begin(), report.certificates.end(),
                     [](const auto& p, const auto& q) { return p.row < q.row; });
    return report;
}

bool proposition1_check(const std::vector<std::pair<Poly, unsigned>>& factors, const VectorField& v) {
    Poly product(1);
    Poly expected;
    for (const auto& [f, l] : factors) {
        const auto k = solve_cofactor(f, v);
        if (!k) throw NotDarboux(print(f) + " is not a Darboux polynomial");
        product *= f.pow(l);
        expected += Poly(*k).scale(Rational(static_cast<long>(l)));
    }
    const auto k = solve_cofactor(product, v);
    if (!k) throw NotDarboux("the product is not a Darboux polynomial");
    return *k == expected;
}

bool in_biological_region(const ParamPoint& p, SpeedSign sign) {
    const bool speed = sign == SpeedSign::positive ? p.c.sign() > 0 : p.c.sign() < 0;
    return p.a.sign() > 0 && p.a < Rational(1, 2) && p.d.sign() > 0 && speed && (p.b * p.c).sign() > 0;
}

}  // namespace fnsurf
