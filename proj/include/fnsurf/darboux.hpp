#pragma once

#include "fnsurf/field.hpp"
#include "fnsurf/poly.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnsurf {

/// var := numerator / denominator.
struct ParamSubstitution {
    Var var = Var::a;
    Poly numerator;
    Poly denominator = Poly(1);
};

/// Parameter conditions in solved form. Substitution i may use symbols
/// assigned by substitutions 0..i-1 but not its own or later ones.
struct ParamConstraint {
    std::vector<ParamSubstitution> substitutions;
    std::vector<Poly> relations;    // must vanish
    std::vector<Poly> nonvanishing; // must not vanish

    [[nodiscard]] bool empty() const { return substitutions.empty() && relations.empty() && nonvanishing.empty(); }
    [[nodiscard]] std::string str() const;
};

/// Thrown for malformed constraints (non-triangular, undeclared denominators
/// or leading coefficients).
class ConstraintError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Applies the substitutions (clearing declared denominators) and
/// pseudo-reduces by each relation in its main parameter.
[[nodiscard]] Poly reduce(const Poly& p, const ParamConstraint& constraints);

struct VerifyResult {
    bool valid = false;
    Poly residual;  // reduced X(f) - k f
};

[[nodiscard]] VerifyResult verify(const Poly& f, const Poly& k, const VectorField& v,
                                  const ParamConstraint& constraints = {});

/// X(f) / f when the division is exact and the quotient has state degree <= 2.
[[nodiscard]] std::optional<Poly> solve_cofactor(const Poly& f, const VectorField& v);

class NotDarboux : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchResult {
    Poly cofactor;
    std::vector<Poly> basis;
};

/// {0} together with (4/3) n c for n = 1..ceil(D/4), without duplicates.
[[nodiscard]] std::vector<Poly> fn_cofactor_candidates(const Rational& c, int max_degree);

/// For each candidate k, a basis of {f : deg f <= D, X(f) = k f}, constants
/// left out when k = 0. `v` must be numeric. Candidates with an empty space
/// are omitted. threads > 1 spreads candidates over worker tasks.
[[nodiscard]] std::vector<SearchResult> search(const VectorField& v, int max_degree,
                                               const std::vector<Poly>& candidates, unsigned threads = 1);

/// Nonconstant polynomial first integrals of degree <= D.
[[nodiscard]] std::vector<Poly> first_integrals(const VectorField& v, int max_degree);

/// True iff some 2x2 minor of the Jacobian of (f, g) is a nonzero polynomial.
[[nodiscard]] bool independent(const Poly& f, const Poly& g);

struct DarbouxCertificate {
    int row = 0;
    std::string name;
    Poly f;
    Poly k;
    ParamConstraint constraints;
    Poly residual;
    bool valid = false;
    bool irreducible = true;
};

struct ConditionCheck {
    std::string label;
    Poly relation;
    VerifyResult result;
};

/// Rows 3-4 carry two competing parameter conditions.
struct RowDiscrepancy {
    int row = 0;
    ConditionCheck table;
    ConditionCheck lemma;
    [[nodiscard]] std::string verdict() const;
};

struct Table1Report {
    std::vector<DarbouxCertificate> certificates;
    std::vector<RowDiscrepancy> discrepancies;
};

/// The six generators with their parameter conditions, each verified
/// against the FN field. Rows 3-4 use whichever condition verifies.
[[nodiscard]] Table1Report table1_certificates();

/// Named generators; parameters stay symbolic.
[[nodiscard]] Poly phi1();
[[nodiscard]] Poly phi2();
[[nodiscard]] Poly phi3();
[[nodiscard]] Poly phi4();
[[nodiscard]] Poly phi5();

/// solve_cofactor of the product equals sum l_i k_i. Throws NotDarboux when
/// some factor (or the product) has no cofactor.
[[nodiscard]] bool proposition1_check(const std::vector<std::pair<Poly, unsigned>>& factors, const VectorField& v);

enum class SpeedSign { positive, negative };

/// 0 < a < 1/2, d > 0 and b = eps / c with eps > 0, c of the given sign.
[[nodiscard]] bool in_biological_region(const ParamPoint& p, SpeedSign sign);

}  // namespace fnsurf
