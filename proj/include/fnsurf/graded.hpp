#pragma once

#include "fnsurf/field.hpp"
#include "fnsurf/linalg.hpp"
#include "fnsurf/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fnsurf {

/// State monomials x^i y^j z^k with i + 2j + 2k = weight, in canonical order.
/// Negative weights give the empty slice.
struct GradedSlice {
    long weight = 0;
    std::vector<Monomial> basis;

    [[nodiscard]] std::size_t size() const { return basis.size(); }
    /// Coordinates of a polynomial supported on the slice; throws
    /// std::invalid_argument for any term outside it.
    [[nodiscard]] Vector coordinates(const Poly& p) const;
    [[nodiscard]] Poly to_poly(const Vector& v) const;
};

[[nodiscard]] GradedSlice graded_slice(long weight);

/// The operator F -> L[F] - k1 x F from the weight-w slice to the weight-(w+1)
/// slice, with m fixed. Column j holds the image of source.basis[j].
struct GradedMap {
    GradedSlice source;
    GradedSlice target;
    Matrix matrix;
};

[[nodiscard]] GradedMap graded_map(long source_weight, const Rational& m, const Rational& k1 = Rational{});

/// Outcome of solving (L - k1 x) F = g on one slice. When g lies outside the
/// image, `particular` is empty and `obstruction` carries the nonzero
/// cokernel coordinates.
struct SliceSolution {
    std::optional<Poly> particular;
    std::vector<Poly> kernel;
    Vector obstruction;

    [[nodiscard]] bool solvable() const { return particular.has_value(); }
};

/// Factored slice operator; reusable across right-hand sides.
class SliceOperator {
public:
    SliceOperator(long source_weight, const Rational& m, const Rational& k1 = Rational{});

    [[nodiscard]] const GradedMap& map() const { return map_; }
    [[nodiscard]] const std::vector<Poly>& kernel() const { return kernel_; }
    [[nodiscard]] std::size_t cokernel_dimension() const { return solver_.cokernel_dimension(); }
    [[nodiscard]] Vector obstruction(const Poly& g) const;
    /// Linear right inverse on the image (ignores any cokernel part of g).
    [[nodiscard]] Poly particular(const Poly& g) const;
    [[nodiscard]] SliceSolution solve(const Poly& g) const;

private:
    GradedMap map_;
    LinearSolver solver_;
    std::vector<Poly> kernel_;
};

/// Basis of the weight-homogeneous kernel of L at the given weight.
[[nodiscard]] std::vector<Poly> kernel_of_L(long weight, const Rational& m);

/// Solves (L - k1 x) F = g for F of weight `source_weight`; g must be
/// supported on the weight source_weight + 1 slice.
[[nodiscard]] SliceSolution solve_L(const Poly& g, long source_weight, const Rational& m,
                                    const Rational& k1 = Rational{});

/// One level of the cascade, recorded after the stage's solvability
/// conditions have been imposed.
struct CascadeStage {
    int index = 0;
    long weight = 0;  // weight of the unknown F_j
    Poly rhs;
    Poly solution;
    std::vector<Poly> kernel_freedom;
    Vector obstruction;                 // cokernel coordinates of the constant part of rhs
    std::vector<std::string> resolved;  // free constants fixed at this stage
};

struct CascadeObstruction {
    int stage = 0;
    Vector components;
    Poly rhs;
};

struct CascadeState {
    ParamPoint params;
    Rational k0;
    Rational k1;
    long total_weight = 0;
    std::vector<Poly> chain;  // F_0 .. F_l
    std::vector<CascadeStage> stages;
    /// Darboux polynomials (same cofactor) spanned by constants left free at the end.
    std::vector<Poly> free_family;
    std::vector<std::string> free_constants;
    std::optional<CascadeObstruction> obstruction;

    [[nodiscard]] bool completed() const { return !obstruction.has_value(); }
    [[nodiscard]] Poly sum() const;
};

/// Runs the graded cascade for a Darboux polynomial of the assistant system
/// with cofactor k1 x + k0 at a numeric parameter point, starting from the
/// top component F0 (weight l, (L - k1 x) F0 = 0). Constants from kernel
/// freedom are carried as unknowns and fixed by later solvability conditions;
/// those still free at the end are set so that the result has zero
/// coefficient on the pivot monomials of the free family (pivots chosen by
/// ascending x-degree).
/// Throws std::invalid_argument when the preconditions on F0 fail.
[[nodiscard]] CascadeState cascade(const Poly& F0, const ParamPoint& params, const Rational& k0,
                                   const Rational& k1, std::optional<long> total_weight = std::nullopt);

enum class Parity { odd, even };

/// Kernel family sum_i a_i v^e(i) w^(n-i) with v = y - m x^2/2, w = x^4/4 - z^2/2:
/// odd: i = 1..n, e(i) = 2i - 1 (weight 4n - 2); even: i = 0..n, e(i) = 2i (weight 4n).
struct AnsatzFamily {
    std::vector<std::string> coefficient_names;
    std::vector<Poly> members;

    /// sum of coefficients[i] * members[i].
    [[nodiscard]] Poly combine(const std::vector<Rational>& coefficients) const;
};

[[nodiscard]] AnsatzFamily top_kernel_ansatz(int n, Parity parity, const Rational& m);

/// v = y - m x^2 / 2 and w = x^4/4 - z^2/2.
[[nodiscard]] Poly characteristic_v(const Rational& m);
[[nodiscard]] Poly characteristic_w();

}  // namespace fnsurf
