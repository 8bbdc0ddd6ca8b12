#pragma once

#include "fnsurf/field.hpp"
#include "fnsurf/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnsurf {

/// Real values for parameter symbols; lets rows with irrational parameter
/// loci be integrated.
using ParamValues = std::map<Var, double>;

[[nodiscard]] ParamValues param_values(const ParamPoint& p);

/// Double-precision evaluator of a polynomial in x, y, z. Coefficients are
/// converted once (parameters folded in), then evaluated by nested Horner.
class CompiledPoly {
public:
    CompiledPoly() = default;
    /// Throws std::invalid_argument when a parameter has no value.
    explicit CompiledPoly(const Poly& p, const ParamValues& params = {});

    [[nodiscard]] double operator()(double x, double y, double z) const;
    /// Coefficients of z^0, z^1, ... at fixed x, y.
    [[nodiscard]] std::vector<double> z_coefficients(double x, double y) const;

private:
    std::size_t nx_ = 0, ny_ = 0, nz_ = 0;
    std::vector<double> coeff_;  // [i][j][k] flattened, i = x power
    [[nodiscard]] double at(std::size_t i, std::size_t j, std::size_t k) const {
        return coeff_[(i * ny_ + j) * nz_ + k];
    }
};

struct State {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct Trajectory {
    std::vector<State> states;  // includes the initial state
    bool diverged = false;      // stopped early on a non-finite state
};

/// Classical fixed-step RK4 from s0.t to t_end. The last step is shortened
/// to land on t_end.
[[nodiscard]] Trajectory integrate(const VectorField& v, const State& s0, double t_end, double step,
                                   const ParamValues& params = {});

struct DriftSample {
    double t = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
    double f = 0.0;
    double predicted = 0.0;
};

struct DriftReport {
    double max_relative_error = 0.0;  // |f - predicted| / max(|f|, 1e-300)
    double max_abs_error = 0.0;
    std::vector<DriftSample> samples;
    bool diverged = false;
};

/// Integrates the field together with I' = k and compares f along the orbit
/// with f(s0) exp(I).
[[nodiscard]] DriftReport darboux_drift(const VectorField& v, const Poly& f, const Poly& k, const State& s0,
                                        double t_end, double step, const ParamValues& params = {});

/// t,x,y,z,f,predicted with a header line.
[[nodiscard]] std::string to_csv(const DriftReport& report);

struct Box {
    double x_min = -1, x_max = 1;
    double y_min = -1, y_max = 1;
    double z_min = -1, z_max = 1;
};

class NoRoot : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Real roots of sum c_i t^i in [lo, hi], ascending, each polished until
/// |p| <= tol where the precision allows.
[[nodiscard]] std::vector<double> real_roots(const std::vector<double>& coefficients, double lo, double hi);

/// A root z in [z_min, z_max] of f(x, y, .), if any.
[[nodiscard]] std::optional<double> surface_root(const Poly& f, double x, double y, double z_min, double z_max,
                                                 const ParamValues& params = {});

/// A point of {f = 0} in the box with |f| <= 1e-12, drawing (x, y)
/// uniformly from a seeded generator. Throws NoRoot after `retries` draws
/// and std::invalid_argument when f does not depend on z.
[[nodiscard]] State surface_sample(const Poly& f, const Box& box, std::uint64_t seed, const ParamValues& params = {},
                                   int retries = 200);

}  // namespace fnsurf
