#include "fnsurf/numeric.hpp"

#include "fnsurf/parse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace fnsurf {

ParamValues param_values(const ParamPoint& p) {
    return {{Var::a, p.a.to_double()}, {Var::b, p.b.to_double()}, {Var::c, p.c.to_double()},
            {Var::d, p.d.to_double()}, {Var::m, p.m.to_double()}};
}

CompiledPoly::CompiledPoly(const Poly& p, const ParamValues& params) {
    nx_ = static_cast<std::size_t>(std::max(0L, p.degree_in(Var::x))) + 1;
    ny_ = static_cast<std::size_t>(std::max(0L, p.degree_in(Var::y))) + 1;
    nz_ = static_cast<std::size_t>(std::max(0L, p.degree_in(Var::z))) + 1;
    coeff_.assign(nx_ * ny_ * nz_, 0.0);
    for (const auto& [m, c] : p.terms()) {
        double value = c.to_double();
        for (Var v : kAllVars) {
            if (is_state(v) || m[v] == 0) continue;
            const auto it = params.find(v);
            if (it == params.end())
                throw std::invalid_argument("no numeric value for parameter " + std::string(name(v)) + " in " + print(p));
            value *= std::pow(it->second, static_cast<double>(m[v]));
        }
        coeff_[(m[Var::x] * ny_ + m[Var::y]) * nz_ + m[Var::z]] += value;
    }
}

double CompiledPoly::operator()(double x, double y, double z) const {
    if (coeff_.empty()) return 0.0;
    double acc_x = 0.0;
    for (std::size_t i = nx_; i-- > 0;) {
        double acc_y = 0.0;
        for (std::size_t j = ny_; j-- > 0;) {
            double acc_z = 0.0;
            for (std::size_t k = nz_; k-- > 0;) acc_z = acc_z * z + at(i, j, k);
            acc_y = acc_y * y + acc_z;
        }
        acc_x = acc_x * x + acc_y;
    }
    return acc_x;
}

std::vector<double> CompiledPoly::z_coefficients(double x, double y) const {
    std::vector<double> out(nz_, 0.0);
    if (coeff_.empty()) return out;
    for (std::size_t k = 0; k < nz_; ++k) {
        double acc_x = 0.0;
        for (std::size_t i = nx_; i-- > 0;) {
            double acc_y = 0.0;
            for (std::size_t j = ny_; j-- > 0;) acc_y = acc_y * y + at(i, j, k);
            acc_x = acc_x * x + acc_y;
        }
        out[k] = acc_x;
    }
    return out;
}

namespace {

using Vec4 = std::array<double, 4>;

struct Rhs {
    CompiledPoly P, Q, R, K;
    Vec4 operator()(const Vec4& s) const { return {P(s[0], s[1], s[2]), Q(s[0], s[1], s[2]), R(s[0], s[1], s[2]), K(s[0], s[1], s[2])}; }
};

Vec4 axpy(const Vec4& s, double h, const Vec4& k) { return {s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]}; }

bool finite(const Vec4& s) { return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); }); }

// Calls visit(t, state) at the start and after every step; returns false on divergence.
template <class Visit>
bool rk4(const Rhs& f, Vec4 s, double t0, double t_end, double step, Visit visit) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed the start time");
    const auto steps = static_cast<long>(std::ceil((t_end - t0) / step - 1e-9));
    visit(t0, s);
    for (long n = 0; n < steps; ++n) {
        const double t = t0 + static_cast<double>(n) * step;
        const double h = n + 1 == steps ? t_end - t : step;
        const Vec4 k1 = f(s);
        const Vec4 k2 = f(axpy(s, h / 2, k1));
        const Vec4 k3 = f(axpy(s, h / 2, k2));
        const Vec4 k4 = f(axpy(s, h, k3));
        for (std::size_t i = 0; i < 4; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        if (!finite(s)) return false;
        visit(n + 1 == steps ? t_end : t + h, s);
    }
    return true;
}

}  // namespace

Trajectory integrate(const VectorField& v, const State& s0, double t_end, double step, const ParamValues& params) {
    const Rhs f{CompiledPoly(v.P, params), CompiledPoly(v.Q, params), CompiledPoly(v.R, params), CompiledPoly{}};
    Trajectory tr;
    tr.diverged = !rk4(f, {s0.x, s0.y, s0.z, 0.0}, s0.t, t_end, step,
                       [&](double t, const Vec4& s) { tr.states.push_back({t, s[0], s[1], s[2]}); });
    return tr;
}

DriftReport darboux_drift(const VectorField& v, const Poly& f, const Poly& k, const State& s0, double t_end,
                          double step, const ParamValues& params) {
    const Rhs rhs{CompiledPoly(v.P, params), CompiledPoly(v.Q, params), CompiledPoly(v.R, params),
                  CompiledPoly(k, params)};
    const CompiledPoly fc(f, params);
    const double f0 = fc(s0.x, s0.y, s0.z);
    DriftReport rep;
    rep.diverged = !rk4(rhs, {s0.x, s0.y, s0.z, 0.0}, s0.t, t_end, step, [&](double t, const Vec4& s) {
        DriftSample smp{t, s[0], s[1], s[2], fc(s[0], s[1], s[2]), f0 * std::exp(s[3])};
        const double err = std::abs(smp.f - smp.predicted);
        rep.max_abs_error = std::max(rep.max_abs_error, err);
        rep.max_relative_error = std::max(rep.max_relative_error, err / std::max(std::abs(smp.f), 1e-300));
        rep.samples.push_back(smp);
    });
    return rep;
}

std::string to_csv(const DriftReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,y,z,f,predicted\n";
    for (const auto& s : report.samples)
        os << s.t << ',' << s.x << ',' << s.y << ',' << s.z << ',' << s.f << ',' << s.predicted << '\n';
    return os.str();
}

namespace {

double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double refine(const std::vector<double>& c, double lo, double hi) {
    double flo = horner(c, lo);
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        const double fm = horner(c, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(horner(c, lo)) <= std::abs(horner(c, hi)) ? lo : hi;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coefficients, double lo, double hi) {
    std::vector<double> c = coefficients;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.empty()) return {lo};
    if (c.size() == 1) return {};
    if (c.size() == 2) {
        const double r = -c[0] / c[1];
        return (r >= lo && r <= hi) ? std::vector<double>{r} : std::vector<double>{};
    }
    std::vector<double> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = static_cast<double>(i) * c[i];
    std::vector<double> pts{lo};
    for (double r : real_roots(dc, lo, hi))
        if (r > pts.back()) pts.push_back(r);
    if (hi > pts.back()) pts.push_back(hi);

    // Scale for deciding that a critical value is a (multiple) root.
    double scale = 0.0;
    const double span = std::max({std::abs(lo), std::abs(hi), 1.0});
    for (std::size_t i = 0; i < c.size(); ++i) scale += std::abs(c[i]) * std::pow(span, static_cast<double>(i));
    const double tol = 1e-14 * scale;

    std::vector<double> roots;
    auto push = [&](double r) {
        if (roots.empty() || std::abs(r - roots.back()) > 1e-12 * span) roots.push_back(r);
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double fp = horner(c, pts[i]);
        if (std::abs(fp) <= tol) {
            push(pts[i]);
            continue;
        }
        if (i + 1 < pts.size()) {
            const double fq = horner(c, pts[i + 1]);
            if (std::abs(fq) > tol && (fp < 0) != (fq < 0)) push(refine(c, pts[i], pts[i + 1]));
        }
    }
    return roots;
}

std::optional<double> surface_root(const Poly& f, double x, double y, double z_min, double z_max,
                                   const ParamValues& params) {
    const CompiledPoly fc(f, params);
    for (double z : real_roots(fc.z_coefficients(x, y), z_min, z_max))
        if (std::abs(fc(x, y, z)) <= 1e-12) return z;
    return std::nullopt;
}

State surface_sample(const Poly& f, const Box& box, std::uint64_t seed, const ParamValues& params, int retries) {
    if (f.is_constant()) throw NoRoot("constant polynomial has no zero set to sample");
    if (!f.depends_on(Var::z)) throw std::invalid_argument("surface_sample needs a polynomial depending on z");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x_min, box.x_max), uy(box.y_min, box.y_max);
    for (int attempt = 0; attempt < retries; ++attempt) {
        const double x = ux(rng), y = uy(rng);
        if (auto z = surface_root(f, x, y, box.z_min, box.z_max, params)) return {0.0, x, y, *z};
    }
    throw NoRoot("no point of the surface found in the box after " + std::to_string(retries) + " draws");
}

}  // namespace fnsurf
