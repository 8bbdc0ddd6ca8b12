#pragma once

// Independent reference computations for the tests. Nothing here goes
// through Poly multiplication, substitution or the library's linear algebra.

#include "fnsurf/linalg.hpp"
#include "fnsurf/poly.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using fnsurf::Monomial;
using fnsurf::Poly;
using fnsurf::Rational;
using fnsurf::Var;

/// Values for all nine symbols, indexed by Var.
using Point = std::array<Rational, fnsurf::kNumVars>;

inline Rational eval(const Poly& p, const Point& pt) {
    Rational acc;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (Var v : fnsurf::kAllVars) t *= pt[static_cast<std::size_t>(v)].pow(m[v]);
        acc += t;
    }
    return acc;
}

/// d p / d v evaluated term by term.
inline Rational eval_partial(const Poly& p, Var v, const Point& pt) {
    Rational acc;
    for (const auto& [m, c] : p.terms()) {
        const auto e = m[v];
        if (e == 0) continue;
        Rational t = c * Rational(static_cast<long>(e));
        for (Var u : fnsurf::kAllVars) {
            const auto k = u == v ? e - 1 : m[u];
            t *= pt[static_cast<std::size_t>(u)].pow(k);
        }
        acc += t;
    }
    return acc;
}

inline const Rational& at(const Point& pt, Var v) { return pt[static_cast<std::size_t>(v)]; }

/// (x', y', z') of the assistant system written out by hand; m = 0 gives FN.
inline std::array<Rational, 3> assistant_rhs(const Point& pt) {
    const Rational& x = at(pt, Var::x);
    const Rational& y = at(pt, Var::y);
    const Rational& z = at(pt, Var::z);
    const Rational& a = at(pt, Var::a);
    const Rational& b = at(pt, Var::b);
    const Rational& c = at(pt, Var::c);
    const Rational& d = at(pt, Var::d);
    const Rational& m = at(pt, Var::m);
    return {z, b * (x - d * y) + m * x * z, x * (x - Rational(1)) * (x - a) + y + c * z};
}

/// Derivative of f along the assistant field at a point.
inline Rational lie_at(const Poly& f, const Point& pt) {
    const auto rhs = assistant_rhs(pt);
    return eval_partial(f, Var::x, pt) * rhs[0] + eval_partial(f, Var::y, pt) * rhs[1] +
           eval_partial(f, Var::z, pt) * rhs[2];
}

inline Rational random_rational(std::mt19937_64& rng, int num_bound = 9, int den_bound = 5) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound), den(1, den_bound);
    return Rational(num(rng), den(rng));
}

/// Random state point with the given parameter values.
inline Point random_point(std::mt19937_64& rng, const Rational& a, const Rational& b, const Rational& c,
                          const Rational& d, const Rational& m = Rational{}) {
    Point pt;
    pt[0] = random_rational(rng);
    pt[1] = random_rational(rng);
    pt[2] = random_rational(rng);
    pt[3] = a;
    pt[4] = b;
    pt[5] = c;
    pt[6] = d;
    pt[7] = m;
    return pt;
}

/// X(f) == k f at `samples` random points of the assistant system with the given parameters.
inline bool darboux_at_points(const Poly& f, const Poly& k, const Rational& a, const Rational& b, const Rational& c,
                              const Rational& d, const Rational& m = Rational{}, int samples = 12,
                              std::uint64_t seed = 99) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const Point pt = random_point(rng, a, b, c, d, m);
        if (lie_at(f, pt) != eval(k, pt) * eval(f, pt)) return false;
    }
    return true;
}

/// #{(i, j) >= 0 : 2i + 4j = w}.
inline std::size_t kernel_dimension_formula(long w) {
    std::size_t n = 0;
    for (long j = 0; 4 * j <= w; ++j)
        if ((w - 4 * j) % 2 == 0) ++n;
    return w < 0 ? 0 : n;
}

/// Rank over GF(p) by plain elimination; entries must have denominators prime to p.
inline std::size_t rank_mod_p(const fnsurf::Matrix& a, std::uint64_t p = 1000000007ULL) {
    auto mod = [p](const Rational& r) {
        const mpz_class P(static_cast<unsigned long>(p));
        mpz_class n = r.numerator() % P, d = r.denominator() % P, inv;
        if (n < 0) n += P;
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
        return static_cast<std::uint64_t>(mpz_class((n * inv) % P).get_ui());
    };
    auto powmod = [p](std::uint64_t b, std::uint64_t e) {
        unsigned __int128 r = 1, x = b;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return static_cast<std::uint64_t>(r);
    };
    std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = mod(a(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && m[piv][col] == 0) ++piv;
        if (piv == a.rows()) continue;
        std::swap(m[piv], m[rank]);
        const std::uint64_t inv = powmod(m[rank][col], p - 2);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (m[i][col] == 0) continue;
            const auto f = static_cast<unsigned __int128>(m[i][col]) * inv % p;
            for (std::size_t j = col; j < a.cols(); ++j)
                m[i][j] = static_cast<std::uint64_t>((m[i][j] + p - f * m[rank][j] % p) % p);
        }
        ++rank;
    }
    return rank;
}

/// Random polynomial in the given symbols with small rational coefficients.
inline Poly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, int max_terms = 5, int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms), ex(0, max_exp);
    Poly p;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (Var v : vars) m.set(v, static_cast<std::uint32_t>(ex(rng)));
        p.add_term(random_rational(rng), m);
    }
    return p;
}

}  // namespace oracle
