#include "fnsurf/graded.hpp"

#include "fnsurf/parse.hpp"

#include <algorithm>
#include <stdexcept>

namespace fnsurf {

GradedSlice graded_slice(long weight) {
    GradedSlice s{weight, {}};
    if (weight < 0) return s;
    // i + 2(j + k) = weight; collect then sort into canonical (decreasing) order.
    for (long pair_sum = 0; 2 * pair_sum <= weight; ++pair_sum) {
        const auto i = static_cast<std::uint32_t>(weight - 2 * pair_sum);
        for (long j = 0; j <= pair_sum; ++j)
            s.basis.push_back(Monomial::state(i, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(pair_sum - j)));
    }
    std::sort(s.basis.begin(), s.basis.end(), std::greater<>{});
    return s;
}

Vector GradedSlice::coordinates(const Poly& p) const {
    Vector v(basis.size());
    for (const auto& [m, c] : p.terms()) {
        const auto it = std::lower_bound(basis.begin(), basis.end(), m, std::greater<>{});
        if (it == basis.end() || *it != m)
            throw std::invalid_argument("polynomial term " + print(Poly::term(c, m)) + " lies outside the weight-" +
                                        std::to_string(weight) + " slice");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

Poly GradedSlice::to_poly(const Vector& v) const {
    Poly p;
    for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(v[i], basis[i]);
    return p;
}

GradedMap graded_map(long source_weight, const Rational& m, const Rational& k1) {
    GradedMap g{graded_slice(source_weight), graded_slice(source_weight + 1), {}};
    g.matrix = Matrix(g.target.size(), g.source.size());
    const Poly x = Poly::var(Var::x);
    for (std::size_t j = 0; j < g.source.size(); ++j) {
        const Poly mono = Poly::term(Rational(1), g.source.basis[j]);
        Poly image = op_L(mono, m);
        if (!k1.is_zero()) image -= (x * mono).scale(k1);
        const Vector col = g.target.coordinates(image);
        for (std::size_t i = 0; i < col.size(); ++i) g.matrix(i, j) = col[i];
    }
    return g;
}

SliceOperator::SliceOperator(long source_weight, const Rational& m, const Rational& k1)
    : map_(graded_map(source_weight, m, k1)), solver_(map_.matrix) {
    for (const auto& v : solver_.kernel()) kernel_.push_back(map_.source.to_poly(v));
}

Vector SliceOperator::obstruction(const Poly& g) const { return solver_.obstruction(map_.target.coordinates(g)); }

Poly SliceOperator::particular(const Poly& g) const {
    return map_.source.to_poly(solver_.particular(map_.target.coordinates(g)));
}

SliceSolution SliceOperator::solve(const Poly& g) const {
    SliceSolution s;
    const Vector b = map_.target.coordinates(g);
    s.obstruction = solver_.obstruction(b);
    s.kernel = kernel_;
    const bool clear = std::all_of(s.obstruction.begin(), s.obstruction.end(), [](const auto& c) { return c.is_zero(); });
    if (clear) s.particular = map_.source.to_poly(solver_.particular(b));
    return s;
}

std::vector<Poly> kernel_of_L(long weight, const Rational& m) { return SliceOperator(weight, m).kernel(); }

SliceSolution solve_L(const Poly& g, long source_weight, const Rational& m, const Rational& k1) {
    return SliceOperator(source_weight, m, k1).solve(g);
}

Poly CascadeState::sum() const {
    Poly s;
    for (const auto& f : chain) s += f;
    return s;
}

namespace {

/// Polynomial affine in the cascade unknowns: parts[0] + sum_u t_u parts[u].
struct Affine {
    std::vector<Poly> parts;

    Poly& at(std::size_t u) {
        if (parts.size() <= u) parts.resize(u + 1);
        return parts[u];
    }
    [[nodiscard]] Poly get(std::size_t u) const { return u < parts.size() ? parts[u] : Poly{}; }

    /// t_target := value - sum_q coeffs[q] t_q
    void eliminate(std::size_t target, const Rational& value, const std::vector<std::pair<std::size_t, Rational>>& coeffs) {
        if (target >= parts.size() || parts[target].is_zero()) return;
        const Poly p = parts[target];
        parts[target] = Poly{};
        at(0) += Poly(p).scale(value);
        for (const auto& [q, r] : coeffs) at(q) -= Poly(p).scale(r);
    }
};

std::string describe_value(const Rational& value, const std::vector<std::pair<std::size_t, Rational>>& coeffs) {
    std::string s = value.str();
    for (const auto& [q, r] : coeffs) {
        if (r.is_zero()) continue;
        const Rational neg = -r;
        s += (neg.sign() < 0 ? " - " : " + ") + neg.abs().str() + "*t" + std::to_string(q);
    }
    return s;
}

}  // namespace

CascadeState cascade(const Poly& F0, const ParamPoint& params, const Rational& k0, const Rational& k1,
                     std::optional<long> total_weight) {
    const Poly top = substitute(F0, params.substitution());
    if (top.is_zero()) throw std::invalid_argument("cascade: F0 must be nonzero");
    if (top.has_parameters()) throw std::invalid_argument("cascade: F0 must be numeric once parameters are fixed");
    const auto wd = weight_degree(top);
    if (!wd) throw std::invalid_argument("cascade: F0 is not weight homogeneous");
    const long l = total_weight.value_or(static_cast<long>(*wd));
    if (static_cast<long>(*wd) != l) throw std::invalid_argument("cascade: F0 weight differs from the total weight");
    const Poly x = Poly::var(Var::x);
    if (op_L(top, params.m) != (x * top).scale(k1))
        throw std::invalid_argument("cascade: F0 is not in the kernel of L - k1 x");

    CascadeState st;
    st.params = params;
    st.k0 = k0;
    st.k1 = k1;
    st.total_weight = l;

    const Rational bd = params.b * params.d;
    const Poly y = Poly::var(Var::y);
    const Poly z_coeff = substitute(parse("(a+1)*x^2 - y - c*z"), params.substitution());
    const Poly bx = (Poly(x)).scale(params.b);
    const Poly ax = (Poly(x)).scale(params.a);

    std::vector<Affine> chain(static_cast<std::size_t>(l) + 1);
    chain[0].at(0) = top;
    std::size_t unknowns = 0;
    std::vector<std::string> names{""};

    auto component = [&](long j) -> const Affine* {
        return (j >= 0 && j <= l) ? &chain[static_cast<std::size_t>(j)] : nullptr;
    };

    for (long j = 1; j <= l + 3; ++j) {
        const Affine* prev1 = component(j - 1);
        const Affine* prev2 = component(j - 2);
        Affine rhs;
        for (std::size_t u = 0; u <= unknowns; ++u) {
            Poly r;
            if (prev1) {
                const Poly f = prev1->get(u);
                if (!f.is_zero()) {
                    r += Poly(f).scale(k0);
                    r += (y * partial(f, Var::y)).scale(bd);
                    r += z_coeff * partial(f, Var::z);
                }
            }
            if (prev2) {
                const Poly g = prev2->get(u);
                if (!g.is_zero()) {
                    r -= bx * partial(g, Var::y);
                    r -= ax * partial(g, Var::z);
                }
            }
            rhs.at(u) = std::move(r);
        }

        const long w = l - j;
        const SliceOperator op(w, params.m, k1);
        CascadeStage stage;
        stage.index = static_cast<int>(j);
        stage.weight = w;

        if (op.cokernel_dimension() > 0) {
            std::vector<Vector> ob(unknowns + 1);
            for (std::size_t u = 0; u <= unknowns; ++u) ob[u] = op.obstruction(rhs.get(u));
            std::vector<std::size_t> live;
            for (std::size_t u = 1; u <= unknowns; ++u)
                if (std::any_of(ob[u].begin(), ob[u].end(), [](const auto& c) { return !c.is_zero(); })) live.push_back(u);
            const std::size_t rows = op.cokernel_dimension();
            Matrix cond(rows, live.size() + 1);
            for (std::size_t i = 0; i < rows; ++i) {
                for (std::size_t q = 0; q < live.size(); ++q) cond(i, q) = ob[live[q]][i];
                cond(i, live.size()) = -ob[0][i];
            }
            const RowEchelon e = rref(cond);
            if (!e.pivots.empty() && e.pivots.back() == live.size()) {
                stage.rhs = rhs.get(0);
                stage.obstruction = ob[0];
                st.stages.push_back(stage);
                st.obstruction = CascadeObstruction{static_cast<int>(j), ob[0], rhs.get(0)};
                for (const auto& a : chain) st.chain.push_back(a.get(0));
                return st;
            }
            std::vector<bool> is_pivot(live.size(), false);
            for (auto p : e.pivots) is_pivot[p] = true;
            for (std::size_t i = 0; i < e.pivots.size(); ++i) {
                const std::size_t target = live[e.pivots[i]];
                const Rational value = e.reduced(i, live.size());
                std::vector<std::pair<std::size_t, Rational>> coeffs;
                for (std::size_t q = 0; q < live.size(); ++q)
                    if (!is_pivot[q] && !e.reduced(i, q).is_zero()) coeffs.emplace_back(live[q], e.reduced(i, q));
                for (auto& a : chain) a.eliminate(target, value, coeffs);
                rhs.eliminate(target, value, coeffs);
                stage.resolved.push_back("t" + std::to_string(target) + " = " + describe_value(value, coeffs));
            }
            stage.obstruction = op.obstruction(rhs.get(0));
        }

        stage.rhs = rhs.get(0);
        if (w >= 0) {
            Affine& F = chain[static_cast<std::size_t>(j)];
            for (std::size_t u = 0; u <= unknowns; ++u) {
                const Poly r = rhs.get(u);
                if (!r.is_zero()) F.at(u) = op.particular(r);
            }
            for (const auto& k : op.kernel()) {
                ++unknowns;
                F.at(unknowns) = k;
                names.push_back("t" + std::to_string(unknowns) + " (stage " + std::to_string(j) + ", " + print(k) + ")");
            }
            stage.solution = F.get(0);
            stage.kernel_freedom = op.kernel();
        }
        st.stages.push_back(std::move(stage));
    }

    // Constants still free span lower-weight Darboux polynomials with the same cofactor.
    std::vector<std::size_t> live;
    for (std::size_t u = 1; u <= unknowns; ++u)
        if (std::any_of(chain.begin(), chain.end(), [u](const Affine& a) { return !a.get(u).is_zero(); })) live.push_back(u);

    std::vector<Rational> t(unknowns + 1);
    if (!live.empty()) {
        std::vector<Poly> family;
        for (auto u : live) {
            Poly g;
            for (const auto& a : chain) g += a.get(u);
            family.push_back(std::move(g));
        }
        std::vector<Monomial> support;
        for (const auto& g : family)
            for (const auto& [m, c] : g.terms()) support.push_back(m);
        std::sort(support.begin(), support.end(), [](const Monomial& p, const Monomial& q) {
            if (p[Var::x] != q[Var::x]) return p[Var::x] < q[Var::x];
            return p > q;
        });
        support.erase(std::unique(support.begin(), support.end()), support.end());

        Matrix g(family.size(), support.size());
        for (std::size_t r = 0; r < family.size(); ++r)
            for (std::size_t s = 0; s < support.size(); ++s) g(r, s) = family[r].coeff(support[s]);
        const RowEchelon e = rref(g);
        for (std::size_t r = 0; r < e.rank(); ++r) {
            Poly member;
            for (std::size_t s = 0; s < support.size(); ++s) member.add_term(e.reduced(r, s), support[s]);
            st.free_family.push_back(std::move(member));
        }
        Poly f0;
        for (const auto& a : chain) f0 += a.get(0);
        // f0 + sum t_u g_u vanishes on the pivot monomials.
        Matrix sys(e.rank(), family.size());
        Vector b(e.rank());
        for (std::size_t r = 0; r < e.rank(); ++r) {
            const Monomial& pm = support[e.pivots[r]];
            for (std::size_t q = 0; q < family.size(); ++q) sys(r, q) = family[q].coeff(pm);
            b[r] = -f0.coeff(pm);
        }
        const auto sol = LinearSolver(sys).solve(b);
        if (!sol) throw std::logic_error("cascade: normalisation system is inconsistent");
        for (std::size_t q = 0; q < live.size(); ++q) t[live[q]] = (*sol)[q];
        for (auto u : live) st.free_constants.push_back(names[u]);
    }

    for (const auto& a : chain) {
        Poly f = a.get(0);
        for (auto u : live) f += a.get(u).scale(Rational(1)) * Poly(t[u]);
        st.chain.push_back(std::move(f));
    }
    return st;
}

Poly characteristic_v(const Rational& m) {
    Poly v = Poly::var(Var::y);
    v -= parse("x^2").scale(m / Rational(2));
    return v;
}

Poly characteristic_w() { return parse("(1/4)*x^4 - (1/2)*z^2"); }

Poly AnsatzFamily::combine(const std::vector<Rational>& coefficients) const {
    if (coefficients.size() != members.size()) throw std::invalid_argument("AnsatzFamily::combine: size mismatch");
    Poly out;
    for (std::size_t i = 0; i < members.size(); ++i) out += Poly(members[i]).scale(coefficients[i]);
    return out;
}

AnsatzFamily top_kernel_ansatz(int n, Parity parity, const Rational& m) {
    if (parity == Parity::odd && n < 1) throw std::invalid_argument("odd ansatz needs n >= 1");
    if (n < 0) throw std::invalid_argument("ansatz needs n >= 0");
    const Poly v = characteristic_v(m);
    const Poly w = characteristic_w();
    AnsatzFamily fam;
    const int first = parity == Parity::odd ? 1 : 0;
    for (int i = first; i <= n; ++i) {
        const unsigned ve = parity == Parity::odd ? static_cast<unsigned>(2 * i - 1) : static_cast<unsigned>(2 * i);
        fam.coefficient_names.push_back("a" + std::to_string(i));
        fam.members.push_back(v.pow(ve) * w.pow(static_cast<unsigned>(n - i)));
    }
    return fam;
}

}  // namespace fnsurf
