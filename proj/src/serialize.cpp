#include "fnsurf/serialize.hpp"

#include "fnsurf/parse.hpp"

namespace fnsurf {

Json to_json(const Poly& p) {
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json exps = Json::object();
        for (Var v : kAllVars)
            if (m[v] > 0) exps[std::string(name(v))] = m[v];
        arr.push_back({{"exps", exps}, {"num", c.numerator().get_str()}, {"den", c.denominator().get_str()}});
    }
    return arr;
}

Poly poly_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
    Poly p;
    for (const auto& t : j) {
        Monomial m;
        for (const auto& [key, val] : t.at("exps").items()) {
            const auto v = var_from_name(key);
            if (!v) throw std::invalid_argument("unknown symbol '" + key + "' in polynomial JSON");
            m.set(*v, val.get<std::uint32_t>());
        }
        const std::string num = t.at("num").get<std::string>();
        const std::string den = t.at("den").get<std::string>();
        p.add_term(Rational::from_string(num + "/" + den), m);
    }
    return p;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const ParamPoint& p) {
    return {{"a", p.a.str()}, {"b", p.b.str()}, {"c", p.c.str()}, {"d", p.d.str()}, {"m", p.m.str()}};
}

Json to_json(const VectorField& v) {
    return {{"P", to_json(v.P)}, {"Q", to_json(v.Q)}, {"R", to_json(v.R)}, {"label", v.label}};
}

VectorField field_from_json(const Json& j) {
    return {poly_from_json(j.at("P")), poly_from_json(j.at("Q")), poly_from_json(j.at("R")),
            j.value("label", std::string{})};
}

Json to_json(const ParamConstraint& c) {
    Json subs = Json::array();
    for (const auto& s : c.substitutions)
        subs.push_back({{"var", std::string(name(s.var))}, {"numerator", print(s.numerator)}, {"denominator", print(s.denominator)}});
    Json rel = Json::array(), nz = Json::array();
    for (const auto& r : c.relations) rel.push_back(print(r));
    for (const auto& n : c.nonvanishing) nz.push_back(print(n));
    return {{"substitutions", subs}, {"relations", rel}, {"nonvanishing", nz}, {"text", c.str()}};
}

Json to_json(const DarbouxCertificate& c) {
    return {{"row", c.row},
            {"name", c.name},
            {"f", print(c.f)},
            {"cofactor", print(c.k)},
            {"constraints", to_json(c.constraints)},
            {"valid", c.valid},
            {"residual", print(c.residual)},
            {"residual_terms", to_json(c.residual)},
            {"irreducible", c.irreducible},
            {"f_terms", to_json(c.f)}};
}

Json to_json(const Table1Report& r) {
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    Json disc = Json::array();
    for (const auto& d : r.discrepancies) {
        auto check = [](const ConditionCheck& c) {
            return Json{{"relation", print(c.relation)}, {"valid", c.result.valid}, {"residual", print(c.result.residual)}};
        };
        disc.push_back({{"row", d.row}, {"table_condition", check(d.table)}, {"lemma_condition", check(d.lemma)},
                        {"verdict", d.verdict()}});
    }
    return {{"certificates", certs}, {"discrepancies", disc}};
}

Json to_json(const std::vector<SearchResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results) {
        Json basis = Json::array();
        for (const auto& f : r.basis) basis.push_back(print(f));
        arr.push_back({{"cofactor", print(r.cofactor)}, {"dimension", r.basis.size()}, {"basis", basis}});
    }
    return arr;
}

namespace {

Json vector_json(const Vector& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(c.str());
    return arr;
}

}  // namespace

Json to_json(const CascadeState& s) {
    Json stages = Json::array();
    for (const auto& st : s.stages) {
        Json kernel = Json::array();
        for (const auto& k : st.kernel_freedom) kernel.push_back(print(k));
        Json resolved = Json::array();
        for (const auto& r : st.resolved) resolved.push_back(r);
        stages.push_back({{"stage", st.index},
                          {"weight", st.weight},
                          {"rhs", print(st.rhs)},
                          {"solution", print(st.solution)},
                          {"kernel_freedom", kernel},
                          {"obstruction", vector_json(st.obstruction)},
                          {"resolved", resolved}});
    }
    Json chain = Json::array();
    for (const auto& f : s.chain) chain.push_back(print(f));
    Json family = Json::array();
    for (const auto& f : s.free_family) family.push_back(print(f));
    Json out{{"params", to_json(s.params)},
             {"k0", s.k0.str()},
             {"k1", s.k1.str()},
             {"total_weight", s.total_weight},
             {"completed", s.completed()},
             {"chain", chain},
             {"sum", print(s.sum())},
             {"free_family", family},
             {"stages", stages}};
    if (s.obstruction)
        out["obstruction"] = {{"stage", s.obstruction->stage},
                              {"components", vector_json(s.obstruction->components)},
                              {"rhs", print(s.obstruction->rhs)}};
    return out;
}

Json to_json(const SuiteReport& r) {
    Json items = Json::array();
    for (const auto& o : r.outcomes) {
        Json item{{"name", o.name}, {"passed", o.passed}};
        if (!o.passed) item["residual"] = o.residual;
        if (o.quadrature_rel_error) item["quadrature_rel_error"] = *o.quadrature_rel_error;
        if (o.corrected_passed) item["corrected_passed"] = *o.corrected_passed;
        if (o.corrected_quadrature_rel_error) item["corrected_quadrature_rel_error"] = *o.corrected_quadrature_rel_error;
        items.push_back(std::move(item));
    }
    Json skipped = Json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"name", s.name}, {"reason", s.reason}});
    return {{"passed", r.passed()}, {"failed", r.failed()}, {"skipped_count", r.skipped.size()},
            {"summary", r.summary()}, {"identities", items}, {"skipped", skipped}};
}

Json to_json(const DriftReport& r, bool with_samples) {
    Json out{{"max_relative_error", r.max_relative_error},
             {"max_abs_error", r.max_abs_error},
             {"steps", r.samples.empty() ? 0 : r.samples.size() - 1},
             {"diverged", r.diverged}};
    if (with_samples) {
        Json s = Json::array();
        for (const auto& x : r.samples) s.push_back({x.t, x.x, x.y, x.z, x.f, x.predicted});
        out["samples"] = s;
    }
    return out;
}

}  // namespace fnsurf
