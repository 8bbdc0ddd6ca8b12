#include "fnsurf/cli.hpp"

#include "fnsurf/calculus.hpp"
#include "fnsurf/darboux.hpp"
#include "fnsurf/graded.hpp"
#include "fnsurf/numeric.hpp"
#include "fnsurf/parse.hpp"
#include "fnsurf/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace fnsurf {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::string> a, b, c, d, m;
    int deg = 4;
    std::vector<std::string> cofactor;
    bool json = false;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    double step = 1e-4;
    double t_end = 0.5;
    std::string out_file;

    std::string field = "fn";
    std::optional<std::string> P, Q, R;
    std::string f;
    std::string f0;
    std::string k0 = "0";
    std::string k1 = "0";
    std::optional<long> weight;
    std::optional<std::string> x0, y0, z0;
    std::string expr;
    std::string manifest;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

Rational exact(const std::string& flag, const std::string& text) {
    try {
        return Rational::from_string(text);
    } catch (const std::exception&) {
        throw UsageError(flag + ": expected an exact rational p/q, got '" + text + "'");
    }
}

double real(const std::string& flag, const std::string& text) {
    try {
        return Rational::from_string(text).to_double();
    } catch (const std::exception&) {
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(flag + ": expected a number, got '" + text + "'");
}

Poly expression(const std::string& flag, const std::string& text) {
    if (text.empty()) throw UsageError(flag + " is required");
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

ParamPoint exact_point(const Options& o) {
    auto need = [](const char* flag, const std::optional<std::string>& v) {
        if (!v) throw UsageError(std::string(flag) + " is required");
        return exact(flag, *v);
    };
    return {need("--a", o.a), need("--b", o.b), need("--c", o.c), need("--d", o.d), o.m ? exact("--m", *o.m) : Rational{}};
}

Substitution partial_point(const Options& o) {
    Substitution s;
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"--a", &o.a}, {"--b", &o.b}, {"--c", &o.c}, {"--d", &o.d}, {"--m", &o.m}};
    for (const auto& [flag, value] : flags)
        if (*value) s[*var_from_name(flag + 2)] = Poly(exact(flag, **value));
    return s;
}

ParamValues real_params(const Options& o) {
    ParamValues p{{Var::m, 0.0}};
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"--a", &o.a}, {"--b", &o.b}, {"--c", &o.c}, {"--d", &o.d}, {"--m", &o.m}};
    for (const auto& [flag, value] : flags)
        if (*value) p[*var_from_name(flag + 2)] = real(flag, **value);
    return p;
}

VectorField chosen_field(const Options& o) {
    if (o.P || o.Q || o.R) {
        if (!(o.P && o.Q && o.R)) throw UsageError("--P, --Q and --R must be given together");
        return {expression("--P", *o.P), expression("--Q", *o.Q), expression("--R", *o.R), "user field"};
    }
    if (o.field == "fn") return fn_system();
    if (o.field == "assistant") return assistant_system();
    if (o.field == "scaled") return scaled_system();
    throw UsageError("--field: expected fn, assistant or scaled, got '" + o.field + "'");
}

bool is_fn_like(const Options& o) { return !(o.P || o.Q || o.R) && o.field != "scaled"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw UsageError("--out: cannot open '" + path + "' for writing");
    f << content;
}

// ---- commands

int cmd_parse(const Options& o, std::ostream& out) {
    const Poly p = expression("expression", o.expr);
    if (o.json) emit(out, {{"canonical", print(p)}, {"terms", to_json(p)}});
    else out << print(p) << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Substitution point = partial_point(o);
    const VectorField v = substitute(chosen_field(o), point);
    const Poly f = substitute(expression("--f", o.f), point);
    if (o.cofactor.size() > 1) throw UsageError("--cofactor: verify takes a single cofactor");
    const Poly k = substitute(o.cofactor.empty() ? Poly{} : expression("--cofactor", o.cofactor.front()), point);
    const VerifyResult r = verify(f, k, v);
    if (o.json) emit(out, {{"f", print(f)}, {"cofactor", print(k)}, {"valid", r.valid}, {"residual", print(r.residual)}});
    else if (r.valid) out << "valid: X(f) = (" << print(k) << ") f\n";
    else out << "invalid: X(f) - k f = " << print(r.residual) << '\n';
    return r.valid ? kExitOk : kExitMathFailure;
}

int cmd_cofactor(const Options& o, std::ostream& out) {
    const Substitution point = partial_point(o);
    const VectorField v = substitute(chosen_field(o), point);
    const Poly f = substitute(expression("--f", o.f), point);
    if (f.is_zero()) throw UsageError("--f: the zero polynomial has no cofactor");
    const auto k = solve_cofactor(f, v);
    if (o.json) {
        Json j{{"f", print(f)}, {"darboux", k.has_value()}};
        if (k) j["cofactor"] = print(*k);
        emit(out, j);
    } else if (k) {
        out << "cofactor: " << print(*k) << '\n';
    } else {
        out << "not Darboux\n";
    }
    return k ? kExitOk : kExitMathFailure;
}

std::vector<Poly> candidates(const Options& o, const ParamPoint& p) {
    std::vector<Poly> out;
    if (o.cofactor.empty()) {
        if (!is_fn_like(o)) throw UsageError("--cofactor: user fields need an explicit candidate list");
        return fn_cofactor_candidates(p.c, o.deg);
    }
    for (const auto& text : o.cofactor) out.push_back(substitute(expression("--cofactor", text), p.substitution()));
    return out;
}

int cmd_search(const Options& o, std::ostream& out) {
    if (o.deg < 0) throw UsageError("--deg: must be non-negative");
    const ParamPoint p = exact_point(o);
    const VectorField v = instantiate(chosen_field(o), p);
    const auto results = search(v, o.deg, candidates(o, p), o.threads);
    if (o.json) {
        emit(out, {{"params", to_json(p)}, {"degree", o.deg}, {"results", to_json(results)}});
        return kExitOk;
    }
    if (results.empty()) {
        out << "no Darboux polynomials found (degree <= " << o.deg << ")\n";
        return kExitOk;
    }
    for (const auto& r : results) {
        out << "cofactor " << print(r.cofactor) << ": dimension " << r.basis.size() << '\n';
        for (const auto& f : r.basis) out << "  " << print(f) << '\n';
    }
    return kExitOk;
}

int cmd_first_integrals(const Options& o, std::ostream& out) {
    if (o.deg < 0) throw UsageError("--deg: must be non-negative");
    const ParamPoint p = exact_point(o);
    const auto found = first_integrals(instantiate(chosen_field(o), p), o.deg);
    if (o.json) {
        Json arr = Json::array();
        for (const auto& f : found) arr.push_back(print(f));
        emit(out, {{"params", to_json(p)}, {"degree", o.deg}, {"dimension", found.size()}, {"basis", arr}});
        return kExitOk;
    }
    if (found.empty()) out << "no polynomial first integrals (degree <= " << o.deg << ")\n";
    else out << "dimension " << found.size() << '\n';
    for (const auto& f : found) out << "  " << print(f) << '\n';
    return kExitOk;
}

int cmd_cascade(const Options& o, std::ostream& out) {
    const ParamPoint p = exact_point(o);
    const Poly f0 = expression("--f0", o.f0);
    CascadeState s;
    try {
        s = cascade(f0, p, exact("--k0", o.k0), exact("--k1", o.k1), o.weight);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--f0: ") + e.what());
    }
    if (o.json) {
        emit(out, to_json(s));
        return s.completed() ? kExitOk : kExitMathFailure;
    }
    out << "cascade at " << p.str() << ", cofactor " << print(Poly::var(Var::x) * Poly(s.k1) + Poly(s.k0))
        << ", weight " << s.total_weight << '\n';
    out << "F0 = " << print(s.chain.front()) << '\n';
    for (const auto& st : s.stages) {
        out << "stage " << st.index << " (weight " << st.weight << ")\n";
        out << "  rhs = " << print(st.rhs) << '\n';
        for (const auto& r : st.resolved) out << "  solvability fixes " << r << '\n';
        if (s.obstruction && s.obstruction->stage == st.index) break;
        if (st.weight >= 0) out << "  F" << st.index << " = " << print(st.solution) << '\n';
        for (const auto& k : st.kernel_freedom) out << "  free: " << print(k) << '\n';
    }
    if (s.obstruction) {
        out << "obstruction at stage " << s.obstruction->stage << ": cokernel components (";
        for (std::size_t i = 0; i < s.obstruction->components.size(); ++i)
            out << (i ? ", " : "") << s.obstruction->components[i];
        out << ")\n";
        return kExitMathFailure;
    }
    out << "f = " << print(s.sum()) << '\n';
    for (const auto& g : s.free_family) out << "  plus any multiple of " << print(g) << '\n';
    return kExitOk;
}

int cmd_table1(const Options& o, std::ostream& out) {
    const Table1Report r = table1_certificates();
    bool ok = true;
    for (const auto& c : r.certificates) ok = ok && c.valid;
    if (o.json) {
        emit(out, to_json(r));
        return ok ? kExitOk : kExitMathFailure;
    }
    for (const auto& c : r.certificates) {
        out << "row " << c.row << "  " << c.name << "  cofactor " << print(c.k) << "  "
            << (c.valid ? "valid (residual 0)" : "INVALID") << '\n';
        out << "  f = " << print(c.f) << '\n';
        out << "  conditions: " << c.constraints.str() << '\n';
        if (!c.valid) out << "  residual: " << print(c.residual) << '\n';
    }
    out << "\nrows 3-4 parameter conditions\n";
    for (const auto& d : r.discrepancies) out << d.verdict() << '\n';
    return ok ? kExitOk : kExitMathFailure;
}

int cmd_appendix(const Options& o, std::ostream& out) {
    Manifest manifest = builtin_manifest();
    if (!o.manifest.empty()) {
        std::ifstream f(o.manifest);
        if (!f) throw UsageError("--manifest: cannot read '" + o.manifest + "'");
        std::stringstream buf;
        buf << f.rdbuf();
        try {
            manifest = parse_manifest(buf.str());
        } catch (const std::exception& e) {
            throw UsageError(std::string("--manifest: ") + e.what());
        }
    }
    const SuiteReport r = appendix_suite(manifest);
    if (o.json) {
        emit(out, to_json(r));
        return r.failed() == 0 ? kExitOk : kExitMathFailure;
    }
    for (const auto& item : r.outcomes) {
        out << (item.passed ? "PASS " : "FAIL ") << item.name;
        if (item.quadrature_rel_error) out << "  (quadrature rel. error " << fmt(*item.quadrature_rel_error) << ")";
        out << '\n';
        if (!item.passed) {
            out << "  residual: " << item.residual << '\n';
            if (item.corrected_passed)
                out << "  corrected form: " << (*item.corrected_passed ? "passes" : "fails")
                    << (item.corrected_quadrature_rel_error
                            ? " (quadrature rel. error " + fmt(*item.corrected_quadrature_rel_error) + ")"
                            : std::string{})
                    << '\n';
        }
    }
    for (const auto& s : r.skipped) out << "SKIP " << s.name << ": " << s.reason << '\n';
    out << r.summary() << '\n';
    return r.failed() == 0 ? kExitOk : kExitMathFailure;
}

State start_state(const Options& o) {
    if (o.x0 || o.y0 || o.z0) {
        if (!(o.x0 && o.y0 && o.z0)) throw UsageError("--x0, --y0 and --z0 must be given together");
        return {0.0, real("--x0", *o.x0), real("--y0", *o.y0), real("--z0", *o.z0)};
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    State s;
    s.x = u(rng);
    s.y = u(rng);
    s.z = u(rng);
    return s;
}

void check_time_flags(const Options& o) {
    if (!(o.step > 0)) throw UsageError("--step: must be positive");
    if (!(o.t_end > 0)) throw UsageError("--t-end: must be positive");
}

int cmd_simulate(const Options& o, std::ostream& out) {
    check_time_flags(o);
    const State s0 = start_state(o);
    Trajectory tr;
    try {
        tr = integrate(chosen_field(o), s0, o.t_end, o.step, real_params(o));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,x,y,z\n";
    for (const auto& s : tr.states) csv << s.t << ',' << s.x << ',' << s.y << ',' << s.z << '\n';
    const State& last = tr.states.back();
    if (!o.out_file.empty()) write_file(o.out_file, csv.str());
    if (o.json) {
        emit(out, {{"steps", tr.states.size() - 1}, {"diverged", tr.diverged}, {"final", {last.t, last.x, last.y, last.z}}});
    } else if (o.out_file.empty()) {
        out << csv.str();
    } else {
        out << tr.states.size() - 1 << " steps" << (tr.diverged ? " (diverged)" : "") << ", final state t=" << fmt(last.t)
            << " x=" << fmt(last.x) << " y=" << fmt(last.y) << " z=" << fmt(last.z) << '\n';
    }
    return tr.diverged ? kExitMathFailure : kExitOk;
}

int cmd_drift(const Options& o, std::ostream& out) {
    check_time_flags(o);
    if (o.cofactor.size() > 1) throw UsageError("--cofactor: drift takes a single cofactor");
    const Poly f = expression("--f", o.f);
    const Poly k = o.cofactor.empty() ? Poly{} : expression("--cofactor", o.cofactor.front());
    const State s0 = start_state(o);
    DriftReport r;
    try {
        r = darboux_drift(chosen_field(o), f, k, s0, o.t_end, o.step, real_params(o));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!o.out_file.empty()) write_file(o.out_file, to_csv(r));
    if (o.json) {
        Json j = to_json(r);
        j["start"] = {s0.x, s0.y, s0.z};
        emit(out, j);
    } else {
        out << "start (" << fmt(s0.x) << ", " << fmt(s0.y) << ", " << fmt(s0.z) << "), " << r.samples.size() - 1
            << " steps\n";
        out << "max relative error " << fmt(r.max_relative_error) << ", max absolute error " << fmt(r.max_abs_error)
            << (r.diverged ? " (diverged)" : "") << '\n';
    }
    return r.diverged ? kExitMathFailure : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Darboux polynomials and first integrals of the FitzHugh-Nagumo travelling-wave system", "fnsurf"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags (flags win)");
    app.add_option("--a", o.a, "parameter a (p/q)");
    app.add_option("--b", o.b, "parameter b (p/q)");
    app.add_option("--c", o.c, "parameter c (p/q)");
    app.add_option("--d", o.d, "parameter d (p/q)");
    app.add_option("--m", o.m, "assistant parameter m (p/q, default 0)");
    app.add_option("--deg", o.deg, "degree bound for search");
    app.add_option("--cofactor", o.cofactor, "cofactor expression (repeatable for search)");
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--threads", o.threads, "worker threads for search")->envname("DARBOUX_THREADS")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for random start points");
    app.add_option("--step", o.step, "integration step");
    app.add_option("--t-end", o.t_end, "integration horizon");
    app.add_option("--out", o.out_file, "CSV output file");
    app.add_option("--field", o.field, "fn, assistant or scaled");
    app.add_option("--P", o.P, "user field x' component");
    app.add_option("--Q", o.Q, "user field y' component");
    app.add_option("--R", o.R, "user field z' component");

    auto* parse_cmd = app.add_subcommand("parse", "print the canonical form of an expression");
    parse_cmd->add_option("expression", o.expr)->required();
    auto* verify_cmd = app.add_subcommand("verify", "check X(f) = k f");
    verify_cmd->add_option("--f", o.f, "polynomial")->required();
    auto* cofactor_cmd = app.add_subcommand("cofactor", "recover the cofactor of f");
    cofactor_cmd->add_option("--f", o.f, "polynomial")->required();
    auto* search_cmd = app.add_subcommand("search", "Darboux polynomials up to --deg at a parameter point");
    auto* fi_cmd = app.add_subcommand("first-integrals", "polynomial first integrals up to --deg");
    auto* cascade_cmd = app.add_subcommand("cascade", "run the graded cascade from a top component");
    cascade_cmd->add_option("--f0", o.f0, "top weight component")->required();
    cascade_cmd->add_option("--k0", o.k0, "constant cofactor part (p/q)");
    cascade_cmd->add_option("--k1", o.k1, "coefficient of x in the cofactor (p/q)");
    cascade_cmd->add_option("--weight", o.weight, "total weight l (default: weight of F0)");
    auto* table1_cmd = app.add_subcommand("table1", "certify the six generators");
    auto* appendix_cmd = app.add_subcommand("appendix", "check the integral reduction identities");
    appendix_cmd->add_option("--manifest", o.manifest, "JSON manifest (default: built in)");
    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the field with RK4");
    auto* drift_cmd = app.add_subcommand("drift", "compare f along an orbit with f(s0) exp(int k)");
    drift_cmd->add_option("--f", o.f, "polynomial")->required();
    for (auto* cmd : {simulate_cmd, drift_cmd}) {
        cmd->add_option("--x0", o.x0);
        cmd->add_option("--y0", o.y0);
        cmd->add_option("--z0", o.z0);
    }
    for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& s : argv) raw.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*parse_cmd) return cmd_parse(o, out);
        if (*verify_cmd) return cmd_verify(o, out);
        if (*cofactor_cmd) return cmd_cofactor(o, out);
        if (*search_cmd) return cmd_search(o, out);
        if (*fi_cmd) return cmd_first_integrals(o, out);
        if (*cascade_cmd) return cmd_cascade(o, out);
        if (*table1_cmd) return cmd_table1(o, out);
        if (*appendix_cmd) return cmd_appendix(o, out);
        if (*simulate_cmd) return cmd_simulate(o, out);
        if (*drift_cmd) return cmd_drift(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstraintError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace fnsurf
