#include "fnsurf/calculus.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fnsurf {

namespace {
#include "appendix_manifest.inc"
}

// ---- Q2

Q2& Q2::operator*=(const Q2& o) {
    const Rational p = p_ * o.p_ + Rational(2) * q_ * o.q_;
    const Rational q = p_ * o.q_ + q_ * o.p_;
    p_ = p;
    q_ = q;
    return *this;
}

Q2 Q2::inverse() const {
    const Rational n = norm();
    if (n.is_zero()) throw std::domain_error("Q2: division by zero");
    return {p_ / n, -q_ / n};
}

double Q2::to_double() const { return p_.to_double() + q_.to_double() * std::sqrt(2.0); }

std::string Q2::str() const {
    if (q_.is_zero()) return p_.str();
    const std::string s = (q_.is_one() ? std::string{} : q_.str() + "*") + "sqrt2";
    if (p_.is_zero()) return s;
    return "(" + p_.str() + " + " + s + ")";
}

// ---- UWPoly

UWPoly::UWPoly(const Q2& c) {
    if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
}

UWPoly UWPoly::term(const Q2& c, std::uint32_t i, std::uint32_t j) {
    UWPoly p;
    p.add_term(c, {i, j});
    return p;
}

const UWPoly& UWPoly::Q() {
    static const UWPoly q = term(Q2(Rational(1, 2)), 4, 0) - term(Q2(2), 0, 1);
    return q;
}

bool UWPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}); }

Q2 UWPoly::constant_term() const {
    const auto it = terms_.find(Key{0, 0});
    return it == terms_.end() ? Q2{} : it->second;
}

void UWPoly::add_term(const Q2& c, const Key& k) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UWPoly& UWPoly::operator+=(const UWPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(c, k);
    return *this;
}

UWPoly& UWPoly::operator-=(const UWPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(-c, k);
    return *this;
}

UWPoly& UWPoly::operator*=(const Q2& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

UWPoly operator*(const UWPoly& a, const UWPoly& b) {
    UWPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add_term(ca * cb, {ka.first + kb.first, ka.second + kb.second});
    return out;
}

UWPoly UWPoly::d_du() const {
    UWPoly out;
    for (const auto& [k, c] : terms_)
        if (k.first > 0) out.add_term(c * Q2(static_cast<long>(k.first)), {k.first - 1, k.second});
    return out;
}

UWPoly UWPoly::d_dw() const {
    UWPoly out;
    for (const auto& [k, c] : terms_)
        if (k.second > 0) out.add_term(c * Q2(static_cast<long>(k.second)), {k.first, k.second - 1});
    return out;
}

double UWPoly::eval(double u, double w) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) acc += c.to_double() * std::pow(u, k.first) * std::pow(w, k.second);
    return acc;
}

std::string UWPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string mono;
        if (k.first > 0) mono += k.first == 1 ? "u" : "u^" + std::to_string(k.first);
        if (k.second > 0) mono += (mono.empty() ? "" : "*") + (k.second == 1 ? std::string("w") : "w^" + std::to_string(k.second));
        std::string coef = c.str();
        std::string piece;
        if (mono.empty()) piece = coef;
        else if (c == Q2(1)) piece = mono;
        else if (c == Q2(-1)) piece = "-" + mono;
        else piece = coef + "*" + mono;
        if (!out.empty()) out += piece.front() == '-' ? " - " + piece.substr(1) : " + " + piece;
        else out = piece;
    }
    return out;
}

// ---- RatFunc

namespace {

// Cancels common powers of u and w and makes the denominator's leading coefficient 1.
void normalise(UWPoly& num, UWPoly& den) {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero()) {
        den = UWPoly(1);
        return;
    }
    std::uint32_t mu = UINT32_MAX, mw = UINT32_MAX;
    for (const auto* p : {&num, &den})
        for (const auto& [k, c] : p->terms()) {
            mu = std::min(mu, k.first);
            mw = std::min(mw, k.second);
        }
    if (mu > 0 || mw > 0) {
        auto shift = [&](const UWPoly& p) {
            UWPoly out;
            for (const auto& [k, c] : p.terms()) out.add_term(c, {k.first - mu, k.second - mw});
            return out;
        };
        num = shift(num);
        den = shift(den);
    }
    const Q2 lead = den.leading().second;
    if (!(lead == Q2(1))) {
        const Q2 inv = lead.inverse();
        num *= inv;
        den *= inv;
    }
    if (num == den) {
        num = UWPoly(1);
        den = UWPoly(1);
    }
}

}  // namespace

RatFunc::RatFunc(UWPoly num, UWPoly den) : num_(std::move(num)), den_(std::move(den)) { normalise(num_, den_); }

std::optional<Q2> RatFunc::constant_value() const {
    if (num_.is_zero()) return Q2{};
    if (!num_.d_du().is_zero() || !den_.d_du().is_zero()) {
        if (!(num_.d_du() * den_ - num_ * den_.d_du()).is_zero()) return std::nullopt;
    }
    if (!(num_.d_dw() * den_ - num_ * den_.d_dw()).is_zero()) return std::nullopt;
    const Q2 value = num_.leading().second / den_.leading().second;
    return value;
}

RatFunc RatFunc::d_du() const {
    if (den_.is_constant()) return {num_.d_du(), den_};
    return {num_.d_du() * den_ - num_ * den_.d_du(), den_ * den_};
}

RatFunc RatFunc::inverse() const {
    if (num_.is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return {den_, num_};
}

std::string RatFunc::str() const {
    if (den_ == UWPoly(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.num_ * b.num_, a.den_ * b.den_};
}

// ---- Rad

namespace {

const RatFunc& q_func() {
    static const RatFunc q(UWPoly::Q());
    return q;
}

}  // namespace

Rad operator*(const Rad& a, const Rad& b) {
    return {a.r * b.r + a.s * b.s * q_func(), a.r * b.s + a.s * b.r};
}

Rad Rad::inverse() const {
    const RatFunc n = r * r - s * s * q_func();
    if (n.is_zero()) throw std::domain_error("Rad: inverse of zero");
    return {r / n, -(s / n)};
}

Rad Rad::d_du() const {
    static const RatFunc u3_over_q = RatFunc(UWPoly::term(Q2(1), 3, 0), UWPoly::Q());
    return {r.d_du(), s.d_du() + s * u3_over_q};
}

double Rad::eval(double u, double w) const {
    const double s_val = s.is_zero() ? 0.0 : s.eval(u, w) * std::sqrt(UWPoly::Q().eval(u, w));
    return (r.is_zero() ? 0.0 : r.eval(u, w)) + s_val;
}

std::string Rad::str() const {
    if (s.is_zero()) return r.str();
    const std::string sq = "(" + s.str() + ")*sqrtQ";
    if (r.is_zero()) return sq;
    return r.str() + " + " + sq;
}

// ---- DiffElem

DiffElem DiffElem::u() { return Rad{RatFunc(UWPoly::u()), {}}; }
DiffElem DiffElem::w() { return Rad{RatFunc(UWPoly::w()), {}}; }
DiffElem DiffElem::sqrtQ() { return Rad{{}, RatFunc(1)}; }

DiffElem DiffElem::A() {
    DiffElem e;
    e.a_.r = RatFunc(1);
    return e;
}

DiffElem DiffElem::B() {
    DiffElem e;
    e.b_.r = RatFunc(1);
    return e;
}

DiffElem DiffElem::C() {
    DiffElem e;
    e.c_.r = RatFunc(1);
    return e;
}

DiffElem DiffElem::ln(const DiffElem& argument) {
    if (!argument.is_algebraic()) throw std::invalid_argument("ln: argument must be algebraic");
    if (argument.one_.is_zero()) throw std::domain_error("ln: argument is zero");
    DiffElem e;
    e.logs_.push_back({Rad{RatFunc(1), {}}, argument.one_});
    return e;
}

bool DiffElem::is_algebraic() const { return a_.is_zero() && b_.is_zero() && c_.is_zero() && logs_.empty(); }

bool DiffElem::is_zero() const { return one_.is_zero() && is_algebraic(); }

namespace {

bool same(const Rad& p, const Rad& q) { return (p - q).is_zero(); }

void add_log(std::vector<LogTerm>& logs, const LogTerm& t) {
    if (t.coefficient.is_zero()) return;
    for (auto it = logs.begin(); it != logs.end(); ++it) {
        if (same(it->argument, t.argument)) {
            it->coefficient = it->coefficient + t.coefficient;
            if (it->coefficient.is_zero()) logs.erase(it);
            return;
        }
    }
    logs.push_back(t);
}

}  // namespace

DiffElem& DiffElem::operator+=(const DiffElem& o) {
    one_ = one_ + o.one_;
    a_ = a_ + o.a_;
    b_ = b_ + o.b_;
    c_ = c_ + o.c_;
    for (const auto& t : o.logs_) add_log(logs_, t);
    return *this;
}

DiffElem& DiffElem::operator-=(const DiffElem& o) { return *this += -o; }

DiffElem operator-(const DiffElem& e) {
    DiffElem out;
    out.one_ = -e.one_;
    out.a_ = -e.a_;
    out.b_ = -e.b_;
    out.c_ = -e.c_;
    for (const auto& t : e.logs_) out.logs_.push_back({-t.coefficient, t.argument});
    return out;
}

DiffElem operator*(const DiffElem& x, const DiffElem& y) {
    const bool xa = x.is_algebraic();
    if (!xa && !y.is_algebraic()) throw std::invalid_argument("product of two transcendental elements");
    const Rad& s = xa ? x.one_ : y.one_;
    const DiffElem& e = xa ? y : x;
    DiffElem out;
    out.one_ = s * e.one_;
    out.a_ = s * e.a_;
    out.b_ = s * e.b_;
    out.c_ = s * e.c_;
    for (const auto& t : e.logs_) add_log(out.logs_, {s * t.coefficient, t.argument});
    return out;
}

DiffElem DiffElem::inverse() const {
    if (!is_algebraic()) throw std::invalid_argument("inverse of a transcendental element");
    return one_.inverse();
}

DiffElem DiffElem::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    if (!is_algebraic() && n != 1) throw std::invalid_argument("power of a transcendental element");
    DiffElem result(Q2(1));
    DiffElem base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

std::string DiffElem::str() const {
    std::vector<std::string> parts;
    if (!one_.is_zero()) parts.push_back(one_.str());
    if (!a_.is_zero()) parts.push_back("(" + a_.str() + ")*A");
    if (!b_.is_zero()) parts.push_back("(" + b_.str() + ")*B");
    if (!c_.is_zero()) parts.push_back("(" + c_.str() + ")*C");
    for (const auto& t : logs_) parts.push_back("(" + t.coefficient.str() + ")*ln(" + t.argument.str() + ")");
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

DiffElem d_du(const DiffElem& e) {
    // Multiplying by g sqrtQ / Q sends r + s sqrtQ to s g + (r g / Q) sqrtQ.
    auto times_g_over_sqrtq = [](const Rad& x, const RatFunc& g) {
        return Rad{x.s * g, x.r * g * q_func().inverse()};
    };
    DiffElem out;
    out.one_ = e.one_.d_du() + times_g_over_sqrtq(e.a_, RatFunc(1)) +
               times_g_over_sqrtq(e.b_, RatFunc(UWPoly::term(Q2(1), 2, 0))) +
               times_g_over_sqrtq(e.c_, RatFunc(UWPoly::u()));
    out.a_ = e.a_.d_du();
    out.b_ = e.b_.d_du();
    out.c_ = e.c_.d_du();
    for (const auto& t : e.logs_) {
        out.one_ = out.one_ + t.coefficient * t.argument.d_du() * t.argument.inverse();
        add_log(out.logs_, {t.coefficient.d_du(), t.argument});
    }
    return out;
}

bool check_identity(const DiffElem& integrand, const DiffElem& antiderivative) {
    return (d_du(antiderivative) - integrand).is_zero();
}

// ---- parsing

namespace {

bool perfect_square(const Rational& q, Rational& root) {
    if (q.sign() < 0) return false;
    const mpz_class n = q.numerator(), d = q.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = Rational(mpq_class(rn, rd));
    return true;
}

// sqrt of a nonnegative rational that is a square or twice a square.
std::optional<Q2> sqrt_rational(const Rational& k) {
    Rational root;
    if (perfect_square(k, root)) return Q2(root);
    if (perfect_square(k / Rational(2), root)) return Q2(Rational{}, root);
    return std::nullopt;
}

class DiffParser {
public:
    explicit DiffParser(std::string_view s) : s_(s) {}

    DiffElem run() {
        DiffElem e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    DiffElem expr() {
        DiffElem e;
        if (eat('-')) e = -term();
        else {
            eat('+');
            e = term();
        }
        while (true) {
            if (eat('+')) e += term();
            else if (eat('-')) e -= term();
            else return e;
        }
    }

    DiffElem term() {
        DiffElem e = unary();
        while (true) {
            if (eat('*')) e = e * unary();
            else if (eat('/')) e = e / unary();
            else return e;
        }
    }

    DiffElem unary() {
        if (eat('-')) return -unary();
        return power();
    }

    long integer_exponent() {
        const bool paren = eat('(');
        const bool neg = eat('-');
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        const long n = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren && !eat(')')) fail("expected ')'");
        return neg ? -n : n;
    }

    DiffElem power() {
        DiffElem base = atom();
        if (eat('^')) return base.pow(integer_exponent());
        return base;
    }

    DiffElem atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            DiffElem e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal numbers are not supported");
            return Q2(Rational::from_string(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string id(s_.substr(start, pos_ - start));
            if (id == "u") return DiffElem::u();
            if (id == "w") return DiffElem::w();
            if (id == "sqrtQ") return DiffElem::sqrtQ();
            if (id == "A") return DiffElem::A();
            if (id == "B") return DiffElem::B();
            if (id == "C") return DiffElem::C();
            if (id == "sqrt2") return Q2::sqrt2();
            if (id == "ln" || id == "sqrt") {
                if (!eat('(')) fail("expected '(' after " + id);
                DiffElem arg = expr();
                if (!eat(')')) fail("expected ')'");
                return id == "ln" ? DiffElem::ln(arg) : square_root(arg);
            }
            pos_ = start;
            fail("unknown symbol '" + id + "'");
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    DiffElem square_root(const DiffElem& arg) {
        if (!arg.is_algebraic() || !arg.one().s.is_zero()) fail("sqrt argument must be free of sqrtQ, A, B, C");
        const RatFunc& r = arg.one().r;
        if (auto k = r.constant_value()) {
            if (k->sqrt2_part().is_zero())
                if (auto root = sqrt_rational(k->rational_part())) return *root;
        }
        if (auto k = (r / q_func()).constant_value()) {
            if (k->sqrt2_part().is_zero())
                if (auto root = sqrt_rational(k->rational_part())) return Rad{{}, RatFunc(UWPoly(*root))};
        }
        fail("unsupported sqrt argument");
    }
};

}  // namespace

DiffElem parse_diff(std::string_view text) { return DiffParser(text).run(); }

double evaluate(const DiffElem& e, double u, double w, double A, double B, double C) {
    double v = e.one().eval(u, w) + e.a().eval(u, w) * A + e.b().eval(u, w) * B + e.c().eval(u, w) * C;
    for (const auto& t : e.logs()) v += t.coefficient.eval(u, w) * std::log(std::abs(t.argument.eval(u, w)));
    return v;
}

// ---- manifest and suite

Manifest parse_manifest(std::string_view json_text) try {
    const auto j = nlohmann::json::parse(json_text);
    Manifest m;
    for (const auto& item : j.at("identities")) {
        IdentityEntry e;
        e.name = item.at("name").get<std::string>();
        e.integrand = item.at("integrand").get<std::string>();
        e.antiderivative = item.at("antiderivative").get<std::string>();
        if (item.contains("corrected")) e.corrected = item.at("corrected").get<std::string>();
        m.identities.push_back(std::move(e));
    }
    if (j.contains("skipped"))
        for (const auto& item : j.at("skipped"))
            m.skipped.push_back({item.at("name").get<std::string>(), item.at("reason").get<std::string>()});
    return m;
} catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
}

const Manifest& builtin_manifest() {
    static const Manifest m = parse_manifest(kAppendixManifestJson);
    return m;
}

std::optional<double> quadrature_error(const DiffElem& integrand, const DiffElem& antiderivative, double u0, double u1,
                                       double w) {
    if (!integrand.is_algebraic()) return std::nullopt;
    using boost::math::quadrature::gauss_kronrod;
    auto integrate = [&](auto f) { return gauss_kronrod<double, 61>::integrate(f, u0, u1, 15, 1e-15); };
    auto q = [w](double u) { return std::sqrt(0.5 * u * u * u * u - 2.0 * w); };
    const double A = integrate([&](double u) { return 1.0 / q(u); });
    const double B = integrate([&](double u) { return u * u / q(u); });
    const double C = integrate([&](double u) { return u / q(u); });
    const double numeric = integrate([&](double u) { return evaluate(integrand, u, w, 0, 0, 0); });
    const double exact = evaluate(antiderivative, u1, w, A, B, C) - evaluate(antiderivative, u0, w, 0, 0, 0);
    return std::abs(numeric - exact) / std::max(std::abs(numeric), 1e-300);
}

std::size_t SuiteReport::passed() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; }));
}

std::string SuiteReport::summary() const {
    std::ostringstream os;
    os << passed() << " passed";
    if (failed() > 0) os << ", " << failed() << " failed";
    os << ", " << skipped.size() << " skipped (elliptic closed forms)";
    return os.str();
}

SuiteReport appendix_suite(const Manifest& manifest) {
    SuiteReport report;
    report.skipped = manifest.skipped;
    for (const auto& entry : manifest.identities) {
        IdentityOutcome out;
        out.name = entry.name;
        const DiffElem integrand = parse_diff(entry.integrand);
        const DiffElem anti = parse_diff(entry.antiderivative);
        const DiffElem residual = d_du(anti) - integrand;
        out.passed = residual.is_zero();
        if (!out.passed) out.residual = residual.str();
        out.quadrature_rel_error = quadrature_error(integrand, anti);
        if (entry.corrected) {
            const DiffElem fixed = parse_diff(*entry.corrected);
            out.corrected_passed = check_identity(integrand, fixed);
            out.corrected_quadrature_rel_error = quadrature_error(integrand, fixed);
        }
        report.outcomes.push_back(std::move(out));
    }
    return report;
}

}  // namespace fnsurf
