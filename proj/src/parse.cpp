#include "fnsurf/parse.hpp"

#include <cctype>
#include <sstream>

namespace fnsurf {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Poly run() {
        skip_ws();
        if (at_end()) throw ParseError("empty expression", pos_);
        Poly p = expr();
        skip_ws();
        if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

private:
    Poly expr() {
        skip_ws();
        Poly acc;
        if (peek() == '-') {
            ++pos_;
            acc = -term();
        } else {
            acc = term();
        }
        for (;;) {
            skip_ws();
            const char op = peek();
            if (op != '+' && op != '-') break;
            ++pos_;
            Poly t = term();
            if (op == '+')
                acc += t;
            else
                acc -= t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (peek() != '^') return b;
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        if (peek() == '-') throw ParseError("negative exponent", at);
        if (peek() == '(') throw ParseError("exponent must be a non-negative integer literal", at);
        const std::string digits = read_digits();
        if (digits.empty()) throw ParseError("expected exponent", at);
        skip_ws();
        if (peek() == '/' || peek() == '.') throw ParseError("non-integer exponent", pos_);
        unsigned long e = 0;
        try {
            e = std::stoul(digits);
        } catch (const std::exception&) {
            throw ParseError("exponent too large", at);
        }
        if (e > 100000UL) throw ParseError("exponent too large", at);
        return b.pow(static_cast<unsigned>(e));
    }

    Poly base() {
        skip_ws();
        const std::size_t at = pos_;
        const char ch = peek();
        if (ch == '(') {
            ++pos_;
            Poly inner = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (ch == '-') {
            ++pos_;
            return -base();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::string num = read_digits();
            if (peek() == '.') throw ParseError("decimal numbers are not exact; use p/q", pos_);
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                const std::size_t den_at = pos_;
                const std::string den = read_digits();
                if (den.empty()) throw ParseError("expected denominator", den_at);
                if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", den_at);
                return Poly(Rational::from_string(num + "/" + den));
            }
            return Poly(Rational::from_string(num));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string ident;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                ident.push_back(text_[pos_++]);
            const auto v = var_from_name(ident);
            if (!v) throw ParseError("unknown symbol '" + ident + "'", at);
            return Poly::var(*v);
        }
        if (at_end()) throw ParseError("unexpected end of input", at);
        throw ParseError(std::string("unexpected '") + ch + "'", at);
    }

    std::string read_digits() {
        std::string out;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(text_[pos_++]);
        return out;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_monomial(std::ostream& os, const Monomial& m, bool& first_factor) {
    auto emit = [&](Var v) {
        const auto e = m[v];
        if (e == 0) return;
        if (!first_factor) os << '*';
        first_factor = false;
        os << name(v);
        if (e > 1) os << '^' << e;
    };
    for (Var v : kAllVars)
        if (!is_state(v)) emit(v);
    for (Var v : kStateVars) emit(v);
}

}  // namespace

Poly parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c.sign() < 0;
        const Rational mag = c.abs();
        if (first_term)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first_term = false;
        bool first_factor = true;
        if (m.is_one() || !mag.is_one()) {
            if (mag.is_integer())
                os << mag;
            else if (m.is_one())
                os << mag;
            else
                os << '(' << mag << ')';
            first_factor = false;
        }
        print_monomial(os, m, first_factor);
    }
    return os.str();
}

}  // namespace fnsurf
