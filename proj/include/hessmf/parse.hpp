#pragma once

#include <cctype>
#include <string>

#include "hessmf/poly.hpp"

namespace hessmf {

struct ParseError : Error {
    int line, col;
    ParseError(const std::string& msg, int ln, int cl)
        : Error(msg + " at line " + std::to_string(ln) + ", column " + std::to_string(cl)),
          line(ln),
          col(cl) {}
};

namespace detail {

// Grammar: expr := ['-'] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := base ['^' digits]
//          base := rational | 'w' | 'x'digits | '(' expr ')'
//          rational := digits ['/' digits]
class PolyParser {
public:
    PolyParser(const std::string& src, int nvars, Field field)
        : src_(src), nvars_(nvars), field_(field) {}

    Poly parse() {
        skip_ws();
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) advance();
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    unsigned long parse_digits() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit((unsigned char)src_[pos_])) fail("expected digits");
        std::string d;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
            d.push_back(src_[pos_]);
            advance();
        }
        return std::stoul(d);
    }

    mpz_class parse_integer() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit((unsigned char)src_[pos_])) fail("expected number");
        std::string d;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
            d.push_back(src_[pos_]);
            advance();
        }
        return mpz_class(d);
    }

    Poly parse_expr() {
        bool neg = eat('-');
        Poly p = parse_term();
        if (neg) p = -p;
        for (;;) {
            if (eat('+'))
                p += parse_term();
            else if (eat('-'))
                p -= parse_term();
            else
                break;
        }
        return p;
    }

    Poly parse_term() {
        Poly p = parse_factor();
        while (eat('*')) p *= parse_factor();
        return p;
    }

    Poly parse_factor() {
        Poly b = parse_base();
        if (eat('^')) {
            unsigned long e = parse_digits();
            b = b.pow((unsigned)e);
        }
        return b;
    }

    Poly parse_base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Poly p = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == '-') {  // unary minus inside a factor position, e.g. "(-3)"
            eat('-');
            return -parse_base();
        }
        if (c == 'w') {
            if (field_ != Field::QOmega) fail("coefficient w is not in the field Q");
            advance();
            return Poly::constant(nvars_, FieldElem::omega(), field_);
        }
        if (c == 'x') {
            advance();
            if (pos_ >= src_.size() || !std::isdigit((unsigned char)src_[pos_]))
                fail("expected variable index after 'x'");
            unsigned long idx = parse_digits();
            if ((int)idx >= nvars_)
                fail("unknown variable x" + std::to_string(idx) + " (nvars = " +
                     std::to_string(nvars_) + ")");
            return Poly::variable(nvars_, (int)idx, field_);
        }
        if (std::isdigit((unsigned char)c)) {
            mpz_class num = parse_integer();
            if (eat('/')) {
                mpz_class den = parse_integer();
                if (den == 0) fail("zero denominator");
                mpq_class q(num, den);
                q.canonicalize();
                return Poly::constant(nvars_, FieldElem(q), field_);
            }
            return Poly::constant(nvars_, FieldElem(mpq_class(num)), field_);
        }
        fail("unexpected character");
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    int nvars_;
    Field field_;
};

inline std::string coef_str(const FieldElem& c) {
    // mixed a+b*w coefficients are parenthesized so terms stay unambiguous
    if (c.is_rational()) return c.rat().get_str();
    if (c.rat() == 0) {
        if (c.wpart() == 1) return "w";
        if (c.wpart() == -1) return "-w";
        return c.wpart().get_str() + "*w";
    }
    std::string w = c.wpart() == 1 ? "w" : (c.wpart() == -1 ? "-w" : c.wpart().get_str() + "*w");
    return "(" + c.rat().get_str() + (c.wpart() > 0 ? "+" : "") + w + ")";
}

}  // namespace detail

/// Parse the canonical text grammar into a Poly over the requested field.
inline Poly parse_poly(const std::string& src, int nvars, Field field = Field::Q) {
    return detail::PolyParser(src, nvars, field).parse();
}

/// Deterministic canonical printing: graded-lex descending, reduced fractions.
inline std::string print_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        std::string cs = detail::coef_str(t.coef);
        std::string mono;
        for (int i = 0; i < f.nvars(); ++i) {
            if (t.exps[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i);
            if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
        }
        std::string piece;
        if (mono.empty()) {
            piece = cs;
        } else if (cs == "1") {
            piece = mono;
        } else if (cs == "-1") {
            piece = "-" + mono;
        } else {
            piece = cs + "*" + mono;
        }
        if (first) {
            out = piece;
            first = false;
        } else if (!piece.empty() && piece[0] == '-') {
            out += piece;
        } else {
            out += "+" + piece;
        }
    }
    return out;
}

}  // namespace hessmf
