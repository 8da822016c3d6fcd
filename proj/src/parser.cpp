// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fixaccel/program.hpp"

namespace fixaccel {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), _line(line),
      _column(column) {}

namespace {

enum class Tok { ident, number, symbol, end };

struct Token {
    Tok kind;
    std::string text;
    double number{0.0};
    std::size_t line;
    std::size_t column;
};

class Lexer {
    std::string_view _src;
    std::size_t _pos{0};
    std::size_t _line{1};
    std::size_t _col{1};

    void advance() {
        if (_src[_pos] == '\n') {
            ++_line;
            _col = 1;
        } else {
            ++_col;
        }
        ++_pos;
    }

    void skip_blank() {
        while (_pos < _src.size()) {
            const char c = _src[_pos];
            if (c == '#') {
                while (_pos < _src.size() && _src[_pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

  public:
    explicit Lexer(std::string_view src) : _src(src) {}

    Token next() {
        skip_blank();
        Token t{Tok::end, "", 0.0, _line, _col};
        if (_pos >= _src.size()) return t;
        const char c = _src[_pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::ident;
            while (_pos < _src.size() &&
                   (std::isalnum(static_cast<unsigned char>(_src[_pos])) || _src[_pos] == '_')) {
                t.text += _src[_pos];
                advance();
            }
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* first = _src.data() + _pos;
            const char* last = _src.data() + _src.size();
            auto [ptr, ec] = std::from_chars(first, last, t.number);
            if (ec != std::errc() || ptr == first) {
                throw ParseError("malformed number", _line, _col);
            }
            t.kind = Tok::number;
            t.text.assign(first, ptr);
            while (_src.data() + _pos < ptr) advance();
            return t;
        }
        if (std::string_view("[],;{}=+-*").find(c) != std::string_view::npos) {
            t.kind = Tok::symbol;
            t.text = std::string(1, c);
            advance();
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", _line, _col);
    }
};

class Parser {
    Lexer _lex;
    Token _tok;

    std::vector<VarDecl> _state;
    std::vector<VarDecl> _inputs;
    std::vector<Assignment> _body;
    std::set<std::string> _inputs_seen;
    std::set<std::string> _in_scope;

    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.line, at.column); }

    void bump() { _tok = _lex.next(); }

    bool at_symbol(char c) const { return _tok.kind == Tok::symbol && _tok.text[0] == c; }
    bool at_keyword(std::string_view kw) const { return _tok.kind == Tok::ident && _tok.text == kw; }

    void expect_symbol(char c) {
        if (!at_symbol(c)) fail(std::string("expected '") + c + "'", _tok);
        bump();
    }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'", _tok);
        bump();
    }

    std::string expect_ident() {
        if (_tok.kind != Tok::ident) fail("expected identifier", _tok);
        if (is_reserved(_tok.text)) fail("'" + _tok.text + "' is a reserved word", _tok);
        std::string s = _tok.text;
        bump();
        return s;
    }

    static bool is_reserved(const std::string& s) {
        return s == "state" || s == "input" || s == "loop" || s == "in" || s == "inf";
    }

    // Signed number or infinity, used for declared bounds.
    double bound() {
        double sign = 1.0;
        if (at_symbol('-') || at_symbol('+')) {
            sign = at_symbol('-') ? -1.0 : 1.0;
            bump();
        }
        if (at_keyword("inf")) {
            bump();
            return sign * plus_infinity;
        }
        if (_tok.kind != Tok::number) fail("expected number", _tok);
        const double v = sign * _tok.number;
        bump();
        return v;
    }

    VarDecl declaration() {
        const Token start = _tok;
        bump();
        VarDecl d{expect_ident(), {}};
        if (_in_scope.contains(d.name)) fail("variable '" + d.name + "' declared twice", start);
        expect_keyword("in");
        const Token open = _tok;
        expect_symbol('[');
        const double lo = bound();
        expect_symbol(',');
        const double hi = bound();
        expect_symbol(']');
        expect_symbol(';');
        try {
            d.range = Interval(lo, hi);
        } catch (const std::invalid_argument& e) {
            fail(e.what(), open);
        }
        _in_scope.insert(d.name);
        return d;
    }

    // factor ('*' factor)*, with at most one variable factor.
    void term(double sign, AffineExpr& expr) {
        double coeff = sign;
        std::string var;
        Token var_tok = _tok;
        for (;;) {
            double factor_sign = 1.0;
            while (at_symbol('-') || at_symbol('+')) {
                if (at_symbol('-')) factor_sign = -factor_sign;
                bump();
            }
            coeff *= factor_sign;
            if (_tok.kind == Tok::number) {
                coeff *= _tok.number;
                bump();
            } else if (_tok.kind == Tok::ident) {
                const Token here = _tok;
                std::string name = expect_ident();
                if (!var.empty()) fail("non-affine expression: product of variables", here);
                if (!_in_scope.contains(name)) fail("undeclared variable '" + name + "'", here);
                var = std::move(name);
                var_tok = here;
            } else {
                fail("expected number or variable", _tok);
            }
            if (!at_symbol('*')) break;
            bump();
        }
        if (var.empty()) {
            expr.constant += coeff;
            return;
        }
        for (auto& t : expr.terms) {
            if (t.var == var) {
                t.coeff += coeff;
                return;
            }
        }
        expr.terms.push_back({coeff, std::move(var)});
    }

    AffineExpr affine_expr() {
        AffineExpr expr;
        double sign = 1.0;
        if (at_symbol('-') || at_symbol('+')) {
            sign = at_symbol('-') ? -1.0 : 1.0;
            bump();
        }
        term(sign, expr);
        while (at_symbol('+') || at_symbol('-')) {
            sign = at_symbol('-') ? -1.0 : 1.0;
            bump();
            term(sign, expr);
        }
        return expr;
    }

    void loop_body() {
        expect_keyword("loop");
        expect_symbol('{');
        while (!at_symbol('}')) {
            if (_tok.kind == Tok::end) fail("unterminated loop body", _tok);
            const Token target_tok = _tok;
            Assignment a{expect_ident(), {}};
            if (_inputs_seen.contains(a.target)) fail("cannot assign to input variable '" + a.target + "'", target_tok);
            expect_symbol('=');
            a.rhs = affine_expr();
            expect_symbol(';');
            _in_scope.insert(a.target);
            _body.push_back(std::move(a));
        }
        bump();
    }

  public:
    explicit Parser(std::string_view text) : _lex(text), _tok(_lex.next()) {}

    Program run() {
        bool seen_loop = false;
        while (_tok.kind != Tok::end) {
            if (at_keyword("state")) {
                if (seen_loop) fail("declarations must precede the loop", _tok);
                _state.push_back(declaration());
            } else if (at_keyword("input")) {
                if (seen_loop) fail("declarations must precede the loop", _tok);
                _inputs.push_back(declaration());
                _inputs_seen.insert(_inputs.back().name);
            } else if (at_keyword("loop")) {
                if (seen_loop) fail("only one loop is supported", _tok);
                loop_body();
                seen_loop = true;
            } else {
                fail("expected 'state', 'input' or 'loop'", _tok);
            }
        }
        if (_state.empty()) fail("program declares no state variable", _tok);
        if (!seen_loop) fail("missing loop", _tok);
        return Program(std::move(_state), std::move(_inputs), std::move(_body));
    }
};

std::string number_text(double v) {
    if (v == plus_infinity) return "inf";
    if (v == minus_infinity) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

Program load_program(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open program file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

std::string print_program(const Program& p) {
    std::string out;
    auto decl = [&](const char* kw, const VarDecl& d) {
        out += std::string(kw) + " " + d.name + " in [" + number_text(d.range.lb()) + ", " +
               number_text(d.range.ub()) + "];\n";
    };
    for (const auto& d : p.state_vars()) decl("state", d);
    for (const auto& d : p.input_vars()) decl("input", d);
    out += "loop {\n";
    for (const auto& a : p.body()) {
        out += "  " + a.target + " = " + number_text(a.rhs.constant);
        for (const auto& t : a.rhs.terms) {
            out += " + " + number_text(t.coeff) + " * " + t.var;
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace fixaccel
