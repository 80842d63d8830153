#pragma once

// Infix expression language for the catalog files: rational literals,
// variables, + - * / ^ with integer exponents, parentheses. Standard
// precedence, left associativity; ^ binds tightest and takes a literal
// (possibly parenthesized, possibly negative) integer exponent.

#include <pvi/rational.hpp>

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string &m, int line_, int col_)
        : std::runtime_error(m + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), col(col_) {}
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
  public:
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Pow, Neg };

    Kind kind;
    Rational number;     // Number
    std::string name;    // Symbol
    ExprPtr a, b;        // operands
    long exponent = 0;   // Pow

    static ExprPtr num(Rational v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Number;
        e->number = std::move(v);
        return e;
    }
    static ExprPtr sym(std::string n) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Symbol;
        e->name = std::move(n);
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr x, ExprPtr y) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(x);
        e->b = std::move(y);
        return e;
    }
    static ExprPtr pow(ExprPtr x, long n) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->a = std::move(x);
        e->exponent = n;
        return e;
    }
    static ExprPtr neg(ExprPtr x) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Neg;
        e->a = std::move(x);
        return e;
    }
};

inline bool expr_equal(const ExprPtr &x, const ExprPtr &y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case Expr::Kind::Number: return x->number == y->number;
        case Expr::Kind::Symbol: return x->name == y->name;
        case Expr::Kind::Neg: return expr_equal(x->a, y->a);
        case Expr::Kind::Pow: return x->exponent == y->exponent && expr_equal(x->a, y->a);
        default: return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
    }
}

namespace detail {

struct Token {
    enum class Kind { Number, Symbol, Op, LParen, RParen, End };
    Kind kind;
    std::string text;
    mpz_class value;
    int line, col;
};

class Lexer {
  public:
    Lexer(const std::string &src, int first_line) : src_(src), line_(first_line) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            t.kind = Token::Kind::Number;
            t.text = src_.substr(start, pos_ - start);
            t.value = mpz_class(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.kind = Token::Kind::Symbol;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        if (c == '(') {
            advance();
            t.kind = Token::Kind::LParen;
            return t;
        }
        if (c == ')') {
            advance();
            t.kind = Token::Kind::RParen;
            return t;
        }
        if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            advance();
            t.kind = Token::Kind::Op;
            t.text = std::string(1, c);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

  private:
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 0;
                ++pos_;
                ++col_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        ++pos_;
        ++col_;
    }

    const std::string &src_;
    std::size_t pos_ = 0;
    int line_;
    int col_ = 1;
};

class ExprParser {
  public:
    ExprParser(const std::string &src, int first_line) : lex_(src, first_line) { shift(); }

    ExprPtr parse_all() {
        ExprPtr e = parse(0);
        if (cur_.kind != Token::Kind::End)
            throw ParseError("trailing input '" + cur_.text + "'", cur_.line, cur_.col);
        return e;
    }

  private:
    void shift() { cur_ = lex_.next(); }

    static int precedence(const std::string &op) {
        if (op == "+" || op == "-") return 10;
        if (op == "*" || op == "/") return 20;
        if (op == "^") return 30;
        return -1;
    }

    ExprPtr parse(int min_prec) {
        ExprPtr lhs = parse_unary();
        while (cur_.kind == Token::Kind::Op) {
            std::string op = cur_.text;
            int prec = precedence(op);
            if (prec < min_prec) break;
            shift();
            if (op == "^") {
                lhs = Expr::pow(lhs, parse_exponent());
                continue;
            }
            ExprPtr rhs = parse(prec + 1);  // left associative
            Expr::Kind k = op == "+"   ? Expr::Kind::Add
                           : op == "-" ? Expr::Kind::Sub
                           : op == "*" ? Expr::Kind::Mul
                                       : Expr::Kind::Div;
            lhs = Expr::binary(k, std::move(lhs), rhs);
        }
        return lhs;
    }

    long parse_exponent() {
        bool paren = false;
        if (cur_.kind == Token::Kind::LParen) {
            paren = true;
            shift();
        }
        bool negate = false;
        if (cur_.kind == Token::Kind::Op && cur_.text == "-") {
            negate = true;
            shift();
        }
        if (cur_.kind != Token::Kind::Number)
            throw ParseError("integer exponent expected", cur_.line, cur_.col);
        if (!cur_.value.fits_slong_p())
            throw ParseError("exponent out of range", cur_.line, cur_.col);
        long n = cur_.value.get_si();
        shift();
        if (paren) {
            if (cur_.kind != Token::Kind::RParen)
                throw ParseError("')' expected after exponent", cur_.line, cur_.col);
            shift();
        }
        return negate ? -n : n;
    }

    ExprPtr parse_unary() {
        if (cur_.kind == Token::Kind::Op && cur_.text == "-") {
            shift();
            return Expr::neg(parse_unary());
        }
        if (cur_.kind == Token::Kind::Op && cur_.text == "+") {
            shift();
            return parse_unary();
        }
        if (cur_.kind == Token::Kind::LParen) {
            shift();
            ExprPtr e = parse(0);
            if (cur_.kind != Token::Kind::RParen)
                throw ParseError("')' expected", cur_.line, cur_.col);
            shift();
            return e;
        }
        if (cur_.kind == Token::Kind::Number) {
            Rational v{cur_.value};
            shift();
            return Expr::num(std::move(v));
        }
        if (cur_.kind == Token::Kind::Symbol) {
            std::string n = cur_.text;
            shift();
            return Expr::sym(std::move(n));
        }
        throw ParseError("expression expected, found '" + cur_.text + "'", cur_.line, cur_.col);
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace detail

inline ExprPtr parse_expression(const std::string &src, int first_line = 1) {
    detail::ExprParser p(src, first_line);
    return p.parse_all();
}

// Canonical printing with minimal parentheses. parse(print(e)) reproduces e.
inline std::string print_expression(const ExprPtr &e, int parent_prec = 0) {
    switch (e->kind) {
        case Expr::Kind::Number: {
            std::string s = e->number.str();
            if (e->number.sign() < 0 && parent_prec > 0) return "(" + s + ")";
            if (!e->number.is_integer() && parent_prec >= 20) return "(" + s + ")";
            return s;
        }
        case Expr::Kind::Symbol:
            return e->name;
        case Expr::Kind::Neg: {
            std::string s = "-" + print_expression(e->a, 25);
            return parent_prec > 10 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Pow: {
            std::string base = print_expression(e->a, 31);
            std::string ex = std::to_string(e->exponent);
            if (e->exponent < 0) ex = "(" + ex + ")";
            std::string s = base + "^" + ex;
            return parent_prec > 30 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            const char *op = e->kind == Expr::Kind::Add ? " + " : " - ";
            std::string s = print_expression(e->a, 10) + op + print_expression(e->b, 11);
            return parent_prec > 10 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Mul:
        case Expr::Kind::Div: {
            const char *op = e->kind == Expr::Kind::Mul ? "*" : "/";
            std::string s = print_expression(e->a, 20) + op + print_expression(e->b, 21);
            return parent_prec > 20 ? "(" + s + ")" : s;
        }
    }
    throw std::logic_error("print_expression: bad node");
}

// Generic evaluation. `lookup(name) -> V` resolves symbols, `embed(q) -> V`
// embeds rationals. V needs +, -, *, / and copy semantics.
template <class V, class Lookup, class Embed>
V eval_expression(const ExprPtr &e, const Lookup &lookup, const Embed &embed) {
    switch (e->kind) {
        case Expr::Kind::Number: return embed(e->number);
        case Expr::Kind::Symbol: return lookup(e->name);
        case Expr::Kind::Neg:
            return embed(Rational(0)) - eval_expression<V>(e->a, lookup, embed);
        case Expr::Kind::Add:
            return eval_expression<V>(e->a, lookup, embed) + eval_expression<V>(e->b, lookup, embed);
        case Expr::Kind::Sub:
            return eval_expression<V>(e->a, lookup, embed) - eval_expression<V>(e->b, lookup, embed);
        case Expr::Kind::Mul:
            return eval_expression<V>(e->a, lookup, embed) * eval_expression<V>(e->b, lookup, embed);
        case Expr::Kind::Div:
            return eval_expression<V>(e->a, lookup, embed) / eval_expression<V>(e->b, lookup, embed);
        case Expr::Kind::Pow: {
            V base = eval_expression<V>(e->a, lookup, embed);
            long n = e->exponent;
            bool inv = n < 0;
            if (inv) n = -n;
            V acc = embed(Rational(1));
            while (n) {
                if (n & 1) acc = acc * base;
                n >>= 1;
                if (n) base = base * base;
            }
            return inv ? embed(Rational(1)) / acc : acc;
        }
    }
    throw std::logic_error("eval_expression: bad node");
}

}  // namespace pvi
