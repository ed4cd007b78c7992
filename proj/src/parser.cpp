#include "liesym/parser.hpp"

#include <cctype>
#include <sstream>

namespace liesym {

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error([&] {
          std::ostringstream os;
          os << "syntax error at offset " << offset << ": expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
              if (i) os << (i + 1 == expected.size() ? " or " : ", ");
              os << expected[i];
          }
          if (!found.empty()) os << ", found " << found;
          return os.str();
      }()),
      offset(offset),
      expected(std::move(expected)) {}

UnknownSymbolError::UnknownSymbolError(std::size_t offset, const std::string& name)
    : Error("unknown symbol '" + name + "' at offset " + std::to_string(offset)),
      offset(offset),
      name(name) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    Rational value;  // Number
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { scan(); }
    const std::vector<Token>& tokens() const { return toks_; }

private:
    void scan() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = i;
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
                BigInt ipart(text_.substr(start, i - start));
                Rational v(ipart);
                if (i < text_.size() && text_[i] == '.') {
                    ++i;
                    std::size_t fs = i;
                    while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
                    if (fs == i) throw SyntaxError(i, {"digit"}, i < text_.size() ? std::string(1, text_[i]) : "end of input");
                    std::string frac = text_.substr(fs, i - fs);
                    BigInt fnum(frac);
                    BigInt fden = 1;
                    for (std::size_t k = 0; k < frac.size(); ++k) fden *= 10;
                    v += Rational(fnum, fden);
                }
                toks_.push_back({Tok::Number, start, text_.substr(start, i - start), v});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = i;
                while (i < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_'))
                    ++i;
                toks_.push_back({Tok::Ident, start, text_.substr(start, i - start), 0});
                continue;
            }
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '^': k = Tok::Caret; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case '=': k = Tok::Equals; break;
                default:
                    throw SyntaxError(i, {"token"}, std::string(1, c));
            }
            toks_.push_back({k, i, std::string(1, c), 0});
            ++i;
        }
        toks_.push_back({Tok::End, text_.size(), "end of input", 0});
    }

    const std::string& text_;
    std::vector<Token> toks_;
};

class Parser {
public:
    Parser(const std::string& text, bool ode_vars_only)
        : lexer_(text), ode_vars_only_(ode_vars_only) {}

    Expr parse_expression_all() {
        Expr e = parse_expr();
        expect_end();
        return normalize(e);
    }

    Expr parse_ode_all() {
        expect_ident("dy");
        expect(Tok::Slash, "/");
        expect_ident("dx");
        expect(Tok::Equals, "=");
        Expr e = parse_expr();
        expect_end();
        return normalize(e);
    }

private:
    const Token& peek() const { return lexer_.tokens()[pos_]; }
    const Token& advance() { return lexer_.tokens()[pos_++]; }

    // Errors at end of input anchor on the last consumed token so that
    // unterminated constructs point at the construct itself.
    std::size_t error_offset() const {
        const Token& t = peek();
        if (t.kind == Tok::End && pos_ > 0) return lexer_.tokens()[pos_ - 1].offset;
        return t.offset;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        throw SyntaxError(error_offset(), std::move(expected), peek().text);
    }

    void expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail({what});
        advance();
    }

    void expect_ident(const std::string& name) {
        if (peek().kind != Tok::Ident || peek().text != name) fail({"'" + name + "'"});
        advance();
    }

    void expect_end() {
        if (peek().kind != Tok::End) fail({"end of input"});
    }

    Expr parse_expr() {
        if (++depth_ > 200) throw SyntaxError(peek().offset, {"shallower nesting"}, "");
        Expr e = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool plus = advance().kind == Tok::Plus;
            Expr rhs = parse_term();
            e = plus ? e + rhs : e - rhs;
        }
        --depth_;
        return e;
    }

    Expr parse_term() {
        Expr e = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            bool mul = advance().kind == Tok::Star;
            Expr rhs = parse_unary();
            e = mul ? e * rhs : e / rhs;
        }
        return e;
    }

    Expr parse_unary() {
        if (peek().kind == Tok::Minus) {
            advance();
            return -parse_unary();
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (peek().kind != Tok::Caret) return base;
        std::size_t caret_at = advance().offset;
        Expr exponent = parse_unary();  // right-associative
        Expr n = normalize(exponent);
        if (n.kind() != Expr::Kind::Constant)
            throw SyntaxError(caret_at, {"rational constant exponent"}, "expression");
        return Expr::pow(base, n.const_value());
    }

    Expr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number:
                advance();
                return Expr::constant(t.value);
            case Tok::LParen: {
                advance();
                Expr e = parse_expr();
                if (peek().kind != Tok::RParen) fail({")"});
                advance();
                return e;
            }
            case Tok::Ident: {
                advance();
                if (t.text == "exp" || t.text == "ln") {
                    if (peek().kind != Tok::LParen) fail({"("});
                    advance();
                    Expr a = parse_expr();
                    if (peek().kind != Tok::RParen) fail({")"});
                    advance();
                    return t.text == "exp" ? Expr::exp_of(a) : Expr::ln_of(a);
                }
                if (t.text == "x") return Expr::variable(Var::x);
                if (t.text == "y") return Expr::variable(Var::y);
                if (!ode_vars_only_) {
                    if (t.text == "r") return Expr::variable(Var::r);
                    if (t.text == "s") return Expr::variable(Var::s);
                    if (t.text == "C") return Expr::parameter("C");
                    if (t.text.size() >= 2 && t.text[0] == 'c' &&
                        t.text.find_first_not_of("0123456789", 1) == std::string::npos)
                        return Expr::parameter(t.text);
                }
                throw UnknownSymbolError(t.offset, t.text);
            }
            default:
                fail({"expression"});
        }
    }

    Lexer lexer_;
    bool ode_vars_only_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

Ode make_ode(const Expr& h) {
    Expr n = normalize(h);
    return Ode{n, denominator_factors(n)};
}

Expr parse_expr(const std::string& text) {
    Parser p(text, /*ode_vars_only=*/false);
    return p.parse_expression_all();
}

Ode parse_ode(const std::string& text) {
    Parser p(text, /*ode_vars_only=*/true);
    return make_ode(p.parse_ode_all());
}

}  // namespace liesym
