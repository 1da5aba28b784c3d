#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "naq/lambda_series.hpp"
#include "naq/star_product.hpp"

namespace naq {

/// Context for star expressions: the product interprets star()/assoc()/
/// comm(), the bivector interprets bracket(). Plain polynomial parsing
/// uses neither.
struct StarExprContext {
    int dim = 1;
    int truncation_order = 0;
    const StarProduct* product = nullptr;
    const Bivector* bivector = nullptr;
};

namespace detail {

/// Recursive-descent parser over the grammar
///
///   expr    := ['+'|'-'] term { ('+'|'-') term }
///   term    := factor { '*' factor }
///   factor  := primary [ '^' nat ]
///   primary := rational | variable | '(' expr ')'
///            | 'lambda'                          (star expressions only)
///            | func '(' expr {',' expr} ')'      (star expressions only)
///   rational := nat [ '/' nat ]
///
/// Variables are x1..xn; '/' occurs only inside rational literals;
/// implicit multiplication is not allowed. Functions: star, bracket,
/// assoc, comm.
class ExprParser {
public:
    ExprParser(const std::string& text, const StarExprContext& ctx, bool series_mode)
        : text_(text), ctx_(ctx), series_(series_mode) {}

    LambdaSeries parse() {
        LambdaSeries v = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
        throw ParseError(msg, pos + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Integer natural() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return Integer(text_.substr(start, pos_ - start));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    LambdaSeries constant(const Rational& c) {
        return LambdaSeries::from_poly(Polynomial::constant(ctx_.dim, c), ctx_.truncation_order);
    }

    LambdaSeries expr() {
        skip_ws();
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        LambdaSeries v = term();
        if (negate) v = -v;
        for (;;) {
            if (eat('-'))
                v -= term();
            else if (eat('+'))
                v += term();
            else
                return v;
        }
    }

    LambdaSeries term() {
        LambdaSeries v = factor();
        while (eat('*')) v = v * factor();
        return v;
    }

    LambdaSeries factor() {
        LambdaSeries base = primary();
        skip_ws();
        if (!eat('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        if (peek() == '-') fail("negative exponent");
        Integer e = natural();
        if (e > 4096) fail_at("exponent too large", at);
        LambdaSeries v = constant(1);
        for (Integer i = 0; i < e; ++i) v = v * base;
        return v;
    }

    LambdaSeries primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            LambdaSeries v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = natural();
            std::size_t save = pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::size_t at = pos_;
                Integer den = natural();
                if (den == 0) fail_at("zero denominator in rational literal", at);
                return constant(Rational(num, den));
            }
            pos_ = save;
            return constant(Rational(num));
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name = ident();
            if (series_ && name == "lambda") {
                LambdaSeries v(ctx_.dim, ctx_.truncation_order);
                if (ctx_.truncation_order >= 1)
                    v.set_coefficient(1, Polynomial::one(ctx_.dim));
                return v;
            }
            if (series_ && (name == "star" || name == "bracket" || name == "assoc" || name == "comm"))
                return call(name, at);
            if (name.size() >= 2 && name[0] == 'x') {
                bool digits = true;
                for (std::size_t i = 1; i < name.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
                if (digits && name[1] != '0') {
                    long idx = std::stol(name.substr(1));
                    if (idx >= 1 && idx <= ctx_.dim)
                        return LambdaSeries::from_poly(
                            Polynomial::variable(ctx_.dim, static_cast<int>(idx - 1)),
                            ctx_.truncation_order);
                    fail_at("unknown variable '" + name + "' (dimension is " +
                                std::to_string(ctx_.dim) + ")",
                            at);
                }
            }
            fail_at("unknown variable '" + name + "'", at);
        }

        fail(std::string("unexpected character '") + c + "'");
    }

    LambdaSeries call(const std::string& name, std::size_t at) {
        if (!eat('(')) fail("expected '(' after function name");
        std::vector<LambdaSeries> args;
        args.push_back(expr());
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) fail("expected ')'");

        auto need = [&](std::size_t n) {
            if (args.size() != n)
                fail_at(name + " expects " + std::to_string(n) + " arguments", at);
        };
        if (name == "star") {
            need(2);
            require_product(at);
            return ctx_.product->star(args[0], args[1]);
        }
        if (name == "comm") {
            need(2);
            require_product(at);
            return ctx_.product->commutator(args[0], args[1]);
        }
        if (name == "assoc") {
            need(3);
            require_product(at);
            return ctx_.product->star(args[0], ctx_.product->star(args[1], args[2])) -
                   ctx_.product->star(ctx_.product->star(args[0], args[1]), args[2]);
        }
        // bracket
        need(2);
        if (!ctx_.bivector) fail_at("bracket() requires a bivector in context", at);
        return bracket_series(*ctx_.bivector, args[0], args[1]);
    }

    void require_product(std::size_t at) const {
        if (!ctx_.product) fail_at("star expressions require a product in context", at);
    }

    const std::string& text_;
    StarExprContext ctx_;
    bool series_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a polynomial over x1..xn with rational coefficients. Total over
/// the grammar; errors carry the offending column.
inline Polynomial parse_poly_expr(const std::string& text, int dim) {
    StarExprContext ctx;
    ctx.dim = dim;
    ctx.truncation_order = 0;
    detail::ExprParser p(text, ctx, /*series_mode=*/false);
    return p.parse().coefficient(0);
}

/// Parses a star expression: polynomials extended with 'lambda' and the
/// functions star(f,g), comm(f,g), assoc(f,g,h), bracket(f,g), evaluated
/// in the given context modulo lambda^(K+1).
inline LambdaSeries parse_star_expr(const std::string& text, const StarExprContext& ctx) {
    detail::ExprParser p(text, ctx, /*series_mode=*/true);
    return p.parse();
}

} // namespace naq
