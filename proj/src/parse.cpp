#include "dg/parse.hpp"

#include <cctype>

namespace dg {

namespace {

class Parser {
public:
    Parser(const std::string& text, const Context& ctx) : text_(text), ctx_(ctx) {}

    Polynomial run() {
        skip_ws();
        Polynomial result(ctx_);
        bool negate = false;
        if (peek() == '-') {
            ++pos_;
            negate = true;
        }
        result += parse_term(negate);
        skip_ws();
        while (pos_ < text_.size()) {
            char c = peek();
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            result += parse_term(c == '-');
            skip_ws();
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    bool at_ident() {
        char c = peek();
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    }

    Integer parse_nat(const char* what) {
        skip_ws();
        if (!at_digit()) fail(std::string("expected ") + what);
        std::string digits;
        while (at_digit()) digits.push_back(text_[pos_++]);
        return Integer(digits);
    }

    // coef := int [ '/' nat ]
    Rational parse_coef() {
        Integer num = parse_nat("integer");
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            size_t at = pos_;
            Integer den = parse_nat("denominator");
            if (den == 0) throw ParseError("zero denominator", at);
            return Rational(num, den);
        }
        return Rational(num);
    }

    // factor := ident [ '^' nat ]
    Polynomial parse_factor() {
        skip_ws();
        if (!at_ident()) fail("expected coordinate name");
        size_t start = pos_;
        std::string id;
        while (at_ident() || at_digit() || peek() == '_') id.push_back(text_[pos_++]);
        auto idx = ctx_.index_of(id);
        if (!idx) throw ParseError("unknown coordinate '" + id + "'", start);
        int power = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            size_t at = pos_;
            Integer n = parse_nat("exponent");
            if (n > 1 && ctx_.parity(*idx) == 1)
                throw ParseError("exponent >= 2 on odd coordinate '" + id + "'", at);
            if (n > 1000) throw ParseError("exponent too large", at);
            power = static_cast<int>(n);
        }
        return Polynomial::coordinate(ctx_, *idx, power);
    }

    // term := coef { '*' factor } | factor { '*' factor }
    Polynomial parse_term(bool negate) {
        skip_ws();
        Polynomial acc(ctx_);
        if (at_digit())
            acc = Polynomial::constant(ctx_, parse_coef());
        else
            acc = parse_factor();
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            acc = acc * parse_factor();
            skip_ws();
        }
        return negate ? -acc : acc;
    }

    const std::string& text_;
    const Context& ctx_;
    size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const Context& ctx) {
    return Parser(text, ctx).run();
}

}  // namespace dg
