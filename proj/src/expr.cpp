#include "kmso21/expr.hpp"

#include <cctype>
#include <stdexcept>
#include <variant>

namespace kmso21 {

namespace {

using Value = std::variant<Q, LieElement>;

class Parser {
public:
    Parser(const AlgebraContext& ctx, const std::string& t) : ctx_(ctx), t_(t) {}

    LieElement run() {
        Value v = expr();
        skip();
        if (pos_ != t_.size()) fail("unexpected '" + std::string(1, t_[pos_]) + "'");
        return as_element(v);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos_) + ": " + msg);
    }

    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < t_.size() && t_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    LieElement as_element(const Value& v) const {
        if (std::holds_alternative<LieElement>(v)) return std::get<LieElement>(v);
        if (std::get<Q>(v) == 0) return ctx_.zero();
        throw std::invalid_argument("expression is a scalar, not an algebra element");
    }

    Value add(const Value& a, const Value& b, int sign) {
        if (std::holds_alternative<Q>(a) && std::holds_alternative<Q>(b))
            return std::get<Q>(a) + Q(sign) * std::get<Q>(b);
        return as_element(a) + as_element(b) * Q(sign);
    }

    Value mul(const Value& a, const Value& b) {
        if (std::holds_alternative<Q>(a) && std::holds_alternative<Q>(b)) return Q(std::get<Q>(a) * std::get<Q>(b));
        if (std::holds_alternative<Q>(a)) return std::get<LieElement>(b) * std::get<Q>(a);
        if (std::holds_alternative<Q>(b)) return std::get<LieElement>(a) * std::get<Q>(b);
        fail("product of two algebra elements is not defined; use [x,y]");
    }

    Value expr() {
        Value v = term();
        while (true) {
            if (eat('+')) v = add(v, term(), 1);
            else if (eat('-')) v = add(v, term(), -1);
            else return v;
        }
    }

    Value term() {
        Value v = factor();
        while (eat('*')) v = mul(v, factor());
        return v;
    }

    std::vector<int> letters() {
        skip();
        if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_])) && ctx_.rank() < 10) {
            // e1212: one digit per letter
            std::vector<int> out;
            for (; pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_])); ++pos_) {
                int k = t_[pos_] - '0';
                if (k < 1 || static_cast<size_t>(k) > ctx_.rank()) fail("generator index out of range");
                out.push_back(k - 1);
            }
            return out;
        }
        expect('[');
        std::vector<int> out;
        do {
            skip();
            size_t start = pos_;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
            if (start == pos_) fail("expected generator index");
            int k = std::stoi(t_.substr(start, pos_ - start));
            if (k < 1 || static_cast<size_t>(k) > ctx_.rank()) fail("generator index out of range");
            out.push_back(k - 1);
        } while (eat(','));
        expect(']');
        return out;
    }

    Value factor() {
        skip();
        if (pos_ >= t_.size()) fail("unexpected end of input");
        char c = t_[pos_];
        if (c == '-') {
            ++pos_;
            Value v = factor();
            return mul(Q(-1), v);
        }
        if (c == '(') {
            ++pos_;
            Value v = expr();
            expect(')');
            return v;
        }
        if (c == '[') {
            ++pos_;
            LieElement x = as_element(expr());
            expect(',');
            LieElement y = as_element(expr());
            expect(']');
            return ctx_.bracket(x, y);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < t_.size() && (std::isdigit(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '/')) ++pos_;
            return parse_q(t_.substr(start, pos_ - start));
        }
        if (c == 'e' || c == 'f') {
            ++pos_;
            auto l = letters();
            return c == 'e' ? ctx_.e(l) : ctx_.f(l);
        }
        if (c == 'h') {
            ++pos_;
            size_t start = pos_;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
            if (start == pos_) fail("expected index after h");
            int k = std::stoi(t_.substr(start, pos_ - start));
            if (k < 1 || static_cast<size_t>(k) > ctx_.rank()) fail("Cartan index out of range");
            return ctx_.h(static_cast<size_t>(k - 1));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const AlgebraContext& ctx_;
    const std::string& t_;
    size_t pos_ = 0;
};

}  // namespace

LieElement parse_element(const AlgebraContext& ctx, const std::string& text) { return Parser(ctx, text).run(); }

}  // namespace kmso21
