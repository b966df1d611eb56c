#include "qent/ket.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

namespace qent::ket {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// UTF-8 aliases accepted by the lexer.
constexpr std::string_view kRadicalGlyph = "\xe2\x88\x9a";  // U+221A
constexpr std::string_view kRangleGlyph = "\xe2\x9f\xa9";   // U+27E9

bool starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    return s.size() - pos >= prefix.size() && s.substr(pos, prefix.size()) == prefix;
}

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++pos;
            continue;
        }
        if (c == '(') { tokens.push_back({TokenKind::lparen, "(", pos}); ++pos; continue; }
        if (c == ')') { tokens.push_back({TokenKind::rparen, ")", pos}); ++pos; continue; }
        if (c == '+') { tokens.push_back({TokenKind::plus, "+", pos}); ++pos; continue; }
        if (c == '-') { tokens.push_back({TokenKind::minus, "-", pos}); ++pos; continue; }
        if (c == '*') { tokens.push_back({TokenKind::star, "*", pos}); ++pos; continue; }
        if (c == '/') { tokens.push_back({TokenKind::slash, "/", pos}); ++pos; continue; }
        if (c == 'i') { tokens.push_back({TokenKind::imaginary_unit, "i", pos}); ++pos; continue; }
        if (starts_with(text, pos, "sqrt")) {
            tokens.push_back({TokenKind::sqrt_fn, "sqrt", pos});
            pos += 4;
            continue;
        }
        if (starts_with(text, pos, kRadicalGlyph)) {
            tokens.push_back({TokenKind::sqrt_fn, std::string(kRadicalGlyph), pos});
            pos += kRadicalGlyph.size();
            continue;
        }
        if (c == '|') {
            const std::size_t start = pos;
            ++pos;
            std::string digits;
            while (pos < text.size() && is_digit(text[pos])) {
                digits.push_back(text[pos]);
                ++pos;
            }
            if (pos >= text.size()) throw parse_error("unterminated ket", start);
            if (text[pos] == '>' || starts_with(text, pos, kRangleGlyph)) {
                if (digits.empty()) throw parse_error("empty ket", pos);
                pos += (text[pos] == '>') ? 1 : kRangleGlyph.size();
                tokens.push_back({TokenKind::ket, std::move(digits), start});
                continue;
            }
            throw parse_error(std::string("invalid character '") + text[pos] + "' inside ket", pos);
        }
        if (is_digit(c) || (c == '.' && pos + 1 < text.size() && is_digit(text[pos + 1]))) {
            const std::size_t start = pos;
            while (pos < text.size() && is_digit(text[pos])) ++pos;
            if (pos < text.size() && text[pos] == '.') {
                ++pos;
                while (pos < text.size() && is_digit(text[pos])) ++pos;
            }
            // optional exponent, only when it is actually well formed
            if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
                std::size_t p = pos + 1;
                if (p < text.size() && (text[p] == '+' || text[p] == '-')) ++p;
                if (p < text.size() && is_digit(text[p])) {
                    while (p < text.size() && is_digit(text[p])) ++p;
                    pos = p;
                }
            }
            tokens.push_back({TokenKind::number, std::string(text.substr(start, pos - start)), start});
            continue;
        }
        throw parse_error(std::string("unknown character '") + c + "'", pos);
    }
    return tokens;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    KetExprPtr run() {
        if (tokens_.empty()) throw parse_error("empty expression", 0);
        KetExprPtr root = parse_expr();
        if (pos_ < tokens_.size()) {
            throw parse_error("unexpected token '" + tokens_[pos_].text + "'", tokens_[pos_].position);
        }
        check_arity(*root);
        return root;
    }

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    bool next_is(TokenKind k) const { return !at_end() && peek().kind == k; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail_here(const std::string& msg) const {
        if (at_end()) {
            const std::size_t end = tokens_.empty() ? 0 : tokens_.back().position + tokens_.back().text.size();
            throw parse_error(msg + ", input ended", end);
        }
        throw parse_error(msg + ", found '" + peek().text + "'", peek().position);
    }

    static KetExprPtr node(KetExpr::Kind kind, std::size_t position) {
        auto n = std::make_unique<KetExpr>();
        n->kind = kind;
        n->position = position;
        return n;
    }

    bool starts_primary() const {
        if (at_end()) return false;
        switch (peek().kind) {
            case TokenKind::number:
            case TokenKind::sqrt_fn:
            case TokenKind::imaginary_unit:
            case TokenKind::ket:
            case TokenKind::lparen:
                return true;
            default:
                return false;
        }
    }

    KetExprPtr parse_expr() {
        std::vector<KetExprPtr> terms;
        std::vector<int> signs;
        const std::size_t start = at_end() ? 0 : peek().position;
        terms.push_back(parse_term());
        signs.push_back(+1);
        while (next_is(TokenKind::plus) || next_is(TokenKind::minus)) {
            const int sign = (take().kind == TokenKind::plus) ? +1 : -1;
            terms.push_back(parse_term());
            signs.push_back(sign);
        }
        if (terms.size() == 1 && signs[0] == +1) return std::move(terms[0]);
        KetExprPtr sum = node(KetExpr::Kind::sum, start);
        sum->children = std::move(terms);
        sum->signs = std::move(signs);
        return sum;
    }

    KetExprPtr parse_term() {
        KetExprPtr lhs = parse_unary();
        for (;;) {
            bool divide = false;
            if (next_is(TokenKind::star) || next_is(TokenKind::slash)) {
                divide = take().kind == TokenKind::slash;
            } else if (!starts_primary()) {
                break;
            }
            const std::size_t at = lhs->position;
            KetExprPtr rhs = parse_unary();
            KetExprPtr scale = node(KetExpr::Kind::scale, at);
            scale->divide = divide;
            scale->children.push_back(std::move(lhs));
            scale->children.push_back(std::move(rhs));
            lhs = std::move(scale);
        }
        return lhs;
    }

    KetExprPtr parse_unary() {
        if (next_is(TokenKind::minus) || next_is(TokenKind::plus)) {
            const Token& op = take();
            KetExprPtr inner = parse_unary();
            if (op.kind == TokenKind::plus) return inner;
            if (inner->kind == KetExpr::Kind::scalar) {
                inner->value = -inner->value;
                return inner;
            }
            KetExprPtr neg = node(KetExpr::Kind::sum, op.position);
            neg->children.push_back(std::move(inner));
            neg->signs.push_back(-1);
            return neg;
        }
        return parse_primary();
    }

    KetExprPtr parse_primary() {
        if (at_end()) fail_here("expected a number, ket, or '('");
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::number: {
                take();
                KetExprPtr s = node(KetExpr::Kind::scalar, t.position);
                s->value = cx(std::strtod(t.text.c_str(), nullptr), 0.0);
                return s;
            }
            case TokenKind::imaginary_unit: {
                take();
                KetExprPtr s = node(KetExpr::Kind::scalar, t.position);
                s->value = cx(0.0, 1.0);
                return s;
            }
            case TokenKind::sqrt_fn: {
                take();
                if (!next_is(TokenKind::lparen)) fail_here("expected '(' after sqrt");
                take();
                if (!next_is(TokenKind::number)) fail_here("expected a number inside sqrt");
                const Token& num = take();
                if (!next_is(TokenKind::rparen)) fail_here("expected ')' after sqrt argument");
                take();
                KetExprPtr s = node(KetExpr::Kind::scalar, t.position);
                s->value = cx(std::sqrt(std::strtod(num.text.c_str(), nullptr)), 0.0);
                return s;
            }
            case TokenKind::ket: {
                take();
                KetExprPtr k = node(KetExpr::Kind::ket, t.position);
                k->digits = t.text;
                return k;
            }
            case TokenKind::lparen: {
                take();
                KetExprPtr inner = parse_expr();
                if (!next_is(TokenKind::rparen)) fail_here("expected ')'");
                take();
                KetExprPtr g = node(KetExpr::Kind::group, t.position);
                g->children.push_back(std::move(inner));
                return g;
            }
            default:
                fail_here("expected a number, ket, or '('");
        }
    }

    // All kets reachable from one root must agree on digit count.
    void check_arity(const KetExpr& expr) {
        std::size_t arity = 0;
        walk_arity(expr, arity);
    }

    static void walk_arity(const KetExpr& expr, std::size_t& arity) {
        if (expr.kind == KetExpr::Kind::ket) {
            if (arity == 0) {
                arity = expr.digits.size();
            } else if (expr.digits.size() != arity) {
                throw parse_error("mismatched ket arity: expected " + std::to_string(arity) +
                                      " digits, got " + std::to_string(expr.digits.size()),
                                  expr.position);
            }
        }
        for (const KetExprPtr& child : expr.children) walk_arity(*child, arity);
    }
};

// Evaluation produces either a plain complex number or a ket-valued map from
// digit strings to coefficients.
struct Value {
    bool is_scalar = true;
    cx scalar{};
    std::map<std::string, cx> coeffs;
};

Value eval_node(const KetExpr& expr);

Value eval_scale(const KetExpr& expr) {
    Value lhs = eval_node(*expr.children[0]);
    Value rhs = eval_node(*expr.children[1]);
    if (expr.divide) {
        if (!rhs.is_scalar) throw parse_error("cannot divide by a ket expression", expr.children[1]->position);
        if (std::abs(rhs.scalar) == 0.0) throw parse_error("division by zero", expr.children[1]->position);
        rhs.scalar = 1.0 / rhs.scalar;
    }
    if (lhs.is_scalar && rhs.is_scalar) {
        return Value{true, lhs.scalar * rhs.scalar, {}};
    }
    if (!lhs.is_scalar && !rhs.is_scalar) {
        throw parse_error("cannot multiply two ket expressions", expr.children[1]->position);
    }
    const cx factor = lhs.is_scalar ? lhs.scalar : rhs.scalar;
    Value out = lhs.is_scalar ? std::move(rhs) : std::move(lhs);
    for (auto& [digits, coeff] : out.coeffs) coeff *= factor;
    return out;
}

Value eval_sum(const KetExpr& expr) {
    Value acc;
    bool first = true;
    for (std::size_t i = 0; i < expr.children.size(); ++i) {
        Value v = eval_node(*expr.children[i]);
        const double sign = static_cast<double>(expr.signs[i]);
        if (first) {
            acc = std::move(v);
            if (sign < 0) {
                if (acc.is_scalar) {
                    acc.scalar = -acc.scalar;
                } else {
                    for (auto& [digits, coeff] : acc.coeffs) coeff = -coeff;
                }
            }
            first = false;
            continue;
        }
        if (acc.is_scalar != v.is_scalar) {
            throw parse_error("cannot add a number and a ket expression", expr.children[i]->position);
        }
        if (acc.is_scalar) {
            acc.scalar += sign * v.scalar;
        } else {
            for (auto& [digits, coeff] : v.coeffs) acc.coeffs[digits] += sign * coeff;
        }
    }
    return acc;
}

Value eval_node(const KetExpr& expr) {
    switch (expr.kind) {
        case KetExpr::Kind::scalar:
            return Value{true, expr.value, {}};
        case KetExpr::Kind::ket: {
            Value v;
            v.is_scalar = false;
            v.coeffs[expr.digits] = cx(1.0, 0.0);
            return v;
        }
        case KetExpr::Kind::group:
            return eval_node(*expr.children[0]);
        case KetExpr::Kind::scale:
            return eval_scale(expr);
        case KetExpr::Kind::sum:
            return eval_sum(expr);
    }
    throw error("eval_node: unreachable");
}

void walk_kets(const KetExpr& expr, const std::function<void(const KetExpr&)>& fn) {
    if (expr.kind == KetExpr::Kind::ket) fn(expr);
    for (const KetExprPtr& child : expr.children) walk_kets(*child, fn);
}

} // namespace

KetExprPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

KetExprPtr parse_expression(std::string_view text) { return parse(tokenize(text)); }

std::vector<int> inferred_dims(const KetExpr& expr) {
    std::vector<int> dims;
    walk_kets(expr, [&dims](const KetExpr& k) {
        if (dims.empty()) dims.assign(k.digits.size(), 2);
        for (std::size_t slot = 0; slot < k.digits.size(); ++slot) {
            dims[slot] = std::max(dims[slot], k.digits[slot] - '0' + 1);
        }
    });
    return dims;
}

PureState evaluate(const KetExpr& expr, std::optional<std::vector<int>> dims) {
    std::vector<int> d = dims ? *dims : inferred_dims(expr);
    if (d.empty()) throw parse_error("expression is a pure number, not a state", expr.position);

    // every digit must fit the slot dimension
    walk_kets(expr, [&d](const KetExpr& k) {
        if (k.digits.size() != d.size()) {
            throw parse_error("ket has " + std::to_string(k.digits.size()) + " digits but " +
                                  std::to_string(d.size()) + " dimensions were declared",
                              k.position);
        }
        for (std::size_t slot = 0; slot < k.digits.size(); ++slot) {
            const int digit = k.digits[slot] - '0';
            if (digit >= d[slot]) {
                throw parse_error("digit " + std::to_string(digit) + " out of range for dimension " +
                                      std::to_string(d[slot]) + " at slot " + std::to_string(slot + 1),
                                  k.position);
            }
        }
    });

    Value v = eval_node(expr);
    if (v.is_scalar) throw parse_error("expression is a pure number, not a state", expr.position);

    std::vector<cx> amps(dim_product(d), cx(0.0, 0.0));
    std::vector<int> index(d.size());
    for (const auto& [digits, coeff] : v.coeffs) {
        for (std::size_t slot = 0; slot < digits.size(); ++slot) index[slot] = digits[slot] - '0';
        amps[offset_of(d, index)] += coeff;
    }
    return make_state(std::move(d), std::move(amps));
}

PureState evaluate_expression(std::string_view text, std::optional<std::vector<int>> dims) {
    return evaluate(*parse_expression(text), std::move(dims));
}

cx evaluate_scalar(std::string_view text) {
    KetExprPtr expr = parse_expression(text);
    Value v = eval_node(*expr);
    if (!v.is_scalar) throw parse_error("expected a number, got a ket expression", expr->position);
    return v.scalar;
}

std::string to_expression(const PureState& state) {
    for (int d : state.dims) {
        if (d > 10) throw validation_error("to_expression: ket digits only cover local dimensions up to 10");
    }
    auto print_real = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };

    std::ostringstream out;
    bool any = false;
    std::vector<int> index(state.dims.size(), 0);
    for (std::size_t off = 0; off < state.size(); ++off) {
        const cx a = state.amps[off];
        if (a != cx(0.0, 0.0)) {
            if (any) out << " + ";
            out << "(" << print_real(a.real());
            out << (a.imag() < 0 || std::signbit(a.imag()) ? "-" : "+");
            out << print_real(std::abs(a.imag())) << "i)|";
            for (int digit : index) out << digit;
            out << ">";
            any = true;
        }
        // odometer, last site fastest
        for (int slot = static_cast<int>(index.size()) - 1; slot >= 0; --slot) {
            if (++index[static_cast<std::size_t>(slot)] < state.dims[static_cast<std::size_t>(slot)]) break;
            index[static_cast<std::size_t>(slot)] = 0;
        }
    }
    if (!any) {
        out << "0|";
        for (std::size_t i = 0; i < state.dims.size(); ++i) out << '0';
        out << ">";
    }
    return out.str();
}

std::vector<std::pair<std::string, int>> read_expression_lines(std::istream& in) {
    std::vector<std::pair<std::string, int>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const std::size_t last = line.find_last_not_of(" \t\r\n");
        out.emplace_back(line.substr(first, last - first + 1), lineno);
    }
    return out;
}

} // namespace qent::ket
