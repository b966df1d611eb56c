#pragma once

#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qent/state.hpp"

namespace qent::ket {

enum class TokenKind {
    number,
    sqrt_fn,
    slash,
    star,
    plus,
    minus,
    lparen,
    rparen,
    ket,
    imaginary_unit,
};

struct Token {
    TokenKind kind;
    std::string text;     // source slice; for kets, just the digit string
    std::size_t position; // byte offset into the source
};

/// Longest-match tokenizer for the ket expression language. "sqrt" and the
/// radical glyph are equivalent; kets are written |digits> (or with the
/// closing angle glyph). Throws parse_error with the byte offset on any
/// unknown character, empty ket, or non-digit inside a ket.
std::vector<Token> tokenize(std::string_view text);

struct KetExpr;
using KetExprPtr = std::unique_ptr<KetExpr>;

/// Expression tree. Scalar literals (rationals, sqrt forms, the imaginary
/// unit) are folded to complex values at parse time.
struct KetExpr {
    enum class Kind { scalar, ket, scale, sum, group };

    Kind kind;
    std::size_t position = 0;
    cx value{};               // scalar
    std::string digits;       // ket
    std::vector<KetExprPtr> children; // scale: [lhs, rhs]; group: [inner]; sum: terms
    std::vector<int> signs;   // sum: +1/-1 per child
    bool divide = false;      // scale: lhs / rhs instead of lhs * rhs
};

/// Recursive-descent parse of a token sequence.
///
/// expr := term (('+'|'-') term)*
/// term := unary (('*'|'/'|juxtaposition) unary)*
/// unary := ('+'|'-')* primary
/// primary := number | sqrt '(' number ')' | i | ket | '(' expr ')'
///
/// Juxtaposition is multiplication; whether a product/sum is legal (scalar
/// vs ket valued) is decided during evaluation. All kets reachable from one
/// root must have the same digit count (checked here).
KetExprPtr parse(const std::vector<Token>& tokens);

/// tokenize + parse.
KetExprPtr parse_expression(std::string_view text);

/// Per-slot dimensions implied by the kets in the tree:
/// 1 + (max digit seen in the slot), floored at 2.
std::vector<int> inferred_dims(const KetExpr& expr);

/// Evaluates the expression to a state (not auto-normalized). When dims is
/// omitted it is inferred; a digit >= its slot's dimension is an error. A
/// pure-scalar expression does not denote a state and is rejected.
PureState evaluate(const KetExpr& expr, std::optional<std::vector<int>> dims = std::nullopt);

/// Convenience: parse_expression + evaluate.
PureState evaluate_expression(std::string_view text, std::optional<std::vector<int>> dims = std::nullopt);

/// Evaluates an expression that must denote a plain complex number
/// (e.g. "1/sqrt(2)", "-0.5i").
cx evaluate_scalar(std::string_view text);

/// Basis expansion of a state as a parseable expression string; re-parsing
/// reproduces the amplitudes to full double precision. Requires every local
/// dimension <= 10 (single-digit ket labels).
std::string to_expression(const PureState& state);

/// Reads "one expression per line" text; '#' starts a comment, blank lines
/// are skipped. Returns each expression with its 1-based line number.
std::vector<std::pair<std::string, int>> read_expression_lines(std::istream& in);

} // namespace qent::ket
