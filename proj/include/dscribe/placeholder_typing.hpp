#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/diagnostics.hpp"
#include "dscribe/lexer.hpp"
#include "dscribe/source_model.hpp"
#include "dscribe/template_catalog.hpp"

namespace dscribe {

/// A placeholder value that passed its type check. For TYPE/EXCEPTION the
/// substitution text keeps the user's spelling; qualified stays qualified.
struct TypedValue {
    PlaceholderType ptype;
    std::string raw;
    std::string substitution_text;
};

namespace expr {

// Recursive-descent checker for the expression grammar subset documented
// in docs/expression_grammar.ebnf. Purely syntactic; identifiers are never
// resolved.
class Checker {
public:
    explicit Checker(const std::vector<Token>& tokens) : tokens_(tokens) {}

    void check_expression() {
        parse_expr();
        if (!at_end())
            fail("unexpected trailing tokens");
    }

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at_end() const { return peek().kind == TokenKind::EndOfFile; }
    void advance() { ++pos_; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ExprSyntaxError,
                    msg + " (offset " + std::to_string(peek().offset) + ")");
    }
    bool accept(std::string_view t) {
        if (peek().is(t)) {
            advance();
            return true;
        }
        return false;
    }
    void expect(std::string_view t) {
        if (!accept(t)) fail("expected '" + std::string(t) + "'");
    }

    static bool is_binary_op(const Token& t) {
        static const char* ops[] = {"+",  "-",  "*",  "/",  "%",  "<",   ">",
                                    "<=", ">=", "==", "!=", "&&", "||",  "&",
                                    "|",  "^",  "<<", ">>", ">>>"};
        for (const char* op : ops)
            if (t.is(op)) return true;
        return t.is("instanceof");
    }

    bool looks_like_lambda() const {
        // ident ->  |  ( [ident {, ident}] ) ->
        if (peek().kind == TokenKind::Identifier && peek(1).is("->")) return true;
        if (!peek().is("(")) return false;
        std::size_t i = 1;
        if (peek(i).is(")")) return peek(i + 1).is("->");
        while (true) {
            if (peek(i).kind != TokenKind::Identifier) return false;
            ++i;
            if (peek(i).is(",")) { ++i; continue; }
            break;
        }
        return peek(i).is(")") && peek(i + 1).is("->");
    }

    void parse_lambda() {
        if (peek().kind == TokenKind::Identifier) {
            advance();
        } else {
            expect("(");
            if (!accept(")")) {
                while (true) {
                    if (peek().kind != TokenKind::Identifier)
                        fail("expected lambda parameter");
                    advance();
                    if (accept(",")) continue;
                    break;
                }
                expect(")");
            }
        }
        expect("->");
        if (peek().is("{")) {
            skip_balanced_block();
        } else {
            parse_expr();
        }
    }

    void skip_balanced_block() {
        int depth = 0;
        do {
            if (at_end()) fail("unterminated block");
            if (peek().is("{") || peek().is("(") || peek().is("[")) ++depth;
            if (peek().is("}") || peek().is(")") || peek().is("]")) --depth;
            if (depth < 0) fail("unbalanced delimiter");
            advance();
        } while (depth > 0);
    }

    void parse_expr() {
        if (looks_like_lambda()) {
            parse_lambda();
            return;
        }
        parse_binary();
        if (accept("?")) {
            parse_expr();
            expect(":");
            parse_expr();
        }
    }

    void parse_binary() {
        parse_unary();
        while (is_binary_op(peek())) {
            if (peek().is("instanceof")) {
                advance();
                parse_type_ref();
                continue;
            }
            advance();
            parse_unary();
        }
    }

    // `(Type) unary` vs parenthesized expression: try the cast reading only
    // when the parenthesized run is a plain type reference and the next
    // token can begin an operand.
    bool try_cast() {
        if (!peek().is("(")) return false;
        std::size_t save = pos_;
        advance();
        if (!try_type_ref() || !peek().is(")")) {
            pos_ = save;
            return false;
        }
        advance();
        const Token& next = peek();
        bool can_start = next.kind == TokenKind::Identifier ||
                         next.kind == TokenKind::Number ||
                         next.kind == TokenKind::String ||
                         next.kind == TokenKind::CharLit || next.is("(") ||
                         next.is("!") || next.is("~");
        if (!can_start || is_binary_op(next) || next.is("->") ||
            next.kind == TokenKind::EndOfFile) {
            pos_ = save;
            return false;
        }
        parse_unary();
        return true;
    }

    void parse_unary() {
        while (peek().is("+") || peek().is("-") || peek().is("!") || peek().is("~")) {
            advance();
        }
        if (try_cast()) return;
        parse_postfix();
    }

    bool try_type_ref() {
        if (peek().kind != TokenKind::Identifier) return false;
        advance();
        while (peek().is(".") && peek(1).kind == TokenKind::Identifier) {
            advance();
            advance();
        }
        if (peek().is("<")) {
            if (!try_skip_generics()) return false;
        }
        while (peek().is("[") && peek(1).is("]")) {
            advance();
            advance();
        }
        return true;
    }

    void parse_type_ref() {
        if (!try_type_ref()) fail("expected a type reference");
    }

    bool try_skip_generics() {
        std::size_t save = pos_;
        int depth = 0;
        do {
            const Token& t = peek();
            if (t.kind == TokenKind::EndOfFile || t.is(";")) {
                pos_ = save;
                return false;
            }
            if (t.is("<")) ++depth;
            else if (t.is(">")) --depth;
            else if (t.is(">>")) depth -= 2;
            else if (t.is(">>>")) depth -= 3;
            advance();
        } while (depth > 0);
        return true;
    }

    void parse_args() {
        expect("(");
        if (accept(")")) return;
        while (true) {
            parse_expr();
            if (accept(",")) continue;
            break;
        }
        expect(")");
    }

    void parse_array_initializer() {
        expect("{");
        if (accept("}")) return;
        while (true) {
            if (peek().is("{")) parse_array_initializer();
            else parse_expr();
            if (accept(",")) {
                if (peek().is("}")) break;  // trailing comma
                continue;
            }
            break;
        }
        expect("}");
    }

    void parse_new() {
        expect("new");
        parse_type_ref();  // also consumes any [] pairs written as "[]"
        if (peek().is("(")) {
            parse_args();
            return;
        }
        bool had_dims = false;
        // look back: type_ref may already have eaten "[]" pairs
        if (pos_ >= 2 && tokens_[pos_ - 1].is("]") && tokens_[pos_ - 2].is("["))
            had_dims = true;
        while (peek().is("[")) {
            advance();
            if (!accept("]")) {
                parse_expr();
                expect("]");
            }
            had_dims = true;
        }
        if (peek().is("{")) {
            parse_array_initializer();
            return;
        }
        if (!had_dims) fail("expected '(' or array dimensions after new");
    }

    void parse_primary() {
        const Token& t = peek();
        if (t.kind == TokenKind::Number || t.kind == TokenKind::String ||
            t.kind == TokenKind::CharLit) {
            advance();
            return;
        }
        if (t.is("true") || t.is("false") || t.is("null") || t.is("this")) {
            advance();
            return;
        }
        if (t.is("new")) {
            parse_new();
            return;
        }
        if (t.is("(")) {
            advance();
            parse_expr();
            expect(")");
            return;
        }
        if (t.kind == TokenKind::Identifier) {
            advance();
            return;
        }
        fail("expected an expression");
    }

    void parse_postfix() {
        parse_primary();
        while (true) {
            if (peek().is(".")) {
                advance();
                if (peek().is("new")) fail("qualified new is not supported");
                if (peek().is("class")) { advance(); continue; }
                if (peek().kind != TokenKind::Identifier)
                    fail("expected member name after '.'");
                advance();
                continue;
            }
            if (peek().is("::")) {
                advance();
                if (peek().kind != TokenKind::Identifier && !peek().is("new"))
                    fail("expected method reference name after '::'");
                advance();
                continue;
            }
            if (peek().is("(")) {
                parse_args();
                continue;
            }
            if (peek().is("[")) {
                advance();
                parse_expr();
                expect("]");
                continue;
            }
            break;
        }
    }
};

/// Checks that `text` parses under the expression grammar subset.
/// Throws Error(ExprSyntaxError) otherwise.
inline void check_expression(std::string_view text) {
    LexResult lr = lex(text, "<expr>");
    if (lr.tokens.size() <= 1)
        throw Error(ErrorCode::ExprSyntaxError, "empty expression");
    Checker(lr.tokens).check_expression();
}

inline bool delimiters_balanced(std::string_view text) {
    try {
        LexResult lr = lex(text, "<expr>");
        std::vector<char> stack;
        for (const Token& t : lr.tokens) {
            if (t.is("(")) stack.push_back(')');
            else if (t.is("[")) stack.push_back(']');
            else if (t.is("{")) stack.push_back('}');
            else if (t.is(")") || t.is("]") || t.is("}")) {
                if (stack.empty() || stack.back() != t.text[0]) return false;
                stack.pop_back();
            }
        }
        return stack.empty();
    } catch (const Error&) {
        return false;
    }
}

/// Splits a comma-separated expression list. Commas nested in (), [], {},
/// or string/char literals do not split. Empty input -> empty list.
inline std::vector<std::string> split_expr_list(std::string_view text) {
    std::vector<std::string> elems;
    std::string trimmed = detail::trim(text);
    if (trimmed.empty()) return elems;
    int depth = 0;
    char in_literal = 0;
    std::string cur;
    for (std::size_t i = 0; i < trimmed.size(); ++i) {
        char c = trimmed[i];
        if (in_literal) {
            cur += c;
            if (c == '\\' && i + 1 < trimmed.size()) {
                cur += trimmed[++i];
            } else if (c == in_literal) {
                in_literal = 0;
            }
            continue;
        }
        if (c == '"' || c == '\'') {
            in_literal = c;
            cur += c;
            continue;
        }
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            elems.push_back(detail::trim(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    elems.push_back(detail::trim(cur));
    return elems;
}

}  // namespace expr

/// Enforce the per-type rules for one placeholder value. The index is
/// consulted only for TYPE and EXCEPTION.
inline TypedValue check_value(PlaceholderType ptype, const std::string& raw,
                              const std::string& focal_package,
                              const ClassIndex& index, bool lenient = false,
                              std::vector<Diagnostic>* warnings = nullptr) {
    std::string text = detail::trim(raw);
    TypedValue value{ptype, raw, text};
    switch (ptype) {
        case PlaceholderType::Type:
        case PlaceholderType::Exception: {
            // lexically a dotted identifier chain
            bool ok = !text.empty();
            bool expect_ident = true;
            for (std::size_t i = 0; i < text.size() && ok; ++i) {
                char c = text[i];
                if (c == '.') {
                    if (expect_ident) ok = false;
                    expect_ident = true;
                } else if (expect_ident ? !is_identifier_start(c)
                                        : !is_identifier_char(c)) {
                    ok = false;
                } else {
                    expect_ident = false;
                }
            }
            if (!ok || expect_ident)
                throw Error(ErrorCode::UnresolvedType,
                            "'" + text + "' is not a type name");
            std::string resolved = resolve_type(text, focal_package, index);
            if (ptype == PlaceholderType::Exception &&
                !is_throwable(resolved, index, lenient, warnings))
                throw Error(ErrorCode::NotThrowable,
                            "'" + resolved + "' does not inherit from java.lang.Throwable");
            break;
        }
        case PlaceholderType::Method:
        case PlaceholderType::Field: {
            if (!detail::is_legal_identifier(text))
                throw Error(ErrorCode::BadIdentifier,
                            "'" + text + "' is not a single legal identifier");
            break;
        }
        case PlaceholderType::Expr: {
            try {
                expr::check_expression(text);
            } catch (const Error& e) {
                if (lenient && expr::delimiters_balanced(text) && !text.empty()) {
                    if (warnings)
                        warnings->push_back({Severity::Warning, "", "ExprSyntaxError",
                                             "accepted in lenient mode: " + e.message()});
                    break;
                }
                throw;
            }
            break;
        }
        case PlaceholderType::ExprList: {
            if (text.empty()) break;  // empty argument list
            for (const std::string& elem : expr::split_expr_list(text)) {
                try {
                    expr::check_expression(elem);
                } catch (const Error& e) {
                    if (lenient && expr::delimiters_balanced(elem) && !elem.empty()) {
                        if (warnings)
                            warnings->push_back(
                                {Severity::Warning, "", "ExprSyntaxError",
                                 "accepted in lenient mode: " + e.message()});
                        continue;
                    }
                    throw Error(ErrorCode::ExprSyntaxError,
                                "list element '" + elem + "': " + e.message());
                }
            }
            break;
        }
    }
    return value;
}

}  // namespace dscribe
