#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/lexer.hpp"

namespace dscribe {

namespace printer_detail {

inline const std::set<std::string>& control_keywords() {
    static const std::set<std::string> words = {
        "if",   "for",   "while",  "switch", "catch",  "return", "throw",
        "new",  "do",    "else",   "try",    "finally", "assert", "synchronized",
        "case", "instanceof"};
    return words;
}

inline bool no_space_after(const Token& t) {
    return t.is("(") || t.is("[") || t.is(".") || t.is("@") || t.is("::") ||
           t.is("!") || t.is("~");
}

inline bool no_space_before(const Token& t) {
    return t.is(")") || t.is("]") || t.is(",") || t.is(";") || t.is(".") ||
           t.is("::") || t.is("[") || t.is("...");
}

inline bool want_space(const Token& prev, const Token& cur) {
    if (no_space_after(prev) || no_space_before(cur)) return false;
    if (cur.is("(")) {
        if (prev.kind == TokenKind::Identifier && !control_keywords().count(prev.text))
            return false;
        if (prev.is(")") || prev.is("]")) return false;
        return true;
    }
    // unary sign after an operator or opener reads without a gap
    if ((cur.is("-") || cur.is("+")) &&
        (prev.is("=") || prev.is(",") || prev.is("return") || prev.kind == TokenKind::Punct))
        return true;  // space before the sign itself is fine
    if ((prev.is("-") || prev.is("+")) && cur.kind != TokenKind::Punct) {
        // keep "a - b" spaced; unary context handled by caller state
        return true;
    }
    return true;
}

}  // namespace printer_detail

/// Renders a token run as a single line with canonical spacing.
inline std::string print_token_line(const std::vector<Token>& tokens, std::size_t begin,
                                    std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        const Token& t = tokens[i];
        if (t.kind == TokenKind::EndOfFile) break;
        if (!out.empty() && printer_detail::want_space(tokens[i - 1], t)) out += ' ';
        out += t.text;
    }
    return out;
}

/// Canonical statement-per-line printer for a method body token run.
/// 4-space indentation; blocks open on the current line; `}` rejoins
/// catch/else/finally/while; array initializer braces stay inline.
inline std::string print_body(const std::vector<Token>& tokens, int base_indent) {
    std::string out;
    std::vector<Token> line;
    int indent = base_indent;
    int paren_depth = 0;
    int initializer_depth = 0;

    auto flush = [&](std::string_view suffix) {
        std::string text = print_token_line(line, 0, line.size());
        if (!text.empty() || !suffix.empty()) {
            for (int i = 0; i < indent; ++i) out += "    ";
            out += text;
            if (!suffix.empty()) {
                if (!text.empty()) out += ' ';
                out += suffix;
            }
            out += '\n';
        }
        line.clear();
    };

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind == TokenKind::EndOfFile) break;
        if (t.is("(")) ++paren_depth;
        if (t.is(")")) --paren_depth;

        if (t.is("{")) {
            bool initializer =
                initializer_depth > 0 ||
                (!line.empty() && (line.back().is("=") || line.back().is("]") ||
                                   line.back().is(",") || line.back().is("(")));
            if (initializer) {
                ++initializer_depth;
                line.push_back(t);
                continue;
            }
            if (i + 1 < tokens.size() && tokens[i + 1].is("}")) {
                flush("{}");
                ++i;  // consume the '}'
                // rejoin a trailing catch/else/finally/while
                if (i + 1 < tokens.size() &&
                    (tokens[i + 1].is("catch") || tokens[i + 1].is("else") ||
                     tokens[i + 1].is("finally") || tokens[i + 1].is("while"))) {
                    // start the next line normally
                }
                continue;
            }
            flush("{");
            ++indent;
            continue;
        }
        if (t.is("}")) {
            if (initializer_depth > 0) {
                --initializer_depth;
                line.push_back(t);
                continue;
            }
            flush("");
            --indent;
            if (i + 1 < tokens.size() &&
                (tokens[i + 1].is("catch") || tokens[i + 1].is("else") ||
                 tokens[i + 1].is("finally") || tokens[i + 1].is("while"))) {
                line.push_back(t);
                continue;
            }
            for (int k = 0; k < indent; ++k) out += "    ";
            out += "}\n";
            continue;
        }
        line.push_back(t);
        if (t.is(";") && paren_depth == 0 && initializer_depth == 0) flush("");
    }
    flush("");
    return out;
}

}  // namespace dscribe
