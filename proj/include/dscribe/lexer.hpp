#pragma once

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/diagnostics.hpp"

namespace dscribe {

enum class TokenKind {
    Identifier,  // includes keywords and $...$ placeholders
    Number,
    String,
    CharLit,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;
    std::size_t offset = 0;  // byte offset into the source text

    std::size_t end() const { return offset + text.size(); }
    bool is(std::string_view t) const { return text == t; }
};

/// A block or line comment, kept out of the token stream but retained
/// with its exact span for header-comment association.
struct CommentSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last byte
    bool is_block = false;
    std::string text;  // original bytes, delimiters included
};

inline bool is_identifier_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

inline bool is_identifier_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

inline std::pair<int, int> line_col(std::string_view text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline std::string location_string(std::string_view path, std::string_view text,
                                   std::size_t offset) {
    auto [line, col] = line_col(text, offset);
    std::string loc(path);
    loc += ":" + std::to_string(line) + ":" + std::to_string(col);
    return loc;
}

struct LexResult {
    std::vector<Token> tokens;   // terminated by an EndOfFile token
    std::vector<CommentSpan> comments;
};

namespace detail {

// Multi-character punctuators, longest first within each head character.
inline const char* const kPuncts[] = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
    "^=",   "<<",  ">>",
};

}  // namespace detail

/// Tokenize a source text. Comments go to the side list; whitespace is
/// dropped. Throws Error(SyntaxError) on unterminated literals/comments.
inline LexResult lex(std::string_view text, std::string_view path = "<memory>") {
    LexResult out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto fail = [&](std::size_t at, const std::string& msg) -> void {
        throw Error(ErrorCode::SyntaxError, msg, location_string(path, text, at));
    };
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            std::size_t start = i;
            while (i < n && text[i] != '\n') ++i;
            out.comments.push_back(
                {start, i, false, std::string(text.substr(start, i - start))});
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            std::size_t start = i;
            i += 2;
            while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) ++i;
            if (i + 1 >= n) fail(start, "unterminated block comment");
            i += 2;
            out.comments.push_back(
                {start, i, true, std::string(text.substr(start, i - start))});
            continue;
        }
        if (c == '"' || c == '\'') {
            std::size_t start = i;
            char quote = c;
            ++i;
            while (i < n && text[i] != quote) {
                if (text[i] == '\\' && i + 1 < n) ++i;
                if (text[i] == '\n') fail(start, "unterminated literal");
                ++i;
            }
            if (i >= n) fail(start, "unterminated literal");
            ++i;
            out.tokens.push_back({quote == '"' ? TokenKind::String : TokenKind::CharLit,
                                  std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t start = i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                             text[i] == '.' || text[i] == '_' ||
                             ((text[i] == '+' || text[i] == '-') && i > start &&
                              (text[i - 1] == 'e' || text[i - 1] == 'E')))) {
                // "1.f" style suffixes and hex literals ride along; `1..2` is
                // not valid input in the subset so greedy '.' is fine except
                // for a trailing member access, which Java numbers never have.
                ++i;
            }
            out.tokens.push_back(
                {TokenKind::Number, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (is_identifier_start(c)) {
            std::size_t start = i;
            while (i < n && is_identifier_char(text[i])) ++i;
            out.tokens.push_back(
                {TokenKind::Identifier, std::string(text.substr(start, i - start)), start});
            continue;
        }
        // punctuator
        {
            std::size_t best = 1;
            for (const char* p : detail::kPuncts) {
                std::string_view pv(p);
                if (pv.size() > best && text.substr(i, pv.size()) == pv) best = pv.size();
            }
            out.tokens.push_back(
                {TokenKind::Punct, std::string(text.substr(i, best)), i});
            i += best;
        }
    }
    out.tokens.push_back({TokenKind::EndOfFile, "", n});
    return out;
}

/// Left-to-right non-overlapping scan for `$identifier$` placeholder tokens.
/// `$` followed by a digit or a bare `$` does not start a placeholder.
inline std::vector<std::pair<std::size_t, std::string>> scan_placeholder_spans(
    std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> found;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '$') {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        if (j < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
            ++j;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            if (j < text.size() && text[j] == '$') {
                found.emplace_back(i, std::string(text.substr(i + 1, j - i - 1)));
                i = j + 1;
                continue;
            }
        }
        ++i;
    }
    return found;
}

/// Placeholder names appearing in a text, as a set.
inline std::set<std::string> scan_placeholders(std::string_view text) {
    std::set<std::string> names;
    for (auto& [off, name] : scan_placeholder_spans(text)) names.insert(name);
    return names;
}

}  // namespace dscribe
