#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/diagnostics.hpp"
#include "dscribe/lexer.hpp"

namespace dscribe {

struct Annotation {
    std::string name;
    std::string arg_text;  // verbatim text between the parentheses, or empty
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// A header comment with enough structure to strip and re-emit lines.
/// `raw` keeps the original bytes; unmodified comments re-emit from it.
struct CommentBlock {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string raw;

    /// Content lines with delimiters and leading asterisk gutters stripped.
    std::vector<std::string> content_lines() const {
        std::vector<std::string> lines;
        std::string_view body(raw);
        // strip "/**" or "/*" and trailing "*/"
        if (body.size() >= 2 && body.substr(0, 2) == "/*") body.remove_prefix(2);
        while (!body.empty() && body.front() == '*') body.remove_prefix(1);
        if (body.size() >= 2 && body.substr(body.size() - 2) == "*/")
            body.remove_suffix(2);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t nl = body.find('\n', pos);
            std::string_view line =
                body.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
            std::size_t b = 0;
            while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
            if (b < line.size() && line[b] == '*') {
                ++b;
                if (b < line.size() && line[b] == ' ') ++b;
            }
            std::size_t e = line.size();
            while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' ||
                             line[e - 1] == '\r'))
                --e;
            lines.emplace_back(line.substr(b, e - b));
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        while (!lines.empty() && lines.front().empty()) lines.erase(lines.begin());
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
        return lines;
    }
};

struct MethodDecl {
    std::string name;
    std::vector<std::string> param_types;  // as written, whitespace-normalized
    bool is_static = false;
    bool is_constructor = false;
    std::vector<Annotation> annotations;
    std::optional<CommentBlock> header_comment;
    std::vector<Token> body_tokens;  // tokens strictly inside the body braces
    bool has_body = false;
    std::size_t begin = 0;       // first annotation or modifier token
    std::size_t end = 0;         // one past closing '}' or ';'
    std::size_t sig_begin = 0;   // first token after the annotations
    std::size_t body_begin = 0;  // offset of '{', 0 when no body
    std::size_t body_end = 0;    // one past '}'

    const Annotation* find_annotation(std::string_view n) const {
        for (const auto& a : annotations)
            if (a.name == n) return &a;
        return nullptr;
    }
};

enum class TypeKeyword { Class, Interface, Enum };

struct TypeDecl {
    std::string simple_name;      // innermost name
    std::string qualified_name;   // package + dotted enclosing chain + name
    TypeKeyword keyword = TypeKeyword::Class;
    std::vector<std::string> super_types;  // extends + implements, as written
    std::vector<MethodDecl> methods;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct SourceUnit {
    std::string path;
    std::string package_name;
    std::vector<std::string> imports;
    std::vector<TypeDecl> types;       // nested types flattened, outer first
    std::vector<MethodDecl> free_methods;  // top-level methods (catalog files)
    std::string raw_text;
};

inline std::string normalize_ws(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        bool ident = is_identifier_char(c);
        if (pending_space && ident && !out.empty() && is_identifier_char(out.back()))
            out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

namespace detail {

inline const std::set<std::string>& modifier_words() {
    static const std::set<std::string> words = {
        "public",    "private", "protected", "static",   "final",
        "abstract",  "native",  "synchronized", "transient", "volatile",
        "strictfp",  "default", "sealed",    "non",      // "non-sealed" splits
    };
    return words;
}

class Parser {
public:
    Parser(std::string_view text, std::string path)
        : text_(text), path_(std::move(path)) {
        LexResult lr = lex(text, path_);
        tokens_ = std::move(lr.tokens);
        comments_ = std::move(lr.comments);
    }

    SourceUnit parse() {
        SourceUnit unit;
        unit.path = path_;
        unit.raw_text = std::string(text_);
        if (peek().is("package")) {
            next();
            unit.package_name = parse_qualified_name();
            expect(";");
        }
        while (peek().is("import")) {
            next();
            if (peek().is("static")) next();
            std::string name = parse_qualified_name();
            if (peek().is("*")) {
                next();
                name += ".*";
            } else if (peek().is(".")) {
                // `.` consumed by qualified name only between identifiers;
                // a trailing `.*` arrives here
                next();
                expect("*");
                name += ".*";
            }
            expect(";");
            unit.imports.push_back(name);
        }
        while (!peek_is_eof()) {
            parse_top_level_member(unit);
        }
        return unit;
    }

private:
    std::string_view text_;
    std::string path_;
    std::vector<Token> tokens_;
    std::vector<CommentSpan> comments_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool peek_is_eof() const { return peek().kind == TokenKind::EndOfFile; }
    const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
    [[noreturn]] void fail(const Token& tok, const std::string& msg) const {
        throw Error(ErrorCode::SyntaxError, msg,
                    location_string(path_, text_, tok.offset));
    }
    void expect(std::string_view t) {
        if (!peek().is(t)) fail(peek(), "expected '" + std::string(t) + "'");
        next();
    }

    std::string parse_qualified_name() {
        if (peek().kind != TokenKind::Identifier) fail(peek(), "expected identifier");
        std::string name = next().text;
        while (peek().is(".") && peek(1).kind == TokenKind::Identifier) {
            next();
            name += "." + next().text;
        }
        return name;
    }

    // Consumes tokens from an opening delimiter through its matching closer,
    // verifying that (), {}, [] nest properly.
    void consume_balanced() {
        std::vector<std::string> stack;
        const Token& open = peek();
        if (!open.is("(") && !open.is("{") && !open.is("["))
            fail(open, "expected an opening delimiter");
        do {
            const Token& t = peek();
            if (t.kind == TokenKind::EndOfFile)
                fail(t, "unbalanced delimiters: unexpected end of file");
            if (t.is("(") || t.is("{") || t.is("[")) {
                stack.push_back(t.text);
            } else if (t.is(")") || t.is("}") || t.is("]")) {
                static const std::map<std::string, std::string> match = {
                    {")", "("}, {"}", "{"}, {"]", "["}};
                if (stack.empty() || stack.back() != match.at(t.text))
                    fail(t, "unbalanced delimiter '" + t.text + "'");
                stack.pop_back();
            }
            next();
        } while (!stack.empty());
    }

    void skip_generics() {
        // Tolerant angle-bracket skip; lexer may fuse >> and >>>.
        int depth = 0;
        do {
            const Token& t = peek();
            if (t.kind == TokenKind::EndOfFile) fail(t, "unterminated type arguments");
            if (t.is("<")) ++depth;
            else if (t.is(">")) --depth;
            else if (t.is(">>")) depth -= 2;
            else if (t.is(">>>")) depth -= 3;
            else if (t.is(";") || t.is("{")) fail(t, "unterminated type arguments");
            next();
        } while (depth > 0);
    }

    std::vector<Annotation> parse_annotations() {
        std::vector<Annotation> annos;
        while (peek().is("@")) {
            std::size_t begin = peek().offset;
            next();
            Annotation a;
            a.begin = begin;
            a.name = parse_qualified_name();
            a.end = tokens_[pos_ - 1].end();
            if (peek().is("(")) {
                std::size_t arg_begin = peek().end();
                std::size_t start_pos = pos_;
                consume_balanced();
                std::size_t arg_end = tokens_[pos_ - 1].offset;
                a.arg_text = std::string(text_.substr(arg_begin, arg_end - arg_begin));
                a.end = tokens_[pos_ - 1].end();
                (void)start_pos;
            }
            annos.push_back(std::move(a));
        }
        return annos;
    }

    std::vector<std::string> parse_modifiers() {
        std::vector<std::string> mods;
        while (peek().kind == TokenKind::Identifier &&
               modifier_words().count(peek().text) &&
               !peek().is("non")) {
            mods.push_back(next().text);
        }
        return mods;
    }

    std::optional<CommentBlock> header_comment_before(std::size_t offset) const {
        const CommentSpan* best = nullptr;
        for (const auto& c : comments_) {
            if (c.is_block && c.end <= offset && (!best || c.end > best->end))
                best = &c;
        }
        if (!best) return std::nullopt;
        for (std::size_t i = best->end; i < offset; ++i) {
            if (!std::isspace(static_cast<unsigned char>(text_[i]))) return std::nullopt;
        }
        return CommentBlock{best->begin, best->end, best->text};
    }

    void parse_top_level_member(SourceUnit& unit) {
        std::size_t save = pos_;
        auto annos = parse_annotations();
        parse_modifiers();
        const Token& t = peek();
        if (t.is("class") || t.is("interface") || t.is("enum")) {
            pos_ = save;
            parse_type_decl(unit, "");
            return;
        }
        if (t.is(";")) {  // stray semicolon
            next();
            return;
        }
        // Catalog files may hold bare methods at the top level.
        pos_ = save;
        auto method = try_parse_method("");
        if (method) {
            unit.free_methods.push_back(std::move(*method));
            return;
        }
        fail(peek(), "unrecognized top-level declaration");
    }

    void parse_type_decl(SourceUnit& unit, const std::string& enclosing_chain) {
        std::size_t begin = peek().offset;
        auto annos = parse_annotations();
        (void)annos;
        parse_modifiers();
        TypeDecl decl;
        const Token& kw = next();
        if (kw.is("class")) decl.keyword = TypeKeyword::Class;
        else if (kw.is("interface")) decl.keyword = TypeKeyword::Interface;
        else if (kw.is("enum")) decl.keyword = TypeKeyword::Enum;
        else fail(kw, "expected type declaration");
        if (peek().kind != TokenKind::Identifier) fail(peek(), "expected type name");
        decl.simple_name = next().text;
        std::string chain = enclosing_chain.empty()
                                ? decl.simple_name
                                : enclosing_chain + "." + decl.simple_name;
        decl.qualified_name =
            unit.package_name.empty() ? chain : unit.package_name + "." + chain;
        decl.begin = begin;
        if (peek().is("<")) skip_generics();
        while (peek().is("extends") || peek().is("implements") || peek().is("permits")) {
            bool permits = peek().is("permits");
            next();
            while (true) {
                std::string super = parse_qualified_name();
                if (peek().is("<")) skip_generics();
                if (!permits) decl.super_types.push_back(super);
                if (peek().is(",")) { next(); continue; }
                break;
            }
        }
        if (!peek().is("{")) fail(peek(), "expected '{'");
        std::size_t slot = unit.types.size();
        unit.types.emplace_back();  // placeholder keeps outer-before-nested order
        parse_type_body(unit, decl, chain);
        decl.end = tokens_[pos_ - 1].end();
        unit.types[slot] = std::move(decl);
    }

    void parse_type_body(SourceUnit& unit, TypeDecl& decl, const std::string& chain) {
        expect("{");
        if (decl.keyword == TypeKeyword::Enum) skip_enum_constants();
        while (!peek().is("}")) {
            if (peek_is_eof()) fail(peek(), "unterminated type body");
            if (peek().is(";")) { next(); continue; }
            if (peek().is("{")) { consume_balanced(); continue; }  // init block
            std::size_t save = pos_;
            parse_annotations();
            parse_modifiers();
            if (peek().is("{")) { pos_ = save; parse_annotations(); parse_modifiers(); consume_balanced(); continue; }
            if (peek().is("class") || peek().is("interface") || peek().is("enum")) {
                pos_ = save;
                parse_type_decl(unit, chain);
                continue;
            }
            pos_ = save;
            auto method = try_parse_method(decl.simple_name);
            if (method) {
                decl.methods.push_back(std::move(*method));
                continue;
            }
            // field or anything else: skip to ';' at this nesting level
            skip_member();
        }
        expect("}");
    }

    void skip_enum_constants() {
        // constants run until ';' or the closing '}' of the enum body
        while (!peek().is(";") && !peek().is("}")) {
            if (peek_is_eof()) fail(peek(), "unterminated enum body");
            if (peek().is("(") || peek().is("{")) consume_balanced();
            else next();
        }
        if (peek().is(";")) next();
    }

    void skip_member() {
        while (!peek().is(";")) {
            if (peek_is_eof()) fail(peek(), "unterminated member declaration");
            if (peek().is("(") || peek().is("{") || peek().is("[")) consume_balanced();
            else if (peek().is("}")) fail(peek(), "unrecognized member declaration");
            else next();
        }
        next();
    }

    // Reads a type reference: Name(.Name)* with optional generics and []s.
    // Returns false if the cursor does not sit on one.
    bool skip_type_ref() {
        if (peek().kind != TokenKind::Identifier) return false;
        next();
        while (true) {
            if (peek().is(".") && peek(1).kind == TokenKind::Identifier) {
                next();
                next();
                continue;
            }
            if (peek().is("<")) { skip_generics(); continue; }
            if (peek().is("[") && peek(1).is("]")) { next(); next(); continue; }
            break;
        }
        if (peek().is("...")) next();
        return true;
    }

    std::optional<MethodDecl> try_parse_method(const std::string& declaring_simple_name) {
        std::size_t save = pos_;
        MethodDecl m;
        m.annotations = parse_annotations();
        std::size_t anno_begin =
            m.annotations.empty() ? peek().offset : m.annotations.front().begin;
        m.sig_begin = peek().offset;
        auto mods = parse_modifiers();
        if (!m.annotations.empty() && !mods.empty()) {
            // annotations may also follow modifiers; tolerate one more round
            auto more = parse_annotations();
            m.annotations.insert(m.annotations.end(), more.begin(), more.end());
        }
        m.is_static = std::find(mods.begin(), mods.end(), "static") != mods.end();
        if (peek().is("<")) {
            skip_generics();  // method type parameters
        }
        std::size_t name_pos;
        if (peek().kind == TokenKind::Identifier && peek(1).is("(") &&
            peek().text == declaring_simple_name && !declaring_simple_name.empty()) {
            // constructor
            m.is_constructor = true;
            name_pos = pos_;
        } else {
            if (!skip_type_ref()) { pos_ = save; return std::nullopt; }
            if (peek().kind != TokenKind::Identifier || !peek(1).is("(")) {
                pos_ = save;
                return std::nullopt;
            }
            name_pos = pos_;
        }
        m.name = tokens_[name_pos].text;
        pos_ = name_pos + 1;
        m.param_types = parse_params();
        while (peek().is("[") && peek(1).is("]")) { next(); next(); }
        if (peek().is("throws")) {
            next();
            while (true) {
                parse_qualified_name();
                if (peek().is(",")) { next(); continue; }
                break;
            }
        }
        if (peek().is("{")) {
            m.has_body = true;
            m.body_begin = peek().offset;
            std::size_t body_tok_start = pos_ + 1;
            consume_balanced();
            m.body_end = tokens_[pos_ - 1].end();
            m.body_tokens.assign(tokens_.begin() + body_tok_start,
                                 tokens_.begin() + (pos_ - 1));
        } else if (peek().is(";")) {
            next();
        } else if (peek().is("default")) {
            // annotation member default; not in the subset, skip to ';'
            skip_member();
        } else {
            pos_ = save;
            return std::nullopt;
        }
        m.begin = anno_begin;
        m.end = tokens_[pos_ - 1].end();
        m.header_comment = header_comment_before(anno_begin);
        return m;
    }

    // Parses "( ... )", returning parameter type texts as written.
    std::vector<std::string> parse_params() {
        expect("(");
        std::vector<std::string> types;
        if (peek().is(")")) { next(); return types; }
        while (true) {
            // one parameter: [annotations] [final] Type name [ []* ]
            parse_annotations();
            while (peek().is("final")) next();
            std::size_t type_begin = peek().offset;
            if (!skip_type_ref()) fail(peek(), "expected parameter type");
            if (peek().kind != TokenKind::Identifier)
                fail(peek(), "expected parameter name");
            std::size_t type_end = peek().offset;
            next();  // parameter name
            std::string type_text =
                normalize_ws(text_.substr(type_begin, type_end - type_begin));
            while (peek().is("[") && peek(1).is("]")) {
                next();
                next();
                type_text += "[]";
            }
            types.push_back(std::move(type_text));
            if (peek().is(",")) { next(); continue; }
            expect(")");
            break;
        }
        return types;
    }
};

}  // namespace detail

/// Parse one subject-language source file into its structural model.
/// Tolerant: bodies are captured as balanced token runs, no semantics.
inline SourceUnit parse_unit(std::string_view text, const std::string& path) {
    detail::Parser parser(text, path);
    return parser.parse();
}

// ---------------------------------------------------------------------------
// Class index and name resolution

enum class IndexKind { Project, Known };

struct IndexEntry {
    std::string qualified_name;
    std::string package_name;              // project entries only
    std::vector<std::string> super_types;  // as written (project) or qualified (known)
    IndexKind kind = IndexKind::Known;
    const TypeDecl* decl = nullptr;        // project entries only
};

class ClassIndex {
public:
    const std::map<std::string, IndexEntry>& by_qualified_name() const {
        return entries_;
    }

    const IndexEntry* find(const std::string& qualified) const {
        record_access();
        auto it = entries_.find(qualified);
        return it == entries_.end() ? nullptr : &it->second;
    }

    void add(IndexEntry entry) { entries_[entry.qualified_name] = std::move(entry); }

    /// Test hook: counts lookups, to assert that untyped placeholder checks
    /// never consult the index.
    void start_access_recording() const { access_count_ = 0; recording_ = true; }
    std::size_t access_count() const { return access_count_; }

private:
    void record_access() const {
        if (recording_) ++access_count_;
    }
    std::map<std::string, IndexEntry> entries_;
    mutable std::size_t access_count_ = 0;
    mutable bool recording_ = false;
};

inline std::string package_of(const std::string& qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string::npos ? std::string() : qualified.substr(0, dot);
}

inline std::string simple_name_of(const std::string& qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

/// Resolve a type name against the index: dotted names match verbatim,
/// simple names try the context package then java.lang.
inline std::string resolve_type(const std::string& name,
                                const std::string& context_package,
                                const ClassIndex& index) {
    if (name.find('.') != std::string::npos) {
        if (index.find(name)) return name;
        throw Error(ErrorCode::UnresolvedType, "unknown type '" + name + "'");
    }
    if (!context_package.empty()) {
        std::string in_pkg = context_package + "." + name;
        if (index.find(in_pkg)) return in_pkg;
    }
    std::string in_lang = "java.lang." + name;
    if (index.find(in_lang)) return in_lang;
    throw Error(ErrorCode::UnresolvedType,
                "type '" + name + "' not found in package '" + context_package +
                    "' or java.lang");
}

namespace detail {

inline std::optional<std::string> resolve_super(const IndexEntry& entry,
                                                const std::string& super,
                                                const ClassIndex& index) {
    if (super.find('.') != std::string::npos)
        return index.find(super) ? std::optional(super) : std::nullopt;
    if (!entry.package_name.empty()) {
        std::string in_pkg = entry.package_name + "." + super;
        if (index.find(in_pkg)) return in_pkg;
    }
    std::string in_lang = "java.lang." + super;
    if (index.find(in_lang)) return in_lang;
    return std::nullopt;
}

}  // namespace detail

/// True iff the type's transitive supertype closure reaches
/// java.lang.Throwable. A supertype missing from the index is an
/// UnknownHierarchy error unless `lenient`, which yields false.
inline bool is_throwable(const std::string& qualified, const ClassIndex& index,
                         bool lenient = false,
                         std::vector<Diagnostic>* warnings = nullptr) {
    if (qualified == "java.lang.Throwable") return true;
    const IndexEntry* entry = index.find(qualified);
    if (!entry) {
        if (lenient) {
            if (warnings)
                warnings->push_back({Severity::Warning, qualified, "UnknownHierarchy",
                                     "type not in index; treated as non-throwable"});
            return false;
        }
        throw Error(ErrorCode::UnknownHierarchy, "type '" + qualified + "' not in index");
    }
    std::set<std::string> visited{qualified};
    std::vector<const IndexEntry*> frontier{entry};
    while (!frontier.empty()) {
        const IndexEntry* e = frontier.back();
        frontier.pop_back();
        for (const auto& super : e->super_types) {
            auto resolved = detail::resolve_super(*e, super, index);
            if (!resolved) {
                if (lenient) {
                    if (warnings)
                        warnings->push_back(
                            {Severity::Warning, e->qualified_name, "UnknownHierarchy",
                             "supertype '" + super + "' not in index"});
                    continue;
                }
                throw Error(ErrorCode::UnknownHierarchy,
                            "supertype '" + super + "' of '" + e->qualified_name +
                                "' not in index");
            }
            if (*resolved == "java.lang.Throwable") return true;
            if (!visited.insert(*resolved).second) continue;
            frontier.push_back(index.find(*resolved));
        }
    }
    return false;
}

/// Build the project-wide index from parsed units plus the known-types
/// entries (pre-parsed by the caller; see known_types.hpp for the format).
inline ClassIndex build_class_index(const std::vector<const SourceUnit*>& units,
                                    const std::vector<IndexEntry>& known) {
    ClassIndex index;
    for (const auto& entry : known) index.add(entry);
    std::set<std::string> project_names;
    for (const SourceUnit* unit : units) {
        for (const TypeDecl& type : unit->types) {
            if (!project_names.insert(type.qualified_name).second)
                throw Error(ErrorCode::DuplicateType,
                            "type '" + type.qualified_name + "' declared more than once",
                            unit->path);
            IndexEntry entry;
            entry.qualified_name = type.qualified_name;
            entry.package_name = unit->package_name;
            entry.super_types = type.super_types;
            entry.kind = IndexKind::Project;
            entry.decl = &type;
            index.add(std::move(entry));  // project entry shadows a known one
        }
    }
    // cycle check over project supertype edges
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<std::string, std::size_t>> stack;
    for (const auto& name : project_names) {
        if (state[name]) continue;
        stack.emplace_back(name, 0);
        state[name] = 1;
        while (!stack.empty()) {
            auto& [cur, idx] = stack.back();
            const IndexEntry* e = index.find(cur);
            if (idx >= e->super_types.size()) {
                state[cur] = 2;
                stack.pop_back();
                continue;
            }
            auto resolved = detail::resolve_super(*e, e->super_types[idx++], index);
            if (!resolved) continue;
            const IndexEntry* super = index.find(*resolved);
            if (super->kind != IndexKind::Project) continue;
            int s = state[*resolved];
            if (s == 1)
                throw Error(ErrorCode::CyclicHierarchy,
                            "supertype cycle through '" + *resolved + "'");
            if (s == 0) {
                state[*resolved] = 1;
                stack.emplace_back(*resolved, 0);
            }
        }
    }
    return index;
}

struct FocalSignature {
    std::string class_name;   // qualified
    std::string method_name;  // simple class name for constructors
    std::vector<std::string> param_types;

    std::string display() const {
        std::string out = class_name + "." + method_name + "(";
        for (std::size_t i = 0; i < param_types.size(); ++i) {
            if (i) out += ", ";
            out += param_types[i];
        }
        return out + ")";
    }
};

namespace detail {

inline bool is_primitive(const std::string& name) {
    static const std::set<std::string> prims = {"boolean", "byte", "char", "short",
                                                "int", "long", "float", "double",
                                                "void"};
    return prims.count(name) > 0;
}

// Positional parameter-type comparison: verbatim match after whitespace
// normalization, else resolve both sides in the focal package.
inline bool param_types_match(const std::string& declared, const std::string& invoked,
                              const std::string& package, const ClassIndex& index) {
    std::string a = normalize_ws(declared);
    std::string b = normalize_ws(invoked);
    if (a == b) return true;
    auto split_suffix = [](std::string& s) {
        std::string suffix;
        while (true) {
            if (s.size() >= 2 && s.substr(s.size() - 2) == "[]") {
                s.resize(s.size() - 2);
                suffix += "[]";
            } else if (s.size() >= 3 && s.substr(s.size() - 3) == "...") {
                s.resize(s.size() - 3);
                suffix += "[]";
            } else {
                break;
            }
        }
        return suffix;
    };
    std::string sa = split_suffix(a), sb = split_suffix(b);
    if (sa != sb) return false;
    if (a == b) return true;
    if (is_primitive(a) || is_primitive(b)) return false;
    try {
        return resolve_type(a, package, index) == resolve_type(b, package, index);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace detail

/// Locate the unique method matching the signature in its declaring class.
inline const MethodDecl* find_focal_method(const FocalSignature& signature,
                                           const ClassIndex& index) {
    const IndexEntry* entry = index.find(signature.class_name);
    if (!entry || entry->kind != IndexKind::Project || !entry->decl)
        throw Error(ErrorCode::FocalMethodNotFound,
                    "class '" + signature.class_name + "' is not a project type");
    const TypeDecl& type = *entry->decl;
    std::vector<const MethodDecl*> candidates;
    for (const MethodDecl& m : type.methods) {
        if (m.name != signature.method_name) continue;
        if (m.param_types.size() != signature.param_types.size()) continue;
        bool all = true;
        for (std::size_t i = 0; i < m.param_types.size() && all; ++i) {
            all = detail::param_types_match(m.param_types[i], signature.param_types[i],
                                            entry->package_name, index);
        }
        if (all) candidates.push_back(&m);
    }
    if (candidates.empty())
        throw Error(ErrorCode::FocalMethodNotFound,
                    "no method matches " + signature.display());
    if (candidates.size() > 1)
        throw Error(ErrorCode::AmbiguousFocalMethod,
                    std::to_string(candidates.size()) + " methods match " +
                        signature.display());
    return candidates.front();
}

/// The unit and type declaring a given method, searched by identity.
inline std::pair<const SourceUnit*, const TypeDecl*> find_declaring(
    const std::vector<const SourceUnit*>& units, const MethodDecl* method) {
    for (const SourceUnit* unit : units) {
        for (const TypeDecl& type : unit->types) {
            for (const MethodDecl& m : type.methods) {
                if (&m == method) return {unit, &type};
            }
        }
    }
    return {nullptr, nullptr};
}

}  // namespace dscribe
