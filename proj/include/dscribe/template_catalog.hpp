#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/diagnostics.hpp"
#include "dscribe/lexer.hpp"
#include "dscribe/source_model.hpp"

namespace dscribe {

enum class PlaceholderType { Type, Exception, Method, Field, Expr, ExprList };

inline const char* placeholder_type_name(PlaceholderType t) {
    switch (t) {
        case PlaceholderType::Type: return "TYPE";
        case PlaceholderType::Exception: return "EXCEPTION";
        case PlaceholderType::Method: return "METHOD";
        case PlaceholderType::Field: return "FIELD";
        case PlaceholderType::Expr: return "EXPR";
        case PlaceholderType::ExprList: return "EXPR_LIST";
    }
    return "?";
}

inline std::optional<PlaceholderType> placeholder_type_from(std::string_view name) {
    if (name == "TYPE") return PlaceholderType::Type;
    if (name == "EXCEPTION") return PlaceholderType::Exception;
    if (name == "METHOD") return PlaceholderType::Method;
    if (name == "FIELD") return PlaceholderType::Field;
    if (name == "EXPR") return PlaceholderType::Expr;
    if (name == "EXPR_LIST") return PlaceholderType::ExprList;
    return std::nullopt;
}

inline const std::set<std::string>& predefined_placeholders() {
    static const std::set<std::string> names = {"method", "class", "package"};
    return names;
}

struct Placeholder {
    std::string name;  // without the surrounding dollar signs
    PlaceholderType ptype;
};

struct StatementTemplate {
    std::string subject;
    std::string relation;
    std::string object;
};

/// One half of a fragment template: a (subject, relation, object) triple
/// or free-form text.
struct StatementPart {
    bool structured = false;
    StatementTemplate triple;
    std::string freeform;
};

struct FragmentTemplate {
    std::optional<StatementPart> condition;
    std::optional<StatementPart> consequence;
    std::optional<std::string> whole_freeform;

    bool is_whole_freeform() const { return whole_freeform.has_value(); }
};

struct Template {
    std::string name;
    std::vector<Placeholder> placeholders;  // declaration order
    std::vector<std::string> kept_annotations;  // e.g. "@Test", rendered
    std::string signature_text;  // modifiers, return type, name, params, throws
    std::string body_text;       // between the braces, verbatim
    FragmentTemplate description;
    std::string test_class_pattern;  // default "$class$DScribeTest"
    std::string source_path;

    const Placeholder* find_placeholder(std::string_view n) const {
        for (const auto& p : placeholders)
            if (p.name == n) return &p;
        return nullptr;
    }
};

struct Catalog {
    std::vector<Template> templates;  // sorted by name

    const Template* find(std::string_view name) const {
        for (const auto& t : templates)
            if (t.name == name) return &t;
        return nullptr;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Splits "<s> | <r> | <o>" honoring the \| escape.
inline std::vector<std::string> split_triple(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '|') {
            cur += '|';
            ++i;
        } else if (text[i] == '|') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += text[i];
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

inline StatementPart parse_statement_part(std::string_view rest,
                                          const std::string& where) {
    StatementPart part;
    std::string text = trim(rest);
    if (text.rfind("text:", 0) == 0) {
        part.structured = false;
        part.freeform = trim(text.substr(5));
        if (part.freeform.empty())
            throw Error(ErrorCode::MalformedDescription,
                        "free-form statement is empty", where);
        return part;
    }
    auto parts = split_triple(text);
    if (parts.size() != 3)
        throw Error(ErrorCode::MalformedDescription,
                    "expected '<subject> | <relation> | <object>'", where);
    for (const auto& p : parts)
        if (p.empty())
            throw Error(ErrorCode::MalformedDescription,
                        "triple parts must be non-empty", where);
    part.structured = true;
    part.triple = {parts[0], parts[1], parts[2]};
    return part;
}

/// Header comment -> description. Lines tagged @cond/@conseq give the
/// structured form; untagged comments are whole-fragment free form.
inline FragmentTemplate parse_description(const CommentBlock& comment,
                                          const std::string& where) {
    FragmentTemplate frag;
    std::vector<std::string> freeform_lines;
    for (const std::string& line : comment.content_lines()) {
        std::string t = trim(line);
        if (t.rfind("@cond", 0) == 0 &&
            (t.size() == 5 || std::isspace(static_cast<unsigned char>(t[5])))) {
            if (frag.condition)
                throw Error(ErrorCode::MalformedDescription, "duplicate @cond line",
                            where);
            frag.condition = parse_statement_part(t.substr(5), where);
        } else if (t.rfind("@conseq", 0) == 0 &&
                   (t.size() == 7 || std::isspace(static_cast<unsigned char>(t[7])))) {
            if (frag.consequence)
                throw Error(ErrorCode::MalformedDescription, "duplicate @conseq line",
                            where);
            frag.consequence = parse_statement_part(t.substr(7), where);
        } else if (!t.empty()) {
            freeform_lines.push_back(t);
        }
    }
    if (frag.condition || frag.consequence) {
        if (!frag.condition || !frag.consequence)
            throw Error(ErrorCode::MalformedDescription,
                        "@cond and @conseq must both be present", where);
        return frag;
    }
    std::string joined;
    for (const auto& l : freeform_lines) {
        if (!joined.empty()) joined += ' ';
        joined += l;
    }
    if (joined.empty())
        throw Error(ErrorCode::MalformedDescription, "description comment is empty",
                    where);
    frag.whole_freeform = joined;
    return frag;
}

inline std::string strip_string_literal(const std::string& text,
                                        const std::string& where) {
    std::string t = trim(text);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"')
        return t.substr(1, t.size() - 2);
    throw Error(ErrorCode::MalformedDescription,
                "annotation argument must be a string literal", where);
}

inline bool is_legal_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// "$ex$=EXCEPTION, $state$=EXPR, ..." -> placeholder list
inline std::vector<Placeholder> parse_types_annotation(const std::string& arg,
                                                       const std::string& where) {
    std::vector<Placeholder> out;
    std::set<std::string> seen;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        std::size_t comma = arg.find(',', pos);
        std::string item = trim(arg.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        pos = comma == std::string::npos ? arg.size() + 1 : comma + 1;
        if (item.empty()) {
            if (comma == std::string::npos) break;
            throw Error(ErrorCode::BadPlaceholderType, "empty @Types entry", where);
        }
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadPlaceholderType,
                        "expected '$name$=PTYPE' in @Types", where);
        std::string lhs = trim(item.substr(0, eq));
        std::string rhs = trim(item.substr(eq + 1));
        if (lhs.size() < 3 || lhs.front() != '$' || lhs.back() != '$')
            throw Error(ErrorCode::BadPlaceholderType,
                        "@Types name '" + lhs + "' must be written $name$", where);
        std::string name = lhs.substr(1, lhs.size() - 2);
        if (!is_legal_identifier(name))
            throw Error(ErrorCode::BadPlaceholderType,
                        "'" + name + "' is not a legal placeholder name", where);
        if (predefined_placeholders().count(name))
            throw Error(ErrorCode::BadPlaceholderType,
                        "'" + name + "' is predefined and cannot be declared", where);
        auto ptype = placeholder_type_from(rhs);
        if (!ptype)
            throw Error(ErrorCode::BadPlaceholderType,
                        "unknown placeholder type '" + rhs + "'", where);
        if (!seen.insert(name).second)
            throw Error(ErrorCode::BadPlaceholderType,
                        "placeholder '" + name + "' declared twice", where);
        out.push_back({name, *ptype});
    }
    return out;
}

inline void collect_description_placeholders(const FragmentTemplate& frag,
                                             std::set<std::string>& into) {
    auto add = [&into](const std::string& text) {
        for (const auto& n : scan_placeholders(text)) into.insert(n);
    };
    if (frag.whole_freeform) add(*frag.whole_freeform);
    for (const auto* part : {&frag.condition, &frag.consequence}) {
        if (!*part) continue;
        if ((*part)->structured) {
            add((*part)->triple.subject);
            add((*part)->triple.relation);
            add((*part)->triple.object);
        } else {
            add((*part)->freeform);
        }
    }
}

inline Template build_template(const SourceUnit& unit, const MethodDecl& method) {
    const Annotation* tmpl_anno = method.find_annotation("Template");
    std::string where = unit.path;
    Template t;
    t.source_path = unit.path;
    t.name = strip_string_literal(tmpl_anno->arg_text, where);
    if (t.name.empty())
        throw Error(ErrorCode::MalformedDescription, "empty template name", where);
    where += ": template '" + t.name + "'";

    if (const Annotation* types = method.find_annotation("Types"))
        t.placeholders = parse_types_annotation(types->arg_text, where);
    if (const Annotation* tc = method.find_annotation("TestClass"))
        t.test_class_pattern = strip_string_literal(tc->arg_text, where);
    else
        t.test_class_pattern = "$class$DScribeTest";

    for (const Annotation& a : method.annotations) {
        if (a.name == "Template" || a.name == "Types" || a.name == "TestClass")
            continue;
        std::string rendered = "@" + a.name;
        if (!a.arg_text.empty()) rendered += "(" + a.arg_text + ")";
        t.kept_annotations.push_back(rendered);
    }

    if (!method.has_body)
        throw Error(ErrorCode::MalformedDescription,
                    "template method has no body", where);
    t.signature_text = trim(std::string_view(unit.raw_text)
                                .substr(method.sig_begin,
                                        method.body_begin - method.sig_begin));
    t.body_text = unit.raw_text.substr(method.body_begin + 1,
                                       method.body_end - method.body_begin - 2);
    if (!method.header_comment)
        throw Error(ErrorCode::MalformedDescription,
                    "template method has no header comment", where);
    t.description = parse_description(*method.header_comment, where);

    // declared/used consistency
    std::set<std::string> used;
    for (const auto& n : scan_placeholders(t.signature_text)) used.insert(n);
    for (const auto& n : scan_placeholders(t.body_text)) used.insert(n);
    collect_description_placeholders(t.description, used);
    std::set<std::string> used_anywhere = used;
    for (const auto& n : scan_placeholders(t.test_class_pattern))
        used_anywhere.insert(n);
    for (const auto& name : used_anywhere) {
        if (predefined_placeholders().count(name)) continue;
        if (!t.find_placeholder(name))
            throw Error(ErrorCode::MissingTypesAnnotation,
                        "placeholder '$" + name + "$' is not declared in @Types",
                        where);
    }
    for (const auto& p : t.placeholders) {
        if (!used.count(p.name))
            throw Error(ErrorCode::UnusedPlaceholder,
                        "placeholder '$" + p.name +
                            "$' is declared but never used in the test or description",
                        where);
    }
    return t;
}

}  // namespace detail

/// Every method bearing @Template across the given units becomes a
/// Template; the catalog is sorted by name and rejects duplicates.
inline Catalog load_catalog(const std::vector<const SourceUnit*>& units) {
    Catalog catalog;
    std::map<std::string, std::string> name_to_path;
    for (const SourceUnit* unit : units) {
        std::vector<const MethodDecl*> methods;
        for (const MethodDecl& m : unit->free_methods) methods.push_back(&m);
        for (const TypeDecl& type : unit->types)
            for (const MethodDecl& m : type.methods) methods.push_back(&m);
        for (const MethodDecl* m : methods) {
            if (!m->find_annotation("Template")) continue;
            Template t = detail::build_template(*unit, *m);
            auto [it, inserted] = name_to_path.emplace(t.name, unit->path);
            if (!inserted)
                throw Error(ErrorCode::DuplicateTemplateName,
                            "template '" + t.name + "' defined in both " + it->second +
                                " and " + unit->path);
            catalog.templates.push_back(std::move(t));
        }
    }
    std::sort(catalog.templates.begin(), catalog.templates.end(),
              [](const Template& a, const Template& b) { return a.name < b.name; });
    return catalog;
}

}  // namespace dscribe
