#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dscribe/diagnostics.hpp"
#include "dscribe/invocation_store.hpp"
#include "dscribe/source_model.hpp"
#include "dscribe/template_catalog.hpp"
#include "dscribe/test_generation.hpp"

namespace dscribe {

/// Half of a documentation fragment: an RDF-style triple or free text.
struct Statement {
    bool structured = false;
    std::string subject, relation, object;  // structured only
    std::string text;                       // freeform only

    std::string render() const {
        if (structured) return subject + " " + relation + " " + object;
        return text;
    }
};

struct Fragment {
    std::optional<Statement> condition;
    std::optional<Statement> consequence;
    std::optional<std::string> whole_freeform;
    FocalSignature focal;
    std::string origin_template;

    bool is_structured() const {
        return condition && consequence && condition->structured &&
               consequence->structured;
    }
};

struct AggregatedFragment {
    std::vector<Statement> conditions;    // disjunctive
    std::vector<Statement> consequences;  // conjunctive
    std::vector<std::string> freeform_lines;
    FocalSignature focal;
};

namespace doc_detail {

inline std::string squash_ws(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pending = true;
            continue;
        }
        if (pending) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

inline Statement normalize(const Statement& s) {
    Statement out = s;
    if (s.structured) {
        out.subject = squash_ws(s.subject);
        out.relation = squash_ws(s.relation);
        out.object = squash_ws(s.object);
    } else {
        out.text = squash_ws(s.text);
    }
    return out;
}

inline std::string statement_key(const Statement& s) {
    Statement n = normalize(s);
    if (n.structured) return "T\x1f" + n.subject + "\x1f" + n.relation + "\x1f" + n.object;
    return "F\x1f" + n.text;
}

inline std::string fragment_key(const Fragment& f) {
    if (f.whole_freeform) return "W\x1f" + squash_ws(*f.whole_freeform);
    return statement_key(*f.condition) + "\x1e" + statement_key(*f.consequence);
}

inline Statement instantiate_statement(const StatementPart& part,
                                       const std::map<std::string, std::string>& bindings) {
    Statement s;
    if (part.structured) {
        s.structured = true;
        s.subject = substitute_placeholders(part.triple.subject, bindings, false);
        s.relation = substitute_placeholders(part.triple.relation, bindings, false);
        s.object = substitute_placeholders(part.triple.object, bindings, false);
    } else {
        s.structured = false;
        s.text = substitute_placeholders(part.freeform, bindings, false);
    }
    return s;
}

}  // namespace doc_detail

/// Instantiate the description half of an invocation context.
inline Fragment instantiate_fragment(const InvocationContext& ctx) {
    Fragment frag;
    frag.focal = ctx.invocation.signature;
    frag.origin_template = ctx.tmpl->name;
    const FragmentTemplate& d = ctx.tmpl->description;
    if (d.whole_freeform) {
        frag.whole_freeform = substitute_placeholders(*d.whole_freeform, ctx.bindings,
                                                      false);
        return frag;
    }
    frag.condition = doc_detail::instantiate_statement(*d.condition, ctx.bindings);
    frag.consequence = doc_detail::instantiate_statement(*d.consequence, ctx.bindings);
    return frag;
}

namespace doc_detail {

inline std::string render_singleton(const Fragment& f) {
    if (f.whole_freeform) return squash_ws(*f.whole_freeform);
    return "If " + normalize(*f.condition).render() + ", then " +
           normalize(*f.consequence).render() + ".";
}

}  // namespace doc_detail

/// Merge fragments of one focal method. Pass 1 groups structured fragments
/// by equal consequence; pass 2 groups the remaining singletons by equal
/// condition. Free-form fragments never merge. Output is independent of
/// input order: fragments are first deduplicated and sorted canonically.
inline std::vector<AggregatedFragment> aggregate(const std::vector<Fragment>& fragments) {
    using doc_detail::fragment_key;
    using doc_detail::normalize;
    using doc_detail::statement_key;

    // canonical input ordering + dedup
    std::vector<Fragment> input;
    {
        std::set<std::string> seen;
        std::vector<const Fragment*> sorted;
        for (const Fragment& f : fragments) sorted.push_back(&f);
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const Fragment* a, const Fragment* b) {
                             return doc_detail::render_singleton(*a) <
                                    doc_detail::render_singleton(*b);
                         });
        for (const Fragment* f : sorted)
            if (seen.insert(fragment_key(*f)).second) input.push_back(*f);
    }

    std::vector<AggregatedFragment> out;
    std::vector<const Fragment*> structured;
    for (const Fragment& f : input) {
        if (f.is_structured()) {
            structured.push_back(&f);
        } else {
            AggregatedFragment agg;
            agg.focal = f.focal;
            if (f.whole_freeform) {
                agg.freeform_lines.push_back(doc_detail::squash_ws(*f.whole_freeform));
            } else {
                agg.conditions.push_back(normalize(*f.condition));
                agg.consequences.push_back(normalize(*f.consequence));
            }
            out.push_back(std::move(agg));
        }
    }

    // pass 1: same consequence -> merge conditions
    std::vector<const Fragment*> leftovers;
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<const Fragment*>> by_conseq;
    for (const Fragment* f : structured) {
        std::string key = statement_key(*f->consequence);
        if (!by_conseq.count(key)) group_order.push_back(key);
        by_conseq[key].push_back(f);
    }
    for (const std::string& key : group_order) {
        const auto& group = by_conseq[key];
        if (group.size() < 2) {
            leftovers.push_back(group.front());
            continue;
        }
        AggregatedFragment agg;
        agg.focal = group.front()->focal;
        agg.consequences.push_back(normalize(*group.front()->consequence));
        for (const Fragment* f : group)
            agg.conditions.push_back(normalize(*f->condition));
        out.push_back(std::move(agg));
    }

    // pass 2: same condition among the leftovers -> merge consequences
    group_order.clear();
    std::map<std::string, std::vector<const Fragment*>> by_cond;
    for (const Fragment* f : leftovers) {
        std::string key = statement_key(*f->condition);
        if (!by_cond.count(key)) group_order.push_back(key);
        by_cond[key].push_back(f);
    }
    for (const std::string& key : group_order) {
        const auto& group = by_cond[key];
        AggregatedFragment agg;
        agg.focal = group.front()->focal;
        agg.conditions.push_back(normalize(*group.front()->condition));
        for (const Fragment* f : group)
            agg.consequences.push_back(normalize(*f->consequence));
        out.push_back(std::move(agg));
    }
    return out;
}

namespace doc_detail {

inline bool all_structured(const std::vector<Statement>& list) {
    for (const auto& s : list)
        if (!s.structured) return false;
    return true;
}

// "s r o1 <joiner> o2" when subject+relation repeat; "s1 <joiner> s2 r o"
// when relation+object repeat; "; " otherwise.
inline std::string join_statements(const std::vector<Statement>& list,
                                   const std::string& joiner) {
    if (list.size() == 1) return list.front().render();
    if (all_structured(list)) {
        bool same_sr = true, same_ro = true;
        for (const auto& s : list) {
            if (s.subject != list.front().subject || s.relation != list.front().relation)
                same_sr = false;
            if (s.relation != list.front().relation || s.object != list.front().object)
                same_ro = false;
        }
        if (same_sr) {
            std::string out =
                list.front().subject + " " + list.front().relation + " ";
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (i) out += " " + joiner + " ";
                out += list[i].object;
            }
            return out;
        }
        if (same_ro) {
            std::string out;
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (i) out += " " + joiner + " ";
                out += list[i].subject;
            }
            return out + " " + list.front().relation + " " + list.front().object;
        }
    }
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += "; ";
        out += list[i].render();
    }
    return out;
}

}  // namespace doc_detail

/// One "@dscribe ..." doc line per aggregated fragment.
inline std::string render(const AggregatedFragment& agg) {
    if (!agg.freeform_lines.empty()) {
        std::string out = "@dscribe ";
        for (std::size_t i = 0; i < agg.freeform_lines.size(); ++i) {
            if (i) out += "; ";
            out += agg.freeform_lines[i];
        }
        return out;
    }
    return "@dscribe If " + doc_detail::join_statements(agg.conditions, "or") +
           ", then " + doc_detail::join_statements(agg.consequences, "and") + ".";
}

// ---------------------------------------------------------------------------
// Comment integration

namespace doc_detail {

inline bool is_dscribe_line(std::string_view stripped) {
    return stripped.rfind("@dscribe", 0) == 0 &&
           (stripped.size() == 8 ||
            std::isspace(static_cast<unsigned char>(stripped[8])));
}

inline std::string strip_gutter(std::string_view line) {
    std::size_t b = 0;
    while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
    if (b < line.size() && line[b] == '*' &&
        (b + 1 >= line.size() || line[b + 1] != '/')) {
        ++b;
        if (b < line.size() && line[b] == ' ') ++b;
    }
    std::size_t e = line.size();
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return std::string(line.substr(b, e - b));
}

struct Edit {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string replacement;
    bool is_noop() const { return begin == end && replacement.empty(); }
};

inline std::string line_indent(std::string_view text, std::size_t offset) {
    std::size_t line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    line_start = (line_start == std::string_view::npos) ? 0 : line_start + 1;
    std::string indent;
    for (std::size_t i = line_start; i < offset; ++i) {
        if (text[i] == ' ' || text[i] == '\t') indent += text[i];
        else return indent;  // non-whitespace before construct: no own line
    }
    return indent;
}

/// Computes the minimal edit that removes every @dscribe line from the
/// method's header comment and appends `lines`, creating or deleting the
/// comment as needed. All untouched physical lines keep their exact bytes.
inline Edit integration_edit(std::string_view file_text, const MethodDecl& method,
                             const std::vector<std::string>& lines) {
    Edit edit;
    if (!method.header_comment) {
        if (lines.empty()) return edit;  // nothing to do
        std::size_t line_start = file_text.rfind('\n', method.begin - 1);
        line_start = (line_start == std::string_view::npos) ? 0 : line_start + 1;
        std::string indent = line_indent(file_text, method.begin);
        std::string text = indent + "/**\n";
        for (const auto& l : lines) text += indent + " * " + l + "\n";
        text += indent + " */\n";
        edit.begin = edit.end = line_start;
        edit.replacement = std::move(text);
        return edit;
    }

    const CommentBlock& comment = *method.header_comment;
    // physical lines of the comment
    std::vector<std::string> physical;
    {
        std::size_t pos = 0;
        const std::string& raw = comment.raw;
        while (pos <= raw.size()) {
            std::size_t nl = raw.find('\n', pos);
            physical.push_back(raw.substr(
                pos, nl == std::string::npos ? std::string::npos : nl - pos));
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
    }
    std::string indent = line_indent(file_text, comment.begin);

    bool had_dscribe = false;
    std::vector<std::string> kept;  // physical lines, without the delimiters
    std::string first_inline, last_inline;
    if (physical.size() == 1) {
        // "/** content */" on one line
        std::string inner = physical[0];
        inner = inner.substr(inner.find("/*") + 2);
        while (!inner.empty() && inner.front() == '*') inner.erase(0, 1);
        std::size_t close = inner.rfind("*/");
        if (close != std::string::npos) inner = inner.substr(0, close);
        std::string stripped = strip_gutter(inner);
        if (is_dscribe_line(stripped)) had_dscribe = true;
        else if (!stripped.empty()) first_inline = stripped;
    } else {
        std::string head = physical.front();
        std::size_t after_open = head.find("/*") + 2;
        while (after_open < head.size() && head[after_open] == '*') ++after_open;
        std::string head_rest = strip_gutter(head.substr(after_open));
        if (is_dscribe_line(head_rest)) had_dscribe = true;
        else if (!head_rest.empty()) first_inline = head_rest;
        for (std::size_t i = 1; i + 1 < physical.size(); ++i) {
            std::string stripped = strip_gutter(physical[i]);
            if (is_dscribe_line(stripped)) {
                had_dscribe = true;
                continue;
            }
            kept.push_back(physical[i]);
        }
        std::string tail = physical.back();
        std::size_t close = tail.rfind("*/");
        std::string tail_rest = strip_gutter(tail.substr(0, close));
        if (is_dscribe_line(tail_rest)) had_dscribe = true;
        else if (!tail_rest.empty()) last_inline = tail_rest;
    }

    if (!had_dscribe && lines.empty()) return edit;  // untouched, byte-exact

    bool any_content = !first_inline.empty() || !last_inline.empty();
    for (const auto& l : kept)
        if (!strip_gutter(l).empty()) any_content = true;

    if (lines.empty() && !any_content) {
        // regenerable comment with nothing left: remove it and its line
        std::size_t begin = comment.begin - indent.size();
        std::size_t end = comment.end;
        while (end < file_text.size() && (file_text[end] == ' ' || file_text[end] == '\t'))
            ++end;
        if (end < file_text.size() && file_text[end] == '\n') ++end;
        edit.begin = begin;
        edit.end = end;
        return edit;
    }

    // rebuild: untouched middle lines keep their bytes; inline content from
    // a collapsed first/last line gets the canonical gutter
    std::string text = "/**\n";
    if (!first_inline.empty()) text += indent + " * " + first_inline + "\n";
    for (const auto& l : kept) text += l + "\n";
    if (!last_inline.empty()) text += indent + " * " + last_inline + "\n";
    for (const auto& l : lines) text += indent + " * " + l + "\n";
    text += indent + " */";
    edit.begin = comment.begin;
    edit.end = comment.end;
    edit.replacement = std::move(text);
    return edit;
}

}  // namespace doc_detail

/// Rewrite one method's header comment: previous @dscribe lines removed,
/// `lines` appended, the comment created or deleted as needed. All bytes
/// outside the comment region are unchanged.
inline std::string integrate_doc(std::string_view file_text, const MethodDecl& method,
                                 const std::vector<std::string>& lines) {
    doc_detail::Edit edit = doc_detail::integration_edit(file_text, method, lines);
    if (edit.is_noop()) return std::string(file_text);
    std::string out(file_text.substr(0, edit.begin));
    out += edit.replacement;
    out += file_text.substr(edit.end);
    return out;
}

/// Rewrite a whole file: each method gets its new set of doc lines (methods
/// absent from `lines_by_method` get an empty set, i.e. tags removed).
inline std::string integrate_file(
    const SourceUnit& unit,
    const std::map<const MethodDecl*, std::vector<std::string>>& lines_by_method) {
    // collect edits against the original text, apply back-to-front
    std::vector<std::pair<const MethodDecl*, doc_detail::Edit>> edits;
    for (const TypeDecl& type : unit.types) {
        for (const MethodDecl& m : type.methods) {
            auto it = lines_by_method.find(&m);
            static const std::vector<std::string> kEmpty;
            const auto& lines = it == lines_by_method.end() ? kEmpty : it->second;
            doc_detail::Edit e = doc_detail::integration_edit(unit.raw_text, m, lines);
            if (!e.is_noop()) edits.emplace_back(&m, e);
        }
    }
    std::sort(edits.begin(), edits.end(), [](const auto& a, const auto& b) {
        return a.second.begin > b.second.begin;
    });
    std::string text = unit.raw_text;
    for (const auto& [m, e] : edits) {
        text = text.substr(0, e.begin) + e.replacement + text.substr(e.end);
    }
    return text;
}

}  // namespace dscribe
