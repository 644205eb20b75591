#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dscribe/diagnostics.hpp"
#include "dscribe/placeholder_typing.hpp"
#include "dscribe/source_model.hpp"
#include "dscribe/template_catalog.hpp"

namespace dscribe {

struct Invocation {
    std::string template_name;
    FocalSignature signature;
    std::map<std::string, std::string> values;  // placeholder -> verbatim text

    bool operator==(const Invocation& other) const {
        return template_name == other.template_name &&
               signature.class_name == other.signature.class_name &&
               signature.method_name == other.signature.method_name &&
               signature.param_types == other.signature.param_types &&
               values == other.values;
    }
};

/// A fully resolved invocation: template, focal method, and the complete,
/// type-checked binding map including $method$/$class$/$package$.
struct InvocationContext {
    Invocation invocation;
    const Template* tmpl = nullptr;
    const MethodDecl* focal = nullptr;
    const SourceUnit* focal_unit = nullptr;
    const TypeDecl* focal_type = nullptr;
    std::map<std::string, std::string> bindings;  // name -> substitution text
};

namespace detail {

inline void require(bool ok, const std::string& message, const std::string& path) {
    if (!ok) throw Error(ErrorCode::SchemaError, message, path);
}

inline Invocation parse_invocation(const nlohmann::ordered_json& obj,
                                   const std::string& path) {
    require(obj.is_object(), "invocation must be an object", path);
    static const std::set<std::string> allowed = {"template", "class", "method",
                                                  "params", "values"};
    for (const auto& [key, _] : obj.items())
        require(allowed.count(key) > 0, "unknown key \"" + key + "\"", path);
    for (const char* key : {"template", "class", "method"})
        require(obj.contains(key) && obj[key].is_string(),
                std::string("\"") + key + "\" must be a string", path);
    require(obj.contains("params") && obj["params"].is_array(),
            "\"params\" must be an array", path);
    require(obj.contains("values") && obj["values"].is_object(),
            "\"values\" must be an object", path);

    Invocation inv;
    inv.template_name = obj["template"].get<std::string>();
    inv.signature.class_name = obj["class"].get<std::string>();
    inv.signature.method_name = obj["method"].get<std::string>();
    require(inv.signature.class_name.find('.') != std::string::npos,
            "\"class\" must be a qualified name", path + ".class");
    for (std::size_t i = 0; i < obj["params"].size(); ++i) {
        require(obj["params"][i].is_string(), "params entries must be strings",
                path + ".params[" + std::to_string(i) + "]");
        inv.signature.param_types.push_back(obj["params"][i].get<std::string>());
    }
    for (const auto& [key, val] : obj["values"].items()) {
        require(val.is_string(), "values must map to strings",
                path + ".values." + key);
        require(!predefined_placeholders().count(key),
                "\"" + key + "\" is a predefined placeholder and cannot be bound",
                path + ".values." + key);
        require(inv.values.emplace(key, val.get<std::string>()).second,
                "duplicate value key \"" + key + "\"", path + ".values." + key);
    }
    return inv;
}

}  // namespace detail

/// Strict-schema load of one invocation file. File order is preserved.
inline std::vector<Invocation> load_invocations(std::string_view content) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("not valid JSON: ") + e.what(),
                    "$");
    }
    detail::require(doc.is_object(), "top level must be an object", "$");
    for (const auto& [key, _] : doc.items())
        detail::require(key == "version" || key == "invocations",
                        "unknown top-level key \"" + key + "\"", "$." + key);
    detail::require(doc.contains("version") && doc["version"].is_number_integer(),
                    "\"version\" must be an integer", "$.version");
    if (doc["version"].get<long>() != 1)
        throw Error(ErrorCode::UnsupportedVersion,
                    "unsupported version " + doc["version"].dump(), "$.version");
    detail::require(doc.contains("invocations") && doc["invocations"].is_array(),
                    "\"invocations\" must be an array", "$.invocations");
    std::vector<Invocation> out;
    for (std::size_t i = 0; i < doc["invocations"].size(); ++i) {
        out.push_back(detail::parse_invocation(
            doc["invocations"][i], "$.invocations[" + std::to_string(i) + "]"));
    }
    return out;
}

/// Canonical form: fixed key order, values sorted by key, 2-space indent,
/// trailing newline. load(serialize(L)) == L and serialize is a fixpoint.
inline std::string serialize_invocations(const std::vector<Invocation>& invocations) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["invocations"] = nlohmann::ordered_json::array();
    for (const Invocation& inv : invocations) {
        nlohmann::ordered_json obj;
        obj["template"] = inv.template_name;
        obj["class"] = inv.signature.class_name;
        obj["method"] = inv.signature.method_name;
        obj["params"] = inv.signature.param_types;
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inv.values) values[k] = v;  // std::map: sorted
        obj["values"] = std::move(values);
        doc["invocations"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

/// Collapse exact duplicate invocations, warning once per duplicate.
/// Invocations differing only in values are distinct facts and all proceed.
inline std::vector<Invocation> dedupe_invocations(std::vector<Invocation> list,
                                                  std::vector<Diagnostic>* warnings) {
    std::vector<Invocation> out;
    for (auto& inv : list) {
        bool dup = false;
        for (const auto& seen : out)
            if (seen == inv) { dup = true; break; }
        if (dup) {
            if (warnings)
                warnings->push_back({Severity::Warning, inv.signature.display(),
                                     "DuplicateInvocation",
                                     "identical invocation of template '" +
                                         inv.template_name + "' collapsed"});
            continue;
        }
        out.push_back(std::move(inv));
    }
    return out;
}

/// Resolve an invocation into a full context: template by name, focal
/// method by signature, all placeholder values type-checked, and the
/// predefined bindings derived from the focal method.
inline InvocationContext resolve_context(const Invocation& inv, const Catalog& catalog,
                                         const ClassIndex& index,
                                         const std::vector<const SourceUnit*>& units,
                                         bool lenient = false,
                                         std::vector<Diagnostic>* warnings = nullptr) {
    InvocationContext ctx;
    ctx.invocation = inv;
    ctx.tmpl = catalog.find(inv.template_name);
    if (!ctx.tmpl)
        throw Error(ErrorCode::UnknownTemplate,
                    "no template named '" + inv.template_name + "'");
    ctx.focal = find_focal_method(inv.signature, index);
    auto [unit, type] = find_declaring(units, ctx.focal);
    ctx.focal_unit = unit;
    ctx.focal_type = type;

    for (const auto& [name, _] : inv.values) {
        if (!ctx.tmpl->find_placeholder(name))
            throw Error(ErrorCode::ExtraPlaceholderValue,
                        "template '" + ctx.tmpl->name + "' declares no placeholder '$" +
                            name + "$'",
                        name);
    }
    const std::string focal_package = unit ? unit->package_name : std::string();
    for (const Placeholder& p : ctx.tmpl->placeholders) {
        auto it = inv.values.find(p.name);
        if (it == inv.values.end())
            throw Error(ErrorCode::MissingPlaceholderValue,
                        "no value for placeholder '$" + p.name + "$'", p.name);
        try {
            TypedValue v =
                check_value(p.ptype, it->second, focal_package, index, lenient, warnings);
            ctx.bindings[p.name] = v.substitution_text;
        } catch (const Error& e) {
            throw Error(e.code(), "$" + p.name + "$: " + e.message(),
                        "$" + p.name + "$");
        }
    }
    ctx.bindings["method"] = ctx.focal->name;
    ctx.bindings["class"] = type ? type->simple_name : std::string();
    ctx.bindings["package"] = focal_package;
    return ctx;
}

}  // namespace dscribe
