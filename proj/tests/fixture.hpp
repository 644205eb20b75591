#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dscribe/invocation_store.hpp"
#include "dscribe/known_types.hpp"

namespace dscribe::testing {

/// Owns everything an InvocationContext points into.
struct Harness {
    std::vector<std::unique_ptr<SourceUnit>> units;
    std::vector<const SourceUnit*> sources;
    Catalog catalog;
    ClassIndex index;

    Harness(const std::vector<std::string>& template_sources,
            const std::vector<std::string>& project_sources) {
        std::vector<const SourceUnit*> tmpl_ptrs;
        int n = 0;
        for (const auto& s : template_sources) {
            units.push_back(std::make_unique<SourceUnit>(
                parse_unit(s, "tpl" + std::to_string(n++) + ".java")));
            tmpl_ptrs.push_back(units.back().get());
        }
        for (const auto& s : project_sources) {
            units.push_back(std::make_unique<SourceUnit>(
                parse_unit(s, "src" + std::to_string(n++) + ".java")));
            sources.push_back(units.back().get());
        }
        catalog = load_catalog(tmpl_ptrs);
        index = build_class_index(sources, default_known_types());
    }

    InvocationContext resolve(const std::string& template_name,
                              const std::string& class_name,
                              const std::string& method_name,
                              std::map<std::string, std::string> values,
                              std::vector<std::string> params = {}) const {
        Invocation inv;
        inv.template_name = template_name;
        inv.signature = {class_name, method_name, std::move(params)};
        inv.values = std::move(values);
        return resolve_context(inv, catalog, index, sources);
    }
};

inline const char* kExampleTemplate =
    "/**\n"
    " * $method$ throws an exception of type $ex$\n"
    " * when $state$.\n"
    " */\n"
    "@Template(\"Example\")\n"
    "@Types($ex$=EXCEPTION, $state$=EXPR, $factory$=METHOD)\n"
    "@Test\n"
    "public void test$method$_$state$() {\n"
    "    $class$ instance = $factory$();\n"
    "    try {\n"
    "        instance.$method$();\n"
    "        fail();\n"
    "    } catch($ex$ e) {}\n"
    "}\n";

inline const char* kBufferSource =
    "package com.example;\n"
    "\n"
    "public class Buffer {\n"
    "    public static Buffer createEmpty() {\n"
    "        return new Buffer();\n"
    "    }\n"
    "\n"
    "    public Object pop() {\n"
    "        return null;\n"
    "    }\n"
    "\n"
    "    public boolean isEmpty() {\n"
    "        return true;\n"
    "    }\n"
    "}\n";

}  // namespace dscribe::testing
