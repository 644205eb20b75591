#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dscribe/diagnostics.hpp"
#include "dscribe/source_model.hpp"

namespace dscribe {

/// Default known-types index: common java.lang, java.io, and java.util
/// types with their supertype chains. Stands in for the build path.
/// The same content ships as data/known_types.json.
inline constexpr std::string_view kDefaultKnownTypesJson = R"({
  "types": [
    { "name": "java.lang.Object", "supertypes": [] },
    { "name": "java.lang.String", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.CharSequence", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.StringBuilder", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Number", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Integer", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Long", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Short", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Byte", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Float", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Double", "supertypes": ["java.lang.Number"] },
    { "name": "java.lang.Boolean", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Character", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Math", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Iterable", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Comparable", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Runnable", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Thread", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Class", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Throwable", "supertypes": ["java.lang.Object"] },
    { "name": "java.lang.Error", "supertypes": ["java.lang.Throwable"] },
    { "name": "java.lang.AssertionError", "supertypes": ["java.lang.Error"] },
    { "name": "java.lang.OutOfMemoryError", "supertypes": ["java.lang.Error"] },
    { "name": "java.lang.StackOverflowError", "supertypes": ["java.lang.Error"] },
    { "name": "java.lang.Exception", "supertypes": ["java.lang.Throwable"] },
    { "name": "java.lang.RuntimeException", "supertypes": ["java.lang.Exception"] },
    { "name": "java.lang.NullPointerException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.IllegalArgumentException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.IllegalStateException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.IndexOutOfBoundsException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.ArrayIndexOutOfBoundsException", "supertypes": ["java.lang.IndexOutOfBoundsException"] },
    { "name": "java.lang.StringIndexOutOfBoundsException", "supertypes": ["java.lang.IndexOutOfBoundsException"] },
    { "name": "java.lang.NumberFormatException", "supertypes": ["java.lang.IllegalArgumentException"] },
    { "name": "java.lang.ClassCastException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.ArithmeticException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.UnsupportedOperationException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.NegativeArraySizeException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.ArrayStoreException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.lang.CloneNotSupportedException", "supertypes": ["java.lang.Exception"] },
    { "name": "java.lang.InterruptedException", "supertypes": ["java.lang.Exception"] },
    { "name": "java.lang.ReflectiveOperationException", "supertypes": ["java.lang.Exception"] },
    { "name": "java.lang.ClassNotFoundException", "supertypes": ["java.lang.ReflectiveOperationException"] },
    { "name": "java.io.IOException", "supertypes": ["java.lang.Exception"] },
    { "name": "java.io.FileNotFoundException", "supertypes": ["java.io.IOException"] },
    { "name": "java.io.UncheckedIOException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.io.EOFException", "supertypes": ["java.io.IOException"] },
    { "name": "java.io.InterruptedIOException", "supertypes": ["java.io.IOException"] },
    { "name": "java.io.UnsupportedEncodingException", "supertypes": ["java.io.IOException"] },
    { "name": "java.io.File", "supertypes": ["java.lang.Object"] },
    { "name": "java.io.InputStream", "supertypes": ["java.lang.Object"] },
    { "name": "java.io.OutputStream", "supertypes": ["java.lang.Object"] },
    { "name": "java.io.Reader", "supertypes": ["java.lang.Object"] },
    { "name": "java.io.Writer", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.Collection", "supertypes": ["java.lang.Iterable"] },
    { "name": "java.util.List", "supertypes": ["java.util.Collection"] },
    { "name": "java.util.ArrayList", "supertypes": ["java.util.List"] },
    { "name": "java.util.LinkedList", "supertypes": ["java.util.List"] },
    { "name": "java.util.Set", "supertypes": ["java.util.Collection"] },
    { "name": "java.util.HashSet", "supertypes": ["java.util.Set"] },
    { "name": "java.util.TreeSet", "supertypes": ["java.util.Set"] },
    { "name": "java.util.Map", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.HashMap", "supertypes": ["java.util.Map"] },
    { "name": "java.util.TreeMap", "supertypes": ["java.util.Map"] },
    { "name": "java.util.Optional", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.Iterator", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.Arrays", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.Objects", "supertypes": ["java.lang.Object"] },
    { "name": "java.util.NoSuchElementException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.util.ConcurrentModificationException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.util.MissingResourceException", "supertypes": ["java.lang.RuntimeException"] },
    { "name": "java.util.InputMismatchException", "supertypes": ["java.util.NoSuchElementException"] }
  ]
}
)";

/// Parse a known-types document:
/// { "types": [ { "name": "<qualified>", "supertypes": ["<qualified>", ...] } ] }
inline std::vector<IndexEntry> parse_known_types(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError,
                    std::string("known-types file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("types") || !doc["types"].is_array())
        throw Error(ErrorCode::SchemaError,
                    "known-types file must be an object with a \"types\" array");
    std::vector<IndexEntry> entries;
    for (std::size_t i = 0; i < doc["types"].size(); ++i) {
        const auto& t = doc["types"][i];
        std::string at = "$.types[" + std::to_string(i) + "]";
        if (!t.is_object() || !t.contains("name") || !t["name"].is_string())
            throw Error(ErrorCode::SchemaError, "entry needs a string \"name\"", at);
        IndexEntry entry;
        entry.qualified_name = t["name"].get<std::string>();
        entry.kind = IndexKind::Known;
        if (t.contains("supertypes")) {
            if (!t["supertypes"].is_array())
                throw Error(ErrorCode::SchemaError, "\"supertypes\" must be an array", at);
            for (const auto& s : t["supertypes"]) {
                if (!s.is_string())
                    throw Error(ErrorCode::SchemaError,
                                "\"supertypes\" entries must be strings", at);
                entry.super_types.push_back(s.get<std::string>());
            }
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

inline std::vector<IndexEntry> default_known_types() {
    return parse_known_types(kDefaultKnownTypesJson);
}

}  // namespace dscribe
