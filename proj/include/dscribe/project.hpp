#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dscribe/diagnostics.hpp"
#include "dscribe/doc_generation.hpp"
#include "dscribe/invocation_store.hpp"
#include "dscribe/known_types.hpp"
#include "dscribe/source_model.hpp"
#include "dscribe/template_catalog.hpp"
#include "dscribe/test_generation.hpp"

namespace dscribe {

namespace fs = std::filesystem;

struct ProjectConfig {
    std::vector<fs::path> source_roots;
    fs::path templates_dir;
    std::vector<std::string> invocations;  // file paths or globs
    fs::path gen_tests_dir;
    std::optional<fs::path> known_types_path;
    bool lenient = false;
};

struct RunReport {
    int invocations_loaded = 0;
    int invocations_valid = 0;
    int invocations_invalid = 0;
    int tests_written = 0;
    int doc_lines_written = 0;
    int files_touched = 0;
    std::vector<Diagnostic> diagnostics;

    bool has_errors() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) return true;
        return false;
    }
    int exit_code() const { return has_errors() ? 1 : 0; }
};

namespace project_detail {

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

inline bool path_contains(const fs::path& outer, const fs::path& inner) {
    auto o = fs::weakly_canonical(outer);
    auto i = fs::weakly_canonical(inner);
    auto oit = o.begin();
    auto iit = i.begin();
    for (; oit != o.end(); ++oit, ++iit) {
        if (iit == i.end() || *oit != *iit) return false;
    }
    return true;
}

// '*' wildcard matching on the filename component only.
inline bool wildcard_match(std::string_view pattern, std::string_view name) {
    std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline std::vector<fs::path> expand_invocation_entry(const std::string& entry,
                                                     const fs::path& base) {
    fs::path pattern = fs::path(entry).is_absolute() ? fs::path(entry) : base / entry;
    std::string fname = pattern.filename().string();
    if (fname.find('*') == std::string::npos) return {pattern};
    std::vector<fs::path> out;
    fs::path dir = pattern.parent_path();
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && wildcard_match(fname, e.path().filename().string()))
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace project_detail

/// Load dscribe.json. Relative paths resolve against the config file's
/// directory. gen_tests_dir must be disjoint from every source root.
inline ProjectConfig load_config(const fs::path& config_path) {
    std::string text;
    try {
        text = project_detail::read_file(config_path);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, e.message(), config_path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what(),
                    config_path.string());
    }
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw Error(ErrorCode::ConfigError, msg, config_path.string());
    };
    require(doc.is_object(), "config must be a JSON object");
    fs::path base = config_path.parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path path(p);
        return path.is_absolute() ? path : base / path;
    };
    ProjectConfig cfg;
    require(doc.contains("source_roots") && doc["source_roots"].is_array(),
            "\"source_roots\" must be an array of directories");
    for (const auto& r : doc["source_roots"]) {
        require(r.is_string(), "\"source_roots\" entries must be strings");
        cfg.source_roots.push_back(resolve(r.get<std::string>()));
    }
    require(doc.contains("templates_dir") && doc["templates_dir"].is_string(),
            "\"templates_dir\" must be a string");
    cfg.templates_dir = resolve(doc["templates_dir"].get<std::string>());
    require(doc.contains("invocations") && doc["invocations"].is_array(),
            "\"invocations\" must be an array of paths or globs");
    for (const auto& r : doc["invocations"]) {
        require(r.is_string(), "\"invocations\" entries must be strings");
        cfg.invocations.push_back(resolve(r.get<std::string>()).string());
    }
    require(doc.contains("gen_tests_dir") && doc["gen_tests_dir"].is_string(),
            "\"gen_tests_dir\" must be a string");
    cfg.gen_tests_dir = resolve(doc["gen_tests_dir"].get<std::string>());
    if (doc.contains("known_types_path")) {
        require(doc["known_types_path"].is_string(),
                "\"known_types_path\" must be a string");
        cfg.known_types_path = resolve(doc["known_types_path"].get<std::string>());
    }
    if (doc.contains("lenient")) {
        require(doc["lenient"].is_boolean(), "\"lenient\" must be a boolean");
        cfg.lenient = doc["lenient"].get<bool>();
    }
    for (const auto& root : cfg.source_roots) {
        if (project_detail::path_contains(root, cfg.gen_tests_dir) ||
            project_detail::path_contains(cfg.gen_tests_dir, root))
            throw Error(ErrorCode::ConfigError,
                        "gen_tests_dir must be disjoint from every source root",
                        config_path.string());
    }
    return cfg;
}

/// Everything parsed and resolved for one run. Units are heap-allocated so
/// index/catalog pointers stay stable.
struct ProjectState {
    std::vector<std::unique_ptr<SourceUnit>> source_units;
    std::vector<std::unique_ptr<SourceUnit>> template_units;
    std::vector<const SourceUnit*> source_unit_ptrs;
    Catalog catalog;
    bool catalog_ok = false;
    ClassIndex index;
    bool index_ok = false;
    std::vector<Invocation> invocations;
    std::vector<std::optional<InvocationContext>> contexts;  // nullopt = invalid
};

namespace project_detail {

inline std::vector<fs::path> java_files_under(const fs::path& root) {
    std::vector<fs::path> files;
    if (!fs::exists(root)) return files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

inline void parse_tree(const std::vector<fs::path>& files,
                       std::vector<std::unique_ptr<SourceUnit>>& into,
                       RunReport& report) {
    for (const auto& path : files) {
        try {
            std::string text = read_file(path);
            into.push_back(
                std::make_unique<SourceUnit>(parse_unit(text, path.string())));
        } catch (const Error& e) {
            report.diagnostics.push_back(diagnostic_from(e));
        }
    }
}

}  // namespace project_detail

/// Parse sources/templates, build catalog and index, load and resolve all
/// invocations. Shared by every command; writes nothing.
inline ProjectState analyze(const ProjectConfig& config, RunReport& report,
                            bool need_templates = true) {
    ProjectState state;
    using namespace project_detail;

    std::vector<fs::path> source_files;
    for (const auto& root : config.source_roots) {
        auto files = java_files_under(root);
        source_files.insert(source_files.end(), files.begin(), files.end());
    }
    parse_tree(source_files, state.source_units, report);
    for (const auto& u : state.source_units)
        state.source_unit_ptrs.push_back(u.get());

    if (need_templates) {
        parse_tree(java_files_under(config.templates_dir), state.template_units, report);
        std::vector<const SourceUnit*> tmpl_ptrs;
        for (const auto& u : state.template_units) tmpl_ptrs.push_back(u.get());
        try {
            state.catalog = load_catalog(tmpl_ptrs);
            state.catalog_ok = true;
        } catch (const Error& e) {
            report.diagnostics.push_back(diagnostic_from(e));
        }
    } else {
        state.catalog_ok = true;
    }

    try {
        std::string known_json = config.known_types_path
                                     ? read_file(*config.known_types_path)
                                     : std::string(kDefaultKnownTypesJson);
        state.index = build_class_index(state.source_unit_ptrs,
                                        parse_known_types(known_json));
        state.index_ok = true;
    } catch (const Error& e) {
        report.diagnostics.push_back(diagnostic_from(e));
    }

    std::vector<Invocation> loaded;
    for (const auto& entry : config.invocations) {
        for (const auto& path : expand_invocation_entry(entry, fs::current_path())) {
            try {
                auto list = load_invocations(read_file(path));
                loaded.insert(loaded.end(), list.begin(), list.end());
            } catch (const Error& e) {
                report.diagnostics.push_back(
                    {Severity::Error, path.string() + " " + e.location(),
                     error_code_name(e.code()), e.message()});
            }
        }
    }
    loaded = dedupe_invocations(std::move(loaded), &report.diagnostics);
    report.invocations_loaded = static_cast<int>(loaded.size());

    for (std::size_t i = 0; i < loaded.size(); ++i) {
        const Invocation& inv = loaded[i];
        if (!state.catalog_ok || !state.index_ok) {
            state.contexts.emplace_back(std::nullopt);
            ++report.invocations_invalid;
            continue;
        }
        try {
            state.contexts.emplace_back(resolve_context(inv, state.catalog, state.index,
                                                        state.source_unit_ptrs,
                                                        config.lenient,
                                                        &report.diagnostics));
            ++report.invocations_valid;
        } catch (const Error& e) {
            state.contexts.emplace_back(std::nullopt);
            ++report.invocations_invalid;
            std::string loc = "invocation #" + std::to_string(i) + " (" +
                              inv.signature.display() + ")";
            if (!e.location().empty()) loc += " " + e.location();
            report.diagnostics.push_back(
                {Severity::Error, loc, error_code_name(e.code()), e.message()});
        }
    }
    state.invocations = std::move(loaded);
    return state;
}

/// Validate only: parse, load, resolve. Writes nothing.
inline RunReport cmd_check(const ProjectConfig& config) {
    RunReport report;
    analyze(config, report);
    return report;
}

namespace project_detail {

inline void generate_outputs(const ProjectConfig& config, ProjectState& state,
                             RunReport& report) {
    // tests
    std::vector<GeneratedTest> tests;
    std::map<std::string, std::set<std::string>> used_names;
    std::map<const MethodDecl*, std::vector<Fragment>> by_focal;
    for (const auto& ctx : state.contexts) {
        if (!ctx) continue;
        try {
            tests.push_back(instantiate_test(*ctx, &used_names, &report.diagnostics));
            by_focal[ctx->focal].push_back(instantiate_fragment(*ctx));
        } catch (const Error& e) {
            report.diagnostics.push_back(diagnostic_from(e));
        }
    }
    report.tests_written = static_cast<int>(tests.size());
    WriteReport wr = write_generated_folder(group_tests(std::move(tests)),
                                            config.gen_tests_dir);
    report.files_touched += wr.files_touched();

    // docs: aggregate per focal method, render, integrate
    std::map<const MethodDecl*, std::vector<std::string>> lines_by_method;
    for (auto& [method, frags] : by_focal) {
        std::vector<std::string> lines;
        for (const AggregatedFragment& agg : aggregate(frags))
            lines.push_back(render(agg));
        std::sort(lines.begin(), lines.end());
        report.doc_lines_written += static_cast<int>(lines.size());
        lines_by_method[method] = std::move(lines);
    }
    for (const auto& unit : state.source_units) {
        std::string rewritten = integrate_file(*unit, lines_by_method);
        if (rewritten != unit->raw_text) {
            write_file(unit->path, rewritten);
            ++report.files_touched;
        }
    }
}

}  // namespace project_detail

/// The full pipeline: check, instantiate, write the generated folder,
/// rewrite doc comments. Invalid invocations are skipped; valid ones
/// proceed. The folder guard aborts before any write.
inline RunReport cmd_generate(const ProjectConfig& config) {
    RunReport report;
    ProjectState state = analyze(config, report);
    try {
        project_detail::generate_outputs(config, state, report);
    } catch (const Error& e) {
        report.diagnostics.push_back(diagnostic_from(e));
    }
    return report;
}

/// generate with an empty invocation set: empties the generated folder and
/// strips every @dscribe tag. Does not require templates to load.
inline RunReport cmd_clean(ProjectConfig config) {
    config.invocations.clear();
    RunReport report;
    ProjectState state = analyze(config, report, /*need_templates=*/false);
    try {
        project_detail::generate_outputs(config, state, report);
    } catch (const Error& e) {
        report.diagnostics.push_back(diagnostic_from(e));
    }
    return report;
}

/// Human-readable description of a fragment template, placeholders intact.
inline std::string render_description_pattern(const FragmentTemplate& d) {
    if (d.whole_freeform) return *d.whole_freeform;
    auto part = [](const StatementPart& p) {
        if (p.structured)
            return p.triple.subject + " " + p.triple.relation + " " + p.triple.object;
        return p.freeform;
    };
    return "If " + part(*d.condition) + ", then " + part(*d.consequence) + ".";
}

/// Catalog listing: name, placeholders, description. Stable order.
inline RunReport cmd_list(const ProjectConfig& config, std::string& listing) {
    RunReport report;
    std::vector<fs::path> files = project_detail::java_files_under(config.templates_dir);
    std::vector<std::unique_ptr<SourceUnit>> units;
    project_detail::parse_tree(files, units, report);
    std::vector<const SourceUnit*> ptrs;
    for (const auto& u : units) ptrs.push_back(u.get());
    Catalog catalog;
    try {
        catalog = load_catalog(ptrs);
    } catch (const Error& e) {
        report.diagnostics.push_back(diagnostic_from(e));
        return report;
    }
    std::ostringstream out;
    out << catalog.templates.size() << " template"
        << (catalog.templates.size() == 1 ? "" : "s") << "\n";
    for (const Template& t : catalog.templates) {
        out << t.name;
        if (!t.placeholders.empty()) {
            out << " — ";
            for (std::size_t i = 0; i < t.placeholders.size(); ++i) {
                if (i) out << ", ";
                out << t.placeholders[i].name << ":"
                    << placeholder_type_name(t.placeholders[i].ptype);
            }
        }
        out << "\n    " << render_description_pattern(t.description) << "\n";
    }
    listing = out.str();
    return report;
}

}  // namespace dscribe
