#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscribe/project.hpp"

namespace {

void print_diagnostics(const dscribe::RunReport& report, const std::string& format) {
    for (const auto& d : report.diagnostics) {
        if (format == "json") {
            nlohmann::ordered_json j;
            j["severity"] = d.severity == dscribe::Severity::Error ? "error" : "warning";
            j["code"] = d.code;
            j["location"] = d.location;
            j["message"] = d.message;
            std::cerr << j.dump() << "\n";
        } else {
            std::cerr << (d.severity == dscribe::Severity::Error ? "error" : "warning")
                      << " [" << d.code << "]";
            if (!d.location.empty()) std::cerr << " " << d.location;
            std::cerr << ": " << d.message << "\n";
        }
    }
}

void print_report(const dscribe::RunReport& r, const std::string& format,
                  bool wrote_outputs) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["invocations_loaded"] = r.invocations_loaded;
        j["invocations_valid"] = r.invocations_valid;
        j["invocations_invalid"] = r.invocations_invalid;
        if (wrote_outputs) {
            j["tests_written"] = r.tests_written;
            j["doc_lines_written"] = r.doc_lines_written;
            j["files_touched"] = r.files_touched;
        }
        j["errors"] = r.has_errors();
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "invocations: " << r.invocations_loaded << " loaded, "
              << r.invocations_valid << " valid, " << r.invocations_invalid
              << " invalid\n";
    if (wrote_outputs) {
        std::cout << "tests written: " << r.tests_written << "\n"
                  << "doc lines written: " << r.doc_lines_written << "\n"
                  << "files touched: " << r.files_touched << "\n";
    }
    std::cout << (r.has_errors() ? "FAILED" : "OK") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dscribe: generate unit tests and doc fragments from templates"};
    app.require_subcommand(1);

    std::string config_path = "dscribe.json";
    std::string format = "text";
    bool lenient = false;
    app.add_option("--config", config_path, "path to dscribe.json")
        ->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--lenient", lenient, "downgrade recoverable errors to warnings");

    auto* check = app.add_subcommand("check", "validate templates and invocations");
    auto* generate = app.add_subcommand("generate", "write tests and doc fragments");
    auto* clean = app.add_subcommand("clean", "remove all generated output");
    auto* list = app.add_subcommand("list", "list available templates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        dscribe::ProjectConfig config = dscribe::load_config(config_path);
        if (lenient) config.lenient = true;

        dscribe::RunReport report;
        if (check->parsed()) {
            report = dscribe::cmd_check(config);
            print_diagnostics(report, format);
            print_report(report, format, false);
        } else if (generate->parsed()) {
            report = dscribe::cmd_generate(config);
            print_diagnostics(report, format);
            print_report(report, format, true);
        } else if (clean->parsed()) {
            report = dscribe::cmd_clean(config);
            print_diagnostics(report, format);
            print_report(report, format, true);
        } else if (list->parsed()) {
            std::string listing;
            report = dscribe::cmd_list(config, listing);
            print_diagnostics(report, format);
            if (!report.has_errors()) std::cout << listing;
        }
        return report.exit_code();
    } catch (const dscribe::Error& e) {
        std::cerr << "error [" << dscribe::error_code_name(e.code()) << "]";
        if (!e.location().empty()) std::cerr << " " << e.location();
        std::cerr << ": " << e.message() << "\n";
        return e.code() == dscribe::ErrorCode::ConfigError ? 2 : 1;
    }
}
