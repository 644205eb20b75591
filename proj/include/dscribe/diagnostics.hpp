#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dscribe {

enum class ErrorCode {
    SyntaxError,
    DuplicateType,
    CyclicHierarchy,
    UnresolvedType,
    UnknownHierarchy,
    FocalMethodNotFound,
    AmbiguousFocalMethod,
    MissingTypesAnnotation,
    DuplicateTemplateName,
    BadPlaceholderType,
    UnusedPlaceholder,
    MalformedDescription,
    SchemaError,
    UnsupportedVersion,
    UnknownTemplate,
    MissingPlaceholderValue,
    ExtraPlaceholderValue,
    NotThrowable,
    BadIdentifier,
    ExprSyntaxError,
    IdentifierCollision,
    ResyntaxError,
    GuardError,
    ConfigError,
    IoError,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::DuplicateType: return "DuplicateType";
        case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
        case ErrorCode::UnresolvedType: return "UnresolvedType";
        case ErrorCode::UnknownHierarchy: return "UnknownHierarchy";
        case ErrorCode::FocalMethodNotFound: return "FocalMethodNotFound";
        case ErrorCode::AmbiguousFocalMethod: return "AmbiguousFocalMethod";
        case ErrorCode::MissingTypesAnnotation: return "MissingTypesAnnotation";
        case ErrorCode::DuplicateTemplateName: return "DuplicateTemplateName";
        case ErrorCode::BadPlaceholderType: return "BadPlaceholderType";
        case ErrorCode::UnusedPlaceholder: return "UnusedPlaceholder";
        case ErrorCode::MalformedDescription: return "MalformedDescription";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
        case ErrorCode::UnknownTemplate: return "UnknownTemplate";
        case ErrorCode::MissingPlaceholderValue: return "MissingPlaceholderValue";
        case ErrorCode::ExtraPlaceholderValue: return "ExtraPlaceholderValue";
        case ErrorCode::NotThrowable: return "NotThrowable";
        case ErrorCode::BadIdentifier: return "BadIdentifier";
        case ErrorCode::ExprSyntaxError: return "ExprSyntaxError";
        case ErrorCode::IdentifierCollision: return "IdentifierCollision";
        case ErrorCode::ResyntaxError: return "ResyntaxError";
        case ErrorCode::GuardError: return "GuardError";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

/// Exception thrown by all dscribe operations. `location` is a free-form
/// position string: "file:line:col", a JSON path, or a placeholder name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string location = {})
        : std::runtime_error(format(code, message, location)),
          code_(code),
          message_(std::move(message)),
          location_(std::move(location)) {}

    ErrorCode code() const { return code_; }
    const std::string& message() const { return message_; }
    const std::string& location() const { return location_; }

private:
    static std::string format(ErrorCode code, const std::string& message,
                              const std::string& location) {
        std::string out = error_code_name(code);
        if (!location.empty()) {
            out += " at ";
            out += location;
        }
        out += ": ";
        out += message;
        return out;
    }

    ErrorCode code_;
    std::string message_;
    std::string location_;
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string location;
    std::string code;
    std::string message;
};

inline Diagnostic diagnostic_from(const Error& e, Severity sev = Severity::Error) {
    return Diagnostic{sev, e.location(), error_code_name(e.code()), e.message()};
}

}  // namespace dscribe
