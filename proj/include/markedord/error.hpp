#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace markedord {

/// Library error carrying a stable kind name and the labels that witness it.
/// `what()` renders as `Kind(w1,w2,...)`, which is also what the CLI prints.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::vector<std::string> witness = {})
        : std::runtime_error(render(kind, witness)), kind_(std::move(kind)), witness_(std::move(witness)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
    static std::string render(const std::string& kind, const std::vector<std::string>& witness) {
        std::string s = kind + "(";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) s += ",";
            s += witness[i];
        }
        return s + ")";
    }

    std::string kind_;
    std::vector<std::string> witness_;
};

/// Raised when a marking fails validation: MissingExtremes or NotOrderPreserving.
class InvalidMarking : public Error {
public:
    using Error::Error;
};

/// Malformed input document (bad JSON, wrong schema). Distinct from validation errors.
class ParseError : public Error {
public:
    explicit ParseError(std::string detail) : Error("ParseError", {std::move(detail)}) {}
};

} // namespace markedord
