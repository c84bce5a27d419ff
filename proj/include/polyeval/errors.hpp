#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace polyeval {

// Base for all typed failures. name() is the stable identifier the CLI prints
// on stderr before exiting with status 3.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

struct InsufficientInputPrecision : Error {
    explicit InsufficientInputPrecision(const std::string& msg)
        : Error("InsufficientInputPrecision", msg) {}
};

struct DegenerateDivisor : Error {
    explicit DegenerateDivisor(const std::string& msg) : Error("DegenerateDivisor", msg) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error("PrecisionExhausted", msg) {}
};

struct NotMonic : Error {
    explicit NotMonic(const std::string& msg) : Error("NotMonic", msg) {}
};

struct ZeroDivisor : Error {
    explicit ZeroDivisor(const std::string& msg) : Error("ZeroDivisor", msg) {}
};

struct CoincidentPoints : Error {
    explicit CoincidentPoints(const std::string& msg) : Error("CoincidentPoints", msg) {}
};

struct EvaluationUndecidable : Error {
    explicit EvaluationUndecidable(const std::string& msg) : Error("EvaluationUndecidable", msg) {}
};

// Input-file syntax/structure problem; carries a 1-based line number (0 = n/a).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error("ParseError", line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Doubling cap shared by every internal escalation loop.
// Overridable through POLYEVAL_ESCALATION_CAP.
inline int escalation_cap() {
    if (const char* s = std::getenv("POLYEVAL_ESCALATION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end && *end == '\0' && v >= 0 && v <= 64) return static_cast<int>(v);
    }
    return 6;
}

}  // namespace polyeval
