#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace officesim {

/// Malformed input text. Carries the 1-based line of the offending node when
/// it is known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what)
        , line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Well-formed input that violates a model invariant. All problems found are
/// collected so a single run reports every dangling id or bad field.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems))
    {
    }
    explicit ValidationError(const std::string& problem)
        : ValidationError(std::vector<std::string>{problem})
    {
    }
    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p)
    {
        std::string out;
        for (const auto& s : p) {
            if (!out.empty()) {
                out += "; ";
            }
            out += s;
        }
        return out;
    }
    std::vector<std::string> problems_;
};

/// Not enough desks for the requested population.
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside a function's mathematical domain (zero window, empty
/// range, ...).
class DomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace officesim
