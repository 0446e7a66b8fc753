#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coprime {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's stated domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Unusable runtime configuration: empty pool, range too small, bad config file.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Structurally valid input violating a content rule (duplicate ids, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed input text. `line` is 1-based; 0 means not line-oriented.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(line ? "line " + std::to_string(line) + ": " + reason : reason), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

// A bounded search ran out of attempts.
class ExhaustionError : public Error {
public:
    ExhaustionError(const std::string& what, std::uint64_t attempts, std::uint64_t candidate_tests = 0)
        : Error(what), attempts_(attempts), candidate_tests_(candidate_tests) {}

    std::uint64_t attempts() const { return attempts_; }
    std::uint64_t candidate_tests() const { return candidate_tests_; }

private:
    std::uint64_t attempts_ = 0;
    std::uint64_t candidate_tests_ = 0;
};

}  // namespace coprime
