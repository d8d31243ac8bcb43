#pragma once

#include <stdexcept>
#include <string>

namespace compactor {

// Input violates an operation's precondition.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Instance exceeds a hard size guard of a desk-scale routine.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed external input (edge lists, compactor files).
struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, long line) : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_no(line) {}
    explicit parse_error(const std::string& msg) : std::runtime_error(msg), line_no(-1) {}
    long line_no;
};

// The replacement loop made no progress; distinct from a null verdict.
struct stalled_error : std::runtime_error {
    explicit stalled_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A pipeline stage could not produce its artifact (never a wrong answer).
struct pipeline_error : std::runtime_error {
    explicit pipeline_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An invariant the pipeline guarantees was observed broken.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace compactor
