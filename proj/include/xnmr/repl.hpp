#pragma once

// Interactive top loop and the batch command line.

#include "xnmr/query.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace xnmr {

struct Session {
    Program program;
    Mode mode = Mode::Models;
    std::size_t max_models = 10;
    ResourceLimits limits;
    std::optional<QueryResult> last;

    QueryOptions options() const { return {mode, max_models, limits}; }
};

struct Response {
    std::string out;  // results
    std::string err;  // diagnostics
    bool quit = false;
};

/// Executes one input line. Failed commands leave the session untouched and
/// report through Response::err; no exception escapes.
Response execute_command(Session& session, std::string_view line);

/// Reads and parses one `.lp` file. Throws Error subclasses; an unreadable
/// file raises a plain Error with message `cannot read <path>`.
Program load_program(const std::string& path);

inline constexpr std::string_view prompt = "xnmr> ";

/// Runs the top loop over `in` until EOF or `:quit`; prompts when interactive.
void run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err, bool interactive);

/// Entry point of the `xnmr` executable. Exit codes: 0 success, 1 usage or
/// parse error, 2 safety error, 3 resource limit exceeded.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace xnmr
