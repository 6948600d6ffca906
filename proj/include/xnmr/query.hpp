#pragma once

// Query answering: relevant grounding, well-founded model, residual, and
// stable completions of the residual, combined per answer substitution.

#include "xnmr/stable.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xnmr {

enum class Mode { Wfs, Brave, Cautious, Models };

const char* to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

struct QueryOptions {
    Mode mode = Mode::Models;
    std::size_t max_models = 10;
    ResourceLimits limits;
};

/// The intermediate artifacts of one query.
struct Pipeline {
    GroundProgram ground;
    WfsResult wfs;
    ResidualProgram residual;
};

Pipeline run_pipeline(const Program& program, const Query& query, const ResourceLimits& limits = {});

struct Answer {
    // Query variable -> constant, in first-occurrence order.
    std::vector<std::pair<std::string, std::string>> bindings;
    // The query with the bindings applied, e.g. `win(2)`.
    std::string text;
    Truth truth = Truth::False;
    // 1-based positions in QueryResult::models; only filled for undefined answers.
    std::vector<std::size_t> holds_in;
    std::vector<std::size_t> fails_in;
};

struct QueryResult {
    Mode mode = Mode::Models;
    std::vector<Answer> answers;
    // Whether stable completions of the residual were computed at all.
    bool enumerated = false;
    // Partial stable models (WFS-true atoms plus one residual model) as sorted
    // atom texts, internal atoms omitted.
    std::vector<std::vector<std::string>> models;
    // Models mode only: more models exist beyond max_models.
    bool truncated = false;
    std::size_t residual_atoms = 0;

    /// Mode-dependent verdict word for one answer.
    std::string verdict(const Answer& a) const;
    std::size_t count(Truth t) const;
};

/// Throws ResourceLimitExceeded or InternalPredicateClash.
QueryResult query_answer(const Program& program, const Query& query, const QueryOptions& options = {});

/// Human-readable rendering, one `<answer>: <verdict>` line per answer.
std::string render(const QueryResult& result);

/// `{a, b, c}`
std::string render_model(const std::vector<std::string>& atoms);

} // namespace xnmr
