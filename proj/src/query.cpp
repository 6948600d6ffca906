#include "xnmr/query.hpp"

#include <algorithm>
#include <map>

namespace xnmr {

const char* to_string(Mode m) noexcept {
    switch (m) {
        case Mode::Wfs:      return "wfs";
        case Mode::Brave:    return "brave";
        case Mode::Cautious: return "cautious";
        case Mode::Models:   return "models";
    }
    return "models";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
    for (Mode m : {Mode::Wfs, Mode::Brave, Mode::Cautious, Mode::Models}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

Pipeline run_pipeline(const Program& program, const Query& query, const ResourceLimits& limits) {
    Pipeline p;
    p.ground = relevant_ground(program, query, limits);
    p.wfs = well_founded(p.ground);
    p.residual = extract_residual(p.ground, p.wfs);
    return p;
}

std::string QueryResult::verdict(const Answer& a) const {
    if (a.truth != Truth::Undefined || mode == Mode::Wfs || mode == Mode::Models) return to_string(a.truth);
    if (mode == Mode::Brave) return a.holds_in.empty() ? "brave-false" : "brave-true";
    return !models.empty() && a.fails_in.empty() ? "cautious-true" : "cautious-false";
}

std::size_t QueryResult::count(Truth t) const {
    return static_cast<std::size_t>(
        std::count_if(answers.begin(), answers.end(), [t](const Answer& a) { return a.truth == t; }));
}

namespace {

std::vector<std::string> answer_args(const std::string& text) {
    std::vector<std::string> args;
    const std::size_t open = text.find('(');
    if (open == std::string::npos) return args;
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = inner.find(',', start);
        args.push_back(inner.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return args;
}

std::string instantiate(const Query& query, const std::map<std::string, std::string>& binding) {
    Query q = query;
    for (Literal& lit : q.literals) {
        for (Term& t : lit.atom.args) {
            if (t.is_variable()) t = Term::constant(binding.at(t.text));
        }
    }
    return to_string(q);
}

bool internal(const std::string& text) { return text.rfind("__", 0) == 0; }

} // namespace

QueryResult query_answer(const Program& program, const Query& query, const QueryOptions& options) {
    const Pipeline p = run_pipeline(program, query, options.limits);
    const std::vector<std::string> vars = query.variables();

    QueryResult result;
    result.mode = options.mode;
    result.residual_atoms = p.residual.atoms.size();

    // Residual ids of answer atoms, 0 when the answer is settled by the WFS.
    std::vector<AtomId> residual_ids;
    for (AtomId id : p.ground.query_atoms) {
        const std::string& text = p.ground.atoms.text(id);
        const std::vector<std::string> args = answer_args(text);
        Answer a;
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            a.bindings.emplace_back(vars[i], args.at(i));
            binding[vars[i]] = args[i];
        }
        a.text = instantiate(query, binding);
        a.truth = p.wfs.truth(id);
        result.answers.push_back(std::move(a));
        residual_ids.push_back(p.residual.atoms.find(text).value_or(0));
    }

    if (options.mode == Mode::Wfs || p.residual.empty()) return result;

    std::vector<StableModel> models;
    if (options.mode == Mode::Models) {
        models = enumerate_stable(p.residual, options.max_models + 1);
        if (models.size() > options.max_models) {
            models.resize(options.max_models);
            result.truncated = true;
        }
    } else {
        models = enumerate_stable(p.residual);
    }
    result.enumerated = true;

    for (const StableModel& m : models) {
        std::vector<std::string> atoms;
        for (AtomId id : p.wfs.true_set) {
            if (!internal(p.ground.atoms.text(id))) atoms.push_back(p.ground.atoms.text(id));
        }
        for (AtomId id : m.true_atoms) {
            if (!internal(p.residual.atoms.text(id))) atoms.push_back(p.residual.atoms.text(id));
        }
        std::sort(atoms.begin(), atoms.end());
        result.models.push_back(std::move(atoms));
    }

    for (std::size_t i = 0; i < result.answers.size(); ++i) {
        Answer& a = result.answers[i];
        if (a.truth != Truth::Undefined) continue;
        for (std::size_t k = 0; k < models.size(); ++k) {
            const AtomSet& t = models[k].true_atoms;
            const bool holds = std::binary_search(t.begin(), t.end(), residual_ids[i]);
            (holds ? a.holds_in : a.fails_in).push_back(k + 1);
        }
    }
    return result;
}

std::string render_model(const std::vector<std::string>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += atoms[i];
    }
    return out + "}";
}

namespace {
std::string index_list(const std::vector<std::size_t>& xs) {
    if (xs.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    return out;
}
} // namespace

std::string render(const QueryResult& result) {
    std::string out;
    if (result.answers.empty()) out += "no answers\n";
    for (const Answer& a : result.answers) {
        out += a.text + ": " + result.verdict(a) + "\n";
        if (result.mode == Mode::Models && result.enumerated && a.truth == Truth::Undefined) {
            out += "  holds in models: " + index_list(a.holds_in) + "\n";
            out += "  fails in models: " + index_list(a.fails_in) + "\n";
        }
    }
    if (result.enumerated && result.models.empty()) out += "no stable completion\n";
    if (result.mode == Mode::Models) {
        for (std::size_t k = 0; k < result.models.size(); ++k) {
            out += "model " + std::to_string(k + 1) + ": " + render_model(result.models[k]) + "\n";
        }
        if (result.truncated) out += "more models not shown (raise :max)\n";
    }
    return out;
}

} // namespace xnmr
