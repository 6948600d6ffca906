#include "xnmr/repl.hpp"

#include "xnmr/errors.hpp"
#include "xnmr/xgf.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace xnmr {

namespace {

constexpr std::string_view help_text =
    "commands:\n"
    "  :load <path>        replace the program with the clauses in <path>\n"
    "  :add <clause>       append one clause\n"
    "  :mode <m>           set the answer mode (wfs, brave, cautious, models)\n"
    "  :max <n>            show at most <n> models\n"
    "  :residual <query>   print the residual program as XGF\n"
    "  :models <query>     print partial stable models\n"
    "  ?- <query>.         answer a query in the current mode (the ?- is optional)\n"
    "  :help               this text\n"
    "  :quit               leave\n";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error("cannot read " + path);
    return ss.str();
}

std::optional<std::size_t> positive_count(std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0) return std::nullopt;
    return v;
}

Response ok(std::string text) { return {std::move(text), {}, false}; }
Response fail(std::string text) { return {{}, std::move(text) + "\n", false}; }

Response answer(Session& session, std::string_view text, const QueryOptions& options) {
    const Query query = parse_query(text);
    QueryResult result = query_answer(session.program, query, options);
    std::string out = render(result);
    session.last = std::move(result);
    return ok(std::move(out));
}

Response dispatch(Session& session, std::string_view line) {
    if (line.empty() || line.front() == '%') return {};
    if (line.front() != ':') return answer(session, line, session.options());

    const auto space = line.find_first_of(" \t");
    const std::string_view command = line.substr(0, space);
    const std::string_view arg = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

    if (command == ":quit") return {{}, {}, true};
    if (command == ":help") return ok(std::string(help_text));
    if (command == ":mode") {
        const auto mode = parse_mode(arg);
        if (!mode) return fail("unknown mode '" + std::string(arg) + "' (expected wfs, brave, cautious or models)");
        session.mode = *mode;
        return ok("mode: " + std::string(to_string(*mode)) + "\n");
    }
    if (command == ":max") {
        const auto n = positive_count(arg);
        if (!n) return fail("expected a positive model count, got '" + std::string(arg) + "'");
        session.max_models = *n;
        return ok("max_models: " + std::to_string(*n) + "\n");
    }
    if (command == ":load") {
        if (arg.empty()) return fail("usage: :load <path>");
        const std::string path(arg);
        Program program = load_program(path);
        const std::size_t n = program.rules.size();
        session.program = std::move(program);
        session.last.reset();
        return ok("loaded " + std::to_string(n) + " clauses from " + path + "\n");
    }
    if (command == ":add") {
        Program clause = parse_program(arg);
        if (clause.rules.size() != 1) return fail("expected exactly one clause");
        session.program.append(clause);
        session.last.reset();
        return ok("ok\n");
    }
    if (command == ":residual") {
        const Pipeline p = run_pipeline(session.program, parse_query(arg), session.limits);
        return ok(emit_xgf(p.residual));
    }
    if (command == ":models") {
        QueryOptions options = session.options();
        options.mode = Mode::Models;
        return answer(session, arg, options);
    }
    return fail("unknown command '" + std::string(command) + "' (try :help)");
}

} // namespace

Program load_program(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_program(text);
    } catch (const SyntaxError& e) {
        throw SyntaxError(e.line(), e.column(), e.message() + " in " + path);
    }
}

Response execute_command(Session& session, std::string_view line) {
    // Commands mutate a copy, committed only on success.
    Session next = session;
    Response r;
    try {
        r = dispatch(next, trim(line));
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    if (r.err.empty()) session = std::move(next);
    return r;
}

void run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
    std::string line;
    for (;;) {
        if (interactive) out << prompt << std::flush;
        if (!std::getline(in, line)) break;
        const Response r = execute_command(session, line);
        out << r.out;
        err << r.err;
        out.flush();
        if (r.quit) break;
    }
    if (interactive) out << "\n";
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Query-driven well-founded and stable model exploration of normal logic programs", "xnmr"};
    std::vector<std::string> files;
    std::string query_text;
    std::string mode_text = "models";
    std::size_t max_models = 10;
    std::string residual_path;
    std::size_t max_atoms = ResourceLimits{}.max_ground_atoms;
    bool batch = false;

    app.add_option("files", files, "program files (.lp)");
    app.add_option("--query,-q", query_text, "query to answer");
    app.add_option("--mode,-m", mode_text, "wfs, brave, cautious or models")
        ->check(CLI::IsMember({"wfs", "brave", "cautious", "models"}));
    app.add_option("--max-models", max_models, "maximum number of models to print")->check(CLI::PositiveNumber);
    app.add_option("--emit-residual", residual_path, "write the residual program as XGF")->needs("--query");
    app.add_option("--max-ground-atoms", max_atoms, "grounding limit")->check(CLI::PositiveNumber);
    app.add_flag("--batch", batch, "read commands from standard input without prompting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "xnmr: " << e.what() << "\n";
        return 1;
    }

    Session session;
    session.mode = *parse_mode(mode_text);
    session.max_models = max_models;
    session.limits.max_ground_atoms = max_atoms;

    try {
        for (const std::string& f : files) session.program.append(load_program(f));

        if (!app.count("--query")) {
            run_repl(session, in, out, err, !batch);
            return 0;
        }
        const Query query = parse_query(query_text);
        if (!residual_path.empty()) {
            const Pipeline p = run_pipeline(session.program, query, session.limits);
            std::ofstream f(residual_path, std::ios::binary);
            f << emit_xgf(p.residual);
            if (!f.flush()) {
                err << "xnmr: cannot write " << residual_path << "\n";
                return 1;
            }
        }
        out << render(query_answer(session.program, query, session.options()));
        return 0;
    } catch (const SafetyError& e) {
        err << "xnmr: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitExceeded& e) {
        err << "xnmr: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "xnmr: " << e.what() << "\n";
        return 1;
    }
}

} // namespace xnmr
