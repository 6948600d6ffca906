// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "golden_cases.hpp"
#include "support.hpp"

#include "xnmr/oracle.hpp"
#include "xnmr/query.hpp"
#include "xnmr/stable.hpp"
#include "xnmr/xgf.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>

using namespace xnmr;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned bounds.
constexpr std::size_t corpus_size = 500;
constexpr std::size_t relevance_trials = 100;
constexpr double stable_budget_s = 60.0;
constexpr double smoke_budget_s = 5.0;
constexpr std::size_t smoke_nodes = 150;
constexpr std::size_t smoke_edges = 600;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(std::string why) {
        if (ok) detail = std::move(why);
        ok = false;
    }
};

std::vector<GroundProgram> ground_corpus() {
    test::Rng rng(20240601);
    std::vector<GroundProgram> out;
    for (std::size_t i = 0; i < corpus_size; ++i) out.push_back(test::random_ground(rng, 12, 20));
    return out;
}

std::set<std::vector<std::string>> model_texts(const AtomTable& atoms, const std::vector<StableModel>& ms) {
    std::set<std::vector<std::string>> out;
    for (const StableModel& m : ms) out.insert(test::names(atoms, m.true_atoms));
    return out;
}

Outcome stable_equivalence() {
    test::Rng rng(1);
    const auto t0 = Clock::now();
    Outcome o;
    for (std::size_t i = 0; i < corpus_size; ++i) {
        const ResidualProgram rp = test::random_residual(rng, 12, 20);
        std::vector<StableModel> got = enumerate_stable(rp);
        std::sort(got.begin(), got.end());
        if (got != oracle::brute_force_stable(rp)) o.fail("mismatch on program " + std::to_string(i));
    }
    const double s = seconds_since(t0);
    if (s >= stable_budget_s) o.fail("took " + std::to_string(s) + " s");
    if (o.ok) o.detail = std::to_string(corpus_size) + " programs in " + std::to_string(s) + " s";
    return o;
}

Outcome wfs_equivalence(const std::vector<GroundProgram>& corpus) {
    Outcome o;
    std::size_t with_models = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GroundProgram& gp = corpus[i];
        const WfsResult w = well_founded(gp);
        if (!(w == oracle::brute_force_wfs(gp))) o.fail("mismatch on program " + std::to_string(i));
        const auto models = oracle::brute_force_stable(gp);
        with_models += !models.empty();
        for (const StableModel& m : models) {
            const AtomSet& t = m.true_atoms;
            const bool lower = std::includes(t.begin(), t.end(), w.true_set.begin(), w.true_set.end());
            const bool disjoint = std::none_of(w.false_set.begin(), w.false_set.end(),
                                               [&](AtomId a) { return std::binary_search(t.begin(), t.end(), a); });
            if (!lower || !disjoint) o.fail("WFS not contained in a stable model of program " + std::to_string(i));
        }
    }
    if (o.ok) o.detail = std::to_string(corpus.size()) + " programs, " + std::to_string(with_models) + " with stable models";
    return o;
}

// {true_set ∪ M} over residual models, as texts.
std::set<std::vector<std::string>> completions(const GroundProgram& gp, const WfsResult& w, const ResidualProgram& rp) {
    std::set<std::vector<std::string>> out;
    for (const StableModel& m : enumerate_stable(rp)) {
        std::vector<std::string> texts = test::names(gp.atoms, w.true_set);
        for (const std::string& t : test::names(rp.atoms, m.true_atoms)) texts.push_back(t);
        std::sort(texts.begin(), texts.end());
        out.insert(std::move(texts));
    }
    return out;
}

Outcome residual_faithfulness(const std::vector<GroundProgram>& corpus) {
    Outcome o;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GroundProgram& gp = corpus[i];
        const WfsResult w = well_founded(gp);
        if (completions(gp, w, extract_residual(gp, w)) != model_texts(gp.atoms, oracle::brute_force_stable(gp))) {
            o.fail("mismatch on program " + std::to_string(i));
        }
    }
    // The same property through the grounder, on non-ground programs.
    test::Rng rng(3);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < corpus_size; ++i) {
        const Program p = test::random_program(rng, {});
        const Pipeline pl = run_pipeline(p, test::random_query(rng, "q", 4));
        if (pl.ground.atoms.size() > oracle::max_atoms) continue;
        ++checked;
        if (completions(pl.ground, pl.wfs, pl.residual) !=
            model_texts(pl.ground.atoms, oracle::brute_force_stable(pl.ground))) {
            o.fail("mismatch on relevant program " + std::to_string(i));
        }
    }
    if (o.ok) {
        o.detail = std::to_string(corpus.size()) + " ground programs, " + std::to_string(checked) + " relevant groundings";
    }
    return o;
}

Outcome relevance() {
    Outcome o;
    test::Rng rng(4);
    for (std::size_t i = 0; i < relevance_trials; ++i) {
        const Program p = test::random_program(rng, {});
        test::RandomProgramSpec other;
        other.prefix = "r";
        other.extern_preds = {{"q0", 0}, {"q1", 1}, {"q2", 2}};
        Program both = p;
        both.append(test::random_program(rng, other));
        const Query q = test::random_query(rng, "q", 4);
        for (Mode m : {Mode::Wfs, Mode::Brave, Mode::Cautious, Mode::Models}) {
            const QueryOptions opt{m, 10, {}};
            if (render(query_answer(p, q, opt)) != render(query_answer(both, q, opt))) {
                o.fail("trial " + std::to_string(i) + " differs in mode " + to_string(m));
            }
        }
    }
    const char* witness = "q :- not r. p :- not p.";
    const QueryResult r = query_answer(parse_program(witness), parse_query("q"), {Mode::Models, 10, {}});
    if (render(r) != "q: true\n") o.fail("witness answered " + render(r));
    if (!oracle::brute_force_stable(test::ground_all(witness)).empty()) o.fail("witness program has a stable model");
    if (o.ok) o.detail = std::to_string(relevance_trials) + " triples, witness q: true with 0 global models";
    return o;
}

Outcome canonical() {
    Outcome o;
    auto models = [](std::string_view src) {
        const ResidualProgram rp = test::residual_all(src);
        std::vector<std::vector<std::string>> out;
        for (const StableModel& m : enumerate_stable(rp)) out.push_back(test::names(rp.atoms, m.true_atoms));
        return out;
    };
    using Models = std::vector<std::vector<std::string>>;
    if (models("p :- not q. q :- not p.") != Models{{"p"}, {"q"}}) o.fail("even cycle");
    const GroundProgram odd = test::ground_all("p :- not p.");
    if (well_founded(odd).truth(1) != Truth::Undefined || !models("p :- not p.").empty()) o.fail("odd loop");
    if (!models("p :- not q. q :- not r. r :- not p.").empty()) o.fail("three-cycle");
    const QueryResult win = query_answer(parse_program("move(1,2). move(2,3). win(X) :- move(X,Y), not win(Y)."),
                                         parse_query("win(X)"), {Mode::Wfs, 10, {}});
    if (render(win) != "win(1): false\nwin(2): true\n") o.fail("win chain: " + render(win));
    if (o.ok) o.detail = "even cycle, odd loop, three-cycle, win chain";
    return o;
}

Outcome goldens(const std::vector<GroundProgram>& corpus) {
    Outcome o;
    const auto cases = test::golden_cases();
    for (const auto& g : cases) {
        if (g.emit() != test::slurp(std::string(XNMR_GOLDEN_DIR) + "/" + g.file)) o.fail(g.file + " differs");
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GroundProgram& gp = corpus[i];
        const ResidualProgram rp = extract_residual(gp, well_founded(gp));
        if (!(parse_xgf(emit_xgf(rp)) == rp)) o.fail("residual round trip failed on program " + std::to_string(i));
        const ResidualProgram whole = parse_xgf(emit_xgf(gp));
        if (!(whole.atoms == gp.atoms) || whole.rules != gp.rules) {
            o.fail("ground round trip failed on program " + std::to_string(i));
        }
    }
    if (o.ok) o.detail = std::to_string(cases.size()) + " goldens, " + std::to_string(corpus.size()) + " round trips";
    return o;
}

std::string capture(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "popen failed";
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    out += "\nexit " + std::to_string(pclose(pipe));
    return out;
}

Outcome determinism() {
    Outcome o;
    const std::string cli = XNMR_CLI;
    const std::string data = XNMR_DATA_DIR;
    const std::vector<std::string> commands = {
        cli + " " + data + "/cycle.lp --batch < " + data + "/session.txt 2>&1",
        cli + " " + data + "/game.lp -q 'win(X)' 2>&1",
        cli + " " + data + "/game.lp -q 'win(X)' -m cautious 2>&1",
        cli + " " + data + "/unsafe.lp -q 'r(a)' 2>&1",
    };
    for (const std::string& c : commands) {
        const std::string a = capture(c);
        const std::string b = capture(c);
        if (a != b) o.fail("outputs differ for: " + c);
        if (a.find("exit ") == std::string::npos || a.size() < 10) o.fail("no output for: " + c);
    }
    if (o.ok) o.detail = std::to_string(commands.size()) + " command lines, byte-identical";
    return o;
}

struct SmokeRun {
    double seconds;
    std::size_t ground_atoms;
    std::size_t residual_atoms;
    bool found;
    bool checked;
};

// Random move graph; with `no_sinks` every node gets an outgoing edge first.
SmokeRun smoke_run(std::uint64_t seed, bool no_sinks) {
    test::Rng rng(seed);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    auto other = [&](std::size_t a) {
        std::size_t b = test::uniform(rng, 0, smoke_nodes - 2);
        return b >= a ? b + 1 : b;
    };
    if (no_sinks) {
        for (std::size_t a = 0; a < smoke_nodes; ++a) edges.emplace(a, other(a));
    }
    while (edges.size() < smoke_edges) {
        const std::size_t a = test::uniform(rng, 0, smoke_nodes - 1);
        edges.emplace(a, other(a));
    }
    std::string src = "win(X) :- move(X,Y), not win(Y).\n";
    for (auto [a, b] : edges) src += "move(" + std::to_string(a) + "," + std::to_string(b) + ").\n";
    const Program p = parse_program(src);

    const auto t0 = Clock::now();
    const Pipeline pl = run_pipeline(p, parse_query("win(X)"));
    const std::vector<StableModel> first = enumerate_stable(pl.residual, 1);
    const double s = seconds_since(t0);

    // The combined model must be stable for the whole relevant program.
    bool checked = true;
    if (!first.empty()) {
        AtomSet model = pl.wfs.true_set;
        for (AtomId a : first[0].true_atoms) model.push_back(*pl.ground.atoms.find(pl.residual.atoms.text(a)));
        std::sort(model.begin(), model.end());
        checked = is_stable_model(ResidualProgram{pl.ground.atoms, pl.ground.rules}, model);
    }
    return {s, pl.ground.atoms.size(), pl.residual.atoms.size(), !first.empty(), checked};
}

Outcome smoke() {
    Outcome o;
    std::string detail;
    for (bool no_sinks : {false, true}) {
        const SmokeRun r = smoke_run(150600, no_sinks);
        if (r.seconds >= smoke_budget_s) o.fail("took " + std::to_string(r.seconds) + " s");
        if (!r.checked) o.fail("reported model is not stable");
        if (!detail.empty()) detail += "; ";
        detail += std::string(no_sinks ? "sink-free: " : "plain: ") + std::to_string(r.ground_atoms) + " atoms, " +
                  std::to_string(r.residual_atoms) + " residual, " + (r.found ? "model" : "no model") + " in " +
                  std::to_string(r.seconds) + " s";
    }
    if (o.ok) o.detail = detail;
    return o;
}

} // namespace

int main() {
    const std::vector<GroundProgram> corpus = ground_corpus();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"stable-model oracle equivalence", stable_equivalence},
        {"well-founded oracle equivalence", [&] { return wfs_equivalence(corpus); }},
        {"residual faithfulness", [&] { return residual_faithfulness(corpus); }},
        {"relevance restriction", relevance},
        {"canonical examples", canonical},
        {"xgf goldens and round trip", [&] { return goldens(corpus); }},
        {"batch determinism", determinism},
        {"performance smoke", smoke},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << "\n";
    }
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria pass")
              << "\n";
    return failures ? 1 : 0;
}
