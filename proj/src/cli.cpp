#include "talg/cli.hpp"

#include "talg/digraph.hpp"
#include "talg/io.hpp"
#include "talg/zoo.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <ostream>

namespace talg::cli {

using io::Json;

namespace {

FiniteAlgebra load_algebra(const std::string& arg) {
    if (arg.rfind("zoo:", 0) == 0) return zoo::by_name(arg.substr(4));
    return io::algebra_from_json(io::load(arg));
}

Json config_json(const JobConfig& c) {
    const auto& b = c.budgets;
    return Json{{"subcommand", c.subcommand},
                {"inputs", c.inputs},
                {"budget_arity", b.clone.max_arity},
                {"budget_tables", b.clone.max_tables},
                {"budget_applications", b.clone.max_applications},
                {"budget_nodes", b.search.max_nodes},
                {"guard_tuples", b.cyclic.guard_tuples},
                {"budget_dag", b.cyclic.max_dag_nodes},
                {"seed", c.seed}};
}

Json witness_json(const AbsorptionWitness& w) {
    return Json{{"subuniverse", w.subuniverse}, {"arity", w.arity}, {"term", io::to_json(w.term)}};
}

Json decision_json(const CyclicDecision& d) {
    Json j{{"arity", d.arity},
           {"outcome", d.has_cyclic_term ? "HasCyclicTerm" : "NoCyclicTerm"},
           {"method", d.method == CyclicDecision::Method::Decision ? "decision" : "synthesis"},
           {"orbits_checked", d.orbits_checked}};
    if (d.counterexample) {
        j["counterexample"] = *d.counterexample;
        j["counterexample_closure"] = d.counterexample_closure;
    }
    return j;
}

// Human output mirrors the JSON document line by line.
void render(std::ostream& out, const Json& j, int depth) {
    const std::string pad(2 * depth, ' ');
    auto scalar_array = [](const Json& a) {
        for (const auto& x : a)
            if (x.is_object()) return false;
        return true;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            out << pad << it.key() << ":\n";
            render(out, v, depth + 1);
        } else if (v.is_array() && !scalar_array(v)) {
            out << pad << it.key() << ":\n";
            std::size_t i = 0;
            for (const auto& x : v) {
                if (x.is_object()) {
                    out << pad << "  [" << i++ << "]\n";
                    render(out, x, depth + 2);
                } else {
                    out << pad << "  - " << x.dump() << "\n";
                }
            }
        } else {
            out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

struct Job {
    JobConfig config;
    Json result;
    int code = Ok;
};

// ---------------------------------------------------------------- alg

void alg_analyze(Job& job) {
    const auto alg = load_algebra(job.config.inputs.at(0));
    const auto& b = job.config.budgets;
    Json ops = Json::array();
    for (const auto& op : alg.operations())
        ops.push_back(Json{{"name", op.name()},
                           {"arity", op.arity()},
                           {"idempotent", op.is_idempotent()},
                           {"cyclic", is_cyclic_op(op)},
                           {"wnu", is_wnu_op(op)}});
    auto& r = job.result;
    r["size"] = alg.size();
    r["idempotent"] = alg.is_idempotent();
    r["operations"] = ops;
    r["subuniverses"] = all_subuniverses(alg);
    r["congruences"] = congruences(alg).size();
    r["simple"] = is_simple(alg);
    if (!alg.is_idempotent()) return;
    auto t = find_taylor_term(alg, b.clone);
    r["taylor_term"] = t ? io::to_json(*t) : Json(nullptr);
    if (t) {
        auto pc = smallest_cyclic_prime_check(alg, *t, b.cyclic);
        r["prime_check"] = Json{{"p", pc.p}, {"decision", decision_json(pc.decision)}, {"theorem_holds", pc.theorem_holds}};
        if (!pc.theorem_holds) job.code = Violation;
    }
}

void alg_clone(Job& job, bool show) {
    const auto alg = load_algebra(job.config.inputs.at(0));
    auto res = generate_clone(alg, job.config.budgets.clone);
    Json by_arity = Json::array();
    for (std::size_t k = 1; k <= res.max_arity; ++k) {
        auto members = res.of_arity(k);
        Json a{{"arity", k}, {"count", members.size()}};
        if (show) {
            Json list = Json::array();
            for (const auto* m : members)
                list.push_back(Json{{"table", std::vector<Element>(m->table.table().begin(), m->table.table().end())},
                                    {"term", io::to_json(m->witness)}});
            a["members"] = list;
        }
        by_arity.push_back(a);
    }
    job.result["complete"] = res.complete;
    job.result["arities"] = by_arity;
    if (!res.complete) job.code = OutOfBudget;
}

void alg_absorb(Job& job) {
    const auto alg = load_algebra(job.config.inputs.at(0));
    auto rep = absorption_report(alg, AbsorptionBudget{job.config.budgets.clone});
    Json proper = Json::array();
    for (const auto& w : rep.proper_absorbing) proper.push_back(witness_json(w));
    job.result["subuniverses"] = rep.subuniverses;
    job.result["proper_absorbing"] = proper;
    job.result["minimal_absorbing"] = rep.minimal_absorbing;
    job.result["complete"] = rep.complete;
}

void alg_cyclic(Job& job, std::size_t arity, bool prime_check, std::size_t spectrum, bool synthesize) {
    const auto alg = load_algebra(job.config.inputs.at(0));
    const auto& b = job.config.budgets;
    auto& r = job.result;
    if (prime_check) {
        auto t = find_taylor_term(alg, b.clone);
        if (!t) throw InvalidInput("--prime-check needs a Taylor term; none found within the clone budget");
        auto pc = smallest_cyclic_prime_check(alg, *t, b.cyclic);
        r["prime_check"] = Json{{"p", pc.p}, {"decision", decision_json(pc.decision)}, {"theorem_holds", pc.theorem_holds}};
        if (!pc.theorem_holds) job.code = Violation;
    }
    if (spectrum) {
        auto s = arity_spectrum(alg, spectrum, b.cyclic);
        r["spectrum"] = Json{{"from", s.lo}, {"to", s.hi}, {"members", s.members}};
    }
    if (arity) {
        if (arity < 2) throw InvalidInput("--arity must be at least 2");
        if (synthesize) {
            auto syn = find_cyclic_term(alg, arity, b.cyclic);
            CyclicDecision d = has_cyclic_term(alg, arity, b.cyclic);
            d.method = CyclicDecision::Method::Synthesis;
            r["decision"] = decision_json(d);
            if (syn) {
                r["term"] = io::to_json(syn->term);
                r["table"] = std::vector<Element>(syn->table.table().begin(), syn->table.table().end());
                r["s_sizes"] = syn->s_sizes;
            }
        } else {
            r["decision"] = decision_json(has_cyclic_term(alg, arity, b.cyclic));
        }
    }
    if (!arity && !prime_check && !spectrum) throw InvalidInput("alg cyclic: give --arity, --prime-check or --spectrum");
}

// ---------------------------------------------------------------- graph and csp

Json template_verdict_json(const TemplateVerdict& v) {
    Json j{{"verdict", to_string(v.outcome)}, {"p", v.p}, {"core_vertices", v.core_vertices}};
    if (v.polymorphism) j["polymorphism"] = io::to_json(*v.polymorphism);
    if (!v.witness_kind.empty()) j["witness_kind"] = v.witness_kind;
    if (v.orbit) j["orbit"] = *v.orbit;
    if (v.witness) j["witness"] = io::to_json(*v.witness);
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

void graph_classify(Job& job) {
    const auto g = io::digraph_from_json(io::load(job.config.inputs.at(0)));
    auto& r = job.result;
    if (g.is_symmetric()) {
        r["method"] = "undirected";
        r["verdict"] = to_string(classify_undirected(g));
    } else if (is_smooth(g)) {
        auto c = classify_smooth_digraph(g, job.config.budgets.search);
        r["method"] = "smooth";
        r["verdict"] = to_string(c.verdict);
        r["core_vertices"] = c.core_vertices;
    } else {
        auto v = classify_template(g.structure(), job.config.budgets.search);
        r["method"] = "template";
        r.update(template_verdict_json(v));
        if (v.outcome == TemplateVerdict::Outcome::Inconclusive) job.code = OutOfBudget;
    }
}

void graph_loop_check(Job& job, const std::string& algebra) {
    const auto g = io::digraph_from_json(io::load(job.config.inputs.at(0)));
    const auto alg = load_algebra(algebra);
    auto lr = find_loop_smooth_taylor(g, alg, AbsorptionBudget{job.config.budgets.clone});
    auto& r = job.result;
    r["loop"] = lr.loop;
    r["absorbing_side_condition"] = lr.absorbing_side_condition;
    if (lr.minimal_absorbing) r["minimal_absorbing"] = *lr.minimal_absorbing;
    if (lr.absorbing_loop) r["absorbing_loop"] = *lr.absorbing_loop;
}

void graph_smooth_part(Job& job) {
    const auto g = io::digraph_from_json(io::load(job.config.inputs.at(0)));
    auto s = smooth_part(g);
    job.result["smooth_part"] = s;
    job.result["smooth"] = s.size() == g.vertices();
}

void graph_alg_length(Job& job) {
    const auto g = io::digraph_from_json(io::load(job.config.inputs.at(0)));
    Json comps = Json::array();
    std::optional<std::uint64_t> least;
    for (const auto& c : weak_components(g)) {
        auto len = algebraic_length(g, c);
        comps.push_back(Json{{"vertices", c}, {"algebraic_length", len ? Json(*len) : Json("infinite")}});
        if (len && (!least || *len < *least)) least = len;
    }
    job.result["components"] = comps;
    job.result["minimum"] = least ? Json(*least) : Json("infinite");
}

void csp_solve(Job& job) {
    const auto& path = job.config.inputs.at(0);
    const auto inst = io::instance_from_json(io::load(path), std::filesystem::path(path).parent_path().string());
    auto h = find_homomorphism(inst.structure, inst.tmpl, job.config.budgets.search);
    job.result["satisfiable"] = h.has_value();
    if (h) job.result["assignment"] = *h;
}

void csp_classify(Job& job) {
    const auto tmpl = io::template_from_json(io::load(job.config.inputs.at(0)));
    auto v = classify_template(tmpl, job.config.budgets.search);
    job.result = template_verdict_json(v);
    if (v.outcome == TemplateVerdict::Outcome::Inconclusive) job.code = OutOfBudget;
}

void verify(Job& job) {
    auto rep = run_suite(job.config.inputs.at(0), job.config.seed, job.config.budgets);
    job.result = Json{{"suite", rep.suite},       {"seed", rep.seed},       {"instances", rep.instances},
                      {"passed", rep.passed},     {"skipped", rep.skipped}, {"violations", rep.violations},
                      {"ok", rep.ok()}};
    if (!rep.ok()) job.code = Violation;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    std::size_t budget_tables = 0;

    CLI::App app{"Finite idempotent algebras, absorption, cyclic terms and CSP templates", kTool};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.add_option("--budget-arity", cfg.budgets.clone.max_arity, "Largest clone arity searched")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-tables", budget_tables, "Clone tables kept and search nodes allowed")
        ->check(CLI::PositiveNumber);
    app.add_option("--guard-tuples", cfg.budgets.cyclic.guard_tuples, "Largest tuple space n^k scanned")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-dag", cfg.budgets.cyclic.max_dag_nodes, "Largest term DAG built")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for sampled suites");
    app.add_flag("--json", cfg.json, "Print JSON");
    app.add_flag("--quiet", cfg.quiet, "Print nothing; report through the exit code only");

    std::string input, algebra;
    std::size_t arity = 0, spectrum = 0;
    bool prime_check = false, synthesize = false, show = false;

    auto* alg = app.add_subcommand("alg", "Algebra commands")->require_subcommand(1);
    auto* analyze = alg->add_subcommand("analyze", "Summary of an algebra");
    auto* clone = alg->add_subcommand("clone", "Term operations up to --budget-arity");
    clone->add_flag("--show", show, "List tables and witness terms");
    auto* absorb = alg->add_subcommand("absorb", "Absorbing subuniverses with witnesses");
    auto* cyclic = alg->add_subcommand("cyclic", "Cyclic term decision and synthesis");
    cyclic->add_option("--arity", arity, "Decide a cyclic term of this arity");
    cyclic->add_flag("--synthesize", synthesize, "Also build the term");
    cyclic->add_flag("--prime-check", prime_check, "Check the smallest prime above |A|");
    cyclic->add_option("--spectrum", spectrum, "Cyclic arities 2..max_k");
    for (auto* s : {analyze, clone, absorb, cyclic})
        s->add_option("algebra", input, "Algebra JSON file or zoo:<name>")->required();

    auto* graph = app.add_subcommand("graph", "Digraph commands")->require_subcommand(1);
    auto* gclassify = graph->add_subcommand("classify", "Complexity of a digraph template");
    auto* loop = graph->add_subcommand("loop-check", "Find a loop in a smooth invariant digraph");
    loop->add_option("--algebra", algebra, "Algebra JSON file or zoo:<name>")->required();
    auto* smooth = graph->add_subcommand("smooth-part", "Largest smooth induced subgraph");
    auto* alen = graph->add_subcommand("alg-length", "Algebraic length per weak component");
    for (auto* s : {gclassify, loop, smooth, alen}) s->add_option("digraph", input, "Digraph JSON file")->required();

    auto* csp = app.add_subcommand("csp", "Constraint satisfaction")->require_subcommand(1);
    auto* solve = csp->add_subcommand("solve", "Solve an instance");
    solve->add_option("instance", input, "Instance JSON file")->required();
    auto* cclassify = csp->add_subcommand("classify", "Classify a template");
    cclassify->add_option("template", input, "Structure or digraph JSON file")->required();

    auto* ver = app.add_subcommand("verify", "Run a theorem property suite");
    ver->add_option("suite", input, "Suite name")->required()->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Invalid;
    }

    if (budget_tables) {
        cfg.budgets.clone.max_tables = budget_tables;
        cfg.budgets.search.max_nodes = budget_tables;
    }
    cfg.budgets.search.guard_tuples = cfg.budgets.cyclic.guard_tuples;
    cfg.inputs = {input};
    if (!algebra.empty()) cfg.inputs.push_back(algebra);

    Job job;
    try {
        auto pick = [&](CLI::App* parent, std::initializer_list<CLI::App*> subs) -> CLI::App* {
            for (auto* s : subs)
                if (s->parsed()) {
                    cfg.subcommand = parent->get_name() + " " + s->get_name();
                    return s;
                }
            return nullptr;
        };
        job.config = cfg;
        if (auto* s = pick(alg, {analyze, clone, absorb, cyclic})) {
            job.config = cfg;
            if (s == analyze) alg_analyze(job);
            else if (s == clone) alg_clone(job, show);
            else if (s == absorb) alg_absorb(job);
            else alg_cyclic(job, arity, prime_check, spectrum, synthesize);
        } else if (auto* s = pick(graph, {gclassify, loop, smooth, alen})) {
            job.config = cfg;
            if (s == gclassify) graph_classify(job);
            else if (s == loop) graph_loop_check(job, algebra);
            else if (s == smooth) graph_smooth_part(job);
            else graph_alg_length(job);
        } else if (auto* s = pick(csp, {solve, cclassify})) {
            job.config = cfg;
            if (s == solve) csp_solve(job);
            else csp_classify(job);
        } else {
            cfg.subcommand = "verify";
            job.config = cfg;
            verify(job);
        }
    } catch (const InvalidInput& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return Invalid;
    } catch (const BudgetExceeded& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return OutOfBudget;
    } catch (const TheoremViolation& e) {
        err << "error: theorem violation: " << e.what() << "\n";
        return Violation;
    }

    if (!job.config.quiet) {
        Json doc{{"tool", kTool}, {"version", kVersion}, {"config", config_json(job.config)}, {"result", job.result}};
        if (job.config.json) out << doc.dump(2) << "\n";
        else render(out, doc, 0);
    }
    return job.code;
}

} // namespace talg::cli
