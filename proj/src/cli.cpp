#include "selcol/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selcol/dispatch.hpp"
#include "selcol/generators.hpp"
#include "selcol/io.hpp"
#include "selcol/oracle.hpp"
#include "selcol/solver_cluster.hpp"
#include "selcol/solver_cotw.hpp"
#include "selcol/solver_tw.hpp"
#include "selcol/tree_decomposition.hpp"
#include "selcol/verify.hpp"

namespace selcol {

namespace {

std::string read_source(const std::string& path, std::istream& in)
{
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    buf << f.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& output, std::ostream& out)
{
    if (output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + output);
    f << text;
}

std::string serialize_graph(const Graph& g)
{
    std::ostringstream os;
    os << "p edges " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges())
        os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

std::string summary(const Verdict& v, bool timing)
{
    std::ostringstream os;
    os << to_string(v.answer) << " (" << v.stats.solver;
    for (const auto& [key, val] : v.stats.params)
        os << ' ' << key << '=' << val;
    os << ')';
    if (timing)
        os << " in " << v.stats.elapsed_ms << " ms";
    for (const auto& note : v.stats.notes)
        os << "\n  " << note;
    return os.str();
}

struct SolveArgs {
    std::string instance = "-";
    std::string algo = "auto";
    std::string td;
    std::string cotd;
    int dmax = 16;
    std::uint64_t max_nodes = 50'000'000;
    double time_budget = 60;
    int threads = 1;
    int max_parts = 24;
    double ceiling = 1e9;
    bool force = false;
    bool labeled = false;
    std::string dump_flow;
    std::string output;
    bool timing = false;
};

int do_solve(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err)
{
    Instance inst = parse_instance(read_source(a.instance, in));
    std::optional<TreeDecomposition> td, cotd;
    if (!a.td.empty())
        td = parse_td(read_source(a.td, in));
    if (!a.cotd.empty())
        cotd = parse_td(read_source(a.cotd, in));

    std::string algo = a.algo;
    std::string rationale;
    if (algo == "auto") {
        auto choice = choose_algorithm(measure(inst, a.dmax, td, cotd), {a.ceiling, a.max_parts}, a.force);
        algo = choice.algo;
        rationale = "dispatch: " + choice.rationale;
        err << rationale << '\n';
    } else if (algo == "cotw" && !cotd) {
        // for an explicit cotw run, --td names the complement decomposition
        cotd = td;
    }

    Verdict v;
    if (algo == "tw") {
        TreeDecomposition d = td ? *td : heuristic_decompose(inst.graph());
        if (auto e = validate_td(inst.graph(), d))
            throw std::invalid_argument("decomposition: " + *e);
        v = solve_tw(inst, make_nice(d), {a.max_parts, a.threads, true});
    } else if (algo == "cluster") {
        ClusterOptions opts;
        opts.d_max = a.dmax;
        opts.labeled_colorings = a.labeled;
        opts.threads = a.threads;
        if (!a.dump_flow.empty())
            opts.dump_dir = a.dump_flow;
        v = solve_cluster(inst, opts);
    } else if (algo == "cotw") {
        CotwOptions opts;
        opts.max_parts = a.max_parts;
        opts.threads = a.threads;
        opts.complement_td = cotd;
        v = solve_cotw(inst, opts);
    } else {
        BruteForceOptions opts;
        opts.limits.max_nodes = a.max_nodes;
        opts.limits.time_budget =
            std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(a.time_budget * 1000)));
        v = brute_force(inst, opts);
    }
    if (!rationale.empty())
        v.stats.notes.insert(v.stats.notes.begin(), rationale);

    if (v.witness) {
        auto bad = verify_solution(inst, *v.witness);
        if (!bad.empty()) {
            err << "internal error: witness rejected by the verifier:\n";
            for (const auto& b : bad)
                err << "  " << b << '\n';
            return exit_error;
        }
    }
    emit(verdict_to_json(v, a.timing), a.output, out);
    err << summary(v, a.timing) << '\n';
    switch (v.answer) {
    case Answer::yes: return exit_yes;
    case Answer::no: return exit_no;
    case Answer::exhausted: err << "budget exhausted\n"; return exit_error;
    }
    return exit_error;
}

int do_verify(const std::string& inst_path, const std::string& sol_path, std::istream& in,
              std::ostream& out, std::ostream& err)
{
    Instance inst = parse_instance(read_source(inst_path, in));
    Verdict v = verdict_from_json(read_source(sol_path, in));
    if (!v.witness) {
        err << "solution document carries no witness (answer " << to_string(v.answer) << ")\n";
        return exit_error;
    }
    auto bad = verify_solution(inst, *v.witness);
    nlohmann::json doc;
    doc["valid"] = bad.empty();
    doc["violations"] = bad;
    out << doc.dump(2) << '\n';
    if (bad.empty()) {
        err << "valid\n";
        return exit_yes;
    }
    err << bad.size() << " violation(s):\n";
    for (const auto& b : bad)
        err << "  " << b << '\n';
    return exit_error;
}

nlohmann::json finite_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

int do_stats(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err)
{
    Instance inst = parse_instance(read_source(a.instance, in));
    std::optional<TreeDecomposition> td, cotd;
    if (!a.td.empty())
        td = parse_td(read_source(a.td, in));
    if (!a.cotd.empty())
        cotd = parse_td(read_source(a.cotd, in));
    InstanceParams ip = measure(inst, a.dmax, td, cotd);
    nlohmann::json doc;
    doc["n"] = ip.n;
    doc["p"] = ip.p;
    doc["k"] = ip.k;
    doc["width"] = ip.width;
    doc["cowidth"] = ip.cowidth;
    doc["modulator"] = ip.modulator ? nlohmann::json(*ip.modulator) : nlohmann::json(nullptr);
    doc["modulator_lower_bound"] = ip.modulator_lower_bound;
    doc["selections"] = ip.selections;
    nlohmann::json est = nlohmann::json::object();
    for (const auto& e : estimate_costs(ip, {a.ceiling, a.max_parts}))
        est[e.algo] = finite_or_null(e.cost);
    doc["estimates"] = est;
    emit(doc.dump(2) + "\n", a.output, out);
    err << describe(ip) << '\n';
    return exit_yes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact solvers and generators for Selective Coloring", "selcol"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Decide an instance; JSON verdict on stdout");
    solve->add_option("instance", sa.instance, "Instance file, - for stdin")->capture_default_str();
    solve->add_option("--algo", sa.algo, "auto|tw|cluster|cotw|brute")
        ->check(CLI::IsMember({"auto", "tw", "cluster", "cotw", "brute"}))
        ->capture_default_str();
    solve->add_option("--td", sa.td, "Tree decomposition (.td); for cotw, of the complement");
    solve->add_option("--cotd", sa.cotd, "Complement decomposition (.td) for auto/cotw");
    solve->add_option("--dmax", sa.dmax, "Largest modulator searched")
        ->envname("SELCOL_DMAX")->check(CLI::NonNegativeNumber)->capture_default_str();
    solve->add_option("--max-nodes", sa.max_nodes, "Brute-force node budget")
        ->envname("SELCOL_MAX_NODES")->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_option("--time-budget", sa.time_budget, "Brute-force time budget in seconds")
        ->envname("SELCOL_TIME_BUDGET")->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_option("--threads", sa.threads, "Worker threads")
        ->envname("SELCOL_THREADS")->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_option("--max-parts", sa.max_parts, "Part limit of the subset tables")
        ->envname("SELCOL_MAX_PARTS")->check(CLI::Range(1, 32))->capture_default_str();
    solve->add_option("--ceiling", sa.ceiling, "Cost ceiling for auto")
        ->envname("SELCOL_CEILING")->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_flag("--force", sa.force, "Let auto exceed the ceiling");
    solve->add_flag("--labeled-colorings", sa.labeled, "cluster: try every map X -> [k]");
    solve->add_option("--dump-flow", sa.dump_flow, "cluster: write each flow network into this directory");
    solve->add_option("--output,-o", sa.output, "Write the verdict here instead of stdout");
    solve->add_flag("--timing", sa.timing, "Include elapsed time in the verdict");

    std::string v_inst, v_sol;
    auto* verify = app.add_subcommand("verify", "Check a witness against an instance");
    verify->add_option("instance", v_inst, "Instance file")->required();
    verify->add_option("solution", v_sol, "Solution document (output of solve)")->required();

    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    int g_n = 0, g_parts = 0, g_k = 1;
    double g_prob = 0.5;
    std::uint64_t g_seed = 1;
    auto* grand = gen->add_subcommand("random", "Seeded G(n, prob) with round-robin parts");
    grand->add_option("--n", g_n, "Vertices")->required()->check(CLI::PositiveNumber);
    grand->add_option("--prob", g_prob, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
    grand->add_option("--parts", g_parts, "Number of parts")->required()->check(CLI::PositiveNumber);
    grand->add_option("--k", g_k, "Color budget")->required()->check(CLI::PositiveNumber);
    grand->add_option("--seed", g_seed, "Seed")->capture_default_str();

    int c_k = 1, c_n = 0;
    bool c_regular = false;
    std::vector<std::string> c_files;
    auto* gcomp = gen->add_subcommand("compose", "Composition gadget over graphs on a common ground set");
    gcomp->add_option("--k", c_k, "Color budget")->required()->check(CLI::PositiveNumber);
    gcomp->add_option("--ground-n", c_n, "Ground set size")->required()->check(CLI::PositiveNumber);
    gcomp->add_flag("--regular", c_regular, "Reject inputs that are not 4-regular");
    gcomp->add_option("graphs", c_files, "Graph files (p edges or p selcol)")->required();

    std::string named;
    auto* gnamed = gen->add_subcommand("named", "Standard graph as a p edges file");
    gnamed->add_option("name", named, "K4, C5, P3, K3,3, petersen")->required();

    std::string t_input = "-", t_validate;
    bool t_complement = false;
    auto* tdcmd = app.add_subcommand("td", "Emit a heuristic decomposition or validate one");
    tdcmd->add_option("input", t_input, "Instance or graph file, - for stdin")->capture_default_str();
    tdcmd->add_flag("--complement", t_complement, "Work on the complement graph");
    tdcmd->add_option("--validate", t_validate, "Decomposition to check instead of emitting one");

    SolveArgs st;
    auto* stats = app.add_subcommand("stats", "Report w, cow, |U|, p, k and selection count");
    stats->add_option("instance", st.instance, "Instance file, - for stdin")->capture_default_str();
    stats->add_option("--td", st.td, "Tree decomposition (.td)");
    stats->add_option("--cotd", st.cotd, "Complement decomposition (.td)");
    stats->add_option("--dmax", st.dmax, "Largest modulator searched")
        ->envname("SELCOL_DMAX")->check(CLI::NonNegativeNumber)->capture_default_str();
    stats->add_option("--max-parts", st.max_parts, "Part limit of the subset tables")
        ->envname("SELCOL_MAX_PARTS")->check(CLI::Range(1, 32))->capture_default_str();
    stats->add_option("--ceiling", st.ceiling, "Cost ceiling")
        ->envname("SELCOL_CEILING")->check(CLI::PositiveNumber)->capture_default_str();
    stats->add_option("--output,-o", st.output, "Write here instead of stdout");

    std::vector<std::string> argv_store{"selcol"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_yes;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_yes;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return exit_error;
    }

    try {
        if (*solve)
            return do_solve(sa, in, out, err);
        if (*verify)
            return do_verify(v_inst, v_sol, in, out, err);
        if (*grand) {
            out << serialize_instance(gen_random(g_n, g_prob, g_parts, g_k, g_seed));
            return exit_yes;
        }
        if (*gcomp) {
            ComposeInput ci;
            ci.ground_n = c_n;
            ci.k = c_k;
            ci.require_regular = c_regular;
            for (const auto& f : c_files) {
                Graph h = parse_graph(read_source(f, in));
                if (h.num_vertices() > c_n)
                    throw std::invalid_argument(f + ": " + std::to_string(h.num_vertices()) +
                                                " vertices exceed --ground-n " + std::to_string(c_n));
                ci.graphs.push_back(h.edges());
            }
            out << serialize_instance(compose(ci));
            return exit_yes;
        }
        if (*gnamed) {
            out << serialize_graph(parse_named_graph(named));
            return exit_yes;
        }
        if (*tdcmd) {
            Graph g = parse_graph(read_source(t_input, in));
            if (t_complement)
                g = complement(g);
            if (!t_validate.empty()) {
                TreeDecomposition d = parse_td(read_source(t_validate, in));
                if (auto e = validate_td(g, d)) {
                    err << "invalid decomposition: " << *e << '\n';
                    return exit_error;
                }
                out << "valid width " << width(d) << '\n';
                return exit_yes;
            }
            TreeDecomposition d = heuristic_decompose(g);
            out << serialize_td(d, g.num_vertices());
            err << "width " << width(d) << '\n';
            return exit_yes;
        }
        if (*stats)
            return do_stats(st, in, out, err);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const CapacityError& e) {
        err << "capacity exceeded: " << e.what() << '\n';
    } catch (const NoTractableStrategy& e) {
        err << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_error;
}

}  // namespace selcol
