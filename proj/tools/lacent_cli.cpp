/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacent/lacent.hpp"

namespace {

using namespace lacent;

// ---------------------------------------------------------------------------
// Flat key=value configuration layer.
//
// Every option is registered under its long-flag name, so config-file keys
// and flags are bijective by construction. Precedence: command line beats
// config file beats defaults. `--dump-config` prints the effective config in
// exactly the accepted file form, so configs round-trip losslessly.

std::string bool_to_string(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParamError("expected true/false, got '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stod(tok));
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + format_double(v[i]);
    return out;
}

std::vector<std::string> parse_string_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(tok);
    return out;
}

std::string join_strings(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + v[i];
    return out;
}

/// One subcommand's option set with the key registry layered on top.
class KeyedOptions {
public:
    explicit KeyedOptions(CLI::App* sub) : sub_(sub) {
        sub_->add_option("--config", config_path_,
                         "flat key=value config file (flags override it)");
        sub_->add_flag("--dump-config", dump_config_,
                       "print the effective config in config-file form and exit");
    }

    void add_double(const std::string& key, double& ref, const std::string& desc) {
        sub_->add_option("--" + key, ref, desc)->capture_default_str();
        reg(key, [&ref](const std::string& v) { ref = std::stod(v); },
            [&ref] { return format_double(ref); });
    }

    void add_uint(const std::string& key, std::uint32_t& ref, const std::string& desc) {
        sub_->add_option("--" + key, ref, desc)->capture_default_str();
        reg(key,
            [&ref](const std::string& v) { ref = static_cast<std::uint32_t>(std::stoul(v)); },
            [&ref] { return std::to_string(ref); });
    }

    void add_uint64(const std::string& key, std::uint64_t& ref, const std::string& desc) {
        sub_->add_option("--" + key, ref, desc)->capture_default_str();
        reg(key, [&ref](const std::string& v) { ref = std::stoull(v); },
            [&ref] { return std::to_string(ref); });
    }

    void add_string(const std::string& key, std::string& ref, const std::string& desc) {
        sub_->add_option("--" + key, ref, desc)->capture_default_str();
        reg(key, [&ref](const std::string& v) { ref = v; }, [&ref] { return ref; });
    }

    void add_bool(const std::string& key, bool& ref, const std::string& desc) {
        sub_->add_flag("--" + key, ref, desc);
        reg(key, [&ref](const std::string& v) { ref = parse_bool(v); },
            [&ref] { return bool_to_string(ref); });
    }

    void add_double_list(const std::string& key, std::vector<double>& ref,
                         const std::string& desc) {
        sub_->add_option(
                "--" + key,
                [&ref](const std::vector<std::string>& vals) {
                    ref = parse_double_list(vals.back());
                    return true;
                },
                desc)
            ->expected(1)
            ->default_str(join_doubles(ref));
        reg(key, [&ref](const std::string& v) { ref = parse_double_list(v); },
            [&ref] { return join_doubles(ref); });
    }

    void add_string_list(const std::string& key, std::vector<std::string>& ref,
                         const std::string& desc) {
        sub_->add_option(
                "--" + key,
                [&ref](const std::vector<std::string>& vals) {
                    ref = parse_string_list(vals.back());
                    return true;
                },
                desc)
            ->expected(1)
            ->default_str(join_strings(ref));
        reg(key, [&ref](const std::string& v) { ref = parse_string_list(v); },
            [&ref] { return join_strings(ref); });
    }

    /// Merge the config file under the already-parsed command line.
    void finalize() {
        if (config_path_.empty())
            return;
        std::ifstream in(config_path_);
        if (!in)
            throw Error("cannot open config file: " + config_path_);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value", line_no);
            const std::string key = line.substr(0, eq);
            const std::string value = line.substr(eq + 1);
            auto it = setters_.find(key);
            if (it == setters_.end())
                throw Error("config file key '" + key + "' is not a known option");
            if (sub_->count("--" + key) > 0)
                continue; // command line wins
            it->second(value);
        }
    }

    bool dump_requested() const { return dump_config_; }

    std::string dump() const {
        std::string out;
        for (const auto& [key, get] : getters_)
            out += key + "=" + get() + "\n";
        return out;
    }

    ConfigLines config_lines() const {
        ConfigLines lines;
        for (const auto& [key, get] : getters_)
            lines.emplace_back(key, get());
        return lines;
    }

private:
    void reg(const std::string& key, std::function<void(const std::string&)> set,
             std::function<std::string()> get) {
        setters_[key] = std::move(set);
        getters_.emplace_back(key, std::move(get));
    }

    CLI::App* sub_;
    std::string config_path_;
    bool dump_config_ = false;
    std::map<std::string, std::function<void(const std::string&)>> setters_;
    std::vector<std::pair<std::string, std::function<std::string()>>> getters_;
};

// ---------------------------------------------------------------------------
// Shared option groups

struct GraphOptions {
    std::string graph;
    std::string sep = "ws";
    bool undirected = false;
    std::string ids = "labels";

    void declare(KeyedOptions& opts) {
        opts.add_string("graph", graph, "edge list file (src<sep>dst lines, # comments)");
        opts.add_string("sep", sep, "field separator: ws|tab|space|comma");
        opts.add_bool("undirected", undirected, "expand each line to both directions");
        opts.add_string("ids", ids, "node id mode: labels|0|1 (0/1 = integer ids)");
    }

    void validate(std::vector<std::string>& problems) const {
        if (graph.empty())
            problems.push_back("graph: required");
        if (sep != "ws" && sep != "tab" && sep != "space" && sep != "comma")
            problems.push_back("sep: must be ws|tab|space|comma");
        if (ids != "labels" && ids != "0" && ids != "1")
            problems.push_back("ids: must be labels|0|1");
    }

    DirectedGraph load() const {
        EdgeListOptions o;
        o.sep = sep == "tab"     ? EdgeListOptions::Sep::tab
                : sep == "space" ? EdgeListOptions::Sep::space
                : sep == "comma" ? EdgeListOptions::Sep::comma
                                 : EdgeListOptions::Sep::any_whitespace;
        o.undirected = undirected;
        o.ids = ids == "0"   ? EdgeListOptions::IdMode::zero_based
                : ids == "1" ? EdgeListOptions::IdMode::one_based
                             : EdgeListOptions::IdMode::labels;
        return load_edge_list(graph, o);
    }
};

struct SolverOptions {
    double eps_deg = 0.01;
    std::string cond_mode = "all";
    std::string starting = "default";
    double tol = 1e-10;
    std::uint32_t max_iter = 10'000;

    void declare(KeyedOptions& opts) {
        opts.add_double("eps-deg", eps_deg, "degree conditioning constant");
        opts.add_string("cond-mode", cond_mode, "conditioning mode: all|zero");
        opts.add_string("starting", starting,
                        "starting vector: default|uniform|indegree-inverse|out-degree|la-out-degree");
        opts.add_double("tol", tol, "exact solver convergence tolerance (inf norm)");
        opts.add_uint("max-iter", max_iter, "exact solver iteration cap");
    }

    void validate(std::vector<std::string>& problems) const {
        if (eps_deg < 0.0)
            problems.push_back("eps-deg: must be >= 0");
        if (cond_mode != "all" && cond_mode != "zero")
            problems.push_back("cond-mode: must be all|zero");
        if (!(tol > 0.0))
            problems.push_back("tol: must be > 0");
        if (max_iter == 0)
            problems.push_back("max-iter: must be > 0");
        try {
            starting_kind_from_string(starting);
        } catch (const ParamError&) {
            problems.push_back(
                "starting: must be default|uniform|indegree-inverse|out-degree|la-out-degree");
        }
    }

    DegreeConditioning conditioning() const {
        return {.epsilon_deg = eps_deg,
                .mode = cond_mode == "zero" ? DegreeConditioning::Mode::zero_degrees_only
                                            : DegreeConditioning::Mode::all_degrees};
    }

    CentralityParams params(double alpha) const {
        CentralityParams p;
        p.alpha = alpha;
        p.starting.kind = starting_kind_from_string(starting);
        p.tol = tol;
        p.max_iter = max_iter;
        p.conditioning = conditioning();
        return p;
    }
};

unsigned default_threads() {
    if (const char* env = std::getenv("LACENT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return static_cast<unsigned>(v);
    }
    return 1;
}

void fail_config(const std::vector<std::string>& problems) {
    std::string line = "config-error:";
    for (std::size_t i = 0; i < problems.size(); ++i)
        line += (i ? "; " : " ") + problems[i];
    std::cerr << line << '\n';
    std::exit(2);
}

void guard_node_cap(const DirectedGraph& g, std::uint32_t cap, bool force,
                    const std::string& what) {
    if (!force && g.node_count() > cap)
        throw Error(what + " refused on " + std::to_string(g.node_count()) +
                    " nodes (cap " + std::to_string(cap) +
                    "); pass --force to override or raise --node-cap");
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << contents;
    std::cout << "wrote " << path << '\n';
}

nlohmann::ordered_json config_json(const ConfigLines& lines) {
    auto obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : lines)
        obj[k] = v;
    return obj;
}

// ---------------------------------------------------------------------------
// compute

struct ComputeCmd {
    GraphOptions graph;
    SolverOptions solver;
    std::string measure = "lapr";
    std::string mode = "exact";
    double alpha = 0.85;
    double delta = 0.1;
    bool transpose_graph = false;
    std::uint32_t node_cap = 50'000;
    bool force = false;
    std::uint32_t threads = default_threads();
    std::string out = "lacent";

    void declare(KeyedOptions& opts) {
        graph.declare(opts);
        opts.add_string("measure", measure, "centrality measure: pr|lapr|ac|laac");
        opts.add_string("mode", mode, "solver mode: exact|approx");
        opts.add_double("alpha", alpha, "damping / attenuation parameter");
        opts.add_double("delta", delta, "error tolerance (approx mode)");
        solver.declare(opts);
        opts.add_bool("transpose", transpose_graph, "run on the transposed graph");
        opts.add_uint("node-cap", node_cap, "largest graph the exact solver accepts");
        opts.add_bool("force", force, "override the node cap");
        opts.add_uint("threads", threads, "worker cap (kept at 1 for bit-reproducibility)");
        opts.add_string("out", out, "output path prefix");
    }

    int run(const KeyedOptions& opts) {
        std::vector<std::string> problems;
        graph.validate(problems);
        solver.validate(problems);
        try {
            measure_from_string(measure);
        } catch (const ParamError&) {
            problems.push_back("measure: must be pr|lapr|ac|laac");
        }
        if (mode != "exact" && mode != "approx")
            problems.push_back("mode: must be exact|approx");
        if (!(alpha >= 0.0 && alpha < 1.0))
            problems.push_back("alpha: must be in [0,1)");
        if (mode == "approx" && !(delta > 0.0 && delta <= 1.0))
            problems.push_back("delta: must be in (0,1]");
        if (mode == "approx" && measure == "pr")
            problems.push_back("measure: pr has no approx variant (use lapr|laac|ac)");
        if (out.empty())
            problems.push_back("out: required");
        if (!problems.empty())
            fail_config(problems);

        DirectedGraph g = graph.load();
        if (transpose_graph)
            g = transpose(g);
        const Measure m = measure_from_string(measure);
        const auto config = opts.config_lines();

        if (mode == "exact") {
            guard_node_cap(g, node_cap, force, "exact solve");
            const auto sv = solve_exact(g, m, solver.params(alpha));
            std::ostringstream scores;
            write_scores_csv(scores, sv, g, config);
            write_file(out + ".scores.csv", scores.str());
            nlohmann::ordered_json meta;
            meta["config"] = config_json(config);
            meta["result"] = to_json(sv, g);
            write_file(out + ".meta.json", meta.dump(2) + "\n");
            if (!sv.converged)
                std::cerr << "warning: not converged within " << sv.iterations_used
                          << " iterations\n";
        } else {
            StartingVector sv_sel;
            sv_sel.kind = starting_kind_from_string(solver.starting);
            PushResult res;
            switch (m) {
            case Measure::lapr:
                res = approx_la_pagerank(g, alpha, delta, sv_sel, solver.conditioning());
                break;
            case Measure::laac:
                res = approx_la_alpha_centrality(g, alpha, delta, sv_sel,
                                                 solver.conditioning());
                break;
            default:
                res = approx_alpha_centrality(g, alpha, delta, sv_sel, solver.conditioning());
                break;
            }
            std::ostringstream scores;
            write_scores_csv(scores, res.scores, g, config);
            write_file(out + ".scores.csv", scores.str());
            nlohmann::ordered_json stats;
            stats["config"] = config_json(config);
            stats["stats"] = to_json(res.stats);
            write_file(out + ".stats.json", stats.dump(2) + "\n");
        }
        return 0;
    }
};

// ---------------------------------------------------------------------------
// sweep

struct SweepCmd {
    GraphOptions graph;
    SolverOptions solver;
    std::string measure = "lapr";
    double alpha = 0.85;
    std::vector<double> deltas{1.0, 0.5, 0.1, 0.05, 0.01};
    bool no_rms = false;
    std::uint32_t node_cap = 50'000;
    bool force = false;
    std::uint32_t threads = default_threads();
    std::string out = "lacent";

    void declare(KeyedOptions& opts) {
        graph.declare(opts);
        opts.add_string("measure", measure, "push measure: lapr|laac|ac");
        opts.add_double("alpha", alpha, "damping / attenuation parameter");
        opts.add_double_list("deltas", deltas, "comma list of error tolerances");
        opts.add_bool("no-rms", no_rms, "skip the exact reference (iterations only)");
        solver.declare(opts);
        opts.add_uint("node-cap", node_cap, "largest graph the rms reference accepts");
        opts.add_bool("force", force, "override the node cap");
        opts.add_uint("threads", threads, "worker cap for sweep rows");
        opts.add_string("out", out, "output path prefix");
    }

    int run(const KeyedOptions& opts) {
        std::vector<std::string> problems;
        graph.validate(problems);
        solver.validate(problems);
        if (measure != "lapr" && measure != "laac" && measure != "ac")
            problems.push_back("measure: must be lapr|laac|ac");
        if (!(alpha >= 0.0 && alpha < 1.0))
            problems.push_back("alpha: must be in [0,1)");
        if (deltas.empty())
            problems.push_back("deltas: at least one value");
        for (double d : deltas)
            if (!(d > 0.0 && d <= 1.0)) {
                problems.push_back("deltas: every value must be in (0,1]");
                break;
            }
        if (!problems.empty())
            fail_config(problems);

        const DirectedGraph g = graph.load();
        if (!no_rms)
            guard_node_cap(g, node_cap, force, "rms reference (use --no-rms)");
        SweepOptions so;
        so.compute_rms = !no_rms;
        so.starting.kind = starting_kind_from_string(solver.starting);
        so.conditioning = solver.conditioning();
        so.exact_tol = solver.tol;
        so.exact_max_iter = solver.max_iter;
        so.threads = threads;
        const auto rows = delta_sweep(g, measure_from_string(measure), alpha, deltas, so);
        std::ostringstream csv;
        write_sweep_csv(csv, rows, opts.config_lines());
        write_file(out + ".sweep.csv", csv.str());
        return 0;
    }
};

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateCmd {
    GraphOptions graph;
    SolverOptions solver;
    std::string log_path;
    std::vector<std::string> measures{"ac", "laac"};
    // preset grid: the attenuations historically used for follower-graph
    // influence studies at small and large interaction scales
    std::vector<double> alphas{0.0001, 0.0009, 0.9};
    std::string mode = "exact";
    double delta = 0.1;
    std::uint32_t min_items = 2;
    std::uint32_t min_rebroadcasts = 10;
    bool all_rebroadcasters = false;
    std::uint32_t node_cap = 50'000;
    bool force = false;
    std::uint32_t threads = default_threads();
    std::string out = "lacent";

    void declare(KeyedOptions& opts) {
        graph.declare(opts);
        opts.add_string("log", log_path, "broadcast log CSV (item_id,user_id,seq)");
        opts.add_string_list("measures", measures, "comma list of measures to rank");
        opts.add_double_list("alphas", alphas, "comma list of alpha values");
        opts.add_string("mode", mode, "solver mode: exact|approx");
        opts.add_double("delta", delta, "error tolerance (approx mode)");
        solver.declare(opts);
        opts.add_uint("min-items", min_items, "min qualifying items per user");
        opts.add_uint("min-rebroadcasts", min_rebroadcasts,
                      "min distinct rebroadcasts for an item to qualify");
        opts.add_bool("all-rebroadcasters", all_rebroadcasters,
                      "score all rebroadcasters, not just followers");
        opts.add_uint("node-cap", node_cap, "largest graph the exact solvers accept");
        opts.add_bool("force", force, "override the node cap");
        opts.add_uint("threads", threads, "worker cap for report rows");
        opts.add_string("out", out, "output path prefix");
    }

    int run(const KeyedOptions& opts) {
        std::vector<std::string> problems;
        graph.validate(problems);
        solver.validate(problems);
        if (log_path.empty())
            problems.push_back("log: required");
        if (measures.empty())
            problems.push_back("measures: at least one");
        std::vector<Measure> ms;
        for (const auto& name : measures) {
            try {
                ms.push_back(measure_from_string(name));
            } catch (const ParamError&) {
                problems.push_back("measures: unknown measure '" + name + "'");
            }
        }
        if (alphas.empty())
            problems.push_back("alphas: at least one");
        for (double a : alphas)
            if (!(a >= 0.0 && a < 1.0)) {
                problems.push_back("alphas: every value must be in [0,1)");
                break;
            }
        if (mode != "exact" && mode != "approx")
            problems.push_back("mode: must be exact|approx");
        if (mode == "approx" && !(delta > 0.0 && delta <= 1.0))
            problems.push_back("delta: must be in (0,1]");
        if (!problems.empty())
            fail_config(problems);

        const DirectedGraph g = graph.load();
        if (mode == "exact")
            guard_node_cap(g, node_cap, force, "exact solve");
        std::ifstream in(log_path);
        if (!in)
            throw Error("cannot open log file: " + log_path);
        const auto log = read_log_csv(in);

        ReportOptions ro;
        ro.filter = {.min_items = min_items,
                     .min_rebroadcasts = min_rebroadcasts,
                     .followers_only = !all_rebroadcasters};
        if (mode == "approx")
            ro.delta = delta;
        ro.conditioning = solver.conditioning();
        ro.exact_tol = solver.tol;
        ro.exact_max_iter = solver.max_iter;
        ro.threads = threads;
        const auto rows = correlation_report(g, log, ms, alphas, ro);
        std::ostringstream csv;
        write_report_csv(csv, rows, opts.config_lines());
        write_file(out + ".report.csv", csv.str());
        return 0;
    }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
    GraphOptions graph;
    double alpha = 0.5;
    std::uint32_t items_per_user = 1;
    std::uint64_t seed = 1;
    double eps_deg = 0.01;
    std::string cond_mode = "all";
    std::uint32_t threads = default_threads();
    std::string out = "lacent";

    void declare(KeyedOptions& opts) {
        graph.declare(opts);
        opts.add_double("alpha", alpha, "per-link transmission scale (0,1]");
        opts.add_uint("items-per-user", items_per_user, "items submitted by each user");
        opts.add_uint64("seed", seed, "RNG seed; cascades are exactly reproducible");
        opts.add_double("eps-deg", eps_deg, "degree conditioning constant");
        opts.add_string("cond-mode", cond_mode, "conditioning mode: all|zero");
        opts.add_uint("threads", threads, "worker cap (kept at 1 for bit-reproducibility)");
        opts.add_string("out", out, "output path prefix");
    }

    int run(const KeyedOptions& opts) {
        std::vector<std::string> problems;
        graph.validate(problems);
        if (!(alpha > 0.0 && alpha <= 1.0))
            problems.push_back("alpha: must be in (0,1]");
        if (items_per_user == 0)
            problems.push_back("items-per-user: must be > 0");
        if (cond_mode != "all" && cond_mode != "zero")
            problems.push_back("cond-mode: must be all|zero");
        if (eps_deg < 0.0)
            problems.push_back("eps-deg: must be >= 0");
        if (!problems.empty())
            fail_config(problems);

        const DirectedGraph g = graph.load();
        const DegreeConditioning cond{
            .epsilon_deg = eps_deg,
            .mode = cond_mode == "zero" ? DegreeConditioning::Mode::zero_degrees_only
                                        : DegreeConditioning::Mode::all_degrees};
        const auto log = simulate_la_cascades(g, alpha, items_per_user, seed, cond);
        std::ostringstream csv;
        write_log_csv(csv, log, opts.config_lines());
        write_file(out + ".log.csv", csv.str());
        return 0;
    }
};

template <class Cmd>
int dispatch(Cmd& cmd, KeyedOptions& opts) {
    opts.finalize();
    if (opts.dump_requested()) {
        std::cout << opts.dump();
        return 0;
    }
    return cmd.run(opts);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"limited-attention centrality toolkit: exact and push-based "
                 "solvers, tolerance sweeps, cascade simulation, and "
                 "influence-ranking evaluation"};
    app.require_subcommand(1);

    auto* compute_sub = app.add_subcommand(
        "compute", "compute one centrality vector (exact or approximate)");
    ComputeCmd compute;
    KeyedOptions compute_opts(compute_sub);
    compute.declare(compute_opts);

    auto* sweep_sub =
        app.add_subcommand("sweep", "run the approximate solver over a list of tolerances");
    SweepCmd sweep;
    KeyedOptions sweep_opts(sweep_sub);
    sweep.declare(sweep_opts);

    auto* evaluate_sub = app.add_subcommand(
        "evaluate", "correlate centrality rankings with empirical influence");
    EvaluateCmd evaluate;
    KeyedOptions evaluate_opts(evaluate_sub);
    evaluate.declare(evaluate_opts);

    auto* simulate_sub =
        app.add_subcommand("simulate", "generate a broadcast log of seeded cascades");
    SimulateCmd simulate;
    KeyedOptions simulate_opts(simulate_sub);
    simulate.declare(simulate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (compute_sub->parsed())
            return dispatch(compute, compute_opts);
        if (sweep_sub->parsed())
            return dispatch(sweep, sweep_opts);
        if (evaluate_sub->parsed())
            return dispatch(evaluate, evaluate_opts);
        if (simulate_sub->parsed())
            return dispatch(simulate, simulate_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
