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

#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacent/eval.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"
#include "lacent/push.hpp"

namespace lacent {

/// Shortest decimal form that round-trips exactly; identical across runs.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

/// `# key=value` comment lines carrying the effective configuration; emitted
/// ahead of the header row of every CSV artifact so outputs are
/// self-describing and reproducible.
using ConfigLines = std::vector<std::pair<std::string, std::string>>;

/// Free-text fields (error messages, notes) live in the last CSV column;
/// commas inside them would break the column count.
inline std::string csv_safe(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n')
            c = ';';
    return text;
}

inline void write_config_comments(std::ostream& out, const ConfigLines& config) {
    for (const auto& [k, v] : config)
        out << "# " << k << '=' << v << '\n';
}

/// `node_label,score` rows sorted by descending score, ties by label.
inline void write_scores_csv(std::ostream& out, const ScoreVector& sv,
                             const DirectedGraph& g, const ConfigLines& config = {}) {
    if (sv.scores.size() != g.node_count())
        throw ShapeError("score vector does not match the graph");
    write_config_comments(out, config);
    out << "node_label,score\n";
    std::vector<NodeId> order(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (sv.scores[a] != sv.scores[b])
            return sv.scores[a] > sv.scores[b];
        return g.label(a) < g.label(b);
    });
    for (NodeId i : order)
        out << g.label(i) << ',' << format_double(sv.scores[i]) << '\n';
}

inline nlohmann::ordered_json to_json(const DegreeConditioning& c) {
    return {{"epsilon_deg", c.epsilon_deg},
            {"mode", c.mode == DegreeConditioning::Mode::all_degrees ? "all-degrees"
                                                                     : "zero-degrees-only"}};
}

inline nlohmann::ordered_json to_json(const CentralityParams& p) {
    return {{"alpha", p.alpha},
            {"starting", std::string(to_string(p.starting.kind))},
            {"tol", p.tol},
            {"max_iter", p.max_iter},
            {"conditioning", to_json(p.conditioning)}};
}

/// Params snapshot and convergence metadata alongside the scores.
inline nlohmann::ordered_json to_json(const ScoreVector& sv, const DirectedGraph& g) {
    nlohmann::ordered_json scores = nlohmann::ordered_json::array();
    for (NodeId i = 0; i < g.node_count(); ++i)
        scores.push_back({g.label(i), sv.scores[i]});
    return {{"measure", std::string(to_string(sv.measure))},
            {"params", to_json(sv.params)},
            {"iterations_used", sv.iterations_used},
            {"converged", sv.converged},
            {"scores", std::move(scores)}};
}

inline nlohmann::ordered_json to_json(const PushStats& st) {
    return {{"measure", std::string(to_string(st.measure))},
            {"alpha", st.alpha},
            {"delta", st.delta},
            {"epsilon", st.epsilon},
            {"pushes", st.pushes},
            {"theoretical_bound", st.theoretical_bound},
            {"bound_note", "||s||1/((1-alpha)*epsilon*d_max); attenuation constant taken as alpha"},
            {"residual_l1_final", st.residual_l1_final},
            {"wall_time_ms", st.wall_time_ms}};
}

/// `delta,pushes,theoretical_bound,rms_error,wall_time_ms`; rms_error is
/// empty in iterations-only mode and the error column carries per-row solver
/// failures.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows,
                            const ConfigLines& config = {}) {
    write_config_comments(out, config);
    out << "delta,pushes,theoretical_bound,rms_error,wall_time_ms,error\n";
    for (const auto& r : rows) {
        out << format_double(r.delta) << ',';
        if (!r.error) {
            out << r.pushes << ',' << format_double(r.theoretical_bound) << ','
                << (r.rms ? format_double(*r.rms) : std::string{}) << ','
                << format_double(r.wall_time_ms) << ',';
        } else {
            out << ",,,," << csv_safe(*r.error);
        }
        out << '\n';
    }
}

/// `measure,alpha,delta,rho,n_users,transposed`; rho is "nan" for undefined
/// rows, delta is empty for exact runs.
inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                             const ConfigLines& config = {}) {
    write_config_comments(out, config);
    out << "measure,alpha,delta,rho,n_users,transposed,note\n";
    for (const auto& r : rows) {
        out << to_string(r.measure) << ',' << format_double(r.alpha) << ','
            << (r.delta ? format_double(*r.delta) : std::string{}) << ','
            << (r.rho.defined ? format_double(r.rho.rho) : std::string("nan")) << ','
            << r.n_users << ',' << (r.transposed ? "true" : "false") << ','
            << csv_safe(r.error ? *r.error : r.rho.note) << '\n';
    }
}

/// `item_id,user_id,seq` with header.
inline void write_log_csv(std::ostream& out, const BroadcastLog& log,
                          const ConfigLines& config = {}) {
    write_config_comments(out, config);
    out << "item_id,user_id,seq\n";
    for (const auto& rec : log.records)
        out << rec.item_id << ',' << rec.user_id << ',' << rec.seq << '\n';
}

/// Reads the format written by write_log_csv; '#' comment lines and the
/// header are skipped. Labels must not contain commas.
inline BroadcastLog read_log_csv(std::istream& in) {
    BroadcastLog log;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true; // first non-comment line is the header
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw ParseError("expected 'item_id,user_id,seq'", line_no);
        BroadcastRecord rec;
        rec.item_id = line.substr(0, c1);
        rec.user_id = line.substr(c1 + 1, c2 - c1 - 1);
        try {
            rec.seq = std::stoll(line.substr(c2 + 1));
        } catch (const std::exception&) {
            throw ParseError("seq is not an integer", line_no);
        }
        log.records.push_back(std::move(rec));
    }
    return log;
}

} // namespace lacent
