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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lacent/error.hpp"

namespace lacent {

using NodeId = std::uint32_t;

/// How an edge-list text stream is interpreted.
struct EdgeListOptions {
    enum class Sep { any_whitespace, tab, space, comma };
    /// Field separator. The default accepts any run of blanks, which covers
    /// tab-separated snapshot files as well as space-separated ones.
    Sep sep = Sep::any_whitespace;
    /// Expand each input line to both directions.
    bool undirected = false;
    /// With zero_based/one_based, labels must be integers and are kept as
    /// node ids (minus the base), so ids referenced but never listed become
    /// isolated nodes. With labels, arbitrary strings are densely renumbered
    /// in order of first appearance.
    enum class IdMode { labels, zero_based, one_based };
    IdMode ids = IdMode::labels;
};

/// Immutable directed graph with binary adjacency: forward and reverse
/// neighbor lists in CSR form plus the original node labels. Duplicate edges
/// are collapsed and self-loops dropped at construction, so every instance
/// satisfies the adjacency invariants by construction. Safe to share across
/// threads once built.
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Build from labels and an id-based edge list. Edges are sanitized
    /// (self-loops removed, duplicates collapsed); ids must be < labels.size().
    DirectedGraph(std::vector<std::string> labels,
                  std::vector<std::pair<NodeId, NodeId>> edges)
        : labels_(std::move(labels)) {
        const auto n = static_cast<NodeId>(labels_.size());
        for (auto& [u, v] : edges)
            if (u >= n || v >= n)
                throw ParamError("edge endpoint out of range");
        std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        build_csr(edges);
        label_index_.reserve(labels_.size());
        for (NodeId u = 0; u < n; ++u)
            label_index_.emplace(labels_[u], u);
    }

    NodeId node_count() const noexcept { return static_cast<NodeId>(labels_.size()); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {out_targets_.data() + out_offsets_[u],
                out_targets_.data() + out_offsets_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId u) const {
        return {in_sources_.data() + in_offsets_[u],
                in_sources_.data() + in_offsets_[u + 1]};
    }

    std::uint32_t out_degree(NodeId u) const {
        return static_cast<std::uint32_t>(out_offsets_[u + 1] - out_offsets_[u]);
    }
    std::uint32_t in_degree(NodeId u) const {
        return static_cast<std::uint32_t>(in_offsets_[u + 1] - in_offsets_[u]);
    }

    const std::string& label(NodeId u) const { return labels_[u]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::optional<NodeId> find_label(std::string_view name) const {
        auto it = label_index_.find(std::string(name));
        if (it == label_index_.end())
            return std::nullopt;
        return it->second;
    }

private:
    void build_csr(const std::vector<std::pair<NodeId, NodeId>>& edges) {
        const NodeId n = node_count();
        out_offsets_.assign(n + 1, 0);
        in_offsets_.assign(n + 1, 0);
        for (const auto& [u, v] : edges) {
            ++out_offsets_[u + 1];
            ++in_offsets_[v + 1];
        }
        for (NodeId i = 0; i < n; ++i) {
            out_offsets_[i + 1] += out_offsets_[i];
            in_offsets_[i + 1] += in_offsets_[i];
        }
        out_targets_.resize(edges.size());
        in_sources_.resize(edges.size());
        std::vector<std::size_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
        std::vector<std::size_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            out_targets_[out_pos[u]++] = v;
            in_sources_[in_pos[v]++] = u;
        }
        // edges arrive sorted by (u,v), so out lists are sorted; sort in lists
        // for deterministic iteration order.
        for (NodeId v = 0; v < n; ++v) {
            auto first = in_sources_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v]);
            auto last = in_sources_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v + 1]);
            std::sort(first, last);
        }
    }

    std::vector<std::size_t> out_offsets_{0};
    std::vector<std::size_t> in_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<NodeId> in_sources_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_index_;
};

namespace detail {

inline bool split_line(const std::string& line, EdgeListOptions::Sep sep,
                       std::string& a, std::string& b) {
    if (sep == EdgeListOptions::Sep::any_whitespace) {
        std::istringstream iss(line);
        std::string extra;
        if (!(iss >> a >> b))
            return false;
        if (iss >> extra)
            return false;
        return true;
    }
    const char c = sep == EdgeListOptions::Sep::tab     ? '\t'
                   : sep == EdgeListOptions::Sep::space ? ' '
                                                        : ',';
    const auto pos = line.find(c);
    if (pos == std::string::npos)
        return false;
    if (line.find(c, pos + 1) != std::string::npos)
        return false;
    a = line.substr(0, pos);
    b = line.substr(pos + 1);
    // Tolerate trailing carriage returns and padding around fields.
    auto trim = [](std::string& s) {
        const auto b1 = s.find_first_not_of(" \t\r");
        const auto e1 = s.find_last_not_of(" \t\r");
        s = (b1 == std::string::npos) ? std::string{} : s.substr(b1, e1 - b1 + 1);
    };
    trim(a);
    trim(b);
    return !a.empty() && !b.empty();
}

} // namespace detail

/// Read a directed graph from `src<sep>dst` lines. Lines starting with '#'
/// are comments; blank lines are skipped. Malformed lines raise ParseError
/// carrying the 1-based line number.
inline DirectedGraph parse_edge_list(std::istream& in, const EdgeListOptions& opts = {}) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;

    const bool integer_ids = opts.ids != EdgeListOptions::IdMode::labels;
    const std::uint64_t base = opts.ids == EdgeListOptions::IdMode::one_based ? 1 : 0;
    std::uint64_t max_id = 0;
    bool any_node = false;

    auto intern = [&](const std::string& name, std::size_t line_no) -> NodeId {
        if (integer_ids) {
            std::uint64_t value = 0;
            if (name.empty() || name.size() > 18 ||
                name.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("node id '" + name + "' is not a non-negative integer", line_no);
            for (char ch : name)
                value = value * 10 + static_cast<std::uint64_t>(ch - '0');
            if (value < base)
                throw ParseError("node id '" + name + "' below the configured base", line_no);
            const std::uint64_t id = value - base;
            any_node = true;
            max_id = std::max(max_id, id);
            return static_cast<NodeId>(id);
        }
        auto [it, inserted] = ids.emplace(name, static_cast<NodeId>(labels.size()));
        if (inserted)
            labels.push_back(name);
        return it->second;
    };

    std::string line, a, b;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#')
            continue;
        if (!detail::split_line(line, opts.sep, a, b))
            throw ParseError("expected 'source<sep>target'", line_no);
        const NodeId u = intern(a, line_no);
        const NodeId v = intern(b, line_no);
        edges.emplace_back(u, v);
        if (opts.undirected)
            edges.emplace_back(v, u);
    }

    if (integer_ids) {
        const std::uint64_t n = any_node ? max_id + 1 : 0;
        labels.resize(n);
        for (std::uint64_t i = 0; i < n; ++i)
            labels[i] = std::to_string(i + base);
    }
    return DirectedGraph(std::move(labels), std::move(edges));
}

inline DirectedGraph parse_edge_list(std::string_view text, const EdgeListOptions& opts = {}) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, opts);
}

inline DirectedGraph load_edge_list(const std::filesystem::path& path,
                                    const EdgeListOptions& opts = {}) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open edge list file: " + path.string());
    return parse_edge_list(in, opts);
}

/// Reverse every edge. Labels are preserved; transpose(transpose(g)) == g.
inline DirectedGraph transpose(const DirectedGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.out_neighbors(u))
            edges.emplace_back(v, u);
    return DirectedGraph(g.labels(), std::move(edges));
}

/// Canonical text form: `src<TAB>dst` lines sorted by (src label, dst label).
/// Parsing this output again reproduces the same labeled edge set.
inline void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    std::vector<std::pair<std::string_view, std::string_view>> rows;
    rows.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.out_neighbors(u))
            rows.emplace_back(g.label(u), g.label(v));
    std::sort(rows.begin(), rows.end());
    for (const auto& [s, t] : rows)
        out << s << '\t' << t << '\n';
}

inline std::string canonical_edge_list(const DirectedGraph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

/// Additive smoothing applied to degrees before they are used as divisors.
struct DegreeConditioning {
    enum class Mode { all_degrees, zero_degrees_only };
    double epsilon_deg = 0.01;
    Mode mode = Mode::all_degrees;

    /// No-op conditioning; valid only on graphs without zero degrees in
    /// divisor position.
    static DegreeConditioning none() {
        return {.epsilon_deg = 0.0, .mode = Mode::zero_degrees_only};
    }
};

/// Positive real degree views. Adjacency is untouched; only divisors change.
struct ConditionedDegrees {
    std::vector<double> d_out_c;
    std::vector<double> d_in_c;
};

inline ConditionedDegrees condition_degrees(const DirectedGraph& g,
                                            const DegreeConditioning& c) {
    ConditionedDegrees out;
    out.d_out_c.resize(g.node_count());
    out.d_in_c.resize(g.node_count());
    auto conditioned = [&](std::uint32_t d) -> double {
        if (c.mode == DegreeConditioning::Mode::all_degrees)
            return static_cast<double>(d) + c.epsilon_deg;
        return d > 0 ? static_cast<double>(d) : c.epsilon_deg;
    };
    for (NodeId u = 0; u < g.node_count(); ++u) {
        out.d_out_c[u] = conditioned(g.out_degree(u));
        out.d_in_c[u] = conditioned(g.in_degree(u));
        if (out.d_out_c[u] <= 0.0 || out.d_in_c[u] <= 0.0)
            throw ConditioningError("node '" + g.label(u) +
                                    "' would get a zero conditioned degree; "
                                    "set epsilon_deg > 0");
    }
    return out;
}

/// Raw (unconditioned) degree maxima. Threshold formulas divide by these.
struct MaxDegrees {
    std::uint32_t d_max_out = 0;
    std::uint32_t d_max_in = 0;
};

inline MaxDegrees max_degrees(const DirectedGraph& g) {
    if (g.edge_count() == 0)
        throw EmptyGraphError();
    MaxDegrees m;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        m.d_max_out = std::max(m.d_max_out, g.out_degree(u));
        m.d_max_in = std::max(m.d_max_in, g.in_degree(u));
    }
    return m;
}

} // namespace lacent
