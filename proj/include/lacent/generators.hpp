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

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lacent/graph.hpp"
#include "lacent/rng.hpp"

namespace lacent {

namespace detail {

inline std::vector<std::string> numeric_labels(NodeId n) {
    std::vector<std::string> labels(n);
    for (NodeId i = 0; i < n; ++i)
        labels[i] = std::to_string(i);
    return labels;
}

} // namespace detail

/// G(n, p): every ordered pair (u, v), u != v, becomes an edge independently
/// with probability p. Deterministic per seed. Quadratic scan; meant for
/// test-sized graphs.
inline DirectedGraph erdos_renyi_directed(NodeId n, double p, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v) {
            if (u == v)
                continue;
            if (rng.next_double() < p)
                edges.emplace_back(u, v);
        }
    return DirectedGraph(detail::numeric_labels(n), std::move(edges));
}

/// Exactly m distinct directed edges sampled uniformly among ordered pairs
/// without self-loops. With no_isolated, a random spanning cycle is placed
/// first (requires m >= n) so every node appears in some edge, like real
/// snapshot files where nodes exist only by being mentioned.
inline DirectedGraph random_directed_fixed_edges(NodeId n, std::size_t m,
                                                 std::uint64_t seed,
                                                 bool no_isolated = false) {
    const std::uint64_t max_edges =
        static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0);
    if (m > max_edges)
        throw ParamError("requested more edges than distinct ordered pairs");
    SplitMix64 rng(seed);
    std::set<std::pair<NodeId, NodeId>> picked;
    if (no_isolated) {
        if (m < n)
            throw ParamError("no_isolated needs at least as many edges as nodes");
        std::vector<NodeId> perm(n);
        for (NodeId i = 0; i < n; ++i)
            perm[i] = i;
        for (NodeId i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.next_below(i)]);
        for (NodeId i = 0; i < n; ++i)
            picked.emplace(perm[i], perm[(i + 1) % n]);
    }
    while (picked.size() < m) {
        const auto u = static_cast<NodeId>(rng.next_below(n));
        const auto v = static_cast<NodeId>(rng.next_below(n));
        if (u == v)
            continue;
        picked.emplace(u, v);
    }
    return DirectedGraph(detail::numeric_labels(n),
                         {picked.begin(), picked.end()});
}

/// Undirected ring of n nodes plus `chords` random extra undirected edges,
/// expanded to both directions. Mesh-like topology in the spirit of
/// infrastructure networks; n + chords undirected edges in total.
inline DirectedGraph ring_with_chords(NodeId n, std::size_t chords, std::uint64_t seed) {
    if (n < 3)
        throw ParamError("ring needs at least 3 nodes");
    SplitMix64 rng(seed);
    std::set<std::pair<NodeId, NodeId>> undirected;
    for (NodeId i = 0; i < n; ++i) {
        const NodeId j = (i + 1) % n;
        undirected.emplace(std::min(i, j), std::max(i, j));
    }
    const std::size_t want = undirected.size() + chords;
    while (undirected.size() < want) {
        const auto u = static_cast<NodeId>(rng.next_below(n));
        const auto v = static_cast<NodeId>(rng.next_below(n));
        if (u == v)
            continue;
        undirected.emplace(std::min(u, v), std::max(u, v));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(2 * undirected.size());
    for (const auto& [u, v] : undirected) {
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
    }
    return DirectedGraph(detail::numeric_labels(n), std::move(edges));
}

/// Follower graph with heavy-tailed follower counts. Nodes arrive one at a
/// time and follow between 1 and max_follows earlier nodes; each choice is
/// preferential (proportional to current follower count + 1) with probability
/// attach_bias, otherwise uniform, and is reciprocated with probability
/// `reciprocal`. Following B creates edge B -> new node, so out-degree counts
/// followers and in-degree counts friends followed.
inline DirectedGraph preferential_attachment_followers(NodeId n, std::uint64_t seed,
                                                       std::uint32_t max_follows = 10,
                                                       double attach_bias = 0.7,
                                                       double reciprocal = 0.25) {
    if (n < 2)
        throw ParamError("need at least 2 nodes");
    SplitMix64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> urn; // node appears once per follower, plus once flat
    urn.push_back(0);
    for (NodeId u = 1; u < n; ++u) {
        const std::uint64_t cap = std::min<std::uint64_t>(max_follows, u);
        const auto k = static_cast<std::uint32_t>(1 + rng.next_below(cap));
        std::set<NodeId> targets;
        std::size_t attempts = 0;
        while (targets.size() < k && attempts < 16u * k) {
            ++attempts;
            NodeId t;
            if (rng.next_double() < attach_bias)
                t = urn[rng.next_below(urn.size())];
            else
                t = static_cast<NodeId>(rng.next_below(u));
            targets.insert(t);
        }
        for (NodeId t : targets) {
            edges.emplace_back(t, u);
            urn.push_back(t);
            if (rng.next_double() < reciprocal) {
                edges.emplace_back(u, t); // mutual follow
                urn.push_back(u);
            }
        }
        urn.push_back(u);
    }
    return DirectedGraph(detail::numeric_labels(n), std::move(edges));
}

} // namespace lacent
