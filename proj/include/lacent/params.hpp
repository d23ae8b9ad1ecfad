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
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lacent/error.hpp"
#include "lacent/graph.hpp"

namespace lacent {

/// The four centrality measures.
///  - pr:   random walk with restarts (row-stochastic transfer).
///  - lapr: the same walk when a node's capacity to receive it is divided
///          over its in-links (transfer scaled by 1/d_in of the target).
///  - ac:   attenuated path counts / broadcast steady state.
///  - laac: attenuated broadcasts received with probability 1/d_in.
enum class Measure { pr, lapr, ac, laac };

inline std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::pr: return "pr";
    case Measure::lapr: return "lapr";
    case Measure::ac: return "ac";
    case Measure::laac: return "laac";
    }
    return "?";
}

inline Measure measure_from_string(std::string_view s) {
    if (s == "pr") return Measure::pr;
    if (s == "lapr") return Measure::lapr;
    if (s == "ac") return Measure::ac;
    if (s == "laac") return Measure::laac;
    throw ParamError("unknown measure '" + std::string(s) + "' (pr|lapr|ac|laac)");
}

/// Source/restart vector selector. measure_default resolves to the
/// conventional choice for each measure: uniform for pr and lapr,
/// out-degree for ac, and the attention-weighted out-degree
/// s[i] = sum_{j in N_out(i)} 1/d_in_c(j) for laac.
struct StartingVector {
    enum class Kind {
        measure_default,
        uniform,           // e / |V|
        indegree_inverse,  // s[j] = 1 / d_in_c(j)
        out_degree,        // s[i] = d_out(i)
        la_out_degree,     // s[i] = sum_{j in N_out(i)} 1 / d_in_c(j)
        custom
    };
    Kind kind = Kind::measure_default;
    std::vector<double> custom_values;

    static StartingVector uniform() { return {Kind::uniform, {}}; }
    static StartingVector indegree_inverse() { return {Kind::indegree_inverse, {}}; }
    static StartingVector out_degree() { return {Kind::out_degree, {}}; }
    static StartingVector la_out_degree() { return {Kind::la_out_degree, {}}; }
    static StartingVector custom(std::vector<double> values) {
        return {Kind::custom, std::move(values)};
    }
};

inline std::string_view to_string(StartingVector::Kind k) {
    switch (k) {
    case StartingVector::Kind::measure_default: return "default";
    case StartingVector::Kind::uniform: return "uniform";
    case StartingVector::Kind::indegree_inverse: return "indegree-inverse";
    case StartingVector::Kind::out_degree: return "out-degree";
    case StartingVector::Kind::la_out_degree: return "la-out-degree";
    case StartingVector::Kind::custom: return "custom";
    }
    return "?";
}

inline StartingVector::Kind starting_kind_from_string(std::string_view s) {
    if (s == "default") return StartingVector::Kind::measure_default;
    if (s == "uniform") return StartingVector::Kind::uniform;
    if (s == "indegree-inverse") return StartingVector::Kind::indegree_inverse;
    if (s == "out-degree") return StartingVector::Kind::out_degree;
    if (s == "la-out-degree") return StartingVector::Kind::la_out_degree;
    throw ParamError("unknown starting vector '" + std::string(s) + "'");
}

/// Shared knobs of the exact solvers.
struct CentralityParams {
    double alpha = 0.85;
    StartingVector starting;
    double tol = 1e-10;       // infinity-norm change between sweeps
    std::uint32_t max_iter = 10'000;
    DegreeConditioning conditioning;
};

/// Node scores plus the provenance needed to reproduce them.
struct ScoreVector {
    std::vector<double> scores;
    Measure measure = Measure::pr;
    CentralityParams params;
    std::uint32_t iterations_used = 0;
    bool converged = true;
};

inline void validate_params(const DirectedGraph& g, const CentralityParams& p) {
    std::string problems;
    auto complain = [&](const std::string& s) {
        if (!problems.empty())
            problems += "; ";
        problems += s;
    };
    if (!(p.alpha >= 0.0 && p.alpha < 1.0))
        complain("alpha must be in [0,1)");
    if (!(p.tol > 0.0))
        complain("tol must be positive");
    if (p.max_iter == 0)
        complain("max_iter must be positive");
    if (p.starting.kind == StartingVector::Kind::custom) {
        const auto& s = p.starting.custom_values;
        if (s.size() != g.node_count())
            complain("custom starting vector length must equal node count");
        bool nonneg = true, nonzero = false;
        for (double v : s) {
            if (v < 0.0) nonneg = false;
            if (v != 0.0) nonzero = true;
        }
        if (!nonneg)
            complain("custom starting vector entries must be >= 0");
        if (!nonzero)
            complain("custom starting vector must not be all zero");
    }
    if (!problems.empty())
        throw ParamError(problems);
}

/// Materialize the starting vector for a measure.
inline std::vector<double> resolve_starting(const DirectedGraph& g,
                                            const ConditionedDegrees& deg,
                                            Measure measure,
                                            const StartingVector& sv) {
    const NodeId n = g.node_count();
    auto kind = sv.kind;
    if (kind == StartingVector::Kind::measure_default) {
        switch (measure) {
        case Measure::pr:
        case Measure::lapr: kind = StartingVector::Kind::uniform; break;
        case Measure::ac: kind = StartingVector::Kind::out_degree; break;
        case Measure::laac: kind = StartingVector::Kind::la_out_degree; break;
        }
    }
    std::vector<double> s(n, 0.0);
    switch (kind) {
    case StartingVector::Kind::uniform:
        if (n > 0)
            std::fill(s.begin(), s.end(), 1.0 / static_cast<double>(n));
        break;
    case StartingVector::Kind::indegree_inverse:
        for (NodeId u = 0; u < n; ++u)
            s[u] = 1.0 / deg.d_in_c[u];
        break;
    case StartingVector::Kind::out_degree:
        for (NodeId u = 0; u < n; ++u)
            s[u] = static_cast<double>(g.out_degree(u));
        break;
    case StartingVector::Kind::la_out_degree:
        for (NodeId u = 0; u < n; ++u) {
            double acc = 0.0;
            for (NodeId v : g.out_neighbors(u))
                acc += 1.0 / deg.d_in_c[v];
            s[u] = acc;
        }
        break;
    case StartingVector::Kind::custom:
        if (sv.custom_values.size() != n)
            throw ParamError("custom starting vector length must equal node count");
        s = sv.custom_values;
        break;
    case StartingVector::Kind::measure_default:
        break; // unreachable
    }
    return s;
}

inline double l1_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v)
        acc += std::abs(x);
    return acc;
}

inline double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace lacent
