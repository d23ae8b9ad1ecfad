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

#include <cmath>
#include <cstddef>
#include <vector>

#include "lacent/error.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"

namespace lacent {

/// Solve a*x = b in place by Gaussian elimination with partial pivoting.
/// `a` is n x n row-major and is destroyed. Throws SingularSystemError when a
/// pivot degenerates.
inline std::vector<double> gaussian_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n)
        throw ShapeError("matrix/vector size mismatch in gaussian_solve");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double cand = std::abs(a[row * n + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best < 1e-300)
            throw SingularSystemError("zero pivot at column " + std::to_string(col));
        if (pivot != col) {
            for (std::size_t k = col; k < n; ++k)
                std::swap(a[pivot * n + k], a[col * n + k]);
            std::swap(b[pivot], b[col]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] * inv;
            if (f == 0.0)
                continue;
            a[row * n + col] = 0.0;
            for (std::size_t k = col + 1; k < n; ++k)
                a[row * n + k] -= f * a[col * n + k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k)
            acc -= a[i * n + k] * x[k];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

inline constexpr NodeId kDenseOracleNodeCap = 2000;

/// Direct dense solve of the measure's defining linear system. This is the
/// test reference for the iterative and push-based solvers: it shares the
/// parameter semantics (conditioning, starting vectors) but none of the
/// solution path. Materializes an n x n matrix, so it refuses graphs above
/// kDenseOracleNodeCap nodes.
///
/// Systems solved, with W the conditioned transfer matrix of the measure:
///   pr/lapr:  (I - alpha W^T) x = (1-alpha) s      (row-vector recurrences)
///   ac/laac:  (I - alpha W)   x = s                (column-vector recurrences)
inline ScoreVector dense_solve_oracle(const DirectedGraph& g, Measure measure,
                                      const CentralityParams& p) {
    validate_params(g, p);
    const NodeId n = g.node_count();
    if (n > kDenseOracleNodeCap)
        throw ParamError("dense oracle supports at most " +
                         std::to_string(kDenseOracleNodeCap) + " nodes");
    const auto deg = condition_degrees(g, p.conditioning);
    auto s = resolve_starting(g, deg, measure, p.starting);

    // a := I - alpha * T where T is the iteration matrix acting on the
    // unknown column vector. For the walk measures the componentwise
    // recurrence for x[j] gathers from in-neighbors, for the broadcast
    // measures from out-neighbors.
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (NodeId i = 0; i < n; ++i)
        a[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double alpha = p.alpha;
    std::vector<double> b(n, 0.0);
    switch (measure) {
    case Measure::pr:
        for (NodeId j = 0; j < n; ++j)
            for (NodeId i : g.in_neighbors(j))
                a[static_cast<std::size_t>(j) * n + i] -= alpha / deg.d_out_c[i];
        for (NodeId j = 0; j < n; ++j)
            b[j] = (1.0 - alpha) * s[j];
        break;
    case Measure::lapr:
        for (NodeId j = 0; j < n; ++j)
            for (NodeId i : g.in_neighbors(j))
                a[static_cast<std::size_t>(j) * n + i] -= alpha / (deg.d_out_c[i] * deg.d_in_c[j]);
        for (NodeId j = 0; j < n; ++j)
            b[j] = (1.0 - alpha) * s[j];
        break;
    case Measure::ac:
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j : g.out_neighbors(i))
                a[static_cast<std::size_t>(i) * n + j] -= alpha;
        b = s;
        break;
    case Measure::laac:
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j : g.out_neighbors(i))
                a[static_cast<std::size_t>(i) * n + j] -= alpha / deg.d_in_c[j];
        b = s;
        break;
    }

    ScoreVector out;
    out.scores = gaussian_solve(std::move(a), std::move(b));
    out.measure = measure;
    out.params = p;
    out.iterations_used = 0;
    out.converged = true;
    return out;
}

} // namespace lacent
