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
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lacent/error.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"
#include "lacent/rng.hpp"

namespace lacent {

/// Which implicit matrix a spectral estimate refers to: the adjacency matrix
/// itself, or the attention-scaled variant whose entry (i,j) is
/// A[i,j]/d_in(j). Columns of the scaled variant with zero in-degree are zero,
/// so no conditioning is needed to define it.
enum class TransferMatrix { adjacency, la_adjacency };

struct SpectralEstimate {
    double value = 0.0;
    double last_rel_change = 0.0;
    std::uint32_t iters = 0;
};

inline constexpr std::uint64_t kSpectralDefaultSeed = 1;

/// Power-iteration estimate of the spectral radius. The reported value is the
/// geometric mean of the last few norm ratios, which is exact for permutation
/// structure (cycles) and converges for everything else; deterministic for a
/// fixed seed. Returns 0 for empty or edgeless graphs.
inline SpectralEstimate spectral_radius(const DirectedGraph& g, TransferMatrix which,
                                        std::uint32_t iters = 200,
                                        std::uint64_t seed = kSpectralDefaultSeed) {
    const NodeId n = g.node_count();
    if (n == 0 || g.edge_count() == 0 || iters == 0)
        return {0.0, 0.0, 0};

    std::vector<double> inv_in(n, 0.0);
    if (which == TransferMatrix::la_adjacency)
        for (NodeId v = 0; v < n; ++v)
            if (g.in_degree(v) > 0)
                inv_in[v] = 1.0 / static_cast<double>(g.in_degree(v));

    SplitMix64 rng(seed);
    std::vector<double> x(n), y(n);
    for (NodeId u = 0; u < n; ++u)
        x[u] = 0.5 + rng.next_double(); // positive start stays in the cone

    auto norm2 = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double t : v)
            acc += t * t;
        return std::sqrt(acc);
    };
    const double nx0 = norm2(x);
    for (NodeId u = 0; u < n; ++u)
        x[u] /= nx0;

    constexpr std::uint32_t kWindow = 12;
    std::vector<double> ratios;
    ratios.reserve(iters);
    double prev_ratio = 0.0;
    SpectralEstimate est;

    for (std::uint32_t k = 0; k < iters; ++k) {
        std::fill(y.begin(), y.end(), 0.0);
        // y = A x (or the scaled variant): walk rows, scatter to columns.
        for (NodeId u = 0; u < n; ++u) {
            const double xu = x[u];
            if (xu == 0.0)
                continue;
            for (NodeId v : g.out_neighbors(u))
                y[v] += which == TransferMatrix::adjacency ? xu : xu * inv_in[v];
        }
        const double ny = norm2(y);
        if (ny == 0.0) {
            // Nilpotent direction reached: radius 0.
            return {0.0, 0.0, k + 1};
        }
        const double ratio = ny;
        ratios.push_back(ratio);
        est.last_rel_change = prev_ratio > 0.0 ? std::abs(ratio - prev_ratio) / prev_ratio : 1.0;
        prev_ratio = ratio;
        for (NodeId u = 0; u < n; ++u)
            x[u] = y[u] / ny;
        est.iters = k + 1;
    }

    const std::size_t w = std::min<std::size_t>(kWindow, ratios.size());
    double log_acc = 0.0;
    for (std::size_t i = ratios.size() - w; i < ratios.size(); ++i)
        log_acc += std::log(ratios[i]);
    est.value = std::exp(log_acc / static_cast<double>(w));
    return est;
}

/// Fraction of 1/rho below which an attenuation is accepted. Power iteration
/// can under-estimate the radius, and running past the boundary diverges
/// silently, so the gate is conservative.
inline constexpr double kSpectralSafetyMargin = 0.99;

/// Largest alpha accepted for the given transfer matrix; infinity when the
/// estimated radius is zero (acyclic case).
inline double divergence_threshold(const DirectedGraph& g, TransferMatrix which) {
    const double rho = spectral_radius(g, which).value;
    if (rho <= 0.0)
        return std::numeric_limits<double>::infinity();
    return kSpectralSafetyMargin / rho;
}

inline void check_divergence_gate(const DirectedGraph& g, TransferMatrix which, double alpha) {
    const double rho = spectral_radius(g, which).value;
    if (rho > 0.0 && alpha >= kSpectralSafetyMargin / rho)
        throw DivergenceError(
            "alpha = " + std::to_string(alpha) + " is at or beyond " +
            std::to_string(kSpectralSafetyMargin) + "/rho_hat with rho_hat = " +
            std::to_string(rho) + "; the fixed point does not converge there");
}

namespace detail {

template <class Sweep>
ScoreVector fixed_point(const DirectedGraph& g, const CentralityParams& p, Measure measure,
                        std::vector<double> start, Sweep&& sweep) {
    ScoreVector result;
    result.measure = measure;
    result.params = p;
    const NodeId n = g.node_count();
    std::vector<double> cur = start;
    std::vector<double> next(n, 0.0);
    result.converged = false;
    std::uint32_t it = 0;
    for (; it < p.max_iter; ++it) {
        sweep(cur, next);
        const double delta = linf_diff(cur, next);
        cur.swap(next);
        if (delta < p.tol) {
            result.converged = true;
            ++it;
            break;
        }
    }
    result.iterations_used = std::min(it, p.max_iter);
    result.scores = std::move(cur);
    return result;
}

} // namespace detail

/// Fixed point of  pr[j] = (1-alpha) s[j] + alpha * sum_{i in N_in(j)} pr[i]/d_out_c(i).
/// Dangling nodes are handled by degree conditioning alone; there is no
/// teleport-mass redistribution, so the score sum equals ||s||_1 only when
/// every node has out-links and conditioning is a no-op.
inline ScoreVector pagerank_exact(const DirectedGraph& g, const CentralityParams& p) {
    validate_params(g, p);
    const auto deg = condition_degrees(g, p.conditioning);
    auto s = resolve_starting(g, deg, Measure::pr, p.starting);
    const double alpha = p.alpha;
    auto sweep = [&](const std::vector<double>& cur, std::vector<double>& next) {
        for (NodeId j = 0; j < g.node_count(); ++j) {
            double acc = 0.0;
            for (NodeId i : g.in_neighbors(j))
                acc += cur[i] / deg.d_out_c[i];
            next[j] = (1.0 - alpha) * s[j] + alpha * acc;
        }
    };
    return detail::fixed_point(g, p, Measure::pr, s, sweep);
}

/// Fixed point of
///   pr[j] = (1-alpha) s[j] + alpha * sum_{i in N_in(j)} pr[i]/(d_out_c(i) d_in_c(j)).
inline ScoreVector la_pagerank_exact(const DirectedGraph& g, const CentralityParams& p) {
    validate_params(g, p);
    const auto deg = condition_degrees(g, p.conditioning);
    auto s = resolve_starting(g, deg, Measure::lapr, p.starting);
    const double alpha = p.alpha;
    auto sweep = [&](const std::vector<double>& cur, std::vector<double>& next) {
        for (NodeId j = 0; j < g.node_count(); ++j) {
            double acc = 0.0;
            for (NodeId i : g.in_neighbors(j))
                acc += cur[i] / deg.d_out_c[i];
            next[j] = (1.0 - alpha) * s[j] + alpha * acc / deg.d_in_c[j];
        }
    };
    return detail::fixed_point(g, p, Measure::lapr, s, sweep);
}

/// Fixed point of  ac[i] = s[i] + alpha * sum_{j in N_out(i)} ac[j].
/// Rejects alpha at or beyond the estimated convergence boundary.
inline ScoreVector alpha_centrality_exact(const DirectedGraph& g, const CentralityParams& p) {
    // Gate first: alpha = 1 on a cycle is a divergence, not a range typo.
    check_divergence_gate(g, TransferMatrix::adjacency, p.alpha);
    validate_params(g, p);
    const auto deg = condition_degrees(g, p.conditioning);
    auto s = resolve_starting(g, deg, Measure::ac, p.starting);
    const double alpha = p.alpha;
    auto sweep = [&](const std::vector<double>& cur, std::vector<double>& next) {
        for (NodeId i = 0; i < g.node_count(); ++i) {
            double acc = 0.0;
            for (NodeId j : g.out_neighbors(i))
                acc += cur[j];
            next[i] = s[i] + alpha * acc;
        }
    };
    return detail::fixed_point(g, p, Measure::ac, s, sweep);
}

/// Fixed point of  cr[i] = s[i] + alpha * sum_{j in N_out(i)} cr[j]/d_in_c(j).
inline ScoreVector la_alpha_centrality_exact(const DirectedGraph& g, const CentralityParams& p) {
    check_divergence_gate(g, TransferMatrix::la_adjacency, p.alpha);
    validate_params(g, p);
    const auto deg = condition_degrees(g, p.conditioning);
    auto s = resolve_starting(g, deg, Measure::laac, p.starting);
    const double alpha = p.alpha;
    auto sweep = [&](const std::vector<double>& cur, std::vector<double>& next) {
        for (NodeId i = 0; i < g.node_count(); ++i) {
            double acc = 0.0;
            for (NodeId j : g.out_neighbors(i))
                acc += cur[j] / deg.d_in_c[j];
            next[i] = s[i] + alpha * acc;
        }
    };
    return detail::fixed_point(g, p, Measure::laac, s, sweep);
}

/// Dispatch by measure; useful for sweep/report drivers.
inline ScoreVector solve_exact(const DirectedGraph& g, Measure m, const CentralityParams& p) {
    switch (m) {
    case Measure::pr: return pagerank_exact(g, p);
    case Measure::lapr: return la_pagerank_exact(g, p);
    case Measure::ac: return alpha_centrality_exact(g, p);
    case Measure::laac: return la_alpha_centrality_exact(g, p);
    }
    throw ParamError("unknown measure");
}

} // namespace lacent
