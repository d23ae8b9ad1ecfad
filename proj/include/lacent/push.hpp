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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lacent/error.hpp"
#include "lacent/exact.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"
#include "lacent/rng.hpp"

namespace lacent {

/// Counters and bounds from one push run. `theoretical_bound` is the
/// worst-case push count ||s||_1 / ((1-alpha) * epsilon * d_max) with the
/// d_max matching the measure's threshold (out for the walk variant, in for
/// the broadcast variants); the attenuation constant in the denominator is
/// taken to be alpha.
struct PushStats {
    Measure measure = Measure::lapr;
    double alpha = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    std::uint64_t pushes = 0;
    double theoretical_bound = 0.0;
    double residual_l1_final = 0.0;
    double wall_time_ms = 0.0;
};

/// Moving parts of a push run: residual mass r still to be settled, the
/// accumulated approximation, the work queue with membership flags, and the
/// running l1 of r. Exposed read-only to observers after every push.
struct PushState {
    std::vector<double> residual;
    std::vector<double> accumulated;
    std::vector<NodeId> queue; // active ids live at [queue_head, queue.size())
    std::vector<std::uint8_t> queued;
    std::size_t queue_head = 0;
    double epsilon = 0.0;
    std::uint64_t pushes = 0;
    double residual_l1 = 0.0;
};

struct PushOptions {
    /// fifo is the documented order; random (seeded) exists to demonstrate
    /// that the approximation guarantee does not depend on pop order.
    enum class Order { fifo, random };
    Order order = Order::fifo;
    std::uint64_t order_seed = 0;
    /// Verify per-push invariants while running (strict residual-sum decrease
    /// and the minimum removal amount, where the measure guarantees them, and
    /// agreement of the incremental l1 with a full re-sum). Throws Error on
    /// violation. Intended for tests; O(|V|) extra work per push.
    bool check_invariants = false;
    /// Called once after initialization and once after every completed push.
    std::function<void(const PushState&)> observer;
};

struct PushResult {
    ScoreVector scores;
    PushStats stats;
};

namespace detail {

inline constexpr std::uint64_t kResumMask = (1ULL << 20) - 1;

inline double sum_residual(const std::vector<double>& r) {
    double acc = 0.0;
    for (double v : r)
        acc += v;
    return acc;
}

/// One push run. Per measure:
///   lapr: deposit (1-alpha)*r[i]; spread alpha*r[i]/d_out_c(i) over
///         out-neighbors j, each receiving a 1/d_in_c(j) share.
///   laac: deposit r[i]; spread alpha*r[i]/d_in_c(i) to every in-neighbor.
///   ac:   deposit r[i]; spread alpha*r[i] to every in-neighbor.
/// The queue admits a node whenever its residual crosses epsilon * d_max
/// (raw maxima), and the run ends when the queue drains, at which point every
/// residual is at or below that threshold.
template <Measure M>
PushResult run_push(const DirectedGraph& g, double alpha, double delta,
                    const std::vector<double>& s, const ConditionedDegrees& deg,
                    const PushOptions& opts) {
    static_assert(M != Measure::pr, "no push variant for the plain walk");
    const auto t0 = std::chrono::steady_clock::now();
    const NodeId n = g.node_count();
    const auto maxima = max_degrees(g); // throws EmptyGraphError on edgeless input
    const double d_max =
        M == Measure::lapr ? static_cast<double>(maxima.d_max_out)
                           : static_cast<double>(maxima.d_max_in);

    const double s_l1 = l1_norm(s);
    PushState st;
    st.epsilon = delta * s_l1 / (static_cast<double>(n) * d_max);
    st.residual = s;
    st.accumulated.assign(n, 0.0);
    st.queued.assign(n, 0);
    st.residual_l1 = s_l1;

    st.queue.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
        if (st.residual[i] / d_max > st.epsilon) {
            st.queue.push_back(i);
            st.queued[i] = 1;
        }
    }

    SplitMix64 order_rng(opts.order_seed);
    const bool random_order = opts.order == PushOptions::Order::random;

    if (opts.observer)
        opts.observer(st);

    // lapr and laac remove at least (1-alpha) * r[i] of residual mass per
    // push; the plain broadcast variant can grow the residual sum locally
    // (it adds alpha*r[i] per in-neighbor), so the decrease assertions apply
    // only to the first two.
    const bool decrease_guaranteed = M != Measure::ac;
    const double min_removal = (1.0 - alpha) * st.epsilon * d_max;

    while (st.queue_head < st.queue.size()) {
        if (random_order) {
            const std::size_t span = st.queue.size() - st.queue_head;
            const std::size_t pick =
                st.queue_head + static_cast<std::size_t>(order_rng.next_below(span));
            std::swap(st.queue[st.queue_head], st.queue[pick]);
        }
        const NodeId i = st.queue[st.queue_head++];
        st.queued[i] = 0;
        // Compact the consumed prefix occasionally so memory stays bounded.
        if (st.queue_head > 1024 && st.queue_head * 2 > st.queue.size()) {
            st.queue.erase(st.queue.begin(),
                           st.queue.begin() + static_cast<std::ptrdiff_t>(st.queue_head));
            st.queue_head = 0;
        }

        const double ri = st.residual[i];
        const double l1_before = st.residual_l1;

        if constexpr (M == Measure::lapr)
            st.accumulated[i] += (1.0 - alpha) * ri;
        else
            st.accumulated[i] += ri;

        st.residual[i] = 0.0;
        st.residual_l1 -= ri;

        if constexpr (M == Measure::lapr) {
            const double t = alpha * ri / deg.d_out_c[i];
            for (NodeId j : g.out_neighbors(i)) {
                const double share = t / deg.d_in_c[j];
                st.residual[j] += share;
                st.residual_l1 += share;
                if (!st.queued[j] && st.residual[j] / d_max > st.epsilon) {
                    st.queue.push_back(j);
                    st.queued[j] = 1;
                }
            }
        } else if constexpr (M == Measure::laac) {
            const double t = alpha * ri / deg.d_in_c[i];
            for (NodeId j : g.in_neighbors(i)) {
                st.residual[j] += t;
                st.residual_l1 += t;
                if (!st.queued[j] && st.residual[j] / d_max > st.epsilon) {
                    st.queue.push_back(j);
                    st.queued[j] = 1;
                }
            }
        } else {
            const double t = alpha * ri;
            for (NodeId j : g.in_neighbors(i)) {
                st.residual[j] += t;
                st.residual_l1 += t;
                if (!st.queued[j] && st.residual[j] / d_max > st.epsilon) {
                    st.queue.push_back(j);
                    st.queued[j] = 1;
                }
            }
        }

        ++st.pushes;
        if ((st.pushes & kResumMask) == 0)
            st.residual_l1 = sum_residual(st.residual);

        if (opts.check_invariants) {
            const double exact_l1 = sum_residual(st.residual);
            if (std::abs(st.residual_l1 - exact_l1) >
                1e-9 * std::max(1.0, exact_l1))
                throw Error("incremental residual sum drifted from full re-sum");
            if (decrease_guaranteed) {
                if (!(st.residual_l1 < l1_before))
                    throw Error("residual sum failed to decrease at push " +
                                std::to_string(st.pushes));
                const double removed = l1_before - st.residual_l1;
                if (!(removed > min_removal * (1.0 - 1e-9)))
                    throw Error("push removed less residual mass than the minimum");
            }
        }

        if (opts.observer)
            opts.observer(st);
    }

    if (opts.check_invariants) {
        for (NodeId i = 0; i < n; ++i)
            if (st.residual[i] / d_max > st.epsilon)
                throw Error("termination left residual above threshold at node " +
                            std::to_string(i));
    }

    PushResult out;
    out.stats.measure = M;
    out.stats.alpha = alpha;
    out.stats.delta = delta;
    out.stats.epsilon = st.epsilon;
    out.stats.pushes = st.pushes;
    out.stats.theoretical_bound = s_l1 / ((1.0 - alpha) * st.epsilon * d_max);
    out.stats.residual_l1_final = st.residual_l1;
    out.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();

    out.scores.scores = std::move(st.accumulated);
    out.scores.measure = M;
    out.scores.params.alpha = alpha;
    out.scores.iterations_used =
        st.pushes > UINT32_MAX ? UINT32_MAX : static_cast<std::uint32_t>(st.pushes);
    out.scores.converged = true;
    return out;
}

inline void validate_push_params(double alpha, double delta, bool alpha_zero_ok,
                                 const std::vector<double>& s) {
    std::string problems;
    auto complain = [&](const char* m) {
        if (!problems.empty())
            problems += "; ";
        problems += m;
    };
    if (alpha_zero_ok ? !(alpha >= 0.0 && alpha < 1.0) : !(alpha > 0.0 && alpha < 1.0))
        complain(alpha_zero_ok ? "alpha must be in [0,1)" : "alpha must be in (0,1)");
    if (!(delta > 0.0 && delta <= 1.0))
        complain("delta must be in (0,1]");
    bool nonneg = true, nonzero = false;
    for (double v : s) {
        if (v < 0.0) nonneg = false;
        if (v != 0.0) nonzero = true;
    }
    if (!nonneg)
        complain("starting vector entries must be >= 0");
    if (!nonzero)
        complain("starting vector must not be all zero");
    if (!problems.empty())
        throw ParamError(problems);
}

} // namespace detail

/// Approximate limited-attention walk scores. With a uniform starting vector
/// (the default) every node satisfies
///   exact[i] >= result[i] >= (1-delta) * exact[i],
/// because termination leaves r[i] <= epsilon*d_max_out = delta*s[i]. For
/// non-uniform s the run still satisfies 0 <= result <= exact and the
/// residual accounting identity, but the multiplicative floor is specific to
/// uniform starts. Threshold: epsilon = delta*||s||_1/(|V|*d_max_out).
inline PushResult approx_la_pagerank(const DirectedGraph& g, double alpha, double delta,
                                     const StartingVector& starting = {},
                                     const DegreeConditioning& conditioning = {},
                                     const PushOptions& opts = {}) {
    if (g.edge_count() == 0)
        throw EmptyGraphError();
    const auto deg = condition_degrees(g, conditioning);
    auto s = resolve_starting(g, deg, Measure::lapr, starting);
    detail::validate_push_params(alpha, delta, /*alpha_zero_ok=*/true, s);
    auto result = detail::run_push<Measure::lapr>(g, alpha, delta, s, deg, opts);
    result.scores.params.starting = starting;
    result.scores.params.conditioning = conditioning;
    return result;
}

/// Approximate limited-attention broadcast scores (same guarantee shape,
/// again tied to uniform s; the conventional default
/// s[i] = sum_{j in N_out(i)} 1/d_in_c(j) gets the 0 <= result <= exact
/// envelope and the accounting identity only). Threshold:
/// epsilon = delta*||s||_1/(|V|*d_max_in). Rejects alpha at or beyond the
/// estimated convergence boundary of the attention-scaled matrix.
inline PushResult approx_la_alpha_centrality(const DirectedGraph& g, double alpha,
                                             double delta,
                                             const StartingVector& starting = {},
                                             const DegreeConditioning& conditioning = {},
                                             const PushOptions& opts = {}) {
    if (g.edge_count() == 0)
        throw EmptyGraphError();
    check_divergence_gate(g, TransferMatrix::la_adjacency, alpha);
    const auto deg = condition_degrees(g, conditioning);
    auto s = resolve_starting(g, deg, Measure::laac, starting);
    detail::validate_push_params(alpha, delta, /*alpha_zero_ok=*/false, s);
    auto result = detail::run_push<Measure::laac>(g, alpha, delta, s, deg, opts);
    result.scores.params.starting = starting;
    result.scores.params.conditioning = conditioning;
    return result;
}

/// Approximate plain broadcast scores, built by analogy with the
/// limited-attention variant: identical loop with push weight alpha*r[i]
/// (no 1/d_in share) and default s = out-degree. Validated against the exact
/// solver of this library; the per-push residual-decrease property of the
/// other two variants does not hold here, only the end-to-end guarantee.
inline PushResult approx_alpha_centrality(const DirectedGraph& g, double alpha,
                                          double delta,
                                          const StartingVector& starting = {},
                                          const DegreeConditioning& conditioning = {},
                                          const PushOptions& opts = {}) {
    if (g.edge_count() == 0)
        throw EmptyGraphError();
    check_divergence_gate(g, TransferMatrix::adjacency, alpha);
    const auto deg = condition_degrees(g, conditioning);
    auto s = resolve_starting(g, deg, Measure::ac, starting);
    detail::validate_push_params(alpha, delta, /*alpha_zero_ok=*/true, s);
    auto result = detail::run_push<Measure::ac>(g, alpha, delta, s, deg, opts);
    result.scores.params.starting = starting;
    result.scores.params.conditioning = conditioning;
    return result;
}

/// A frozen moment of a push run, captured through PushOptions::observer.
struct PushSnapshot {
    Measure measure = Measure::lapr;
    std::vector<double> s;
    std::vector<double> residual;
    std::vector<double> accumulated;
};

struct ResidualInvariantReport {
    double defect_inf = 0.0; // || accumulated + solve(r) - solve(s) ||_inf
    double scale = 1.0;      // max(1, ||solve(s)||_inf)
    double tolerance = 0.0;
    bool pass = false;
};

/// Exact solver handle: given a starting vector, return the measure's exact
/// scores on the graph the snapshot came from.
using ExactSolverFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// Check the run invariant  accumulated = solve(s) - solve(r)  that makes the
/// per-node guarantee work: whatever mass is still in the residual accounts
/// exactly for the part of the answer not yet accumulated.
inline ResidualInvariantReport verify_residual_invariant(const PushSnapshot& snap,
                                                         const ExactSolverFn& solve) {
    const std::size_t n = snap.s.size();
    if (snap.residual.size() != n || snap.accumulated.size() != n)
        throw ParamError("snapshot vectors disagree on node count");
    const auto cr_s = solve(snap.s);
    const auto cr_r = solve(snap.residual);
    if (cr_s.size() != n || cr_r.size() != n)
        throw ParamError("exact solver returned a vector of the wrong length");
    ResidualInvariantReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        rep.defect_inf =
            std::max(rep.defect_inf, std::abs(snap.accumulated[i] + cr_r[i] - cr_s[i]));
        rep.scale = std::max(rep.scale, std::abs(cr_s[i]));
    }
    rep.tolerance = 1e-8 * rep.scale;
    rep.pass = rep.defect_inf <= rep.tolerance;
    return rep;
}

} // namespace lacent
