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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lacent/dense_oracle.hpp"
#include "lacent/exact.hpp"
#include "lacent/generators.hpp"
#include "lacent/graph.hpp"

using namespace lacent;

namespace {

const DegreeConditioning kNone = DegreeConditioning::none();

DirectedGraph two_cycle() { return parse_edge_list("a\tb\nb\ta\n"); }

DirectedGraph bidirected_clique(NodeId n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::string> labels;
    for (NodeId i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (NodeId j = 0; j < n; ++j)
            if (i != j)
                edges.emplace_back(i, j);
    }
    return DirectedGraph(labels, edges);
}

/// ER graph patched so no degree is zero (so that no-op conditioning is
/// legal and the transfer is genuinely row-stochastic).
DirectedGraph er_no_zero_degree(NodeId n, double p, std::uint64_t seed) {
    const auto base = erdos_renyi_directed(n, p, seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : base.out_neighbors(u))
            edges.emplace_back(u, v);
    for (NodeId u = 0; u < n; ++u) {
        if (base.out_degree(u) == 0)
            edges.emplace_back(u, (u + 1) % n);
        if (base.in_degree(u) == 0)
            edges.emplace_back((u + n - 1) % n, u);
    }
    return DirectedGraph(base.labels(), std::move(edges));
}

CentralityParams params(double alpha, DegreeConditioning cond = {}, double tol = 1e-12) {
    CentralityParams p;
    p.alpha = alpha;
    p.conditioning = cond;
    p.tol = tol;
    return p;
}

double rank_of(const std::vector<double>& scores, NodeId node) {
    double rank = 0;
    for (double v : scores)
        if (v > scores[node])
            ++rank;
    return rank;
}

} // namespace

// ---------------------------------------------------------------------------
// Dense oracle

TEST(DenseOracle, ClosedFormTwoCycle) {
    // (I - alpha A) x = s with s = (1,1): geometric series gives 1/(1-alpha).
    const auto g = two_cycle();
    const auto sv = dense_solve_oracle(g, Measure::laac, params(0.5, kNone));
    ASSERT_EQ(sv.scores.size(), 2u);
    EXPECT_DOUBLE_EQ(sv.scores[0], 2.0);
    EXPECT_DOUBLE_EQ(sv.scores[1], 2.0);
}

TEST(DenseOracle, AlphaZeroIsIdentitySolve) {
    const auto g = erdos_renyi_directed(20, 0.1, 3);
    CentralityParams p = params(0.0);
    std::vector<double> b(20);
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = 0.1 * static_cast<double>(i + 1);
    p.starting = StartingVector::custom(b);
    const auto sv = dense_solve_oracle(g, Measure::laac, p);
    for (std::size_t i = 0; i < b.size(); ++i)
        EXPECT_DOUBLE_EQ(sv.scores[i], b[i]);
}

TEST(DenseOracle, SingularSystemDetected) {
    // Bidirected triangle has radius 2; at alpha = 1/2 the system is exactly
    // singular and every elimination step is dyadic, so the zero pivot is hit
    // exactly.
    const auto g = bidirected_clique(3);
    EXPECT_THROW(dense_solve_oracle(g, Measure::ac, params(0.5, kNone)),
                 SingularSystemError);
}

TEST(DenseOracle, RefusesHugeGraphs) {
    std::vector<std::string> labels(2001);
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = std::to_string(i);
    DirectedGraph g(labels, {{0, 1}});
    EXPECT_THROW(dense_solve_oracle(g, Measure::pr, params(0.5)), ParamError);
}

// ---------------------------------------------------------------------------
// pagerank_exact

TEST(PagerankExact, TwoCycleSymmetry) {
    const auto sv = pagerank_exact(two_cycle(), params(0.85, kNone));
    EXPECT_NEAR(sv.scores[0], 0.5, 1e-10);
    EXPECT_NEAR(sv.scores[1], 0.5, 1e-10);
    EXPECT_TRUE(sv.converged);
}

TEST(PagerankExact, AlphaZeroReturnsStart) {
    const auto g = erdos_renyi_directed(30, 0.1, 5);
    const auto sv = pagerank_exact(g, params(0.0));
    for (double v : sv.scores)
        EXPECT_DOUBLE_EQ(v, 1.0 / 30.0);
}

TEST(PagerankExact, DanglingChainMatchesOracle) {
    // 0 -> 1 -> 2 with node 2 dangling; conditioning keeps divisions defined.
    const auto g = parse_edge_list("0\t1\n1\t2\n");
    const auto p = params(0.5, {.epsilon_deg = 0.01,
                                .mode = DegreeConditioning::Mode::all_degrees});
    const auto iter = pagerank_exact(g, p);
    const auto oracle = dense_solve_oracle(g, Measure::pr, p);
    EXPECT_LT(linf_diff(iter.scores, oracle.scores), 1e-10);
}

TEST(PagerankExact, MassConservedWithoutDanglingNodes) {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto g = er_no_zero_degree(100, 0.05, seed);
        const auto sv = pagerank_exact(g, params(0.85, kNone));
        double sum = 0.0;
        for (double v : sv.scores)
            sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(PagerankExact, NotConvergedReturnsFlaggedVector) {
    CentralityParams p = params(0.99, {}, 1e-14);
    p.max_iter = 3;
    const auto sv = pagerank_exact(erdos_renyi_directed(50, 0.1, 2), p);
    EXPECT_FALSE(sv.converged);
    EXPECT_EQ(sv.iterations_used, 3u);
    EXPECT_EQ(sv.scores.size(), 50u);
}

TEST(PagerankExact, ParamValidation) {
    const auto g = two_cycle();
    EXPECT_THROW(pagerank_exact(g, params(1.0)), ParamError);
    EXPECT_THROW(pagerank_exact(g, params(-0.1)), ParamError);
    CentralityParams p = params(0.5);
    p.tol = 0.0;
    EXPECT_THROW(pagerank_exact(g, p), ParamError);
    p = params(0.5);
    p.starting = StartingVector::custom({1.0}); // wrong length
    EXPECT_THROW(pagerank_exact(g, p), ParamError);
    p.starting = StartingVector::custom({-1.0, 1.0});
    EXPECT_THROW(pagerank_exact(g, p), ParamError);
    p.starting = StartingVector::custom({0.0, 0.0});
    EXPECT_THROW(pagerank_exact(g, p), ParamError);
}

// ---------------------------------------------------------------------------
// la_pagerank_exact

TEST(LaPagerankExact, TwoCycleSymmetry) {
    const auto sv = la_pagerank_exact(two_cycle(), params(0.5, kNone));
    EXPECT_NEAR(sv.scores[0], 0.5, 1e-10);
    EXPECT_NEAR(sv.scores[1], 0.5, 1e-10);
}

TEST(LaPagerankExact, AlphaZeroReturnsStart) {
    const auto g = erdos_renyi_directed(30, 0.1, 6);
    const auto sv = la_pagerank_exact(g, params(0.0));
    for (double v : sv.scores)
        EXPECT_DOUBLE_EQ(v, 1.0 / 30.0);
}

TEST(LaPagerankExact, IndegreeInverseStartSelectable) {
    const auto g = two_cycle();
    CentralityParams p = params(0.0, kNone);
    p.starting = StartingVector::indegree_inverse();
    const auto sv = la_pagerank_exact(g, p);
    EXPECT_DOUBLE_EQ(sv.scores[0], 1.0); // 1/d_in = 1
}

TEST(LaPagerankExact, HubDropsPeripheryRisesVersusWalkScores) {
    // 10 nodes: eight sources point at a hub; the hub feeds q, q feeds p1.
    // The hub divides its attention over eight in-links, so its rank falls
    // under the attention-limited walk while a single-in-link node rises.
    std::string text;
    for (int k = 1; k <= 8; ++k)
        text += "p" + std::to_string(k) + "\thub\n";
    text += "hub\tq\nq\tp1\n";
    const auto g = parse_edge_list(text);
    const NodeId hub = *g.find_label("hub");
    const NodeId p1 = *g.find_label("p1");

    const auto p = params(0.85);
    const auto pr = dense_solve_oracle(g, Measure::pr, p).scores;
    const auto lapr = dense_solve_oracle(g, Measure::lapr, p).scores;

    EXPECT_EQ(rank_of(pr, hub), 0); // walk scores put the hub first
    EXPECT_GT(rank_of(lapr, hub), rank_of(pr, hub));
    EXPECT_LT(rank_of(lapr, p1), rank_of(pr, p1)); // in-degree 1 node rises
    EXPECT_LT(pr[p1], pr[hub]);
    EXPECT_GT(lapr[p1], lapr[hub]); // and overtakes the hub outright
}

// ---------------------------------------------------------------------------
// alpha_centrality_exact

TEST(AlphaCentralityExact, TwoCycleClosedForm) {
    const auto sv = alpha_centrality_exact(two_cycle(), params(0.5, kNone));
    EXPECT_NEAR(sv.scores[0], 2.0, 1e-10);
    EXPECT_NEAR(sv.scores[1], 2.0, 1e-10);
    const auto oracle = dense_solve_oracle(two_cycle(), Measure::ac, params(0.5, kNone));
    EXPECT_LT(linf_diff(sv.scores, oracle.scores), 1e-10);
}

TEST(AlphaCentralityExact, DivergesAtUnitAlphaOnCycle) {
    EXPECT_THROW(alpha_centrality_exact(two_cycle(), params(1.0, kNone)), DivergenceError);
}

TEST(AlphaCentralityExact, CliqueGateAtInverseRadius) {
    const auto g = bidirected_clique(4); // radius 3, threshold 1/3
    EXPECT_THROW(alpha_centrality_exact(g, params(0.6, kNone)), DivergenceError);
    EXPECT_THROW(alpha_centrality_exact(g, params(0.34, kNone)), DivergenceError);
    EXPECT_NO_THROW(alpha_centrality_exact(g, params(0.3, kNone)));
}

TEST(AlphaCentralityExact, AlphaZeroIsOutDegree) {
    const auto g = erdos_renyi_directed(25, 0.15, 8);
    const auto sv = alpha_centrality_exact(g, params(0.0));
    for (NodeId u = 0; u < g.node_count(); ++u)
        EXPECT_DOUBLE_EQ(sv.scores[u], static_cast<double>(g.out_degree(u)));
}

// ---------------------------------------------------------------------------
// la_alpha_centrality_exact

TEST(LaAlphaCentralityExact, TwoCycleClosedForm) {
    const auto sv = la_alpha_centrality_exact(two_cycle(), params(0.5, kNone));
    EXPECT_NEAR(sv.scores[0], 2.0, 1e-10);
    EXPECT_NEAR(sv.scores[1], 2.0, 1e-10);
}

TEST(LaAlphaCentralityExact, AlphaZeroReturnsStart) {
    const auto g = erdos_renyi_directed(25, 0.15, 9);
    const auto sv = la_alpha_centrality_exact(g, params(0.0));
    const auto deg = condition_degrees(g, {});
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double want = 0.0;
        for (NodeId v : g.out_neighbors(u))
            want += 1.0 / deg.d_in_c[v];
        EXPECT_DOUBLE_EQ(sv.scores[u], want);
    }
}

TEST(LaAlphaCentralityExact, SingleEdgeZeroOnlyConditioning) {
    const auto g = parse_edge_list("0\t1\n");
    const auto cond = DegreeConditioning{.epsilon_deg = 0.01,
                                         .mode = DegreeConditioning::Mode::zero_degrees_only};
    const auto sv = la_alpha_centrality_exact(g, params(0.5, cond));
    EXPECT_DOUBLE_EQ(sv.scores[0], 1.0);
    EXPECT_DOUBLE_EQ(sv.scores[1], 0.0);
    const auto oracle = dense_solve_oracle(g, Measure::laac, params(0.5, cond));
    EXPECT_LT(linf_diff(sv.scores, oracle.scores), 1e-12);
}

// ---------------------------------------------------------------------------
// spectral_radius

TEST(SpectralRadius, CycleAndCliqueValues) {
    EXPECT_NEAR(spectral_radius(two_cycle(), TransferMatrix::adjacency).value, 1.0, 1e-9);
    const auto tri = parse_edge_list("a\tb\nb\tc\nc\ta\n");
    EXPECT_NEAR(spectral_radius(tri, TransferMatrix::adjacency).value, 1.0, 1e-9);
    EXPECT_NEAR(spectral_radius(bidirected_clique(4), TransferMatrix::adjacency).value, 3.0,
                1e-6);
}

TEST(SpectralRadius, EmptyAndAcyclic) {
    DirectedGraph empty;
    EXPECT_DOUBLE_EQ(spectral_radius(empty, TransferMatrix::adjacency).value, 0.0);
    const auto chain = parse_edge_list("a\tb\nb\tc\nc\td\n");
    EXPECT_DOUBLE_EQ(spectral_radius(chain, TransferMatrix::adjacency).value, 0.0);
}

TEST(SpectralRadius, DeterministicPerSeed) {
    const auto g = erdos_renyi_directed(60, 0.08, 12);
    const auto a = spectral_radius(g, TransferMatrix::adjacency, 100, 7);
    const auto b = spectral_radius(g, TransferMatrix::adjacency, 100, 7);
    EXPECT_DOUBLE_EQ(a.value, b.value);
    EXPECT_DOUBLE_EQ(a.last_rel_change, b.last_rel_change);
}

TEST(SpectralRadius, LaMatrixAtMostOne) {
    // column sums of the attention-scaled matrix are 0 or 1
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        const auto g = erdos_renyi_directed(80, 0.06, seed);
        const auto est = spectral_radius(g, TransferMatrix::la_adjacency);
        EXPECT_LE(est.value, 1.0 + 1e-9);
    }
}

// ---------------------------------------------------------------------------
// Cross-route and algebraic properties

TEST(Agreement, IterativeMatchesOracleAllMeasures) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const NodeId n = static_cast<NodeId>(40 + 8 * (seed % 5));
        const auto g = erdos_renyi_directed(n, 0.08, 100 + seed);
        if (g.edge_count() == 0)
            continue;
        for (Measure m : {Measure::pr, Measure::lapr, Measure::ac, Measure::laac}) {
            double alpha = 0.85;
            if (m == Measure::ac) {
                const double rho = spectral_radius(g, TransferMatrix::adjacency).value;
                alpha = rho > 0 ? std::min(0.85, 0.5 * kSpectralSafetyMargin / rho) : 0.85;
            } else if (m == Measure::laac) {
                const double rho = spectral_radius(g, TransferMatrix::la_adjacency).value;
                alpha = rho > 0 ? std::min(0.85, 0.8 * kSpectralSafetyMargin / rho) : 0.85;
            }
            const auto p = params(alpha);
            const auto iter = solve_exact(g, m, p);
            const auto oracle = dense_solve_oracle(g, m, p);
            EXPECT_LT(linf_diff(iter.scores, oracle.scores), 1e-8)
                << "measure " << to_string(m) << " seed " << seed;
        }
    }
}

TEST(Properties, LaTransferColumnsAreStochastic) {
    const auto g = erdos_renyi_directed(120, 0.05, 33);
    for (NodeId j = 0; j < g.node_count(); ++j) {
        const auto d = g.in_degree(j);
        if (d == 0)
            continue;
        // structural identity: exactly d implicit entries of value 1/d
        EXPECT_EQ(g.in_neighbors(j).size(), d);
        double sum = 0.0;
        for ([[maybe_unused]] NodeId i : g.in_neighbors(j))
            sum += 1.0 / static_cast<double>(d);
        EXPECT_NEAR(sum, 1.0, 8 * d * 2.220446049250313e-16);
    }
}

TEST(Properties, SolversAreLinearInStart) {
    SplitMix64 rng(77);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = erdos_renyi_directed(100, 0.05, 200 + seed);
        std::vector<double> s1(100), s2(100);
        for (int i = 0; i < 100; ++i) {
            s1[i] = rng.next_double();
            s2[i] = rng.next_double();
        }
        std::vector<double> combo(100);
        for (int i = 0; i < 100; ++i)
            combo[i] = 2.0 * s1[i] + 3.0 * s2[i];
        for (Measure m : {Measure::lapr, Measure::laac}) {
            auto solve = [&](const std::vector<double>& s) {
                CentralityParams p = params(0.5);
                p.starting = StartingVector::custom(s);
                return solve_exact(g, m, p).scores;
            };
            const auto a = solve(combo);
            const auto b1 = solve(s1);
            const auto b2 = solve(s2);
            std::vector<double> lin(100);
            for (int i = 0; i < 100; ++i)
                lin[i] = 2.0 * b1[i] + 3.0 * b2[i];
            EXPECT_LT(linf_diff(a, lin), 1e-8) << to_string(m) << " seed " << seed;
        }
    }
}

TEST(Properties, TruncatedSeriesConvergesToFixedPoint) {
    const auto g = erdos_renyi_directed(60, 0.08, 55);
    const auto p = params(0.5);
    const auto deg = condition_degrees(g, p.conditioning);
    const auto exact = la_alpha_centrality_exact(g, p).scores;
    const auto s = resolve_starting(g, deg, Measure::laac, p.starting);

    // partial sums of sum_k alpha^k M^k s with M the conditioned transfer
    std::vector<double> term = s, partial = s, next(g.node_count());
    double prev_err = linf_diff(partial, exact);
    for (int k = 1; k <= 80; ++k) {
        for (NodeId i = 0; i < g.node_count(); ++i) {
            double acc = 0.0;
            for (NodeId j : g.out_neighbors(i))
                acc += term[j] / deg.d_in_c[j];
            next[i] = p.alpha * acc;
        }
        term = next;
        for (NodeId i = 0; i < g.node_count(); ++i)
            partial[i] += term[i];
        const double err = linf_diff(partial, exact);
        // monotone until rounding noise takes over well below any tolerance
        if (prev_err > 1e-10) {
            EXPECT_LE(err, prev_err + 1e-15) << "error must not grow at k=" << k;
        }
        prev_err = err;
    }
    EXPECT_LT(prev_err, 1e-9);
}

TEST(Properties, BroadcastScoresMonotoneInAlpha) {
    for (std::uint64_t seed : {3, 4}) {
        const auto g = erdos_renyi_directed(70, 0.06, seed);
        for (Measure m : {Measure::ac, Measure::laac}) {
            const auto which = m == Measure::ac ? TransferMatrix::adjacency
                                                : TransferMatrix::la_adjacency;
            const double rho = spectral_radius(g, which).value;
            const double top = rho > 0 ? 0.8 * kSpectralSafetyMargin / rho : 0.9;
            std::vector<double> prev;
            for (double f : {0.2, 0.5, 0.8, 1.0}) {
                const auto sv = solve_exact(g, m, params(f * top));
                if (!prev.empty()) {
                    for (std::size_t i = 0; i < prev.size(); ++i)
                        EXPECT_GE(sv.scores[i], prev[i] - 1e-12);
                }
                prev = sv.scores;
            }
        }
    }
}
