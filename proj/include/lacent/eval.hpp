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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lacent/error.hpp"
#include "lacent/exact.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"
#include "lacent/push.hpp"
#include "lacent/rng.hpp"

namespace lacent {

/// One sharing event: user_id acted on item_id at position seq. The record
/// with the smallest seq of an item marks its submitter.
struct BroadcastRecord {
    std::string item_id;
    std::string user_id;
    std::int64_t seq = 0;
};

struct BroadcastLog {
    std::vector<BroadcastRecord> records;
};

/// Minimum-activity thresholds for the empirical influence ranking:
/// a user needs at least min_items submitted items that each collected at
/// least min_rebroadcasts distinct rebroadcasters. followers_only restricts
/// the *scored* rebroadcasts to out-neighbors of the submitter; the
/// qualification count always uses all distinct rebroadcasters.
struct InfluenceFilter {
    std::uint32_t min_items = 2;
    std::uint32_t min_rebroadcasts = 10;
    bool followers_only = true;
};

struct InfluenceScores {
    std::map<std::string, double> per_user; // mean follower-rebroadcasts per item
    InfluenceFilter filter;
    std::size_t items_counted = 0;
    std::vector<std::string> warnings;
};

/// Average number of rebroadcasts a user's submitted items receive from her
/// followers. Duplicate (item, user) records are collapsed with a warning;
/// rebroadcasters that cannot be resolved against the graph count toward an
/// item's qualification total but can never count as followers.
inline InfluenceScores empirical_influence(const BroadcastLog& log, const DirectedGraph& g,
                                           const InfluenceFilter& filter = {}) {
    if (log.records.empty())
        throw EmptyLogError();

    InfluenceScores out;
    out.filter = filter;

    std::map<std::string, std::vector<const BroadcastRecord*>> by_item;
    for (const auto& rec : log.records)
        by_item[rec.item_id].push_back(&rec);

    struct ItemOutcome {
        std::string submitter;
        std::size_t total_rebroadcasts = 0;
        std::size_t scored_rebroadcasts = 0;
    };
    std::map<std::string, std::vector<ItemOutcome>> by_submitter;

    for (auto& [item, recs] : by_item) {
        std::stable_sort(recs.begin(), recs.end(),
                         [](const BroadcastRecord* a, const BroadcastRecord* b) {
                             return a->seq < b->seq;
                         });
        const std::string& submitter = recs.front()->user_id;

        std::unordered_set<std::string> seen{submitter};
        std::unordered_set<NodeId> followers;
        if (auto u = g.find_label(submitter)) {
            for (NodeId v : g.out_neighbors(*u))
                followers.insert(v);
        }

        ItemOutcome outcome;
        outcome.submitter = submitter;
        for (std::size_t k = 1; k < recs.size(); ++k) {
            const auto& rec = *recs[k];
            if (!seen.insert(rec.user_id).second) {
                out.warnings.push_back("duplicate record for item '" + item + "' user '" +
                                       rec.user_id + "' collapsed");
                continue;
            }
            ++outcome.total_rebroadcasts;
            if (filter.followers_only) {
                if (auto v = g.find_label(rec.user_id); v && followers.count(*v))
                    ++outcome.scored_rebroadcasts;
            } else {
                ++outcome.scored_rebroadcasts;
            }
        }
        by_submitter[submitter].push_back(outcome);
    }

    for (const auto& [user, items] : by_submitter) {
        double sum = 0.0;
        std::size_t qualifying = 0;
        for (const auto& item : items) {
            if (item.total_rebroadcasts >= filter.min_rebroadcasts) {
                ++qualifying;
                sum += static_cast<double>(item.scored_rebroadcasts);
            }
        }
        if (qualifying >= filter.min_items && qualifying > 0) {
            out.per_user[user] = sum / static_cast<double>(qualifying);
            out.items_counted += qualifying;
        }
    }
    return out;
}

struct SpearmanResult {
    double rho = std::numeric_limits<double>::quiet_NaN();
    bool defined = false;
    std::string note;
    std::size_t n = 0;
};

namespace detail {

/// Run fn(0..n-1), optionally on a small worker pool. Each index owns its
/// output slot, so results do not depend on the thread count; the first
/// escaped exception is rethrown after the pool joins.
template <class Fn>
void run_rows(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(threads, n);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

/// Average ranks (1-based); tied values share the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]])
            ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[idx[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

inline SpearmanResult spearman_ranked(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const std::size_t n = rx.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    SpearmanResult res;
    res.n = n;
    if (sxx == 0.0 || syy == 0.0) {
        res.note = "zero rank variance (all values tied)";
        return res;
    }
    res.rho = sxy / std::sqrt(sxx * syy);
    res.defined = true;
    return res;
}

} // namespace detail

/// Rank correlation of two paired samples. Ties get average ranks.
/// Throws InsufficientDataError below 3 pairs; an all-tied input yields an
/// undefined result (NaN rho) with the reason in `note`.
inline SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ShapeError("spearman inputs must pair up");
    if (x.size() < 3)
        throw InsufficientDataError("spearman needs at least 3 pairs, got " +
                                    std::to_string(x.size()));
    return detail::spearman_ranked(std::vector<double>(x.begin(), x.end()),
                                   std::vector<double>(y.begin(), y.end()));
}

/// Key-matched variant: computed on the intersection of the two key sets.
inline SpearmanResult spearman(const std::map<std::string, double>& x,
                               const std::map<std::string, double>& y) {
    std::vector<double> xs, ys;
    for (const auto& [k, vx] : x) {
        auto it = y.find(k);
        if (it != y.end()) {
            xs.push_back(vx);
            ys.push_back(it->second);
        }
    }
    if (xs.size() < 3)
        throw InsufficientDataError("spearman overlap has " + std::to_string(xs.size()) +
                                    " keys, need at least 3");
    return detail::spearman_ranked(xs, ys);
}

/// Root-mean-square difference over paired entries.
inline double rms_error(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ShapeError("rms_error needs equally sized vectors");
    if (a.empty())
        return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

inline double rms_error(const ScoreVector& a, const ScoreVector& b) {
    return rms_error(std::span<const double>(a.scores), std::span<const double>(b.scores));
}

/// One row of a tolerance sweep.
struct SweepResult {
    double delta = 0.0;
    std::uint64_t pushes = 0;
    double theoretical_bound = 0.0;
    std::optional<double> rms;    // absent in iterations-only mode
    double wall_time_ms = 0.0;
    std::optional<std::string> error; // per-row failures are recorded, not fatal
};

struct SweepOptions {
    bool compute_rms = true;
    StartingVector starting;
    DegreeConditioning conditioning;
    double exact_tol = 1e-10;
    std::uint32_t exact_max_iter = 10'000;
    unsigned threads = 1; // rows are independent; results identical either way
};

/// Run the approximate solver once per delta against a fixed starting vector
/// and report push counts and (optionally) rms error versus the exact
/// iterative solution. Rows come back sorted by descending delta.
inline std::vector<SweepResult> delta_sweep(const DirectedGraph& g, Measure measure,
                                            double alpha, std::vector<double> deltas,
                                            const SweepOptions& opts = {}) {
    if (measure == Measure::pr)
        throw ParamError("sweep applies to the push-based measures (lapr|laac|ac)");
    std::sort(deltas.begin(), deltas.end(), std::greater<>());

    std::optional<std::vector<double>> exact;
    if (opts.compute_rms) {
        CentralityParams p;
        p.alpha = alpha;
        p.starting = opts.starting;
        p.conditioning = opts.conditioning;
        p.tol = opts.exact_tol;
        p.max_iter = opts.exact_max_iter;
        exact = solve_exact(g, measure, p).scores;
    }

    std::vector<SweepResult> rows(deltas.size());
    detail::run_rows(deltas.size(), opts.threads, [&](std::size_t i) {
        SweepResult& row = rows[i];
        row.delta = deltas[i];
        try {
            PushResult res;
            switch (measure) {
            case Measure::lapr:
                res = approx_la_pagerank(g, alpha, row.delta, opts.starting,
                                         opts.conditioning);
                break;
            case Measure::laac:
                res = approx_la_alpha_centrality(g, alpha, row.delta, opts.starting,
                                                 opts.conditioning);
                break;
            default:
                res = approx_alpha_centrality(g, alpha, row.delta, opts.starting,
                                              opts.conditioning);
                break;
            }
            row.pushes = res.stats.pushes;
            row.theoretical_bound = res.stats.theoretical_bound;
            row.wall_time_ms = res.stats.wall_time_ms;
            if (exact)
                row.rms = rms_error(std::span<const double>(*exact),
                                    std::span<const double>(res.scores.scores));
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

/// Adopters of one item, in BFS adoption order starting at the submitter.
/// A holder reaches each not-yet-adopting out-neighbor j independently with
/// probability min(1, alpha/d_in_c(j)); adopters rebroadcast exactly once.
/// Fully determined by (graph, alpha, seed, item_index).
inline std::vector<NodeId> simulate_item_adopters(const DirectedGraph& g,
                                                  const ConditionedDegrees& deg,
                                                  double alpha, std::uint64_t seed,
                                                  std::uint64_t item_index,
                                                  NodeId submitter) {
    SplitMix64 rng(mix_seed(seed, item_index));
    std::vector<NodeId> adopters{submitter};
    std::vector<std::uint8_t> adopted(g.node_count(), 0);
    adopted[submitter] = 1;
    for (std::size_t head = 0; head < adopters.size(); ++head) {
        const NodeId holder = adopters[head];
        for (NodeId j : g.out_neighbors(holder)) {
            if (adopted[j])
                continue;
            const double p = std::min(1.0, alpha / deg.d_in_c[j]);
            if (rng.next_double() < p) {
                adopted[j] = 1;
                adopters.push_back(j);
            }
        }
    }
    return adopters;
}

/// Synthetic sharing activity: every node submits items_per_user items and
/// each spreads as an independent limited-attention cascade. seq is the
/// adoption order within the item; item ids are "i<k>" with the global index
/// k = submitter * items_per_user + slot, so logs are byte-stable for a
/// given (graph, alpha, seed).
inline BroadcastLog simulate_la_cascades(const DirectedGraph& g, double alpha,
                                         std::uint32_t items_per_user, std::uint64_t seed,
                                         const DegreeConditioning& conditioning = {}) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ParamError("alpha must be in (0,1] for cascade simulation");
    if (items_per_user == 0)
        throw ParamError("items_per_user must be positive");
    const auto deg = condition_degrees(g, conditioning);
    BroadcastLog log;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (std::uint32_t k = 0; k < items_per_user; ++k) {
            const std::uint64_t item_index =
                static_cast<std::uint64_t>(u) * items_per_user + k;
            const auto adopters =
                simulate_item_adopters(g, deg, alpha, seed, item_index, u);
            const std::string item_id = "i" + std::to_string(item_index);
            for (std::size_t pos = 0; pos < adopters.size(); ++pos)
                log.records.push_back(
                    {item_id, g.label(adopters[pos]), static_cast<std::int64_t>(pos)});
        }
    }
    return log;
}

/// One row of a measure-vs-influence comparison.
struct ReportRow {
    Measure measure = Measure::pr;
    double alpha = 0.0;
    std::optional<double> delta; // present when the approximate solver ran
    SpearmanResult rho;
    std::size_t n_users = 0;
    bool transposed = false;
    std::optional<std::string> error;
};

struct ReportOptions {
    InfluenceFilter filter{.min_items = 2, .min_rebroadcasts = 10, .followers_only = true};
    std::optional<double> delta;  // run approximate solvers at this tolerance
    DegreeConditioning conditioning;
    double exact_tol = 1e-10;
    std::uint32_t exact_max_iter = 10'000;
    unsigned threads = 1;
};

/// Spearman correlation of each (measure, alpha) ranking against the
/// empirical influence ranking. The walk measures run on the transpose of the
/// graph (influence follows walks generated, not received); broadcast
/// measures run on the graph itself. Per-row solver errors are recorded in
/// the row instead of aborting the table.
inline std::vector<ReportRow> correlation_report(const DirectedGraph& g,
                                                 const BroadcastLog& log,
                                                 const std::vector<Measure>& measures,
                                                 const std::vector<double>& alphas,
                                                 const ReportOptions& opts = {}) {
    const auto influence = empirical_influence(log, g, opts.filter);
    const DirectedGraph transposed = transpose(g);

    std::vector<ReportRow> rows(measures.size() * alphas.size());
    detail::run_rows(rows.size(), opts.threads, [&](std::size_t idx) {
        const Measure m = measures[idx / alphas.size()];
        const double alpha = alphas[idx % alphas.size()];
        const bool use_transpose = (m == Measure::pr || m == Measure::lapr);
        const DirectedGraph& host = use_transpose ? transposed : g;
        {
            ReportRow row;
            row.measure = m;
            row.alpha = alpha;
            row.transposed = use_transpose;
            row.delta = opts.delta;
            try {
                std::vector<double> scores;
                if (opts.delta && m != Measure::pr) {
                    switch (m) {
                    case Measure::lapr:
                        scores = approx_la_pagerank(host, alpha, *opts.delta, {},
                                                    opts.conditioning)
                                     .scores.scores;
                        break;
                    case Measure::laac:
                        scores = approx_la_alpha_centrality(host, alpha, *opts.delta, {},
                                                            opts.conditioning)
                                     .scores.scores;
                        break;
                    default:
                        scores = approx_alpha_centrality(host, alpha, *opts.delta, {},
                                                         opts.conditioning)
                                     .scores.scores;
                        break;
                    }
                    row.delta = opts.delta;
                } else {
                    CentralityParams p;
                    p.alpha = alpha;
                    p.conditioning = opts.conditioning;
                    p.tol = opts.exact_tol;
                    p.max_iter = opts.exact_max_iter;
                    scores = solve_exact(host, m, p).scores;
                    row.delta.reset();
                }
                std::map<std::string, double> by_label;
                for (NodeId u = 0; u < host.node_count(); ++u)
                    by_label[host.label(u)] = scores[u];
                row.rho = spearman(by_label, influence.per_user);
                row.n_users = row.rho.n;
            } catch (const InsufficientDataError& e) {
                row.rho = SpearmanResult{};
                row.rho.note = e.what();
                row.error = e.what();
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows[idx] = std::move(row);
        }
    });
    return rows;
}

} // namespace lacent
