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

#include <sstream>
#include <string>

#include "lacent/dense_oracle.hpp"
#include "lacent/generators.hpp"
#include "lacent/push.hpp"
#include "lacent/serialize.hpp"

using namespace lacent;

TEST(ScoresCsv, SortedByDescendingScoreThenLabel) {
    const auto g = parse_edge_list("b\ta\nc\ta\nb\tc\n"); // labels b, a, c
    ScoreVector sv;
    sv.scores = {0.5, 0.9, 0.5}; // b and c tie
    sv.measure = Measure::pr;
    std::ostringstream out;
    write_scores_csv(out, sv, g);
    EXPECT_EQ(out.str(), "node_label,score\na,0.9\n"
                         "b,0.5\nc,0.5\n");
}

TEST(ScoresCsv, ConfigCommentsPrecedeHeader) {
    const auto g = parse_edge_list("a\tb\n");
    ScoreVector sv;
    sv.scores = {1.0, 2.0};
    std::ostringstream out;
    write_scores_csv(out, sv, g, {{"measure", "pr"}, {"alpha", "0.85"}});
    const auto text = out.str();
    EXPECT_EQ(text.rfind("# measure=pr\n# alpha=0.85\nnode_label,score\n", 0), 0u);
}

TEST(ScoresCsv, ShapeMismatchRejected) {
    const auto g = parse_edge_list("a\tb\n");
    ScoreVector sv;
    sv.scores = {1.0};
    std::ostringstream out;
    EXPECT_THROW(write_scores_csv(out, sv, g), ShapeError);
}

TEST(PushStatsJson, PinnedKeysPresent) {
    const auto g = parse_edge_list("a\tb\nb\ta\n");
    const auto res = approx_la_pagerank(g, 0.5, 0.5, {}, DegreeConditioning::none());
    const auto j = to_json(res.stats);
    EXPECT_EQ(j.at("measure"), "lapr");
    EXPECT_DOUBLE_EQ(j.at("alpha").get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j.at("delta").get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j.at("epsilon").get<double>(), 0.25);
    EXPECT_EQ(j.at("pushes").get<std::uint64_t>(), 3u);
    EXPECT_TRUE(j.contains("theoretical_bound"));
    EXPECT_TRUE(j.contains("residual_l1_final"));
    EXPECT_TRUE(j.contains("wall_time_ms"));
}

TEST(ScoreJson, CarriesParamsAndConvergence) {
    const auto g = parse_edge_list("a\tb\nb\ta\n");
    CentralityParams p;
    p.alpha = 0.85;
    const auto sv = pagerank_exact(g, p);
    const auto j = to_json(sv, g);
    EXPECT_EQ(j.at("measure"), "pr");
    EXPECT_TRUE(j.at("converged").get<bool>());
    EXPECT_GT(j.at("iterations_used").get<std::uint32_t>(), 0u);
    EXPECT_DOUBLE_EQ(j.at("params").at("alpha").get<double>(), 0.85);
    EXPECT_EQ(j.at("params").at("conditioning").at("mode"), "all-degrees");
    EXPECT_EQ(j.at("scores").size(), 2u);
}

TEST(LogCsv, RoundTrip) {
    const auto g = erdos_renyi_directed(25, 0.15, 4);
    const auto log = simulate_la_cascades(g, 0.7, 2, 9);
    std::ostringstream out;
    write_log_csv(out, log, {{"seed", "9"}});
    std::istringstream in(out.str());
    const auto back = read_log_csv(in);
    ASSERT_EQ(back.records.size(), log.records.size());
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        EXPECT_EQ(back.records[i].item_id, log.records[i].item_id);
        EXPECT_EQ(back.records[i].user_id, log.records[i].user_id);
        EXPECT_EQ(back.records[i].seq, log.records[i].seq);
    }
}

TEST(LogCsv, MalformedRowsRejected) {
    std::istringstream in("item_id,user_id,seq\nx,u\n");
    EXPECT_THROW(read_log_csv(in), ParseError);
    std::istringstream in2("item_id,user_id,seq\nx,u,notanumber\n");
    EXPECT_THROW(read_log_csv(in2), ParseError);
}

TEST(SweepCsv, ColumnsAndErrorRows) {
    std::vector<SweepResult> rows(2);
    rows[0].delta = 1.0;
    rows[0].pushes = 10;
    rows[0].theoretical_bound = 100.0;
    rows[0].rms = 0.25;
    rows[0].wall_time_ms = 1.5;
    rows[1].delta = 0.1;
    rows[1].error = "diverged";
    std::ostringstream out;
    write_sweep_csv(out, rows);
    const auto text = out.str();
    EXPECT_NE(text.find("delta,pushes,theoretical_bound,rms_error,wall_time_ms,error\n"),
              std::string::npos);
    EXPECT_NE(text.find("1,10,100,0.25,1.5,\n"), std::string::npos);
    EXPECT_NE(text.find("0.1,,,,,diverged\n"), std::string::npos) << text;
}

TEST(ReportCsv, ColumnsAndNanMarker) {
    std::vector<ReportRow> rows(2);
    rows[0].measure = Measure::laac;
    rows[0].alpha = 0.5;
    rows[0].rho.rho = 0.75;
    rows[0].rho.defined = true;
    rows[0].n_users = 42;
    rows[1].measure = Measure::lapr;
    rows[1].alpha = 0.5;
    rows[1].transposed = true;
    rows[1].rho.note = "zero rank variance (all values tied)";
    std::ostringstream out;
    write_report_csv(out, rows);
    const auto text = out.str();
    EXPECT_NE(text.find("measure,alpha,delta,rho,n_users,transposed,note\n"),
              std::string::npos);
    EXPECT_NE(text.find("laac,0.5,,0.75,42,false,\n"), std::string::npos);
    EXPECT_NE(text.find("lapr,0.5,,nan,0,true,zero rank variance"), std::string::npos);
}

TEST(FormatDouble, RoundTripsExactly) {
    for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-17, 123456.789, 0.4375}) {
        const auto s = format_double(v);
        EXPECT_EQ(std::stod(s), v) << s;
    }
}
