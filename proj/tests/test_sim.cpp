#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "ia/errors.hpp"
#include "ia/sim.hpp"

using namespace ia;

namespace {

Scenario scenario(Regime r, const std::string& cfg, int trials) {
    Scenario sc;
    sc.regime = r;
    sc.cfg = load_config(ia::testing::config_path(cfg));
    sc.trials = trials;
    sc.base_seed = sc.cfg.net.seed;
    return sc;
}

std::string csv(const std::vector<TrialResult>& r) {
    std::ostringstream os;
    write_csv(os, r, summarize(r));
    return os.str();
}

}  // namespace

TEST(Harness, ParallelMatchesSerialByteForByte) {
    for (auto [r, cfg] : {std::pair{Regime::blind, "blind_mixed.json"}, std::pair{Regime::shared, "example2.json"},
                          std::pair{Regime::ff3, "ff3_L1_e2.json"}}) {
        Scenario sc = scenario(r, cfg, 24);
        sc.threads = 4;
        EXPECT_EQ(csv(run_trials(sc)), csv(run_trials_serial(sc))) << cfg;
        EXPECT_EQ(csv(run_trials(sc)), csv(run_trials(sc))) << cfg;
    }
}

TEST(Harness, SeedsAreBasePlusIndex) {
    Scenario sc = scenario(Regime::blind, "example1.json", 5);
    sc.base_seed = 40;
    auto res = run_trials(sc);
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(res[i].trial, i);
        EXPECT_EQ(res[i].seed, 40u + i);
    }
}

TEST(Harness, BlindExampleGivesHalfPerUser) {
    auto res = run_trials(scenario(Regime::blind, "example1.json", 50));
    SimSummary s = summarize(res);
    EXPECT_EQ(s.passed, 50);
    Rational total(s.dof_num, s.dof_den);
    total.canonicalize();
    EXPECT_EQ(total, Rational(3, 2));
}

TEST(Harness, SummaryAggregates) {
    std::vector<TrialResult> r(3);
    for (int i = 0; i < 3; ++i) {
        r[i].trial = i;
        r[i].seed = 10 + i;
        r[i].dof_num = i == 2 ? 5 : 4;
        r[i].dof_den = 4;
        r[i].ranks = {{"x", i == 0 ? 1 : 3}};
        r[i].checks = {{"ok", i != 1}};
        r[i].pass = i != 1;
    }
    SimSummary s = summarize(r);
    ASSERT_EQ(s.ranks.size(), 1u);
    EXPECT_EQ(s.ranks[0].min, 1);
    EXPECT_EQ(s.ranks[0].max, 3);
    EXPECT_EQ(s.ranks[0].mode, 3);
    EXPECT_EQ(s.checks[0].passed, 2);
    EXPECT_EQ(s.checks[0].total, 3);
    EXPECT_EQ(s.first_failing_seed, 11u);
    EXPECT_EQ(s.dof_num, 4);
    std::ostringstream os;
    write_csv(os, r, s);
    const std::string out = os.str();
    EXPECT_EQ(out.rfind("trial,seed,pass,total_dof,check:ok,rank:x\n", 0), 0u);
    EXPECT_NE(out.find("\n\n"), std::string::npos);
    EXPECT_NE(out.find("total_dof=4/4 trials=3 pass=2\n"), std::string::npos);
}

TEST(Harness, InputErrorsNameTheSeed) {
    Scenario sc = scenario(Regime::blind, "example2.json", 3);  // no rho
    try {
        run_trials(sc);
        FAIL() << "expected an input error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("trial seed 1"), std::string::npos) << e.what();
    }
    sc.trials = 0;
    EXPECT_THROW(run_trials(sc), InputError);
}

TEST(AlignmentReport, PerfectAlignmentToy) {
    ConfigFile c = load_config(ia::testing::config_path("example1.json"));
    c.net.n = 2;
    for (auto& row : c.net.unknown) {
        for (auto& u : row) u = UnknownSet(2, {});
    }
    for (auto& row : c.net.patterns) {
        for (auto& p : row) p = p.points().empty() ? ChangingPattern::constant(2) : ChangingPattern::full(2);
    }
    unsigned seed = 3;
    NetworkInstance inst = sample_network(c.net, seed);
    Matrix v(2, 1);
    v << 1, 1;
    AlignmentReport rep = alignment_report(inst, {v, v, v});
    for (const auto& d : rep.per_receiver) {
        EXPECT_EQ(d.interference, 1);
        EXPECT_EQ(d.desired, 1);
    }
    EXPECT_TRUE(rep.imperfect_ia);
    EXPECT_TRUE(rep.pollution_free);
}

TEST(AlignmentReport, RandomPrecodersAreANegativeControl) {
    ConfigFile c = load_config(ia::testing::config_path("example1.json"));
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        NetworkInstance inst = sample_network(c.net, rng());
        std::vector<Matrix> v;
        for (int k = 0; k < 3; ++k) v.push_back(Matrix::Random(4, 2));
        AlignmentReport rep = alignment_report(inst, v);
        EXPECT_LE(rep.total_dof, 1);
        for (const auto& d : rep.per_receiver) {
            EXPECT_EQ(d.interference, 4);
            EXPECT_EQ(d.desired, 0);
        }
        EXPECT_FALSE(rep.imperfect_ia);
    }
}

TEST(AlignmentReport, ShapeErrors) {
    ConfigFile c = load_config(ia::testing::config_path("example1.json"));
    NetworkInstance inst = sample_network(c.net, 1);
    EXPECT_THROW(alignment_report(inst, {Matrix(4, 1)}), InputError);
    EXPECT_THROW(alignment_report(inst, {Matrix(4, 1), Matrix(4, 1), Matrix(5, 1)}), InputError);
}
