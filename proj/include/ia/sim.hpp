#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ia/config.hpp"
#include "ia/report.hpp"

namespace ia {

enum class Regime { blind, shared, ff3, ffk };
std::string to_string(Regime r);

struct Scenario {
    Regime regime = Regime::blind;
    ConfigFile cfg;
    int trials = 1;
    std::uint64_t base_seed = 1;  // trial i uses base_seed + i
    int threads = 0;              // 0: OpenMP default
    RankTolerance tol;
};

struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    // Total DoF kept unreduced as (sum of desired dims) / n.
    long dof_num = 0;
    long dof_den = 1;
    std::vector<NamedCheck> checks;
    std::vector<NamedRank> ranks;
    std::vector<std::string> notes;
    std::string error;  // set when the trial threw
};

// One trial; never throws for numeric trouble, the error lands in `error`.
TrialResult run_trial(const Scenario& sc, int index);

std::vector<TrialResult> run_trials(const Scenario& sc);         // OpenMP over trials
std::vector<TrialResult> run_trials_serial(const Scenario& sc);  // reference

struct RankSummary {
    std::string name;
    int min = 0, max = 0, mode = 0;
};

struct CheckSummary {
    std::string name;
    int passed = 0, total = 0;
};

struct SimSummary {
    int trials = 0;
    int passed = 0;
    std::optional<std::uint64_t> first_failing_seed;
    long dof_num = 0;  // most frequent (sum, n) across trials
    long dof_den = 1;
    std::vector<RankSummary> ranks;
    std::vector<CheckSummary> checks;
    std::vector<std::string> notes;  // distinct notes and errors
};

SimSummary summarize(const std::vector<TrialResult>& results);

// Per-trial rows, a blank line, then the summary block ending in
// "total_dof=<sum>/<n> trials=<T> pass=<P>".
void write_csv(std::ostream& os, const std::vector<TrialResult>& results, const SimSummary& s);
void write_summary(std::ostream& os, const SimSummary& s);

}  // namespace ia
