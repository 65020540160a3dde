#pragma once

#include <string>
#include <vector>

#include "ia/channel.hpp"

namespace ia {

struct ReceiverDims {
    int desired = 0;
    int interference = 0;
    int total = 0;  // dim(desired + interference)
};

struct NamedCheck {
    std::string name;
    bool pass = false;
};

struct NamedRank {
    std::string name;
    int value = 0;
};

struct AlignmentReport {
    int n = 0;
    std::vector<ReceiverDims> per_receiver;
    std::vector<Rational> dof_vector;
    Rational total_dof;           // sum of desired dims over n
    bool imperfect_ia = false;    // sum of interference dims < (K-1) n
    bool pollution_free = false;  // desired spans meet interference only in 0
    std::vector<NamedCheck> checks;
    std::vector<NamedRank> ranks;
    std::vector<std::string> notes;

    int desired_sum() const;
    bool all_pass() const;
    void check(std::string name, bool pass) { checks.push_back({std::move(name), pass}); }
    void rank(std::string name, int v) { ranks.push_back({std::move(name), v}); }
};

// Desired dimension at RX p is rank(all arriving) - rank(interference only).
// If declared_interference is non-empty, adds one containment check per
// receiver ("interference_in_declared_rx<p>").
AlignmentReport alignment_report(const NetworkInstance& inst, const std::vector<Matrix>& precoders,
                                 const std::vector<Matrix>& declared_interference = {},
                                 const RankTolerance& tol = {});

}  // namespace ia
