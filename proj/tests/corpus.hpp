#pragma once

#include <string>

#include "ia/channel.hpp"
#include "ia/rng.hpp"

namespace ia::testing {

// A blind-regime network whose patterns meet the exact-prediction
// conditions: cross-union blocks of at least rho slots, at most one private
// direct change point per block with both sides >= rho, plus direct points
// that coincide with cross points.
struct BlindCase {
    NetworkConfig cfg;
    int rho = 0;
    int sigma = 0;
    ChangingPattern cross_union;
};

BlindCase admissible_blind_case(Rng& rng, int rho, int sigma, int K);

// Cross patterns whose union has exactly `sigma` points, direct patterns full.
NetworkConfig blind_alignment_config(Rng& rng, int rho, int sigma, int K);

// Three users, u unknown slots 3..u+2 spread round-robin over the links
// (1,2), (2,3), (3,1); n = 2u + 2 eps + 1; fully fast-fading patterns.
NetworkConfig ff3_config(int u, int epsilon, DirectKind kind, int M);

std::string config_path(const std::string& name);

}  // namespace ia::testing
