#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ia/channel.hpp"
#include "ia/decomposition.hpp"

namespace ia {

// Every transmitter sends along the same n/2 columns Q^a G^j 1
// (a = 1..sigma'+1, j = 1..rho); the same set spans all interference.
struct BlindScheme {
    int K = 0;
    int n = 0;
    int rho = 0;
    int sigma_prime = 0;
    ChangingPattern cross_union;
    BasisFamily family;      // power family; family.generator is Q
    DiagonalChannel gamma;   // fully random diagonal
    Matrix basis;            // n x rho(sigma'+1), raw (un-normalised) columns
    std::vector<Matrix> precoders;
};

BlindScheme build_blind_scheme(const ChangingPattern& cross_union, int rho, int K,
                               std::uint64_t seed);

// Count of free interference dimensions predicted from patterns alone.
// A direct change point coinciding with a cross change point is not private.
int predicted_Dk(int n, int rho, const ChangingPattern& cross_union,
                 const ChangingPattern& direct_pattern);
int predicted_Dk(const BlindScheme& s, const ChangingPattern& direct_pattern);

// rank([I | H_kk F_k V_k]) - rank(I), clamped at n/2. k is 0-based.
int measured_Dk(const BlindScheme& s, const NetworkInstance& inst, int k,
                const RankTolerance& tol = {});

Rational blind_total_dof(const std::vector<int>& D, int n);

// The prediction equals the measured rank count when every cross-union
// block holds at least rho slots and, inside each block with private change
// points, the sub-blocks satisfy sum(min(|A_i|, rho)) >= 2 rho.
bool blind_admissible(int rho, const ChangingPattern& cross_union,
                      const ChangingPattern& direct_pattern);

// Non-empty when rho(sigma'+1) is smaller than the longest direct block.
std::string blind_tightness_warning(const BlindScheme& s, const ChangingPattern& direct_pattern);

// is_subspace(H_pq V_q, I) for all p != q.
bool blind_alignment_holds(const BlindScheme& s, const NetworkInstance& inst,
                           const RankTolerance& tol = {});

// Each basis column times the power-family reconstruction of every cross
// channel stays inside span(I).
bool blind_closure_holds(const BlindScheme& s, const NetworkInstance& inst,
                         const RankTolerance& tol = {});

}  // namespace ia
