#pragma once

#include <cstdint>
#include <vector>

#include "ia/decomposition.hpp"
#include "ia/report.hpp"

namespace ia {

// Three users, fast fading, CSI missing on the slots Omega = union of U_pq.
// With u = |Omega|: n = 2u + 2 eps + 1, the Gamma exponent runs over
// 1..u+1, and the precoder bases have ranks u+eps+1 (A) and u+eps (B, C).
struct FastFading3Scheme {
    int epsilon = 0;
    int unknown_count = 0;  // u = |Omega|
    int gamma_powers = 0;   // u + 1
    int n = 0;
    std::vector<int> omega;  // 1-based
    // families[p][q] for p != q: indexed family of the cross channel.
    std::vector<std::vector<BasisFamily>> families;
    Vector T;
    DiagonalChannel gamma;
    Matrix A, B, C;
    std::vector<Matrix> precoders;  // V1 = A, V2, V3

    int expected_rank_A() const { return unknown_count + epsilon + 1; }
    int expected_rank_BC() const { return unknown_count + epsilon; }
};

// Only the known entries of the instance's cross channels are read.
FastFading3Scheme build_3user(const NetworkInstance& inst, int epsilon, std::uint64_t seed);

// Containment/closure checks on the basis families plus rank checks on the
// true channels. `seed` drives index-combination sampling when the full
// cross product exceeds 64 combinations.
AlignmentReport verify_3user(const FastFading3Scheme& s, const NetworkInstance& inst,
                             std::uint64_t seed, const RankTolerance& tol = {});

// The DoF triple ((u+eps+1), (u+eps), (u+eps)) / (2(u+eps)+1).
std::vector<Rational> ff3_dof_triple(int u, int epsilon);

// K users: N = (K-1)(K-2)-1 transfer matrices, n = 2u + n*^N + (n*+1)^N.
struct FastFadingKScheme {
    int K = 0;
    int n_star = 0;
    int N = 0;
    int unknown_count = 0;
    int n = 0;
    std::vector<int> omega;
    Matrix B, V1;
    std::vector<Matrix> precoders;  // V1, then S^q B for q = 2..K

    long expected_dim_B() const;
    long expected_dim_V1() const;
};

long ffk_slots(int K, int n_star, int unknown_count);
FastFadingKScheme build_kuser(const NetworkInstance& inst, int n_star, std::uint64_t seed);
AlignmentReport verify_kuser(const FastFadingKScheme& s, const NetworkInstance& inst,
                             const RankTolerance& tol = {});

Rational upsilon_fraction(const std::vector<std::vector<UnknownSet>>& unknown, int n);
Rational dof_cap_given_upsilon(long K, const Rational& upsilon);
// Odd K >= 5 has no closed form of its own; the even-K expression is used.
bool cap_is_odd_k_extension(long K);
Rational min_upsilon_for_max_dof(long K);

}  // namespace ia
