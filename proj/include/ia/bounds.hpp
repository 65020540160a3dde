#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "ia/rational.hpp"

namespace ia {

// d(r) = K r / (r^2 - r + K): total DoF when each aligned group is shared
// by r transmitters.
Rational d_of_r(long K, long r);

// Smallest r >= 1 with r^2 + r >= K, i.e. ceil((sqrt(1+4K)-1)/2).
long r_star(long K);

struct BoundResult {
    long K = 0;
    long r_star = 0;
    Rational dof;
    std::vector<std::pair<long, Rational>> per_r_curve;  // r = 1..K
};

BoundResult dof_upper_bound(long K, bool with_curve = true);

struct SchemeCounts {
    mpz_class n;
    mpz_class desired_per_rx;
    Rational total_dof;
};

SchemeCounts scheme_counts(long K, long r);

// f(x) = K x / (x^2 - x + K); non-positive x are skipped.
std::vector<std::pair<Rational, Rational>> curve_f(long K, const std::vector<Rational>& xs);

}  // namespace ia
