#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <vector>

#include "ia/channel.hpp"

namespace ia {

// Power-basis systems are Vandermonde-like with condition numbers far past
// 1e16 at sigma' = 12, so the floating-point path runs at 50 digits.
using HighReal = boost::multiprecision::cpp_bin_float_50;

inline constexpr int kMaxFloatSigma = 12;
inline constexpr int kRedrawRetries = 5;

enum class BasisKind { power, indexed };

struct BasisFamily {
    BasisKind kind = BasisKind::power;
    int n = 0;
    std::vector<DiagonalChannel> members;
    std::vector<int> anchor_indices;  // 1-based slots the system is sampled at

    // power: the generator Q (members[j-1] = Q^j); pattern is C'.
    DiagonalChannel generator;
    ChangingPattern pattern;
    // indexed: the unknown slots; members agree off these slots.
    UnknownSet unknown;

    int sigma() const { return static_cast<int>(pattern.points().size()); }
};

struct DecompositionCoefficients {
    std::vector<HighReal> betas;
    std::vector<double> as_double() const;
};

// Power family Q, Q^2, ..., Q^{sigma'+1} following C'. Nodes are re-drawn
// (bounded) until the anchor system is nonsingular.
BasisFamily build_power_basis(const ChangingPattern& cprime, std::uint64_t seed);

// Indexed family for a channel with unknown slots U: |U|+1 members equal to
// `known` off U and carrying fresh draws on U. Values of `known` at slots
// in U are never read.
BasisFamily build_indexed_basis(const DiagonalChannel& known, const UnknownSet& U,
                                std::uint64_t seed);

// Copy of h with NaN at the unknown slots; what a constructor is allowed to see.
DiagonalChannel mask_unknown(const DiagonalChannel& h, const UnknownSet& U);

DecompositionCoefficients decompose(const DiagonalChannel& h, const BasisFamily& fam);
DiagonalChannel reconstruct(const DecompositionCoefficients& c, const BasisFamily& fam);
// Reconstruction kept at full working precision.
std::vector<HighReal> reconstruct_high(const DecompositionCoefficients& c, const BasisFamily& fam);

// Exact path: every double is an exact rational, so the solve and the
// reconstruction are exact.
std::vector<mpq_class> decompose_exact(const DiagonalChannel& h, const BasisFamily& fam);
std::vector<mpq_class> reconstruct_exact(const std::vector<mpq_class>& betas,
                                         const BasisFamily& fam);

// The square system matrix sampled at the anchors, exactly.
ExactMatrix anchor_system_exact(const BasisFamily& fam);

}  // namespace ia
