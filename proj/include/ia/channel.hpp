#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ia/linalg.hpp"
#include "ia/rational.hpp"
#include "ia/rng.hpp"

namespace ia {

// Slots are 1-based throughout the public API, as in the model: slot c in
// change_points means the gain at slot c differs from slot c-1.
class ChangingPattern {
public:
    ChangingPattern() = default;
    // Strict: points must be distinct and lie in [2, n].
    ChangingPattern(int n, std::vector<int> change_points);
    // Lenient form for configuration input: slot 1 is dropped (it always
    // starts a block), duplicates are merged; out-of-range still throws.
    static ChangingPattern from_indices(int n, std::vector<int> indices);
    static ChangingPattern constant(int n) { return {n, {}}; }
    static ChangingPattern full(int n);

    int n() const { return n_; }
    const std::vector<int>& points() const { return points_; }
    bool contains(int slot) const;

    ChangingPattern unite(const ChangingPattern& other) const;

    bool operator==(const ChangingPattern&) const = default;

private:
    int n_ = 0;
    std::vector<int> points_;
};

struct Block {
    int first;  // 1-based, inclusive
    int last;
    int size() const { return last - first + 1; }
    bool contains(int s) const { return s >= first && s <= last; }
};

std::vector<Block> constant_intervals(const ChangingPattern& p);
Rational mobility_rate(const ChangingPattern& p);

struct UnknownSet {
    int n = 0;
    std::vector<int> indices;  // sorted, 1-based

    UnknownSet() = default;
    UnknownSet(int n, std::vector<int> idx);
    bool contains(int slot) const;
    std::size_t size() const { return indices.size(); }
};

UnknownSet unite(const std::vector<UnknownSet>& sets, int n);

struct GainRange {
    double lo = 0.5;
    double hi = 2.0;
};

struct DiagonalChannel {
    Vector values;  // length n
    int n() const { return static_cast<int>(values.size()); }
    Matrix as_matrix() const { return values.asDiagonal(); }
};

DiagonalChannel sample_channel(const ChangingPattern& p, Rng& rng, GainRange g = {});
DiagonalChannel sample_channel(const ChangingPattern& p, std::uint64_t seed, GainRange g = {});

enum class DirectKind { identity, memory, permutation };
DirectKind parse_direct_kind(const std::string& s);
std::string to_string(DirectKind k);

struct DirectTransform {
    DirectKind kind = DirectKind::identity;
    int distance = 0;
    Matrix matrix;
};

DirectTransform direct_transform_matrix(DirectKind kind, int M, int n, Rng& rng);
DirectTransform direct_transform_matrix(DirectKind kind, int M, int n, std::uint64_t seed);

struct NetworkConfig {
    int K = 0;
    int n = 0;
    GainRange gains;
    // patterns[p][q]: channel from TX q to RX p (0-based indices here).
    // Diagonal entries are the direct channels.
    std::vector<std::vector<ChangingPattern>> patterns;
    std::vector<std::vector<UnknownSet>> unknown;
    DirectKind direct_kind = DirectKind::identity;
    int memory_distance = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct NetworkInstance {
    int K = 0;
    int n = 0;
    // cross[p][q] for p != q; direct gains live on the diagonal.
    std::vector<std::vector<DiagonalChannel>> gains;
    std::vector<DirectTransform> direct;
    std::vector<std::vector<ChangingPattern>> patterns;
    std::vector<std::vector<UnknownSet>> unknown;
    std::uint64_t seed = 0;

    // Effective matrix acting on TX q's signal at RX p: diag(h) for cross
    // links, F_p diag(h_pp) for the direct link.
    Matrix link(int p, int q) const;
};

NetworkInstance sample_network(const NetworkConfig& cfg, std::uint64_t seed);

// Union of all cross patterns (p != q).
ChangingPattern cross_union(const NetworkConfig& cfg);
UnknownSet unknown_union(const NetworkConfig& cfg);

}  // namespace ia
