#include "ia/channel.hpp"

#include <algorithm>
#include <numeric>

namespace ia {

ChangingPattern::ChangingPattern(int n, std::vector<int> change_points)
    : n_(n), points_(std::move(change_points)) {
    if (n < 1) throw InputError("pattern length must be >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        int c = points_[i];
        if (c < 2 || c > n) {
            throw InputError("change point " + std::to_string(c) + " outside [2," +
                             std::to_string(n) + "]");
        }
        if (i > 0 && points_[i - 1] >= c) throw InputError("change points must increase");
    }
}

ChangingPattern ChangingPattern::from_indices(int n, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::erase(idx, 1);
    return {n, std::move(idx)};
}

ChangingPattern ChangingPattern::full(int n) {
    std::vector<int> pts(std::max(0, n - 1));
    std::iota(pts.begin(), pts.end(), 2);
    return {n, std::move(pts)};
}

bool ChangingPattern::contains(int slot) const {
    return std::binary_search(points_.begin(), points_.end(), slot);
}

ChangingPattern ChangingPattern::unite(const ChangingPattern& other) const {
    if (other.n_ != n_) throw InputError("pattern length mismatch");
    std::vector<int> u;
    std::set_union(points_.begin(), points_.end(), other.points_.begin(),
                   other.points_.end(), std::back_inserter(u));
    return {n_, std::move(u)};
}

std::vector<Block> constant_intervals(const ChangingPattern& p) {
    std::vector<Block> out;
    int start = 1;
    for (int c : p.points()) {
        out.push_back({start, c - 1});
        start = c;
    }
    out.push_back({start, p.n()});
    return out;
}

Rational mobility_rate(const ChangingPattern& p) {
    Rational r(static_cast<long>(p.points().size()), static_cast<long>(p.n()));
    r.canonicalize();
    return r;
}

UnknownSet::UnknownSet(int n_, std::vector<int> idx) : n(n_), indices(std::move(idx)) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int u : indices) {
        if (u < 1 || u > n) {
            throw InputError("unknown slot " + std::to_string(u) + " outside [1," +
                             std::to_string(n) + "]");
        }
    }
}

bool UnknownSet::contains(int slot) const {
    return std::binary_search(indices.begin(), indices.end(), slot);
}

UnknownSet unite(const std::vector<UnknownSet>& sets, int n) {
    std::vector<int> all;
    for (const auto& s : sets) {
        if (s.n != n) throw InputError("unknown-set length mismatch");
        all.insert(all.end(), s.indices.begin(), s.indices.end());
    }
    return {n, std::move(all)};
}

DiagonalChannel sample_channel(const ChangingPattern& p, Rng& rng, GainRange g) {
    if (!(g.lo > 0.0 && g.hi > g.lo)) throw InputError("gain range must satisfy 0 < h_min < h_max");
    DiagonalChannel h{Vector(p.n())};
    double prev = 0.0;
    bool first = true;
    for (const Block& b : constant_intervals(p)) {
        double v = uniform(rng, g.lo, g.hi);
        while (!first && v == prev) v = uniform(rng, g.lo, g.hi);
        h.values.segment(b.first - 1, b.size()).setConstant(v);
        prev = v;
        first = false;
    }
    return h;
}

DiagonalChannel sample_channel(const ChangingPattern& p, std::uint64_t seed, GainRange g) {
    Rng rng(seed);
    return sample_channel(p, rng, g);
}

DirectKind parse_direct_kind(const std::string& s) {
    if (s == "identity") return DirectKind::identity;
    if (s == "memory") return DirectKind::memory;
    if (s == "permutation") return DirectKind::permutation;
    throw InputError("unknown direct_kind '" + s + "'");
}

std::string to_string(DirectKind k) {
    switch (k) {
        case DirectKind::identity: return "identity";
        case DirectKind::memory: return "memory";
        case DirectKind::permutation: return "permutation";
    }
    return "?";
}

DirectTransform direct_transform_matrix(DirectKind kind, int M, int n, Rng& rng) {
    if (n < 1) throw InputError("transform size must be >= 1");
    if (kind != DirectKind::identity && (M < 1 || M >= n)) {
        throw InputError("direct-transform distance must satisfy 1 <= M < n");
    }
    DirectTransform t{kind, kind == DirectKind::identity ? 0 : M, Matrix::Identity(n, n)};
    if (kind == DirectKind::memory) {
        t.matrix.setZero();
        for (int r = 0; r < n; ++r) {
            for (int c = std::max(0, r - M); c <= r; ++c) t.matrix(r, c) = uniform(rng, 0.5, 2.0);
        }
    } else if (kind == DirectKind::permutation) {
        // A random non-trivial rotation inside each window of M+1 slots:
        // displacement stays <= M and no slot maps to itself (a fixed
        // point acts diagonally there, like the identity transform).
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int start = 0; start < n; start += M + 1) {
            int end = std::min(n, start + M + 1);
            int len = end - start;
            if (len > 1) {
                const int shift = std::uniform_int_distribution<int>(1, len - 1)(rng);
                std::rotate(perm.begin() + start, perm.begin() + start + shift, perm.begin() + end);
            }
        }
        t.matrix.setZero();
        for (int r = 0; r < n; ++r) t.matrix(r, perm[r]) = uniform(rng, 0.5, 2.0);
    }
    return t;
}

DirectTransform direct_transform_matrix(DirectKind kind, int M, int n, std::uint64_t seed) {
    Rng rng(seed);
    return direct_transform_matrix(kind, M, n, rng);
}

void NetworkConfig::validate() const {
    if (K < 1) throw InputError("K must be >= 1");
    if (n < 1) throw InputError("n must be >= 1");
    if (patterns.size() != static_cast<std::size_t>(K)) throw InputError("patterns must be K x K");
    if (unknown.size() != static_cast<std::size_t>(K)) throw InputError("unknown must be K x K");
    for (int p = 0; p < K; ++p) {
        if (patterns[p].size() != static_cast<std::size_t>(K) ||
            unknown[p].size() != static_cast<std::size_t>(K)) {
            throw InputError("patterns/unknown must be K x K");
        }
        for (int q = 0; q < K; ++q) {
            if (patterns[p][q].n() != n) throw InputError("pattern length does not match n");
            if (unknown[p][q].n != n) throw InputError("unknown set length does not match n");
        }
    }
    if (direct_kind != DirectKind::identity && (memory_distance < 1 || memory_distance >= n)) {
        throw InputError("memory_distance must satisfy 1 <= M < n");
    }
}

Matrix NetworkInstance::link(int p, int q) const {
    if (p == q) return direct[p].matrix * gains[p][p].values.asDiagonal();
    return gains[p][q].as_matrix();
}

NetworkInstance sample_network(const NetworkConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    NetworkInstance inst;
    inst.K = cfg.K;
    inst.n = cfg.n;
    inst.patterns = cfg.patterns;
    inst.unknown = cfg.unknown;
    inst.seed = seed;
    Rng rng(seed);
    inst.gains.assign(cfg.K, std::vector<DiagonalChannel>(cfg.K));
    for (int p = 0; p < cfg.K; ++p) {
        for (int q = 0; q < cfg.K; ++q) inst.gains[p][q] = sample_channel(cfg.patterns[p][q], rng, cfg.gains);
    }
    for (int p = 0; p < cfg.K; ++p) {
        inst.direct.push_back(direct_transform_matrix(cfg.direct_kind, cfg.memory_distance, cfg.n, rng));
    }
    return inst;
}

ChangingPattern cross_union(const NetworkConfig& cfg) {
    ChangingPattern u = ChangingPattern::constant(cfg.n);
    for (int p = 0; p < cfg.K; ++p) {
        for (int q = 0; q < cfg.K; ++q) {
            if (p != q) u = u.unite(cfg.patterns[p][q]);
        }
    }
    return u;
}

UnknownSet unknown_union(const NetworkConfig& cfg) {
    std::vector<UnknownSet> all;
    for (int p = 0; p < cfg.K; ++p) {
        for (int q = 0; q < cfg.K; ++q) {
            if (p != q) all.push_back(cfg.unknown[p][q]);
        }
    }
    return unite(all, cfg.n);
}

}  // namespace ia
