#include "ia/blind.hpp"

#include <algorithm>

namespace ia {

BlindScheme build_blind_scheme(const ChangingPattern& cu, int rho, int K, std::uint64_t seed) {
    if (rho < 1) throw InputError("rho must be >= 1");
    if (K < 1) throw InputError("K must be >= 1");
    const int sigma = static_cast<int>(cu.points().size());
    if (cu.n() != 2 * rho * (sigma + 1)) {
        throw InputError("blind scheme needs n = 2 rho (sigma'+1) = " +
                         std::to_string(2 * rho * (sigma + 1)) + ", got " + std::to_string(cu.n()));
    }
    BlindScheme s;
    s.K = K;
    s.n = cu.n();
    s.rho = rho;
    s.sigma_prime = sigma;
    s.cross_union = cu;
    s.family = build_power_basis(cu, mix_seed(seed, 1));
    Rng rng(mix_seed(seed, 2));
    s.gamma.values = Vector(s.n);
    for (int i = 0; i < s.n; ++i) s.gamma.values(i) = uniform(rng, 0.5, 2.0);

    s.basis = Matrix(s.n, rho * (sigma + 1));
    int col = 0;
    for (int a = 0; a <= sigma; ++a) {
        const Vector& qa = s.family.members[a].values;
        Vector g = s.gamma.values;
        for (int j = 1; j <= rho; ++j) {
            s.basis.col(col++) = qa.cwiseProduct(g);
            g = g.cwiseProduct(s.gamma.values);
        }
    }
    s.precoders.assign(K, s.basis);
    return s;
}

int predicted_Dk(int n, int rho, const ChangingPattern& cu, const ChangingPattern& direct) {
    if (cu.n() != n || direct.n() != n) throw InputError("patterns must share n");
    int fired = 0;
    for (const Block& b : constant_intervals(cu)) {
        // Interior points of a union block are by construction absent from
        // the union, so any direct point there is private.
        bool priv = std::any_of(direct.points().begin(), direct.points().end(),
                                [&](int c) { return c > b.first && c <= b.last; });
        if (priv) ++fired;
    }
    return std::min(n / 2, rho * fired);
}

int predicted_Dk(const BlindScheme& s, const ChangingPattern& direct) {
    return predicted_Dk(s.n, s.rho, s.cross_union, direct);
}

int measured_Dk(const BlindScheme& s, const NetworkInstance& inst, int k, const RankTolerance& tol) {
    if (inst.n != s.n) throw InputError("instance length does not match scheme");
    if (k < 0 || k >= inst.K) throw InputError("receiver index out of range");
    Matrix desired = inst.link(k, k) * s.precoders[k];
    int d = joint_rank({s.basis, desired}, tol) - numeric_rank(s.basis, tol);
    return std::min(d, s.n / 2);
}

Rational blind_total_dof(const std::vector<int>& D, int n) {
    long sum = 0;
    for (int d : D) sum += d;
    Rational r(sum, n);
    r.canonicalize();
    return r < 1 ? Rational(1) : r;
}

bool blind_admissible(int rho, const ChangingPattern& cu, const ChangingPattern& direct) {
    for (const Block& b : constant_intervals(cu)) {
        if (b.size() < rho) return false;
        int start = b.first, covered = 0;
        bool priv = false;
        for (int c : direct.points()) {
            if (c > b.first && c <= b.last) {
                covered += std::min(c - start, rho);
                start = c;
                priv = true;
            }
        }
        covered += std::min(b.last + 1 - start, rho);
        if (priv && covered < 2 * rho) return false;
    }
    return true;
}

std::string blind_tightness_warning(const BlindScheme& s, const ChangingPattern& direct) {
    int longest = 0;
    for (const Block& b : constant_intervals(direct)) longest = std::max(longest, b.size());
    if (s.rho * (s.sigma_prime + 1) < longest) {
        return "rho(sigma'+1) = " + std::to_string(s.rho * (s.sigma_prime + 1)) +
               " is below the longest direct block (" + std::to_string(longest) + ")";
    }
    return {};
}

bool blind_alignment_holds(const BlindScheme& s, const NetworkInstance& inst, const RankTolerance& tol) {
    for (int p = 0; p < inst.K; ++p) {
        for (int q = 0; q < inst.K; ++q) {
            if (p == q) continue;
            if (!is_subspace(inst.link(p, q) * s.precoders[q], s.basis, tol)) return false;
        }
    }
    return true;
}

bool blind_closure_holds(const BlindScheme& s, const NetworkInstance& inst, const RankTolerance& tol) {
    for (int p = 0; p < inst.K; ++p) {
        for (int q = 0; q < inst.K; ++q) {
            if (p == q) continue;
            DiagonalChannel h = reconstruct(decompose(inst.gains[p][q], s.family), s.family);
            if (!is_subspace(h.values.asDiagonal() * s.basis, s.basis, tol)) return false;
        }
    }
    return true;
}

}  // namespace ia
