#include "ia/bounds.hpp"

#include <cmath>

#include "ia/errors.hpp"

namespace ia {

Rational d_of_r(long K, long r) {
    mpz_class k(K), rr(r);
    Rational q(k * rr, rr * rr - rr + k);
    q.canonicalize();
    return q;
}

long r_star(long K) {
    if (K < 1) throw InputError("K must be >= 1");
    auto ok = [K](long r) { return static_cast<__int128>(r) * r + r >= K; };
    long r = static_cast<long>((std::sqrt(1.0L + 4.0L * K) - 1.0L) / 2.0L);
    if (r < 1) r = 1;
    while (r > 1 && ok(r - 1)) --r;
    while (!ok(r)) ++r;
    return r;
}

BoundResult dof_upper_bound(long K, bool with_curve) {
    BoundResult b;
    b.K = K;
    b.r_star = r_star(K);
    b.dof = d_of_r(K, b.r_star);
    if (with_curve) {
        b.per_r_curve.reserve(K);
        for (long r = 1; r <= K; ++r) b.per_r_curve.emplace_back(r, d_of_r(K, r));
    }
    return b;
}

SchemeCounts scheme_counts(long K, long r) {
    if (r < 1 || r > K - 1) throw InputError("sharing degree r must lie in [1, K-1]");
    mpz_class aligned, shared;
    mpz_bin_uiui(aligned.get_mpz_t(), K - 1, r);
    mpz_bin_uiui(shared.get_mpz_t(), K - 1, r - 1);
    SchemeCounts c;
    c.n = aligned + r * shared;
    c.desired_per_rx = shared;
    c.total_dof = Rational(K * shared, c.n);
    c.total_dof.canonicalize();
    return c;
}

std::vector<std::pair<Rational, Rational>> curve_f(long K, const std::vector<Rational>& xs) {
    if (K < 1) throw InputError("K must be >= 1");
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& x : xs) {
        if (x <= 0) continue;
        Rational f = Rational(K * x) / (x * x - x + K);
        f.canonicalize();
        out.emplace_back(x, f);
    }
    return out;
}

}  // namespace ia
