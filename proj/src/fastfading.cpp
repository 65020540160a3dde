#include "ia/fastfading.hpp"

#include <algorithm>
#include <functional>

namespace ia {

namespace {

std::vector<std::vector<BasisFamily>> cross_families(const NetworkInstance& inst, std::uint64_t seed) {
    std::vector<std::vector<BasisFamily>> fam(inst.K, std::vector<BasisFamily>(inst.K));
    for (int p = 0; p < inst.K; ++p) {
        for (int q = 0; q < inst.K; ++q) {
            if (p == q) continue;
            const UnknownSet& U = inst.unknown[p][q];
            // The hidden values are masked before anything else sees them.
            fam[p][q] = build_indexed_basis(mask_unknown(inst.gains[p][q], U), U,
                                            mix_seed(seed, 100 + p * inst.K + q));
        }
    }
    return fam;
}

std::vector<int> omega_of(const NetworkInstance& inst) {
    std::vector<UnknownSet> all;
    for (int p = 0; p < inst.K; ++p) {
        for (int q = 0; q < inst.K; ++q) {
            if (p != q) all.push_back(inst.unknown[p][q]);
        }
    }
    return unite(all, inst.n).indices;
}

DiagonalChannel gamma_on(const std::vector<int>& omega, int n, Rng& rng) {
    DiagonalChannel g{Vector::Ones(n)};
    for (int s : omega) g.values(s - 1) = uniform(rng, 0.5, 2.0);
    return g;
}

// Every combination of member indices when there are at most `cap`,
// otherwise `cap` deterministic samples.
std::vector<std::vector<int>> index_combos(const std::vector<int>& sizes, int cap, std::uint64_t seed) {
    long total = 1;
    for (int s : sizes) {
        total *= s;
        if (total > cap) break;
    }
    std::vector<std::vector<int>> out;
    if (total <= cap) {
        std::vector<int> cur(sizes.size(), 0);
        while (true) {
            out.push_back(cur);
            std::size_t k = 0;
            while (k < cur.size() && ++cur[k] == sizes[k]) cur[k++] = 0;
            if (k == cur.size()) break;
        }
        return out;
    }
    Rng rng(seed);
    for (int c = 0; c < cap; ++c) {
        std::vector<int> cur;
        for (int s : sizes) cur.push_back(std::uniform_int_distribution<int>(0, s - 1)(rng));
        out.push_back(cur);
    }
    return out;
}

const Vector& member(const std::vector<std::vector<BasisFamily>>& f, int p, int q, int i) {
    return f[p][q].members[i].values;
}

int fam_size(const std::vector<std::vector<BasisFamily>>& f, int p, int q) {
    return static_cast<int>(f[p][q].members.size());
}

// Memory transforms with consecutive unknown slots closer than M, and M >=
// |Omega|: without the last condition a dimension is lost (|Omega| = 3 at
// M = 2). Permutation transforms lose dimensions once |Omega| >= 3, so
// separation is only measured for them, not asserted.
bool gap_hypothesis(const NetworkInstance& inst, const std::vector<int>& omega) {
    for (const auto& d : inst.direct) {
        if (d.kind != DirectKind::memory) return false;
        if (d.distance < static_cast<int>(omega.size())) return false;
        for (std::size_t i = 1; i < omega.size(); ++i) {
            if (omega[i] - omega[i - 1] >= d.distance) return false;
        }
    }
    return true;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

FastFading3Scheme build_3user(const NetworkInstance& inst, int epsilon, std::uint64_t seed) {
    if (inst.K != 3) throw InputError("the three-user scheme needs K = 3");
    if (epsilon < 1) throw InputError("epsilon must be >= 1");
    FastFading3Scheme s;
    s.epsilon = epsilon;
    s.omega = omega_of(inst);
    s.unknown_count = static_cast<int>(s.omega.size());
    s.gamma_powers = s.unknown_count + 1;
    s.n = inst.n;
    if (s.n != 2 * s.unknown_count + 2 * epsilon + 1) {
        throw InputError("three-user scheme needs n = 2|U| + 2 eps + 1 = " +
                         std::to_string(2 * s.unknown_count + 2 * epsilon + 1) + ", got " +
                         std::to_string(s.n));
    }
    s.families = cross_families(inst, seed);
    const auto& f = s.families;
    auto Q = [&](int p, int q) { return member(f, p, q, 0).array(); };
    s.T = (Q(0, 1) / Q(1, 0) * Q(1, 2) / Q(2, 1) * Q(2, 0) / Q(0, 2)).matrix();
    Rng rng(mix_seed(seed, 7));
    s.gamma = gamma_on(s.omega, s.n, rng);

    auto family = [&](int i_lo, int i_hi) {
        Matrix m(s.n, (i_hi - i_lo + 1) * s.gamma_powers);
        int col = 0;
        for (int i = i_lo; i <= i_hi; ++i) {
            Vector ti = s.T.array().pow(i).matrix();
            Vector g = s.gamma.values;
            for (int j = 1; j <= s.gamma_powers; ++j) {
                m.col(col++) = ti.cwiseProduct(g);
                g = g.cwiseProduct(s.gamma.values);
            }
        }
        return m;
    };
    s.A = family(0, epsilon);
    s.B = family(1, epsilon);
    s.C = family(0, epsilon - 1);
    // B and C describe V3 and V2 after a diagonal change of basis; undo it
    // with the index-1 members.
    Matrix V3 = (Q(1, 0) / Q(1, 2)).matrix().asDiagonal() * s.B;
    Matrix V2 = (Q(2, 0) / Q(2, 1)).matrix().asDiagonal() * s.C;
    s.precoders = {s.A, V2, V3};
    return s;
}

std::vector<Rational> ff3_dof_triple(int u, int epsilon) {
    const long n = 2L * (u + epsilon) + 1;
    std::vector<Rational> out = {Rational(u + epsilon + 1, n), Rational(u + epsilon, n),
                                 Rational(u + epsilon, n)};
    for (auto& r : out) r.canonicalize();
    return out;
}

AlignmentReport verify_3user(const FastFading3Scheme& s, const NetworkInstance& inst,
                             std::uint64_t seed, const RankTolerance& tol) {
    if (inst.n != s.n || inst.K != 3) throw InputError("instance does not match the scheme");
    const auto& f = s.families;
    const Matrix& V1 = s.precoders[0];
    const Matrix& V2 = s.precoders[1];
    const Matrix& V3 = s.precoders[2];
    auto D = [](const Vector& v) { return v.asDiagonal(); };

    std::vector<Matrix> declared = {inst.link(0, 1) * V2, inst.link(1, 0) * V1, inst.link(2, 0) * V1};
    AlignmentReport rep = alignment_report(inst, s.precoders, declared, tol);

    const int ra = numeric_rank(s.A, tol), rb = numeric_rank(s.B, tol), rc = numeric_rank(s.C, tol);
    rep.rank("rank_A", ra);
    rep.rank("rank_B", rb);
    rep.rank("rank_C", rc);
    // The indicator form of the B rank, read with L = |U|+1, for comparison.
    rep.rank("rank_B_indicator_form", s.gamma_powers + (s.epsilon > 1 ? s.epsilon : 0));
    rep.rank("L_union_plus_one", s.gamma_powers);
    rep.rank("L_union", s.unknown_count);
    rep.check("rank_A", ra == s.expected_rank_A());
    rep.check("rank_B", rb == s.expected_rank_BC());
    rep.check("rank_C", rc == s.expected_rank_BC());

    // Products T_(i1..i6) built from any family members agree with T off
    // Omega, so they stay in span{T G^j 1}.
    Matrix G(s.n, s.gamma_powers);
    {
        Vector g = s.gamma.values;
        for (int j = 0; j < s.gamma_powers; ++j) {
            G.col(j) = g;
            g = g.cwiseProduct(s.gamma.values);
        }
    }
    const Matrix TG = D(s.T) * G;
    const int links[6][2] = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}};
    std::vector<int> sizes;
    for (const auto& l : links) sizes.push_back(fam_size(f, l[0], l[1]));
    bool closure = true;
    for (const auto& c : index_combos(sizes, 64, mix_seed(seed, 1))) {
        Vector Ti = (member(f, 0, 1, c[0]).array() / member(f, 1, 0, c[1]).array() *
                     member(f, 1, 2, c[2]).array() / member(f, 2, 1, c[3]).array() *
                     member(f, 2, 0, c[4]).array() / member(f, 0, 2, c[5]).array())
                        .matrix();
        if (!is_subspace(D(Ti) * G, TG, tol)) {
            closure = false;
            break;
        }
    }
    rep.check("closure_T_index_products", closure);

    bool rx1 = true;
    for (const auto& c : index_combos({fam_size(f, 0, 1), fam_size(f, 0, 2)}, 64, mix_seed(seed, 2))) {
        Matrix x = D(member(f, 0, 1, c[0])) * V2, y = D(member(f, 0, 2, c[1])) * V3;
        if (!is_subspace(x, y, tol) || !is_subspace(y, x, tol)) {
            rx1 = false;
            break;
        }
    }
    rep.check("rx1_basis_spans_equal", rx1);
    bool rx2 = true;
    for (const auto& c : index_combos({fam_size(f, 1, 0), fam_size(f, 1, 2)}, 64, mix_seed(seed, 3))) {
        if (!is_subspace(D(member(f, 1, 2, c[1])) * V3, D(member(f, 1, 0, c[0])) * V1, tol)) {
            rx2 = false;
            break;
        }
    }
    rep.check("rx2_basis_containment", rx2);
    bool rx3 = true;
    for (const auto& c : index_combos({fam_size(f, 2, 0), fam_size(f, 2, 1)}, 64, mix_seed(seed, 4))) {
        if (!is_subspace(D(member(f, 2, 1, c[1])) * V2, D(member(f, 2, 0, c[0])) * V1, tol)) {
            rx3 = false;
            break;
        }
    }
    rep.check("rx3_basis_containment", rx3);

    const int joint1 =
        joint_rank({inst.link(0, 0) * range_basis(V1, tol), inst.link(0, 1) * range_basis(V2, tol)}, tol);
    rep.rank("joint_rank_rx1", joint1);
    if (gap_hypothesis(inst, s.omega)) {
        rep.check("separation_rx1", joint1 == s.n);
        const int want[3] = {s.expected_rank_A(), s.expected_rank_BC(), s.expected_rank_BC()};
        for (int p = 0; p < 3; ++p) {
            rep.check("desired_rx" + std::to_string(p + 1), rep.per_receiver[p].desired == want[p]);
        }
    } else {
        rep.notes.push_back("desired-interference separation not guaranteed "
                            "(direct transform not memory, unknown-slot gap >= M, or M < |U|)");
    }
    return rep;
}

long ffk_slots(int K, int n_star, int u) {
    const int N = (K - 1) * (K - 2) - 1;
    return 2L * u + ipow(n_star, N) + ipow(n_star + 1, N);
}

long FastFadingKScheme::expected_dim_B() const { return unknown_count + ipow(n_star, N); }
long FastFadingKScheme::expected_dim_V1() const { return unknown_count + ipow(n_star + 1, N); }

FastFadingKScheme build_kuser(const NetworkInstance& inst, int n_star, std::uint64_t seed) {
    if (inst.K < 3) throw InputError("the K-user scheme needs K >= 3");
    if (n_star < 1) throw InputError("n_star must be >= 1");
    FastFadingKScheme s;
    s.K = inst.K;
    s.n_star = n_star;
    s.N = (s.K - 1) * (s.K - 2) - 1;
    {
        long big = 1;
        for (int i = 0; i < s.N; ++i) {
            big *= n_star + 1;
            if (big > 100000) throw InputError("(n*+1)^N exceeds 1e5 columns");
        }
    }
    s.omega = omega_of(inst);
    s.unknown_count = static_cast<int>(s.omega.size());
    s.n = inst.n;
    const long want = ffk_slots(s.K, n_star, s.unknown_count);
    if (s.n != want) {
        throw InputError("K-user scheme needs n = 2|U| + n*^N + (n*+1)^N = " + std::to_string(want) +
                         ", got " + std::to_string(s.n));
    }
    auto f = cross_families(inst, seed);
    auto Q = [&](int p, int q) { return member(f, p, q, 0).array(); };
    std::vector<Vector> S(s.K);
    for (int q = 1; q < s.K; ++q) S[q] = (Q(0, 2) / Q(0, q) * Q(1, 0) / Q(1, 2)).matrix();
    std::vector<Vector> T;
    for (int p = 1; p < s.K; ++p) {
        for (int q = 1; q < s.K; ++q) {
            if (p == q || (p == 1 && q == 2)) continue;  // T for (2,3) is the identity
            T.push_back((Q(p, q) / Q(p, 0) * S[q].array()).matrix());
        }
    }
    Rng rng(mix_seed(seed, 7));
    DiagonalChannel gamma = gamma_on(s.omega, s.n, rng);
    const int gp = s.unknown_count + 1;

    auto family = [&](int cap) {
        long count = ipow(cap, s.N);
        Matrix m(s.n, count * gp);
        std::vector<int> alpha(s.N, 0);
        int col = 0;
        for (long k = 0; k < count; ++k) {
            Vector base = Vector::Ones(s.n);
            for (int t = 0; t < s.N; ++t) {
                if (alpha[t] > 0) base = base.cwiseProduct(T[t].array().pow(alpha[t]).matrix());
            }
            Vector g = gamma.values;
            for (int j = 1; j <= gp; ++j) {
                m.col(col++) = base.cwiseProduct(g);
                g = g.cwiseProduct(gamma.values);
            }
            for (int t = 0; t < s.N && ++alpha[t] == cap; ++t) alpha[t] = 0;
        }
        return m;
    };
    s.B = family(n_star);
    s.V1 = family(n_star + 1);
    s.precoders.push_back(s.V1);
    for (int q = 1; q < s.K; ++q) s.precoders.push_back(S[q].asDiagonal() * s.B);
    return s;
}

AlignmentReport verify_kuser(const FastFadingKScheme& s, const NetworkInstance& inst,
                             const RankTolerance& tol) {
    if (inst.n != s.n || inst.K != s.K) throw InputError("instance does not match the scheme");
    std::vector<Matrix> declared;
    declared.push_back(inst.link(0, 1) * s.precoders[1]);
    for (int p = 1; p < s.K; ++p) declared.push_back(inst.link(p, 0) * s.precoders[0]);
    AlignmentReport rep = alignment_report(inst, s.precoders, declared, tol);
    const int db = numeric_rank(s.B, tol), dv = numeric_rank(s.V1, tol);
    rep.rank("dim_B", db);
    rep.rank("dim_V1", dv);
    rep.rank("L_union", s.unknown_count);
    rep.check("dim_B", db == s.expected_dim_B());
    rep.check("dim_V1", dv == s.expected_dim_V1());
    if (gap_hypothesis(inst, s.omega)) {
        for (int p = 0; p < s.K; ++p) {
            long want = p == 0 ? s.expected_dim_V1() : s.expected_dim_B();
            rep.check("desired_rx" + std::to_string(p + 1), rep.per_receiver[p].desired == want);
        }
    } else {
        rep.notes.push_back("desired-interference separation not guaranteed "
                            "(direct transform not memory, unknown-slot gap >= M, or M < |U|)");
    }
    return rep;
}

Rational upsilon_fraction(const std::vector<std::vector<UnknownSet>>& unknown, int n) {
    if (n < 1) throw InputError("n must be >= 1");
    std::vector<UnknownSet> all;
    for (std::size_t p = 0; p < unknown.size(); ++p) {
        for (std::size_t q = 0; q < unknown[p].size(); ++q) {
            if (p != q) all.push_back(unknown[p][q]);
        }
    }
    Rational r = 1 - Rational(static_cast<long>(unite(all, n).size()), n);
    r.canonicalize();
    return r;
}

Rational dof_cap_given_upsilon(long K, const Rational& u) {
    if (K < 2) throw InputError("K must be >= 2");
    if (u < 0 || u > 1) throw InputError("upsilon must lie in [0, 1]");
    Rational out;
    if (K == 2) {
        out = 1;
    } else if (K == 3) {
        out = Rational(9, 7) + Rational(3, 7) * u;
    } else {
        Rational h(K, 2);
        h.canonicalize();
        out = Rational(K) * (h + u * (h - 1)) / (h + K - 1);
    }
    out.canonicalize();
    return out;
}

bool cap_is_odd_k_extension(long K) { return K >= 5 && K % 2 == 1; }

Rational min_upsilon_for_max_dof(long K) {
    if (K < 2) throw InputError("K must be >= 2");
    return K == 2 ? Rational(0) : Rational(1, 2);
}

}  // namespace ia
