#include "ia/decomposition.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace ia {

namespace {

// Power kind: row k is (q_a, q_a^2, ..., q_a^{m}) at anchor a.
// Indexed kind: a first row of ones (the equation at any known slot,
// h_r * sum(beta) = h_r) followed by one row per unknown slot.
template <class T, class Conv>
std::vector<std::vector<T>> system_matrix(const BasisFamily& fam, Conv conv) {
    const std::size_t m = fam.members.size();
    std::vector<std::vector<T>> a;
    if (fam.kind == BasisKind::power) {
        for (int s : fam.anchor_indices) {
            T q = conv(fam.generator.values(s - 1));
            std::vector<T> row(m);
            T p = q;
            for (std::size_t j = 0; j < m; ++j) {
                row[j] = p;
                p *= q;
            }
            a.push_back(std::move(row));
        }
    } else {
        a.emplace_back(m, conv(1.0));
        for (int u : fam.unknown.indices) {
            std::vector<T> row(m);
            for (std::size_t i = 0; i < m; ++i) row[i] = conv(fam.members[i].values(u - 1));
            a.push_back(std::move(row));
        }
    }
    return a;
}

template <class T, class Conv>
std::vector<T> rhs(const DiagonalChannel& h, const BasisFamily& fam, Conv conv) {
    std::vector<T> b;
    if (fam.kind == BasisKind::power) {
        for (int s : fam.anchor_indices) b.push_back(conv(h.values(s - 1)));
    } else {
        b.push_back(conv(1.0));
        for (int u : fam.unknown.indices) b.push_back(conv(h.values(u - 1)));
    }
    return b;
}

void check_consistent(const DiagonalChannel& h, const BasisFamily& fam) {
    if (h.n() != fam.n) throw InputError("channel length does not match basis family");
    if (!h.values.allFinite()) throw InputError("channel has non-finite entries");
    if (fam.kind == BasisKind::power) {
        for (const Block& b : constant_intervals(fam.pattern)) {
            for (int s = b.first + 1; s <= b.last; ++s) {
                if (h.values(s - 1) != h.values(b.first - 1)) {
                    throw InputError("channel is not constant on the family's blocks");
                }
            }
        }
    }
}

bool nodes_distinct_nonzero(const std::vector<double>& nodes) {
    std::set<double> seen;
    for (double x : nodes) {
        if (x == 0.0 || !seen.insert(x).second) return false;
    }
    return true;
}

}  // namespace

std::vector<double> DecompositionCoefficients::as_double() const {
    std::vector<double> out;
    for (const auto& b : betas) out.push_back(static_cast<double>(b));
    return out;
}

BasisFamily build_power_basis(const ChangingPattern& cprime, std::uint64_t seed) {
    BasisFamily fam;
    fam.kind = BasisKind::power;
    fam.n = cprime.n();
    fam.pattern = cprime;
    fam.anchor_indices.push_back(1);
    for (int c : cprime.points()) fam.anchor_indices.push_back(c);

    Rng rng(mix_seed(seed, 0xB0));
    // The anchor matrix is a column-scaled Vandermonde matrix: singular
    // exactly when two nodes coincide or a node is zero.
    for (int attempt = 0;; ++attempt) {
        fam.generator = sample_channel(cprime, rng);
        std::vector<double> nodes;
        for (int s : fam.anchor_indices) nodes.push_back(fam.generator.values(s - 1));
        if (nodes_distinct_nonzero(nodes)) break;
        if (attempt == kRedrawRetries) throw NumericError("power basis: singular after re-draws");
    }
    const int m = cprime.points().size() + 1;
    Vector pw = fam.generator.values;
    for (int j = 1; j <= m; ++j) {
        fam.members.push_back({pw});
        pw = pw.cwiseProduct(fam.generator.values);
    }
    return fam;
}

DiagonalChannel mask_unknown(const DiagonalChannel& h, const UnknownSet& U) {
    DiagonalChannel out = h;
    for (int u : U.indices) out.values(u - 1) = std::numeric_limits<double>::quiet_NaN();
    return out;
}

BasisFamily build_indexed_basis(const DiagonalChannel& known, const UnknownSet& U,
                                std::uint64_t seed) {
    if (known.n() != U.n) throw InputError("unknown set length does not match channel");
    BasisFamily fam;
    fam.kind = BasisKind::indexed;
    fam.n = known.n();
    fam.unknown = U;
    fam.pattern = ChangingPattern::constant(fam.n);
    for (int s = 1; s <= fam.n; ++s) {
        if (!U.contains(s)) {
            fam.anchor_indices.push_back(s);
            break;
        }
    }
    fam.anchor_indices.insert(fam.anchor_indices.end(), U.indices.begin(), U.indices.end());

    const std::size_t m = U.size() + 1;
    Rng rng(mix_seed(seed, 0xB1));
    for (int attempt = 0;; ++attempt) {
        fam.members.clear();
        for (std::size_t i = 0; i < m; ++i) {
            DiagonalChannel q = known;
            for (int u : U.indices) q.values(u - 1) = uniform(rng, 0.5, 2.0);
            fam.members.push_back(std::move(q));
        }
        auto a = system_matrix<mpq_class>(fam, [](double x) { return mpq_class(x); });
        if (exact_rank(a) == static_cast<int>(m)) break;
        if (attempt == kRedrawRetries) throw NumericError("indexed basis: singular after re-draws");
    }
    return fam;
}

ExactMatrix anchor_system_exact(const BasisFamily& fam) {
    return system_matrix<mpq_class>(fam, [](double x) { return mpq_class(x); });
}

DecompositionCoefficients decompose(const DiagonalChannel& h, const BasisFamily& fam) {
    check_consistent(h, fam);
    if (fam.kind == BasisKind::power && fam.sigma() > kMaxFloatSigma) {
        throw InputError("sigma' > 12: use the exact-rational decomposition");
    }
    auto conv = [](double x) { return HighReal(x); };
    auto a = system_matrix<HighReal>(fam, conv);
    auto b = rhs<HighReal>(h, fam, conv);
    return {dense_solve<HighReal>(std::move(a), std::move(b))};
}

std::vector<HighReal> reconstruct_high(const DecompositionCoefficients& c, const BasisFamily& fam) {
    if (c.betas.size() != fam.members.size()) throw InputError("coefficient count does not match family");
    std::vector<HighReal> out(fam.n);
    for (int s = 0; s < fam.n; ++s) {
        HighReal acc = 0;
        if (fam.kind == BasisKind::power) {
            // Powers are formed at working precision from the generator, not
            // read back from the double-valued members.
            HighReal q = fam.generator.values(s);
            HighReal p = q;
            for (const auto& beta : c.betas) {
                acc += beta * p;
                p *= q;
            }
        } else {
            for (std::size_t i = 0; i < c.betas.size(); ++i) {
                acc += c.betas[i] * HighReal(fam.members[i].values(s));
            }
        }
        out[s] = acc;
    }
    return out;
}

DiagonalChannel reconstruct(const DecompositionCoefficients& c, const BasisFamily& fam) {
    auto high = reconstruct_high(c, fam);
    DiagonalChannel h{Vector(fam.n)};
    for (int s = 0; s < fam.n; ++s) h.values(s) = static_cast<double>(high[s]);
    return h;
}

std::vector<mpq_class> decompose_exact(const DiagonalChannel& h, const BasisFamily& fam) {
    check_consistent(h, fam);
    auto conv = [](double x) { return mpq_class(x); };
    return exact_solve(system_matrix<mpq_class>(fam, conv), rhs<mpq_class>(h, fam, conv));
}

std::vector<mpq_class> reconstruct_exact(const std::vector<mpq_class>& betas,
                                         const BasisFamily& fam) {
    if (betas.size() != fam.members.size()) throw InputError("coefficient count does not match family");
    std::vector<mpq_class> out(fam.n);
    for (int s = 0; s < fam.n; ++s) {
        mpq_class acc = 0;
        if (fam.kind == BasisKind::power) {
            mpq_class q(fam.generator.values(s));
            mpq_class p = q;
            for (const auto& beta : betas) {
                acc += beta * p;
                p *= q;
            }
        } else {
            for (std::size_t i = 0; i < betas.size(); ++i) acc += betas[i] * mpq_class(fam.members[i].values(s));
        }
        out[s] = acc;
    }
    return out;
}

}  // namespace ia
