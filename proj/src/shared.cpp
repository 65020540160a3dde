#include "ia/shared.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <tuple>

#include "ia/report.hpp"

namespace ia {

namespace {

int blocks_hit(const ChangingPattern& p, const std::vector<int>& support) {
    if (support.empty()) return 0;
    auto blocks = constant_intervals(p);
    int hit = 0;
    for (const Block& b : blocks) {
        if (std::any_of(support.begin(), support.end(), [&](int s) { return b.contains(s); })) ++hit;
    }
    return hit;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

ChangingPattern nonmember_union(const std::vector<ChangingPattern>& rx, int n,
                                const std::vector<int>& members) {
    ChangingPattern u = ChangingPattern::constant(n);
    for (int p = 0; p < static_cast<int>(rx.size()); ++p) {
        if (!contains(members, p)) u = u.unite(rx[p]);
    }
    return u;
}

// Row k of a Sylvester sign matrix, read right to left so row 1 on two
// slots is (-1, +1).
double sign_entry(int k, int i, int size) {
    return std::popcount(static_cast<unsigned>(k & (size - 1 - i))) % 2 ? -1.0 : 1.0;
}

struct Group {
    std::vector<int> support;
    std::vector<int> vectors;  // indices into scheme.vectors
};

NetworkInstance probe_instance(const SharedPatternScheme& s, std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.K = s.K;
    cfg.n = s.n;
    cfg.patterns.assign(s.K, std::vector<ChangingPattern>(s.K));
    cfg.unknown.assign(s.K, std::vector<UnknownSet>(s.K, UnknownSet(s.n, {})));
    for (int p = 0; p < s.K; ++p) {
        for (int q = 0; q < s.K; ++q) cfg.patterns[p][q] = s.rx_patterns[p];
    }
    return sample_network(cfg, seed);
}

void assemble(SharedPatternScheme& s) {
    s.precoders.assign(s.K, Matrix(s.n, 0));
    s.precoder_ids.assign(s.K, {});
    for (int t = 0; t < s.K; ++t) {
        std::vector<Vector> cols;
        for (const auto& v : s.vectors) {
            if (!v.dropped && contains(v.active, t)) {
                cols.push_back(v.values);
                s.precoder_ids[t].push_back(v.id);
            }
        }
        Matrix m(s.n, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
        s.precoders[t] = m;
    }
}

void validate_inputs(int K, int r, const std::vector<ChangingPattern>& rx, int n) {
    if (K < 2) throw InputError("shared-pattern schemes need K >= 2");
    if (r < 1 || r > K - 1) throw InputError("sharing degree r must lie in [1, K-1]");
    if (rx.size() != static_cast<std::size_t>(K)) throw InputError("need one pattern per receiver");
    for (const auto& p : rx) {
        if (p.n() != n) throw InputError("receiver pattern length does not match n");
    }
}

}  // namespace

std::vector<ChangingPattern> receiver_patterns(const NetworkConfig& cfg) {
    std::vector<ChangingPattern> out;
    for (int p = 0; p < cfg.K; ++p) {
        for (int q = 1; q < cfg.K; ++q) {
            if (!(cfg.patterns[p][q] == cfg.patterns[p][0])) {
                throw InputError("shared-pattern regime: channels into RX" + std::to_string(p + 1) +
                                 " must share one pattern");
            }
        }
        out.push_back(cfg.patterns[p][0]);
    }
    return out;
}

std::vector<Assignment> all_r_subsets(int K, int r) {
    std::vector<Assignment> out;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back({"v" + std::to_string(out.size() + 1), idx});
        int i = r - 1;
        while (i >= 0 && idx[i] == K - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

SharedPatternScheme construct_with(int K, int r, const std::vector<ChangingPattern>& rx, int n,
                                   const std::vector<Assignment>& assignment, std::uint64_t seed) {
    validate_inputs(K, r, rx, n);
    SharedPatternScheme s;
    s.K = K;
    s.r = r;
    s.n = n;
    s.rx_patterns = rx;

    // Where each vector may live: blocks of the union of its non-members'
    // patterns, so it stays aligned at every non-member receiver. A
    // single slot cannot separate two or more streams.
    const int min_block = std::min(r, 2);
    std::vector<std::vector<Block>> allowed;
    std::vector<int> capacity;
    for (const auto& a : assignment) {
        if (static_cast<int>(a.members.size()) != r) throw InputError("assignment subset size must be r");
        for (int m : a.members) {
            if (m < 0 || m >= K) throw InputError("assignment member out of range");
        }
        SharedVector v;
        v.id = a.id;
        v.members = a.members;
        v.active = a.members;
        v.values = Vector::Zero(n);
        s.vectors.push_back(v);
        std::vector<Block> ok;
        int cap = 0;
        for (const Block& b : constant_intervals(nonmember_union(rx, n, a.members))) {
            if (b.size() >= min_block) {
                ok.push_back(b);
                cap += b.size();
            }
        }
        allowed.push_back(ok);
        capacity.push_back(cap);
    }

    std::vector<int> order(assignment.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return capacity[x] < capacity[y]; });

    std::vector<int> owner(n + 1, -1);  // slot -> group
    std::vector<Group> groups;

    for (int vi : order) {
        SharedVector& v = s.vectors[vi];
        if (capacity[vi] == 0) {
            v.dropped = true;
            v.note = "empty support";
            continue;
        }
        // Score a candidate support by how many independent images it gives
        // at the member receivers (each capped at the member count).
        auto score = [&](const std::vector<int>& sup) {
            int mn = r, sum = 0;
            for (int p : v.active) {
                int h = std::min(blocks_hit(rx[p], sup), r);
                mn = std::min(mn, h);
                sum += h;
            }
            return std::make_pair(mn, sum);
        };
        using Key = std::tuple<int, int, int, int, int>;  // -min, -sum, length, first, new?
        bool found = false;
        Key best{};
        std::vector<int> best_sup;
        int best_group = -1;
        auto consider = [&](const std::vector<int>& sup, int group) {
            auto [mn, sum] = score(sup);
            Key k{-mn, -sum, static_cast<int>(sup.size()), sup.front(), group < 0 ? 1 : 0};
            if (!found || k < best) {
                found = true;
                best = k;
                best_sup = sup;
                best_group = group;
            }
        };
        for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
            const Group& G = groups[g];
            if (G.vectors.size() >= G.support.size()) continue;
            bool inside = std::any_of(allowed[vi].begin(), allowed[vi].end(), [&](const Block& b) {
                return b.contains(G.support.front()) && b.contains(G.support.back());
            });
            if (inside) consider(G.support, g);
        }
        for (const Block& b : allowed[vi]) {
            for (int first = b.first; first <= b.last; ++first) {
                for (int last = first; last <= b.last && owner[last] < 0; ++last) {
                    if (last - first + 1 < min_block) continue;
                    std::vector<int> sup(last - first + 1);
                    std::iota(sup.begin(), sup.end(), first);
                    consider(sup, -1);
                }
            }
        }
        if (!found) {
            v.dropped = true;
            v.note = "support capacity exhausted";
            continue;
        }
        v.support = best_sup;
        const int size = static_cast<int>(best_sup.size());
        if (best_group < 0) {
            groups.push_back({best_sup, {}});
            best_group = static_cast<int>(groups.size()) - 1;
            for (int sl : best_sup) owner[sl] = best_group;
        }
        Group& G = groups[best_group];
        // Pick the first sign row keeping the co-supported vectors independent.
        int rows = static_cast<int>(std::bit_ceil(static_cast<unsigned>(size)));
        bool placed = false;
        for (int k = static_cast<int>(G.vectors.size()); k < rows && !placed; ++k) {
            Vector cand = Vector::Zero(n);
            for (int i = 0; i < size; ++i) cand(best_sup[i] - 1) = sign_entry(k, i, size);
            Matrix m(n, G.vectors.size() + 1);
            for (std::size_t j = 0; j < G.vectors.size(); ++j) m.col(j) = s.vectors[G.vectors[j]].values;
            m.col(G.vectors.size()) = cand;
            if (numeric_rank(m) == m.cols()) {
                v.values = cand;
                placed = true;
            }
        }
        if (!placed) {
            v.dropped = true;
            v.support.clear();
            v.note = "support capacity exhausted";
            continue;
        }
        G.vectors.push_back(vi);
    }

    // Collapse repair: a vector whose member images at some member receiver
    // span fewer dims than the members sending it loses its most-loaded
    // transmitter (lowest index on ties) until it no longer collapses.
    auto load = [&](int t) {
        int c = 0;
        for (const auto& v : s.vectors) c += (!v.dropped && contains(v.active, t));
        return c;
    };
    for (auto& v : s.vectors) {
        if (v.dropped) continue;
        while (v.active.size() > 1) {
            bool collapse = std::any_of(v.active.begin(), v.active.end(), [&](int p) {
                return blocks_hit(rx[p], v.support) < static_cast<int>(v.active.size());
            });
            if (!collapse) break;
            int drop = v.active.front();
            for (int t : v.active) {
                if (load(t) > load(drop)) drop = t;
            }
            std::erase(v.active, drop);
            v.note += (v.note.empty() ? "" : "; ") + std::string("removed from TX") + std::to_string(drop + 1);
        }
    }
    assemble(s);

    // Top up with fully random private vectors while that strictly raises
    // the probe-measured desired total without costing any receiver.
    NetworkInstance probe = probe_instance(s, mix_seed(seed, 0x5A));
    Rng rng(mix_seed(seed, 0x5B));
    AlignmentReport cur = alignment_report(probe, s.precoders);
    int extra = 0;
    for (int t = 0; t < K; ++t) {
        while (true) {
            SharedVector g;
            g.id = "g" + std::to_string(++extra);
            g.members = {t};
            g.active = {t};
            g.values = Vector(n);
            for (int i = 0; i < n; ++i) g.values(i) = uniform(rng, 0.5, 2.0);
            g.support.resize(n);
            std::iota(g.support.begin(), g.support.end(), 1);
            g.random = true;
            s.vectors.push_back(g);
            assemble(s);
            AlignmentReport next = alignment_report(probe, s.precoders);
            bool no_loss = true;
            for (int p = 0; p < K; ++p) {
                if (next.per_receiver[p].desired < cur.per_receiver[p].desired) no_loss = false;
            }
            if (no_loss && next.desired_sum() > cur.desired_sum()) {
                cur = next;
                continue;
            }
            s.vectors.pop_back();
            --extra;
            assemble(s);
            break;
        }
    }

    // Below one DoF, a single user owning every slot does better.
    if (cur.desired_sum() < n) {
        for (auto& v : s.vectors) {
            if (v.dropped) continue;
            v.dropped = true;
            v.note += (v.note.empty() ? "" : "; ") + std::string("replaced by time sharing");
        }
        std::erase_if(s.vectors, [](const SharedVector& v) { return v.random; });
        for (int i = 0; i < n; ++i) {
            SharedVector g;
            g.id = "t" + std::to_string(i + 1);
            g.members = {0};
            g.active = {0};
            g.support = {i + 1};
            g.values = Vector::Unit(n, i);
            g.random = true;
            s.vectors.push_back(g);
        }
        assemble(s);
    }
    return s;
}

SharedPatternScheme construct_shared(int K, int r, const std::vector<ChangingPattern>& rx, int n,
                                     std::uint64_t seed) {
    validate_inputs(K, r, rx, n);
    return construct_with(K, r, rx, n, all_r_subsets(K, r), seed);
}

SharedPatternScheme construct_example2(const std::vector<ChangingPattern>& rx, int n, std::uint64_t seed) {
    std::vector<Assignment> a = {{"a", {0, 1}}, {"b", {1, 2}}, {"c", {2, 3}},
                                 {"d", {0, 2}}, {"e", {1, 3}}, {"f", {0, 3}}};
    if (rx.size() != 4) throw InputError("the worked pair-sharing example has K = 4");
    return construct_with(4, 2, rx, n, a, seed);
}

SharedPatternScheme construct_example3(const std::vector<ChangingPattern>& rx, int n) {
    validate_inputs(4, 3, rx, n);
    if (n != 10) throw InputError("the worked triple-sharing example has n = 10");
    SharedPatternScheme s;
    s.K = 4;
    s.r = 3;
    s.n = n;
    s.rx_patterns = rx;
    struct Lit {
        const char* id;
        std::vector<int> members;
        int first, last;
    };
    for (const Lit& l : {Lit{"a", {0, 1, 2}, 1, 4}, Lit{"b", {1, 2, 3}, 5, 8},
                         Lit{"c", {0, 1, 3}, 3, 6}, Lit{"d", {0, 2, 3}, 7, 10}}) {
        SharedVector v;
        v.id = l.id;
        v.members = l.members;
        v.active = l.members;
        v.values = Vector::Zero(n);
        for (int sl = l.first; sl <= l.last; ++sl) {
            v.support.push_back(sl);
            v.values(sl - 1) = 1.0;
        }
        s.vectors.push_back(v);
    }
    assemble(s);
    return s;
}

bool supports_respected(const SharedPatternScheme& s) {
    for (const auto& v : s.vectors) {
        if (v.dropped) continue;
        for (int i = 1; i <= s.n; ++i) {
            if (!contains(v.support, i) && v.values(i - 1) != 0.0) return false;
        }
    }
    return true;
}

bool supports_legal(const SharedPatternScheme& s) {
    for (const auto& v : s.vectors) {
        if (v.dropped || v.random || v.support.empty()) continue;
        for (int p = 0; p < s.K; ++p) {
            if (!contains(v.members, p) && blocks_hit(s.rx_patterns[p], v.support) != 1) return false;
        }
    }
    return true;
}

}  // namespace ia
