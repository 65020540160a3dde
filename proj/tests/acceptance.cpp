// One PASS/FAIL line per acceptance criterion. Tolerances and draw counts
// are fixed here; nothing is read from the environment.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>

#include "corpus.hpp"
#include "ia/blind.hpp"
#include "ia/bounds.hpp"
#include "ia/config.hpp"
#include "ia/decomposition.hpp"
#include "ia/fastfading.hpp"
#include "ia/shared.hpp"
#include "ia/sim.hpp"

using namespace ia;

namespace {

constexpr double kResidualTol = 1e-9;  // relative, float decomposition path
constexpr int kDraws = 200;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(const char* id, const char* what, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << fmt::format("{} {} {} [{}] ({:.2f}s)\n", id, o.pass ? "PASS" : "FAIL", what, o.detail, secs)
              << std::flush;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int rank_of(const TrialResult& r, const std::string& name) {
    for (const auto& k : r.ranks) {
        if (k.name == name) return k.value;
    }
    return -1;
}

Outcome shared_example(const std::string& cfg_name, const std::vector<int>& want, long num, long den) {
    Scenario sc;
    sc.regime = Regime::shared;
    sc.cfg = load_config(testing::config_path(cfg_name));
    sc.trials = kDraws;
    sc.base_seed = sc.cfg.net.seed;
    auto results = run_trials(sc);
    int good = 0;
    std::vector<int> seen;
    for (const auto& r : results) {
        bool ok = r.pass && r.dof_num == num && r.dof_den == den;
        seen.clear();
        for (int p = 0; p < 4; ++p) {
            seen.push_back(rank_of(r, fmt::format("desired_rx{}", p + 1)));
            ok = ok && seen.back() == want[p];
        }
        good += ok;
    }
    return {good == kDraws, fmt::format("{}/{} draws; last desired dims ({}) total {}/{}", good, kDraws,
                                        fmt::join(seen, ","), results.back().dof_num, results.back().dof_den)};
}

}  // namespace

int main() {
    run("AC1", "bound table: K=2 -> 1, K=4 -> 4/3, K=1..64 under 1 s", [] {
        const auto t0 = std::chrono::steady_clock::now();
        for (long K = 1; K <= 64; ++K) dof_upper_bound(K, true);
        const double secs = seconds_since(t0);
        const Rational d2 = dof_upper_bound(2).dof, d4 = dof_upper_bound(4).dof;
        const bool ok = d2 == 1 && d4 == Rational(4, 3) && secs < 1.0;
        return Outcome{ok, fmt::format("K=2 {}, K=4 {}, table {:.4f}s", format_fraction(d2), format_fraction(d4), secs)};
    });

    run("AC2", "asymptote at K=1e6: d(r*) = K/(2 sqrt K - 1), ratio to sqrt(K)/2 = 2000/1999", [] {
        const long K = 1000000;
        const Rational d = dof_upper_bound(K, false).dof;
        Rational want(K, 2 * 1000 - 1), ratio = d / Rational(1000, 2);
        want.canonicalize();
        ratio.canonicalize();
        return Outcome{d == want && ratio == Rational(2000, 1999),
                       fmt::format("d={} ratio={}", format_fraction(d), format_fraction(ratio))};
    });

    run("AC3", "pair-sharing worked example: dims (3,2,2,2), total 9/8, 200/200, under 5 s", [] {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = shared_example("example2.json", {3, 2, 2, 2}, 9, 8);
        // The precoders themselves: V1=[a d g], V2=[a e], V3=[b c], V4=[c e].
        ConfigFile cfg = load_config(testing::config_path("example2.json"));
        auto s = construct_example2(receiver_patterns(cfg.net), cfg.net.n, cfg.net.seed);
        auto& ids = s.precoder_ids;
        const bool shape = ids[0].size() >= 3 && ids[0][0] == "a" && ids[0][1] == "d" &&
                           ids[1] == std::vector<std::string>{"a", "e"} &&
                           ids[2] == std::vector<std::string>{"b", "c"} && ids[3] == std::vector<std::string>{"c", "e"};
        const double secs = seconds_since(t0);
        o.pass = o.pass && shape && secs < 5.0;
        o.detail += fmt::format("; V1=[{}] V2=[{}] V3=[{}] V4=[{}]", fmt::join(ids[0], " "), fmt::join(ids[1], " "),
                                fmt::join(ids[2], " "), fmt::join(ids[3], " "));
        return o;
    });

    run("AC4", "triple-sharing worked example: dims (3,3,3,3), total 12/10, 200/200; counts(4,3)", [] {
        Outcome o = shared_example("example3.json", {3, 3, 3, 3}, 12, 10);
        SchemeCounts c = scheme_counts(4, 3);
        const bool counts = c.n == 10 && c.desired_per_rx == 3 && c.total_dof == Rational(12, 10);
        o.pass = o.pass && counts;
        o.detail += fmt::format("; scheme_counts n={} per-rx={} total={}", c.n.get_str(), c.desired_per_rx.get_str(),
                                format_fraction(c.total_dof));
        return o;
    });

    run("AC5", "decomposition round trip: 1000 float cases sigma'<=12 within 1e-9, exact for sigma'<=6", [] {
        Rng rng(20240501);
        int float_bad = 0, exact_bad = 0, exact_cases = 0;
        double worst = 0;
        for (int t = 0; t < 1000; ++t) {
            const int sigma = std::uniform_int_distribution<int>(0, 12)(rng);
            const int n = std::uniform_int_distribution<int>(sigma + 1, 40)(rng);
            std::vector<int> slots(n - 1);
            std::iota(slots.begin(), slots.end(), 2);
            std::shuffle(slots.begin(), slots.end(), rng);
            std::vector<int> pts(slots.begin(), slots.begin() + sigma), sub;
            std::sort(pts.begin(), pts.end());
            for (int c : pts) {
                if (rng() & 1) sub.push_back(c);
            }
            const ChangingPattern cp(n, pts);
            const DiagonalChannel h = sample_channel(ChangingPattern(n, sub), rng);
            // Every fourth case uses the indexed family with hidden slots.
            BasisFamily fam;
            if (t % 4 == 3) {
                std::vector<int> all(n);
                std::iota(all.begin(), all.end(), 1);
                std::shuffle(all.begin(), all.end(), rng);
                const int u = std::uniform_int_distribution<int>(1, std::min(n, 6))(rng);
                UnknownSet U(n, std::vector<int>(all.begin(), all.begin() + u));
                fam = build_indexed_basis(mask_unknown(h, U), U, rng());
            } else {
                fam = build_power_basis(cp, rng());
            }
            const auto rec = reconstruct_high(decompose(h, fam), fam);
            for (int s = 0; s < n; ++s) {
                const double rel = static_cast<double>(abs(rec[s] - HighReal(h.values(s))) / abs(HighReal(h.values(s))));
                worst = std::max(worst, rel);
                if (!(rel <= kResidualTol)) {
                    ++float_bad;
                    break;
                }
            }
            if (fam.kind == BasisKind::indexed || sigma <= 6) {
                ++exact_cases;
                const auto ex = reconstruct_exact(decompose_exact(h, fam), fam);
                for (int s = 0; s < n; ++s) {
                    if (ex[s] != mpq_class(h.values(s))) {
                        ++exact_bad;
                        break;
                    }
                }
            }
        }
        return Outcome{float_bad == 0 && exact_bad == 0,
                       fmt::format("float failures {}/1000 (worst {:.2e}), exact failures {}/{}", float_bad, worst,
                                   exact_bad, exact_cases)};
    });

    run("AC6", "free-dimension prediction equals measured rank count on 100 mixed instances", [] {
        Rng rng(77);
        const std::pair<int, int> shapes[] = {{1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 0}};
        int agree = 0, total = 0, max_n = 0;
        for (int t = 0; t < 100; ++t) {
            auto [rho, sigma] = shapes[t % 7];
            const int K = 2 + t % 3;
            auto bc = testing::admissible_blind_case(rng, rho, sigma, K);
            max_n = std::max(max_n, bc.cfg.n);
            NetworkInstance inst = sample_network(bc.cfg, bc.cfg.seed);
            BlindScheme s = build_blind_scheme(bc.cross_union, rho, K, mix_seed(bc.cfg.seed, 0xB1));
            bool ok = true;
            for (int k = 0; k < K; ++k) ok = ok && predicted_Dk(s, bc.cfg.patterns[k][k]) == measured_Dk(s, inst, k);
            agree += ok;
            ++total;
        }
        return Outcome{agree == total, fmt::format("{}/{} instances agree, n <= {}", agree, total, max_n)};
    });

    run("AC7", "blind interference stays in the shared span, 200 draws per (sigma', rho) in {0,1,2}x{1,2}", [] {
        Rng rng(99);
        int good = 0, total = 0;
        std::string per;
        for (int sigma = 0; sigma <= 2; ++sigma) {
            for (int rho = 1; rho <= 2; ++rho) {
                int g = 0;
                for (int t = 0; t < kDraws; ++t) {
                    const int K = 2 + t % 3;
                    NetworkConfig cfg = testing::blind_alignment_config(rng, rho, sigma, K);
                    NetworkInstance inst = sample_network(cfg, cfg.seed);
                    BlindScheme s = build_blind_scheme(cross_union(cfg), rho, K, mix_seed(cfg.seed, 0xB1));
                    g += blind_alignment_holds(s, inst);
                }
                per += fmt::format(" ({},{}):{}", sigma, rho, g);
                good += g;
                total += kDraws;
            }
        }
        return Outcome{good == total, fmt::format("{}/{};{}", good, total, per)};
    });

    run("AC8", "three-user fast-fading ranks, containments and separation; identity control fails >95%", [] {
        const std::pair<int, int> cases[] = {{1, 2}, {2, 2}, {3, 3}};
        bool ok = true;
        std::string detail;
        for (auto [u, eps] : cases) {
            const NetworkConfig cfg = testing::ff3_config(u, eps, DirectKind::memory, std::max(2, u));
            int good = 0;
            std::set<std::string> failed;
            for (int t = 0; t < kDraws; ++t) {
                const std::uint64_t seed = 1000 + t;
                NetworkInstance inst = sample_network(cfg, seed);
                FastFading3Scheme s = build_3user(inst, eps, mix_seed(seed, 0xF3));
                AlignmentReport rep = verify_3user(s, inst, mix_seed(seed, 0xF4));
                bool all = rep.all_pass() && !rep.checks.empty();
                const bool has_sep = std::any_of(rep.checks.begin(), rep.checks.end(),
                                                 [](const NamedCheck& c) { return c.name == "separation_rx1"; });
                all = all && has_sep;
                for (const auto& c : rep.checks) {
                    if (!c.pass) failed.insert(c.name);
                }
                good += all;
            }
            ok = ok && good == kDraws;
            detail += fmt::format("(L={},eps={}) {}/{}{} ", u, eps, good, kDraws,
                                  failed.empty() ? "" : fmt::format(" failing {}", fmt::join(failed, ",")));
        }
        int control_fail = 0;
        const NetworkConfig id = testing::ff3_config(1, 2, DirectKind::identity, 1);
        for (int t = 0; t < kDraws; ++t) {
            NetworkInstance inst = sample_network(id, 5000 + t);
            FastFading3Scheme s = build_3user(inst, 2, mix_seed(5000 + t, 0xF3));
            const int joint = joint_rank({inst.link(0, 0) * s.precoders[0], inst.link(0, 1) * s.precoders[1]});
            control_fail += joint != s.n;
        }
        const double frac = static_cast<double>(control_fail) / kDraws;
        ok = ok && frac > 0.95;
        detail += fmt::format("identity control fails on {:.1f}%", 100 * frac);
        return Outcome{ok, detail};
    });

    run("AC9", "K-user fast-fading dims at K=4, n*=1, |U|=2, n=37: dim B = 3, dim V1 = 34, under 30 s", [] {
        const auto t0 = std::chrono::steady_clock::now();
        ConfigFile cfg = load_config(testing::config_path("ffk_k4.json"));
        int good = 0;
        const int draws = 20;
        int db = -1, dv = -1;
        for (int t = 0; t < draws; ++t) {
            NetworkInstance inst = sample_network(cfg.net, 1 + t);
            FastFadingKScheme s = build_kuser(inst, 1, mix_seed(1 + t, 0xFC));
            db = numeric_rank(s.B);
            dv = numeric_rank(s.V1);
            good += db == 3 && dv == 34 && s.expected_dim_B() == 3 && s.expected_dim_V1() == 34 && s.N == 5;
        }
        const double secs = seconds_since(t0);
        return Outcome{good == draws && secs < 30.0,
                       fmt::format("{}/{} draws; last dim B={} dim V1={}", good, draws, db, dv)};
    });

    run("AC10", "CSI-fraction caps: (3,1/2) -> 3/2, (4,1/2) -> 2; min upsilon 0, 1/2, 1/2 for K=2,3,8", [] {
        const Rational half(1, 2);
        const Rational c3 = dof_cap_given_upsilon(3, half), c4 = dof_cap_given_upsilon(4, half);
        const bool ok = c3 == Rational(3, 2) && c4 == 2 && min_upsilon_for_max_dof(2) == 0 &&
                        min_upsilon_for_max_dof(3) == half && min_upsilon_for_max_dof(8) == half;
        return Outcome{ok, fmt::format("cap(3)={} cap(4)={}", format_fraction(c3), format_fraction(c4))};
    });

    std::cout << (failures == 0 ? "all criteria pass\n" : fmt::format("{} criteria fail\n", failures));
    return failures == 0 ? 0 : 1;
}
