#include "ia/sim.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "ia/blind.hpp"
#include "ia/errors.hpp"
#include "ia/fastfading.hpp"
#include "ia/shared.hpp"

namespace ia {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::blind: return "blind";
        case Regime::shared: return "shared";
        case Regime::ff3: return "ff3";
        case Regime::ffk: return "ffk";
    }
    return "?";
}

namespace {

template <class T>
T need(const std::optional<T>& v, const char* name) {
    if (!v) throw InputError(fmt::format("config is missing \"{}\"", name));
    return *v;
}

void blind_trial(const Scenario& sc, TrialResult& out) {
    const NetworkConfig& net = sc.cfg.net;
    const int rho = need(sc.cfg.rho, "rho");
    const ChangingPattern cu = cross_union(net);
    NetworkInstance inst = sample_network(net, out.seed);
    BlindScheme s = build_blind_scheme(cu, rho, net.K, mix_seed(out.seed, 0xB1));
    out.checks.push_back({"alignment", blind_alignment_holds(s, inst, sc.tol)});
    out.checks.push_back({"closure", blind_closure_holds(s, inst, sc.tol)});
    std::vector<int> D;
    for (int k = 0; k < net.K; ++k) {
        const ChangingPattern& direct = net.patterns[k][k];
        const int pred = predicted_Dk(s, direct);
        const int meas = measured_Dk(s, inst, k, sc.tol);
        D.push_back(meas);
        out.ranks.push_back({fmt::format("D_pred_rx{}", k + 1), pred});
        out.ranks.push_back({fmt::format("D_meas_rx{}", k + 1), meas});
        if (blind_admissible(rho, cu, direct)) {
            out.checks.push_back({fmt::format("D_match_rx{}", k + 1), pred == meas});
        } else {
            out.notes.push_back(fmt::format("rx{}: patterns outside the exact-prediction range", k + 1));
        }
        if (auto w = blind_tightness_warning(s, direct); !w.empty()) out.notes.push_back(w);
    }
    // Below one, sending on a single slot per user without alignment wins.
    long sum = 0;
    for (int d : D) sum += d;
    out.dof_num = std::max<long>(sum, s.n);
    out.dof_den = s.n;
}

void shared_trial(const Scenario& sc, TrialResult& out) {
    const NetworkConfig& net = sc.cfg.net;
    const auto rx = receiver_patterns(net);
    SharedPatternScheme s;
    if (sc.cfg.construction == "example2") {
        s = construct_example2(rx, net.n, out.seed);
    } else if (sc.cfg.construction == "example3") {
        s = construct_example3(rx, net.n);
    } else if (sc.cfg.construction.empty()) {
        s = construct_shared(net.K, need(sc.cfg.r, "r"), rx, net.n, out.seed);
    } else {
        throw InputError("unknown construction \"" + sc.cfg.construction + "\"");
    }
    NetworkInstance inst = sample_network(net, out.seed);
    AlignmentReport rep = alignment_report(inst, s.precoders, {}, sc.tol);
    out.checks.push_back({"supports_respected", supports_respected(s)});
    out.checks.push_back({"supports_legal", supports_legal(s)});
    out.checks.push_back({"pollution_free", rep.pollution_free});
    for (int p = 0; p < net.K; ++p) {
        out.ranks.push_back({fmt::format("desired_rx{}", p + 1), rep.per_receiver[p].desired});
        out.ranks.push_back({fmt::format("interference_rx{}", p + 1), rep.per_receiver[p].interference});
    }
    for (const auto& v : s.vectors) {
        if (!v.note.empty()) out.notes.push_back(v.id + ": " + v.note);
    }
    out.dof_num = rep.desired_sum();
    out.dof_den = rep.n;
}

void absorb(const AlignmentReport& rep, TrialResult& out) {
    out.checks.insert(out.checks.end(), rep.checks.begin(), rep.checks.end());
    out.ranks.insert(out.ranks.end(), rep.ranks.begin(), rep.ranks.end());
    out.notes.insert(out.notes.end(), rep.notes.begin(), rep.notes.end());
    for (std::size_t p = 0; p < rep.per_receiver.size(); ++p) {
        out.ranks.push_back({fmt::format("desired_rx{}", p + 1), rep.per_receiver[p].desired});
    }
    out.dof_num = rep.desired_sum();
    out.dof_den = rep.n;
}

void ff3_trial(const Scenario& sc, TrialResult& out) {
    NetworkInstance inst = sample_network(sc.cfg.net, out.seed);
    FastFading3Scheme s = build_3user(inst, need(sc.cfg.epsilon, "epsilon"), mix_seed(out.seed, 0xF3));
    absorb(verify_3user(s, inst, mix_seed(out.seed, 0xF4), sc.tol), out);
}

void ffk_trial(const Scenario& sc, TrialResult& out) {
    NetworkInstance inst = sample_network(sc.cfg.net, out.seed);
    FastFadingKScheme s = build_kuser(inst, need(sc.cfg.n_star, "n_star"), mix_seed(out.seed, 0xFC));
    absorb(verify_kuser(s, inst, sc.tol), out);
}

}  // namespace

TrialResult run_trial(const Scenario& sc, int index) {
    TrialResult out;
    out.trial = index;
    out.seed = sc.base_seed + static_cast<std::uint64_t>(index);
    try {
        switch (sc.regime) {
            case Regime::blind: blind_trial(sc, out); break;
            case Regime::shared: shared_trial(sc, out); break;
            case Regime::ff3: ff3_trial(sc, out); break;
            case Regime::ffk: ffk_trial(sc, out); break;
        }
        out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.pass; });
    } catch (const NumericError& e) {
        out.error = e.what();
        out.pass = false;
    } catch (const InputError& e) {
        throw InputError(fmt::format("trial seed {}: {}", out.seed, e.what()));
    }
    return out;
}

std::vector<TrialResult> run_trials(const Scenario& sc) {
    if (sc.trials < 1) throw InputError("trials must be >= 1");
    // Configuration errors surface once, before the parallel region.
    std::vector<TrialResult> out(sc.trials);
    out[0] = run_trial(sc, 0);
    const int threads = sc.threads > 0 ? sc.threads : omp_get_max_threads();
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 1; i < sc.trials; ++i) {
        try {
            out[i] = run_trial(sc, i);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<TrialResult> run_trials_serial(const Scenario& sc) {
    if (sc.trials < 1) throw InputError("trials must be >= 1");
    std::vector<TrialResult> out;
    out.reserve(sc.trials);
    for (int i = 0; i < sc.trials; ++i) out.push_back(run_trial(sc, i));
    return out;
}

SimSummary summarize(const std::vector<TrialResult>& results) {
    SimSummary s;
    s.trials = static_cast<int>(results.size());
    std::map<std::pair<long, long>, int> dof_count;
    std::vector<std::string> rank_order, check_order;
    std::map<std::string, std::map<int, int>> rank_hist;
    std::map<std::string, CheckSummary> checks;
    std::set<std::string> seen_notes;
    for (const auto& r : results) {
        if (r.pass) {
            ++s.passed;
        } else if (!s.first_failing_seed) {
            s.first_failing_seed = r.seed;
        }
        if (r.error.empty()) ++dof_count[{r.dof_num, r.dof_den}];
        for (const auto& k : r.ranks) {
            if (!rank_hist.count(k.name)) rank_order.push_back(k.name);
            ++rank_hist[k.name][k.value];
        }
        for (const auto& c : r.checks) {
            if (!checks.count(c.name)) check_order.push_back(c.name);
            auto& cs = checks[c.name];
            cs.name = c.name;
            ++cs.total;
            cs.passed += c.pass ? 1 : 0;
        }
        auto note = [&](const std::string& n) {
            if (seen_notes.insert(n).second) s.notes.push_back(n);
        };
        for (const auto& n : r.notes) note(n);
        if (!r.error.empty()) note("error: " + r.error);
    }
    int best = -1;
    for (const auto& [v, c] : dof_count) {
        if (c > best) {
            best = c;
            std::tie(s.dof_num, s.dof_den) = v;
        }
    }
    for (const auto& name : rank_order) {
        const auto& h = rank_hist[name];
        RankSummary rs{name, h.begin()->first, h.rbegin()->first, h.begin()->first};
        int top = 0;
        for (const auto& [v, c] : h) {
            if (c > top) {
                top = c;
                rs.mode = v;
            }
        }
        s.ranks.push_back(rs);
    }
    for (const auto& name : check_order) s.checks.push_back(checks[name]);
    return s;
}

void write_summary(std::ostream& os, const SimSummary& s) {
    for (const auto& r : s.ranks) os << fmt::format("rank,{},min={},max={},mode={}\n", r.name, r.min, r.max, r.mode);
    for (const auto& c : s.checks) {
        os << fmt::format("check,{},{}/{},{}\n", c.name, c.passed, c.total,
                          format_decimal(Rational(c.passed, std::max(c.total, 1))));
    }
    for (const auto& n : s.notes) os << "note," << n << "\n";
    if (s.first_failing_seed) os << "first_failing_seed=" << *s.first_failing_seed << "\n";
    Rational dof(s.dof_num, s.dof_den);
    dof.canonicalize();
    os << fmt::format("total_dof_reduced={},{}\n", format_fraction(dof), format_decimal(dof));
    os << fmt::format("total_dof={}/{} trials={} pass={}\n", s.dof_num, s.dof_den, s.trials, s.passed);
}

void write_csv(std::ostream& os, const std::vector<TrialResult>& results, const SimSummary& s) {
    std::vector<std::string> check_cols, rank_cols;
    for (const auto& c : s.checks) check_cols.push_back(c.name);
    for (const auto& r : s.ranks) rank_cols.push_back(r.name);
    os << "trial,seed,pass,total_dof";
    for (const auto& c : check_cols) os << ",check:" << c;
    for (const auto& r : rank_cols) os << ",rank:" << r;
    os << "\n";
    for (const auto& r : results) {
        os << fmt::format("{},{},{},{}", r.trial, r.seed, r.pass ? 1 : 0,
                          r.error.empty() ? fmt::format("{}/{}", r.dof_num, r.dof_den) : std::string("error"));
        for (const auto& name : check_cols) {
            auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const auto& c) { return c.name == name; });
            os << "," << (it == r.checks.end() ? "" : (it->pass ? "1" : "0"));
        }
        for (const auto& name : rank_cols) {
            auto it = std::find_if(r.ranks.begin(), r.ranks.end(), [&](const auto& k) { return k.name == name; });
            os << "," << (it == r.ranks.end() ? "" : std::to_string(it->value));
        }
        os << "\n";
    }
    os << "\n";
    write_summary(os, s);
}

}  // namespace ia
