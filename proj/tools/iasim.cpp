#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "ia/bounds.hpp"
#include "ia/config.hpp"
#include "ia/decomposition.hpp"
#include "ia/errors.hpp"
#include "ia/fastfading.hpp"
#include "ia/sim.hpp"

namespace {

using namespace ia;

struct Common {
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int threads = 0;
    std::optional<double> tolerance;
};

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int cmd_bound(const Common& c, long kmin, long kmax) {
    if (kmin < 1 || kmax < kmin) throw InputError("need 1 <= K_min <= K_max");
    Sink sink(c.out);
    sink.os() << "K,r_star,dof,dof_decimal\n";
    for (long K = kmin; K <= kmax; ++K) {
        BoundResult b = dof_upper_bound(K, false);
        sink.os() << fmt::format("{},{},{},{}\n", K, b.r_star, format_fraction(b.dof), format_decimal(b.dof));
    }
    return 0;
}

int cmd_curve(const Common& c, long K, const std::string& lo_s, const std::string& hi_s, int steps) {
    if (K < 1) throw InputError("K must be >= 1");
    if (steps < 2) throw InputError("steps must be >= 2");
    const Rational lo = parse_rational(lo_s), hi = parse_rational(hi_s);
    if (hi <= lo) throw InputError("need x_min < x_max");
    std::vector<Rational> xs;
    for (int i = 0; i < steps; ++i) {
        Rational x = lo + (hi - lo) * Rational(i, steps - 1);
        x.canonicalize();
        xs.push_back(x);
    }
    Sink sink(c.out);
    sink.os() << "x,x_decimal,value,value_decimal\n";
    for (const auto& [x, v] : curve_f(K, xs)) {
        sink.os() << fmt::format("{},{},{},{}\n", format_fraction(x), format_decimal(x), format_fraction(v),
                                 format_decimal(v));
    }
    return 0;
}

int cmd_sim(const Common& c, Regime regime, const std::string& path) {
    Scenario sc;
    sc.regime = regime;
    sc.cfg = load_config(path);
    sc.trials = c.trials.value_or(sc.cfg.trials.value_or(200));
    sc.base_seed = c.seed.value_or(sc.cfg.net.seed);
    sc.threads = c.threads;
    sc.tol.relative_threshold = c.tolerance.value_or(sc.cfg.tolerance.value_or(sc.tol.relative_threshold));
    auto results = run_trials(sc);
    SimSummary s = summarize(results);
    Sink sink(c.out);
    write_csv(sink.os(), results, s);
    if (!c.out.empty()) write_summary(std::cout, s);
    if (s.passed != s.trials) {
        std::cerr << "verification failed; first failing seed " << *s.first_failing_seed << "\n";
        return 2;
    }
    return 0;
}

int cmd_upsilon(const Common& c, long K, const std::string& u_s) {
    const Rational u = parse_rational(u_s);
    const Rational cap = dof_cap_given_upsilon(K, u);
    Sink sink(c.out);
    sink.os() << "K,upsilon,cap,cap_decimal,source\n";
    sink.os() << fmt::format("{},{},{},{},{}\n", K, format_fraction(u), format_fraction(cap), format_decimal(cap),
                             cap_is_odd_k_extension(K) ? "even_k_formula_extended" : "closed_form");
    return 0;
}

// Decomposes every cross channel of one sampled instance and reports the
// worst relative reconstruction error.
int cmd_decompose(const Common& c, const std::string& path) {
    ConfigFile cfg = load_config(path);
    const std::uint64_t seed = c.seed.value_or(cfg.net.seed);
    NetworkInstance inst = sample_network(cfg.net, seed);
    const ChangingPattern cu = cross_union(cfg.net);
    Sink sink(c.out);
    sink.os() << "rx,tx,family,path,members,max_rel_residual\n";
    bool ok = true;
    for (int p = 0; p < inst.K; ++p) {
        for (int q = 0; q < inst.K; ++q) {
            if (p == q) continue;
            const DiagonalChannel& h = inst.gains[p][q];
            const UnknownSet& U = inst.unknown[p][q];
            const bool indexed = U.size() > 0;
            BasisFamily fam = indexed ? build_indexed_basis(mask_unknown(h, U), U, mix_seed(seed, 0xDC + p * inst.K + q))
                                      : build_power_basis(cu, mix_seed(seed, 0xDC + p * inst.K + q));
            const bool exact = !indexed && fam.sigma() > kMaxFloatSigma;
            double worst = 0;
            if (exact) {
                auto rec = reconstruct_exact(decompose_exact(h, fam), fam);
                for (int s = 0; s < inst.n; ++s) {
                    if (rec[s] != mpq_class(h.values(s))) worst = std::max(worst, 1.0);
                }
            } else {
                DiagonalChannel rec = reconstruct(decompose(h, fam), fam);
                worst = ((rec.values - h.values).cwiseAbs().array() / h.values.cwiseAbs().array()).maxCoeff();
            }
            if (exact ? worst != 0 : !(worst <= 1e-9)) ok = false;
            sink.os() << fmt::format("{},{},{},{},{},{:.3e}\n", p + 1, q + 1, indexed ? "indexed" : "power",
                                     exact ? "exact" : "float", fam.members.size(), worst);
        }
    }
    if (!ok) {
        std::cerr << "reconstruction residual too large; seed " << seed << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interference-alignment scheme builder and Monte Carlo verifier"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Common c;
    app.add_option("--out", c.out, "Write CSV here instead of stdout");
    app.add_option("--seed", c.seed, "Base seed (overrides the config)");
    app.add_option("--trials", c.trials, "Number of trials (overrides the config)")->check(CLI::PositiveNumber);
    app.add_option("--threads", c.threads, "Upper bound on worker threads")->check(CLI::NonNegativeNumber);
    app.add_option("--tolerance", c.tolerance, "Relative singular-value threshold for rank (default 1e-8)")
        ->check(CLI::PositiveNumber);

    long kmin = 0, kmax = 0, K = 0;
    int steps = 0;
    std::string xlo, xhi, ups, config;
    std::function<int()> action;

    auto* bound = app.add_subcommand("bound", "DoF upper bound table for K_min..K_max");
    bound->add_option("K_min", kmin)->required();
    bound->add_option("K_max", kmax)->required();
    bound->callback([&] { action = [&] { return cmd_bound(c, kmin, kmax); }; });

    auto* curve = app.add_subcommand("curve", "f(x) = Kx/(x^2-x+K) sampled on [x_min, x_max]");
    curve->add_option("K", K)->required();
    curve->add_option("x_min", xlo)->required();
    curve->add_option("x_max", xhi)->required();
    curve->add_option("steps", steps)->required();
    curve->callback([&] { action = [&] { return cmd_curve(c, K, xlo, xhi, steps); }; });

    const std::pair<const char*, Regime> sims[] = {
        {"blind-sim", Regime::blind}, {"shared-sim", Regime::shared}, {"ff3-sim", Regime::ff3}, {"ffk-sim", Regime::ffk}};
    for (const auto& [name, regime] : sims) {
        auto* sub = app.add_subcommand(name, "Monte Carlo verification (" + to_string(regime) + ")");
        sub->add_option("config", config)->required();
        Regime r = regime;
        sub->callback([&, r] { action = [&, r] { return cmd_sim(c, r, config); }; });
    }

    auto* ups_cmd = app.add_subcommand("upsilon-cap", "DoF cap given the CSI fraction upsilon");
    ups_cmd->add_option("K", K)->required();
    ups_cmd->add_option("upsilon", ups)->required();
    ups_cmd->callback([&] { action = [&] { return cmd_upsilon(c, K, ups); }; });

    auto* dec = app.add_subcommand("decompose", "Decompose each cross channel of one sampled instance");
    dec->add_option("config", config)->required();
    dec->callback([&] { action = [&] { return cmd_decompose(c, config); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        return action();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
