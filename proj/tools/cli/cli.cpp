#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <ostream>
#include <random>
#include <thread>

#include "uncbound/bounds.hpp"
#include "uncbound/oracle.hpp"

namespace uncbound::cli {

namespace {

PurityOrder order_for(double r) {
    if (r == 1.0) return PurityOrder::superpurity();
    if (std::isinf(r) && r > 0.0) return PurityOrder::entropy();
    return PurityOrder::finite(r);
}

OutputRecord to_record(const BoundResult& b, int n) {
    OutputRecord rec;
    rec.n = n;
    rec.value = b.per_dim_product;
    rec.volume = b.volume;
    rec.aux = b.aux;
    rec.method = std::string(to_string(b.method));
    rec.residual = b.residual;
    rec.iterations = b.iterations;
    return rec;
}

void check_record(const OutputRecord& rec) {
    if (!(std::isfinite(rec.value) && rec.value >= 0.0))
        throw SolverError("non-finite or negative value at n=" + std::to_string(rec.n), rec.iterations, 0.0, 0.0);
}

unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string_view quantity_name(Quantity q) {
    switch (q) {
        case Quantity::asymptotic_C: return "asymptotic-c";
        case Quantity::purity_bound: return "purity-bound";
        case Quantity::entropy_bound: return "entropy-bound";
        case Quantity::interpolated_r2: return "interpolated-r2";
    }
    return "?";
}

struct GridPoint {
    int n;
    double r;
    double x;  // mu or S
};

OutputRecord evaluate_point(Quantity q, const GridPoint& p) {
    const Dimension n{p.n};
    OutputRecord rec;
    switch (q) {
        case Quantity::asymptotic_C:
            rec.n = p.n;
            rec.value = asymptotic_C(n, p.r);
            rec.method = std::string(to_string(BoundMethod::asymptotic));
            rec.r = p.r;
            break;
        case Quantity::purity_bound:
            rec = to_record(purity_bound(p.x, n, order_for(p.r)), p.n);
            rec.r = p.r;
            rec.mu = p.x;
            break;
        case Quantity::entropy_bound:
            rec = to_record(entropy_bound(p.x, n), p.n);
            rec.S = p.x;
            break;
        case Quantity::interpolated_r2:
            rec = to_record(interpolated_bound_r2(p.x, n), p.n);
            rec.r = 2.0;
            rec.mu = p.x;
            break;
    }
    check_record(rec);
    return rec;
}

// --- verification suites ---------------------------------------------------

struct Summary {
    std::string suite;
    int passed = 0;
    int failed = 0;
    std::string worst_key;
    double worst = 0.0;
    std::vector<std::pair<std::string, std::string>> extras;
};

void print_summary(std::ostream& out, const Summary& s) {
    out << s.suite << ": passed=" << s.passed << " failed=" << s.failed << ' ' << s.worst_key << '='
        << format_real(s.worst);
    for (const auto& [k, v] : s.extras) out << ' ' << k << '=' << v;
    out << " result=" << (s.failed == 0 ? "pass" : "fail") << '\n';
}

struct VerifyFlags {
    std::uint64_t seed = 42;
    int trials = 0;
    double tol = 0.0;
    unsigned jobs = 1;
    int dim = 30;
    int n = 0;
    int levels = 5;
    double r = 0.0;
    double mu = 0.0;
    int starts = 20;
    int n_max = 0;
    double S_max = 50.0;
    std::string r_list = "1.5,2,2.5,5";
};

Summary verify_lemma(const VerifyFlags& f) {
    oracle::OracleConfig cfg;
    cfg.seed = f.seed;
    cfg.trials = f.trials;
    cfg.tolerance = f.tol;
    std::function<oracle::LemmaReport(std::uint64_t)> trial;
    if (f.n > 0) {
        if (f.levels < 1) throw DomainError("--levels must be >= 1");
        trial = [&](std::uint64_t i) { return oracle::lemma_trial_multimode(Dimension{f.n}, f.levels, cfg, i); };
    } else {
        if (f.dim < 2) throw DomainError("--dim must be >= 2");
        trial = [&](std::uint64_t i) { return oracle::lemma_trial(static_cast<std::size_t>(f.dim), cfg, i); };
    }
    const auto res = oracle::lemma_suite(trial, cfg, -f.tol, f.jobs);
    Summary s{"lemma", res.trials - res.failures, res.failures, "worst_margin", res.worst_margin, {}};
    if (f.n > 0) {
        s.extras.emplace_back("n", std::to_string(f.n));
        s.extras.emplace_back("levels", std::to_string(f.levels));
    } else {
        s.extras.emplace_back("dim", std::to_string(f.dim));
    }
    return s;
}

Summary verify_holder(const VerifyFlags& f) {
    struct Case {
        int n;
        double r, mu;
    };
    std::vector<Case> cases;
    const bool explicit_case = f.n > 0 || f.r > 0.0 || f.mu > 0.0;
    if (explicit_case) {
        if (!(f.n > 0 && f.r > 0.0 && f.mu > 0.0)) throw DomainError("verify holder needs all of --n, --r, --mu or none");
        cases.push_back({f.n, f.r, f.mu});
    } else {
        if (f.trials < 1) throw DomainError("--trials must be >= 1");
        for (int i = 0; i < f.trials; ++i) {
            auto rng = oracle::trial_rng(f.seed, static_cast<std::uint64_t>(i));
            std::uniform_int_distribution<int> pick_n(1, 3);
            std::uniform_real_distribution<double> pick_r(1.2, 5.0);
            std::uniform_real_distribution<double> pick_log_mu(std::log(0.01), std::log(0.9));
            const int n = pick_n(rng);
            const double r = pick_r(rng);
            cases.push_back({n, r, std::exp(pick_log_mu(rng))});
        }
    }
    oracle::OracleConfig cfg;
    cfg.seed = f.seed;
    cfg.trials = f.starts;
    cfg.tolerance = f.tol;

    Summary s{"holder", 0, 0, "worst_gap", 0.0, {}};
    for (const auto& c : cases) {
        const auto bf = oracle::brute_force_purity_bound(c.mu, Dimension{c.n}, c.r, cfg);
        const auto pb = purity_bound(c.mu, Dimension{c.n}, PurityOrder::finite(c.r));
        const double gap = bf.bound.per_dim_product - pb.per_dim_product;
        if (std::fabs(gap) > std::fabs(s.worst)) s.worst = gap;
        (std::fabs(gap) <= f.tol ? s.passed : s.failed)++;
    }
    s.extras.emplace_back("cases", std::to_string(cases.size()));
    return s;
}

Summary verify_b_approx(const VerifyFlags& f) {
    if (f.trials < 1) throw DomainError("--trials must be >= 1");
    Summary s{"b-approx", 0, 0, "worst_relative_gap", 0.0, {}};
    int uncorrected = 0;
    for (int i = 0; i < f.trials; ++i) {
        auto rng = oracle::trial_rng(f.seed, static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> pick_log_M(std::log(0.5), std::log(100.0));
        std::uniform_int_distribution<int> pick_n(1, 6);
        std::uniform_real_distribution<double> pick_r(1.0, 10.0);
        const double M = std::exp(pick_log_M(rng));
        const Dimension n{pick_n(rng)};
        const double r = pick_r(rng);
        const double quad = oracle::quadrature_holder_sum(M, n, r);
        const double closed = holder_sum_asymptotic(M, n, r);
        const double gap = std::fabs(quad - closed) / closed;
        s.worst = std::max(s.worst, gap);
        (gap <= f.tol ? s.passed : s.failed)++;
        // M^{n+r+1} / prod_{k=1}^{n+1} (r + k): one extra power and factor
        const double alt = closed * M / (r + n.value() + 1);
        if (std::fabs(quad - alt) <= f.tol * std::fabs(quad)) ++uncorrected;
    }
    s.extras.emplace_back("uncorrected_form_matches", std::to_string(uncorrected));
    return s;
}

Summary verify_identity(const VerifyFlags& f) {
    if (f.n_max < 1 || f.n_max > 20) throw DomainError("--n-max must lie in [1, 20]");
    Summary s{"appendix-d", 0, 0, "worst_relative_gap", 0.0, {}};
    for (double r : parse_real_list(f.r_list)) {
        for (int n = 1; n <= f.n_max; ++n) {
            const auto chk = oracle::alternating_sum_identity_check(n, r);
            s.worst = std::max(s.worst, chk.relative_gap);
            (chk.relative_gap <= f.tol ? s.passed : s.failed)++;
        }
    }
    return s;
}

Summary verify_roundtrip(const VerifyFlags& f) {
    if (f.trials < 1) throw DomainError("--trials must be >= 1");
    if (f.n_max < 1) throw DomainError("--n-max must be >= 1");
    if (!(f.S_max > 0.0)) throw DomainError("--S-max must be > 0");
    constexpr std::size_t kMaxLevels = std::size_t{1} << 16;
    Summary s{"roundtrip", 0, 0, "worst_entropy_error", 0.0, {}};
    int materialized = 0;
    for (int i = 0; i < f.trials; ++i) {
        auto rng = oracle::trial_rng(f.seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> pick_n(1, f.n_max);
        std::uniform_real_distribution<double> pick_S(0.0, f.S_max);
        const Dimension n{pick_n(rng)};
        double S = pick_S(rng);
        if (S == 0.0) S = f.S_max;  // keep S in (0, S_max]
        const auto t = thermal_beta_from_entropy(S, n);
        double back = 0.0;
        if (auto g = thermal_grouped_spectrum(t, n, kMaxLevels)) {
            back = entropy_from_grouped(*g);
            ++materialized;
        } else {
            back = thermal_entropy(t.beta, n);
        }
        const double err = std::fabs(back - S);
        s.worst = std::max(s.worst, err);
        (err <= f.tol ? s.passed : s.failed)++;
    }
    s.extras.emplace_back("materialized", std::to_string(materialized));
    return s;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("UNCBOUND_SEED");
    if (!env || !*env) return 42;
    std::string_view text(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw DomainError("UNCBOUND_SEED must be an unsigned integer, got '" + std::string(text) + "'");
    return v;
}

Format parse_format(const std::string& s) { return s == "json" ? Format::json : Format::csv; }

}  // namespace

void CurveSpec::validate() const {
    if (n_values.empty()) throw DomainError("curve needs at least one --n value");
    const bool needs_r = quantity == Quantity::asymptotic_C || quantity == Quantity::purity_bound;
    const bool needs_mu = quantity == Quantity::purity_bound || quantity == Quantity::interpolated_r2;
    const bool needs_S = quantity == Quantity::entropy_bound;
    const auto name = std::string(quantity_name(quantity));
    auto check = [&](bool needed, bool given, const char* flag) {
        if (needed && !given) throw DomainError(name + " needs " + flag);
        if (!needed && given) throw DomainError(std::string(flag) + " does not apply to " + name);
    };
    check(needs_r, r.has_value(), "--r");
    check(needs_mu, mu.has_value(), "--mu");
    check(needs_S, S.has_value(), "--S");
}

std::vector<OutputRecord> evaluate_curve(const CurveSpec& spec, unsigned jobs) {
    spec.validate();
    const std::vector<double> rs = spec.r ? spec.r->values() : std::vector<double>{0.0};
    const std::vector<double> xs = spec.mu ? spec.mu->values() : spec.S ? spec.S->values() : std::vector<double>{0.0};
    std::vector<GridPoint> grid;
    for (int n : spec.n_values)
        for (double r : rs)
            for (double x : xs) grid.push_back({n, r, x});

    std::vector<OutputRecord> out(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                out[i] = evaluate_point(spec.quantity, grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);  // first failing point in output order
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower bounds on the position-momentum uncertainty product of mixed states of an\n"
                 "n-dimensional harmonic oscillator, given their purity or entropy.",
                 "uncbound"};
    app.footer("Units: \xC4\xA7/2 = 1; reported values are per-dimension products Delta X Delta P\n"
               "(the 'volume' column is their n-th power).\n"
               "Exit status: 0 success, 1 verification failed, 2 invalid flags or domain error,\n"
               "3 solver failure.");
    // the footer above spells hbar as UTF-8 "ħ"
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    try {
        seed = default_seed();
    } catch (const DomainError& e) {
        err << "uncbound: error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::string format = "csv";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    };

    // bound
    auto* bound = app.add_subcommand("bound", "Compute one bound");
    bound->require_subcommand(1);
    int n = 1;
    double r = 2.0, mu = 1.0, S = 0.0;
    std::string method = "exact", input;
    bool asymptotic_entropy = false;

    auto* b_purity = bound->add_subcommand("purity", "Bound from the generalized purity mu^(r)");
    b_purity->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
    b_purity->add_option("--r", r, "Purity order r >= 1 (1: largest eigenvalue, inf: entropy)")->required();
    b_purity->add_option("--mu", mu, "Generalized purity in (0, 1]")->required();
    b_purity->add_option("--method", method, "exact: optimized Hoelder bound; asymptotic: C(n,r)/mu; "
                                             "interpolated: r = 2 interpolating relation")
        ->check(CLI::IsMember({"exact", "asymptotic", "interpolated"}))
        ->capture_default_str();
    add_format(b_purity);

    auto* b_entropy = bound->add_subcommand("entropy", "Bound from the von Neumann entropy");
    b_entropy->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
    b_entropy->add_option("--S", S, "Entropy in nats, >= 0")->required();
    b_entropy->add_flag("--asymptotic", asymptotic_entropy, "High-entropy closed form");
    add_format(b_entropy);

    auto* b_spectrum = bound->add_subcommand("spectrum", "Bound from a density-matrix eigenspectrum file");
    b_spectrum->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
    b_spectrum->add_option("--input", input, "Text file, one eigenvalue per line, '#' comments; '-' reads stdin")
        ->required();
    add_format(b_spectrum);

    // curve
    auto* curve = app.add_subcommand("curve", "Sweep a quantity over a grid");
    std::string quantity, n_list = "1", r_range, mu_range, S_range;
    unsigned jobs = 0;
    curve->add_option("--quantity", quantity, "What to tabulate")
        ->required()
        ->check(CLI::IsMember({"asymptotic-c", "purity-bound", "entropy-bound", "interpolated-r2"}));
    curve->add_option("--n", n_list, "Comma-separated dimensions")->capture_default_str();
    curve->add_option("--r", r_range, "Range min:max:points[:log] or a single value");
    curve->add_option("--mu", mu_range, "Range min:max:points[:log] or a single value");
    curve->add_option("--S", S_range, "Range min:max:points[:log] or a single value");
    curve->add_option("--jobs", jobs, "Worker threads, 0 for one per core")->capture_default_str();
    add_format(curve);

    // verify
    auto* verify = app.add_subcommand("verify", "Run a numerical verification suite");
    verify->require_subcommand(1);
    VerifyFlags f_lemma, f_holder, f_b, f_d, f_rt;
    auto add_common = [&](CLI::App* sub, VerifyFlags& vf, int trials, double tol) {
        vf.seed = seed;
        vf.trials = trials;
        vf.tol = tol;
        sub->add_option("--seed", vf.seed, "RNG seed (default: $UNCBOUND_SEED or 42)")->capture_default_str();
        sub->add_option("--trials", vf.trials, "Number of trials")->capture_default_str();
        sub->add_option("--tol", vf.tol, "Tolerance")->capture_default_str();
    };
    auto* v_lemma = verify->add_subcommand("lemma", "Diagonal sorted states minimize the oscillator energy");
    add_common(v_lemma, f_lemma, 1000, 1e-10);
    v_lemma->add_option("--dim", f_lemma.dim, "Matrix dimension")->capture_default_str();
    v_lemma->add_option("--n", f_lemma.n, "Use the degenerate n-mode spectrum instead of 2k+1");
    v_lemma->add_option("--levels", f_lemma.levels, "Highest excitation with --n")->capture_default_str();
    v_lemma->add_option("--jobs", f_lemma.jobs, "Worker threads")->capture_default_str();

    auto* v_holder = verify->add_subcommand("holder", "Brute-force minimization against the closed bound");
    add_common(v_holder, f_holder, 10, 1e-5);
    v_holder->add_option("--n", f_holder.n, "Dimension (with --r and --mu: a single case)");
    v_holder->add_option("--r", f_holder.r, "Purity order");
    v_holder->add_option("--mu", f_holder.mu, "Purity");
    v_holder->add_option("--starts", f_holder.starts, "Optimizer starts per case")->capture_default_str();

    auto* v_b = verify->add_subcommand("b-approx", "Quadrature against the continuum Hoelder sum");
    add_common(v_b, f_b, 50, 1e-9);

    auto* v_d = verify->add_subcommand("appendix-d", "Alternating-sum identity for the Beta integral");
    add_common(v_d, f_d, 1, 1e-10);
    f_d.n_max = 10;
    v_d->add_option("--n-max", f_d.n_max, "Largest dimension")->capture_default_str();
    v_d->add_option("--r", f_d.r_list, "Comma-separated orders")->capture_default_str();

    auto* v_rt = verify->add_subcommand("roundtrip", "Entropy -> thermal state -> entropy");
    add_common(v_rt, f_rt, 100, 1e-10);
    f_rt.n_max = 6;
    v_rt->add_option("--n-max", f_rt.n_max, "Largest dimension")->capture_default_str();
    v_rt->add_option("--S-max", f_rt.S_max, "Largest entropy")->capture_default_str();

    std::vector<const char*> argv{"uncbound"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "uncbound: error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (b_purity->parsed()) {
            const Dimension dim{n};
            BoundResult res;
            if (method == "exact")
                res = purity_bound(mu, dim, order_for(r));
            else if (method == "asymptotic")
                res = purity_bound_asymptotic(mu, dim, r);
            else if (r == 2.0)
                res = interpolated_bound_r2(mu, dim);
            else
                throw DomainError("the interpolated method needs --r 2");
            auto rec = to_record(res, n);
            rec.r = r;
            rec.mu = mu;
            check_record(rec);
            write_records(out, {&rec, 1}, parse_format(format));
        } else if (b_entropy->parsed()) {
            const Dimension dim{n};
            auto rec = to_record(asymptotic_entropy ? entropy_bound_asymptotic(S, dim) : entropy_bound(S, dim), n);
            rec.S = S;
            check_record(rec);
            write_records(out, {&rec, 1}, parse_format(format));
        } else if (b_spectrum->parsed()) {
            const Dimension dim{n};
            std::vector<double> values;
            if (input == "-") {
                values = read_spectrum(std::cin);
            } else {
                values = read_spectrum_file(input);
            }
            auto rec = to_record(bound_from_spectrum(Spectrum(std::move(values)), dim), n);
            check_record(rec);
            write_records(out, {&rec, 1}, parse_format(format));
        } else if (curve->parsed()) {
            CurveSpec spec;
            spec.quantity = quantity == "asymptotic-c"   ? Quantity::asymptotic_C
                            : quantity == "purity-bound" ? Quantity::purity_bound
                            : quantity == "entropy-bound" ? Quantity::entropy_bound
                                                          : Quantity::interpolated_r2;
            spec.n_values = parse_int_list(n_list);
            if (!r_range.empty()) spec.r = parse_range(r_range);
            if (!mu_range.empty()) spec.mu = parse_range(mu_range);
            if (!S_range.empty()) spec.S = parse_range(S_range);
            const auto records = evaluate_curve(spec, jobs);
            write_records(out, records, parse_format(format));
        } else {
            Summary s;
            if (v_lemma->parsed())
                s = verify_lemma(f_lemma);
            else if (v_holder->parsed())
                s = verify_holder(f_holder);
            else if (v_b->parsed())
                s = verify_b_approx(f_b);
            else if (v_d->parsed())
                s = verify_identity(f_d);
            else
                s = verify_roundtrip(f_rt);
            print_summary(out, s);
            return s.failed == 0 ? kExitOk : kExitVerifyFailed;
        }
    } catch (const DomainError& e) {
        err << "uncbound: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "uncbound: solver failure: " << e.what() << " (iterations " << e.iterations() << ", bracket ["
            << format_real(e.bracket_lo()) << ", " << format_real(e.bracket_hi()) << "])\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "uncbound: numerical failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitOk;
}

}  // namespace uncbound::cli
