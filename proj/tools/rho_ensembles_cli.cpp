// rho-ensembles: command-line front end for the random density matrix
// library.  Subcommands:
//
//   sample    batch-sample spectra to CSV
//   exact     exact finite-n values (trace moments, entropy, two-point
//             moments, entropy correlation) as JSON
//   density   tabulate limit densities and exact finite-n densities as CSV
//   verify    run the verification suite and emit a JSON report
//
// Exit codes: 0 success, 1 verification or cross-method mismatch,
// 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rho/rho.hpp"

namespace {

using rho::BigRational;
using rho::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
    std::string ensemble;
    int n = 0;
    int k = 0;  // 0 = not given
    long count = 0;
    std::uint64_t seed = 0;
    std::string sampler;  // "", "rejection", "mcmc"
    std::string out;
};

rho::EnsembleSpec spec_from(const std::string& ensemble, int n, int k) {
    if (ensemble == "hs") {
        if (k != 0 && k != n) throw UsageError("--k applies to the induced ensemble only");
        return rho::EnsembleSpec::hs(n);
    }
    if (ensemble == "bures") {
        if (k != 0 && k != n) throw UsageError("--k applies to the induced ensemble only");
        return rho::EnsembleSpec::bures(n);
    }
    if (ensemble == "induced") {
        if (k == 0) throw UsageError("the induced ensemble requires --k");
        return rho::EnsembleSpec::induced(n, k);
    }
    throw UsageError("unknown ensemble: " + ensemble);
}

int run_sample(const SampleArgs& a) {
    const auto spec = spec_from(a.ensemble, a.n, a.k);
    auto variant = rho::BuresSampler::Auto;
    std::string sampler_label = "direct";
    if (spec.kind == rho::Ensemble::Bures) {
        if (a.sampler == "rejection")
            variant = rho::BuresSampler::Rejection;
        else if (a.sampler == "mcmc")
            variant = rho::BuresSampler::Mcmc;
        sampler_label = (variant == rho::BuresSampler::Mcmc ||
                         (variant == rho::BuresSampler::Auto && spec.n > 4))
                            ? "mcmc"
                            : "rejection";
    } else if (!a.sampler.empty()) {
        throw UsageError("--sampler applies to the Bures ensemble only");
    }

    const auto spectra = rho::sample_spectra(spec, a.count, a.seed, 0, variant);

    if (a.out.empty()) {
        rho::write_spectra_csv(std::cout, spec, spectra, a.seed, sampler_label);
    } else {
        std::ofstream os(a.out);
        if (!os) throw std::runtime_error("cannot open output file: " + a.out);
        rho::write_spectra_csv(os, spec, spectra, a.seed, sampler_label);
    }
    return 0;
}

// ---- exact -----------------------------------------------------------------

struct ExactArgs {
    std::string quantity;  // trace | entropy | two-point-moment | entropy-correlation
    std::string ensemble = "induced";
    int n = 0;
    int k = 0;
    int q = 0;
    int L = 1;
    int M = 1;
    std::vector<std::string> methods;
};

BigRational exact_trace_by_method(const rho::EnsembleSpec& spec, int q,
                                  const std::string& method) {
    if (method == "closed-form") return rho::closed_form_trace(spec, q);
    if (method == "w-matrix") {
        if (spec.kind == rho::Ensemble::Bures)
            throw UsageError("the w-matrix route covers the induced family (hs/induced) only");
        return BigRational(spec.formula_n()) * rho::induced_moment(spec.n, spec.k, q);
    }
    if (method == "laguerre-jet") {
        if (spec.kind == rho::Ensemble::Bures) return rho::bures_trace_moment(spec.n, q);
        if (spec.kind == rho::Ensemble::HS) return rho::hs_jet_trace_moment(spec.n, q);
        throw UsageError("the laguerre-jet route applies to the hs and bures ensembles only");
    }
    throw UsageError("unknown method: " + method);
}

int run_exact(const ExactArgs& a) {
    if (a.quantity == "trace") {
        const auto spec = spec_from(a.ensemble, a.n, a.k);
        std::vector<std::string> methods = a.methods;
        if (methods.empty()) methods.push_back("closed-form");
        std::vector<json> records;
        std::vector<BigRational> values;
        for (const auto& m : methods) {
            const BigRational v = exact_trace_by_method(spec, a.q, m);
            json j = rho::exact_value_json(spec, "trace_moment", a.q, v);
            j["method"] = m;
            records.push_back(std::move(j));
            values.push_back(v);
        }
        bool match = true;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] != values[0]) match = false;
        if (records.size() == 1) {
            std::cout << records[0].dump(2) << "\n";
            return 0;
        }
        json out = json::array();
        for (auto& r : records) out.push_back(std::move(r));
        json report;
        report["results"] = std::move(out);
        report["match"] = match;
        std::cout << report.dump(2) << "\n";
        if (!match) {
            std::cerr << "error: methods disagree\n";
            return 1;
        }
        return 0;
    }

    // the remaining quantities live on the induced family and take (n, k)
    if (a.k == 0) throw UsageError(a.quantity + " requires --n and --k");
    const auto spec = rho::EnsembleSpec::induced(a.n, a.k);
    if (a.quantity == "entropy") {
        std::cout << rho::exact_value_json(spec, "mean_entropy", 0,
                                           rho::mean_entropy(a.n, a.k))
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (a.quantity == "two-point-moment") {
        json j = rho::exact_value_json(spec, "two_point_moment", 0,
                                       rho::two_point_moment(a.n, a.k, a.L, a.M));
        j["L"] = a.L;
        j["M"] = a.M;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (a.quantity == "entropy-correlation") {
        json j = rho::pi_square_json(rho::entropy_correlation(a.n, a.k));
        j["ensemble"] = rho::ensemble_name(spec.kind);
        j["n"] = spec.n;
        j["k"] = spec.k;
        j["quantity"] = "entropy_correlation";
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    throw UsageError("unknown exact quantity: " + a.quantity);
}

// ---- density ---------------------------------------------------------------

struct DensityArgs {
    std::string mode;  // asymptotic-hs | asymptotic-bures | finite-n | two-point
    int points = 0;
    int n = 0;
    int k = 0;
    int grid = 0;  // 0 = use --points
};

int run_density(const DensityArgs& a) {
    std::vector<std::pair<std::string, std::string>> fields = {{"mode", a.mode}};

    if (a.mode == "asymptotic-hs" || a.mode == "asymptotic-bures") {
        const bool hs = a.mode == "asymptotic-hs";
        const double upper = hs ? 4.0 : rho::AsymptoticMeasure::bures_edge();
        fields.emplace_back("points", std::to_string(a.points));
        fields.emplace_back("support_upper", rho::csv_double(upper));
        std::vector<std::pair<double, double>> rows;
        rows.reserve(static_cast<std::size_t>(a.points));
        for (int i = 1; i <= a.points; ++i) {
            const double x = upper * i / (a.points + 1);
            rows.emplace_back(x, hs ? rho::hs_density(x) : rho::bures_density(x));
        }
        rho::write_density_csv(std::cout, fields, rows);
        return 0;
    }

    if (a.mode == "finite-n") {
        if (a.n == 0 || a.k == 0) throw UsageError("finite-n requires --n and --k");
        const auto spec = rho::EnsembleSpec::induced(a.n, a.k);
        if (spec.formula_n() < 2)
            throw UsageError("finite-n with min(n,k) = 1 is distributional: the spectrum is "
                             "a single unit eigenvalue, P(lambda) = delta(lambda - 1)");
        fields.emplace_back("n", std::to_string(spec.n));
        fields.emplace_back("k", std::to_string(spec.k));
        if (spec.swapped)
            fields.emplace_back("note", "k < n: density of the min(n,k) nonzero eigenvalues");
        fields.emplace_back("points", std::to_string(a.points));
        std::vector<std::pair<double, double>> rows;
        rows.reserve(static_cast<std::size_t>(a.points));
        for (int i = 1; i <= a.points; ++i) {
            const double lambda = static_cast<double>(i) / (a.points + 1);
            rows.emplace_back(lambda, rho::one_point_density(a.n, a.k, lambda));
        }
        rho::write_density_csv(std::cout, fields, rows);
        return 0;
    }

    if (a.mode == "two-point") {
        if (a.n == 0 || a.k == 0) throw UsageError("two-point requires --n and --k");
        const auto spec = rho::EnsembleSpec::induced(a.n, a.k);
        if (spec.formula_n() < 3)
            throw UsageError("two-point with min(n,k) = 2 is distributional: the pair "
                             "(lambda, mu) is confined to the line lambda + mu = 1");
        const int side = a.grid > 0 ? a.grid : a.points;
        fields.emplace_back("n", std::to_string(spec.n));
        fields.emplace_back("k", std::to_string(spec.k));
        fields.emplace_back("grid", std::to_string(side));
        std::vector<std::array<double, 3>> rows;
        for (int i = 1; i <= side; ++i)
            for (int j = 1; j <= side; ++j) {
                const double lambda = static_cast<double>(i) / (side + 1);
                const double mu = static_cast<double>(j) / (side + 1);
                if (lambda + mu >= 1.0) continue;
                rows.push_back({lambda, mu, rho::two_point_density(a.n, a.k, lambda, mu)});
            }
        rho::write_two_point_csv(std::cout, fields, rows);
        return 0;
    }

    throw UsageError("unknown density mode: " + a.mode);
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    double budget_s = 0.0;
};

int run_verify(const VerifyArgs& a) {
    const auto results = rho::run_checks(a.suite);
    double elapsed = 0.0;
    for (const auto& r : results) elapsed += r.elapsed_s;
    const bool ok = rho::all_pass(results);
    const bool budget_ok = a.budget_s <= 0.0 || elapsed <= a.budget_s;

    json report;
    report["version"] = rho::version_string;
    report["suite"] = a.suite;
    if (a.budget_s > 0.0) report["budget_s"] = a.budget_s;
    report["elapsed_s"] = elapsed;
    report["all_pass"] = ok;
    report["budget_ok"] = budget_ok;
    report["checks"] = rho::check_results_json(results);
    std::cout << report.dump(2) << "\n";
    return (ok && budget_ok) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random density matrix ensembles: sampling, exact finite-n values, "
                 "limit densities, verification"};
    app.require_subcommand(1);

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "batch-sample spectra to CSV");
    sample->add_option("--ensemble", sa.ensemble, "hs | induced | bures")
        ->required()
        ->check(CLI::IsMember({"hs", "induced", "bures"}));
    sample->add_option("--n", sa.n, "matrix dimension")->required()->check(CLI::PositiveNumber);
    sample->add_option("--k", sa.k, "environment dimension (induced only)")
        ->check(CLI::PositiveNumber);
    sample->add_option("--count", sa.count, "number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sa.seed, "RNG seed")->required();
    sample->add_option("--sampler", sa.sampler, "Bures sampler: rejection | mcmc")
        ->check(CLI::IsMember({"rejection", "mcmc"}));
    sample->add_option("--out", sa.out, "output path (default: stdout)");

    ExactArgs ea;
    auto* exact = app.add_subcommand("exact", "exact finite-n values as JSON");
    exact->require_subcommand(1);
    const std::vector<std::string> exact_kinds = {"trace", "entropy", "two-point-moment",
                                                  "entropy-correlation"};
    for (const auto& kind : exact_kinds) {
        auto* sub = exact->add_subcommand(kind);
        sub->add_option("--n", ea.n, "matrix dimension")->required()->check(CLI::PositiveNumber);
        sub->add_option("--k", ea.k, "environment dimension")->check(CLI::PositiveNumber);
        if (kind == "trace") {
            sub->add_option("--ensemble", ea.ensemble, "hs | induced | bures")
                ->required()
                ->check(CLI::IsMember({"hs", "induced", "bures"}));
            sub->add_option("--q", ea.q, "moment order")->required()->check(CLI::PositiveNumber);
            sub->add_option("--method", ea.methods,
                            "closed-form | w-matrix | laguerre-jet (repeat to cross-check)")
                ->check(CLI::IsMember({"closed-form", "w-matrix", "laguerre-jet"}));
        }
        if (kind == "two-point-moment") {
            sub->add_option("--L", ea.L, "power of the first eigenvalue")
                ->check(CLI::PositiveNumber);
            sub->add_option("--M", ea.M, "power of the second eigenvalue")
                ->check(CLI::PositiveNumber);
        }
        sub->callback([&ea, kind] { ea.quantity = kind; });
    }

    DensityArgs da;
    auto* density = app.add_subcommand("density", "tabulate densities as CSV");
    density->require_subcommand(1);
    const std::vector<std::string> density_modes = {"asymptotic-hs", "asymptotic-bures",
                                                    "finite-n", "two-point"};
    for (const auto& mode : density_modes) {
        auto* sub = density->add_subcommand(mode);
        sub->add_option("--points", da.points, "number of interior grid points")
            ->required()
            ->check(CLI::PositiveNumber);
        if (mode == "finite-n" || mode == "two-point") {
            sub->add_option("--n", da.n, "matrix dimension")
                ->required()
                ->check(CLI::PositiveNumber);
            sub->add_option("--k", da.k, "environment dimension")
                ->required()
                ->check(CLI::PositiveNumber);
        }
        if (mode == "two-point")
            sub->add_option("--grid", da.grid, "grid side length (default: --points)")
                ->check(CLI::PositiveNumber);
        sub->callback([&da, mode] { da.mode = mode; });
    }

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--suite", va.suite, "exact | sampling | asymptotic | all")
        ->required()
        ->check(CLI::IsMember({"exact", "sampling", "asymptotic", "all"}));
    verify->add_option("--budget", va.budget_s, "wall-clock budget in seconds")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    try {
        if (app.got_subcommand(sample)) return run_sample(sa);
        if (app.got_subcommand(exact)) return run_exact(ea);
        if (app.got_subcommand(density)) return run_density(da);
        if (app.got_subcommand(verify)) return run_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // unreachable with require_subcommand(1)
}
