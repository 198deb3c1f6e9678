#include "cavity/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cavity/cli/csv_writer.hpp"
#include "cavity/errors.hpp"
#include "cavity/model.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/wigner.hpp"

namespace cavity::cli {

namespace {

std::string complex_text(Complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

void provenance_header(CsvWriter& csv, const RunConfig& cfg) {
    csv.comment(std::string(kToolName) + " " + kToolVersion + " " + command_name(cfg.command));
    const SystemParams& p = cfg.params;
    csv.comment("g=" + format_double(p.g) + " delta=" + format_double(p.delta) +
                " epsilon=" + format_double(p.epsilon) + " alpha=" + complex_text(p.alpha) +
                " gt=" + format_double(cfg.gt) + " t=" + format_double(p.t) +
                " n_max=" + std::to_string(p.n_max) + (cfg.n_max_override ? "" : "(auto)") +
                " mode=" + mode_name(cfg.mode));
    if (cfg.sweep) {
        const Sweep& s = *cfg.sweep;
        csv.comment("sweep=" + variable_name(s.variable) + ":" + format_double(s.start) + ":" +
                    format_double(s.stop) + ":" + std::to_string(s.steps) +
                    (cfg.n_max_override ? "" : " n_max=auto per point"));
    }
    if (!cfg.manifolds.empty()) {
        std::string list;
        for (int n : cfg.manifolds) {
            list += (list.empty() ? "" : ",") + std::to_string(n);
        }
        csv.comment("n=" + list);
    }
    std::string filled;
    for (const auto& d : cfg.defaults_filled) {
        filled += (filled.empty() ? "" : " ") + d;
    }
    csv.comment("defaults=" + (filled.empty() ? std::string("none") : filled));
}

// Parameters for one sweep point.
SystemParams sweep_params(const RunConfig& cfg, double value) {
    SystemParams p = cfg.params;
    if (cfg.sweep->variable == Sweep::Variable::Alpha) {
        p.alpha = Complex{value, 0.0};
        if (!cfg.n_max_override) {
            p.n_max = auto_truncation(p.alpha);
        }
    } else {
        p.t = value / p.g;
    }
    try {
        validate(p);
    } catch (const std::exception& e) {
        throw ArgumentError(std::string("sweep point ") + format_double(value) + ": " + e.what());
    }
    return p;
}

std::string manifold_column(const std::string& stem, int n) {
    return stem + "(n=" + std::to_string(n) + ")";
}

std::string sweep_column(const RunConfig& cfg) {
    return cfg.sweep->variable == Sweep::Variable::Alpha ? "alpha" : "gt";
}

}  // namespace

std::string cmd_pnd(const RunConfig& cfg) {
    const JointState state = evolve_closed_form(cfg.params);
    const DensityMatrix rho = reduced_density_matrix(state);
    const int top = static_cast<int>(rho.dim()) - 1;

    std::vector<int> rows;
    if (cfg.sweep) {
        for (double x : cfg.sweep->points()) {
            const int n = static_cast<int>(std::lround(x));
            if (n > top) {
                throw ArgumentError("pnd sweep index " + std::to_string(n) + " exceeds n_max + 1");
            }
            if (rows.empty() || rows.back() != n) {
                rows.push_back(n);
            }
        }
    } else {
        for (int n = 0; n <= top; ++n) {
            rows.push_back(n);
        }
    }

    CsvWriter csv;
    provenance_header(csv, cfg);
    std::vector<std::string> cols{"n"};
    if (cfg.wants_paper()) {
        cols.emplace_back("p_paper");
    }
    if (cfg.wants_exact()) {
        cols.emplace_back("p_exact");
    }
    csv.header(cols);
    for (int n : rows) {
        std::vector<std::string> cells{std::to_string(n)};
        if (cfg.wants_paper()) {
            cells.push_back(format_double(std::norm(coherent_amplitude(n, cfg.params.alpha))));
        }
        if (cfg.wants_exact()) {
            cells.push_back(format_double(photon_number_distribution(rho, n)));
        }
        csv.row(cells);
    }
    return csv.text();
}

std::string cmd_wigner(const RunConfig& cfg) {
    const JointState state = evolve_closed_form(cfg.params);
    const GridWindow window = cfg.grid.value_or(GridWindow{});

    std::vector<std::string> names;
    std::vector<WignerGrid> grids;
    if (cfg.wants_paper()) {
        for (int n : cfg.manifolds) {
            names.push_back(manifold_column("W_paper", n));
            grids.push_back(wigner_grid(manifold_density_matrix(state, n), window));
        }
    }
    if (cfg.wants_exact()) {
        names.emplace_back("W_exact");
        grids.push_back(wigner_grid(reduced_density_matrix(state), window));
    }

    CsvWriter csv;
    provenance_header(csv, cfg);
    csv.comment("window=" + format_double(window.re_min) + ":" + format_double(window.re_max) +
                ":" + format_double(window.im_min) + ":" + format_double(window.im_max) + ":" +
                std::to_string(window.resolution));
    std::vector<std::string> cols{"re_beta", "im_beta"};
    cols.insert(cols.end(), names.begin(), names.end());
    csv.header(cols);
    const int res = window.resolution;
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            std::vector<std::string> cells{format_double(window.re_at(i)),
                                           format_double(window.im_at(j))};
            for (const auto& g : grids) {
                cells.push_back(format_double(g.at(i, j)));
            }
            csv.row(cells);
        }
    }
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const WignerMinimum m = min_wigner(grids[k]);
        double max_abs = 0.0;
        for (double w : grids[k].values) {
            max_abs = std::max(max_abs, std::abs(w));
        }
        csv.comment("summary " + names[k] + " source=" + grids[k].rho_provenance.label() +
                    " w_min=" + format_double(m.w_min) + " beta_at_min=" +
                    complex_text(m.beta_at_min) + " riemann_sum=" +
                    format_double(grids[k].riemann_sum()) + " max_abs=" + format_double(max_abs));
    }
    return csv.text();
}

std::string cmd_qscan(const RunConfig& cfg) {
    CsvWriter csv;
    provenance_header(csv, cfg);
    std::vector<std::string> cols{sweep_column(cfg)};
    if (cfg.wants_paper()) {
        for (int n : cfg.manifolds) {
            cols.push_back(manifold_column("Q_paper", n));
        }
    }
    if (cfg.wants_exact()) {
        cols.emplace_back("Q_exact");
    }
    csv.header(cols);

    int empty_cells = 0;
    for (double x : cfg.sweep->points()) {
        const SystemParams p = sweep_params(cfg, x);
        const JointState state = evolve_closed_form(p);
        std::vector<std::string> cells{format_double(x)};
        if (cfg.wants_paper()) {
            for (int n : cfg.manifolds) {
                try {
                    cells.push_back(format_double(mandel_q_paper(state, n)));
                } catch (const ZeroDenominator&) {
                    cells.emplace_back();
                    ++empty_cells;
                }
            }
        }
        if (cfg.wants_exact()) {
            try {
                cells.push_back(format_double(mandel_q(reduced_density_matrix(state))));
            } catch (const VacuumField&) {
                cells.emplace_back();
                ++empty_cells;
            }
        }
        csv.row(cells);
    }
    csv.comment("empty_cells=" + std::to_string(empty_cells));
    return csv.text();
}

std::string cmd_squeeze(const RunConfig& cfg) {
    CsvWriter csv;
    provenance_header(csv, cfg);
    std::vector<std::string> cols{sweep_column(cfg)};
    if (cfg.wants_paper()) {
        for (int n : cfg.manifolds) {
            cols.push_back(manifold_column("s_x_paper", n));
            cols.push_back(manifold_column("s_p_paper", n));
        }
    }
    if (cfg.wants_exact()) {
        cols.emplace_back("s_x_exact");
        cols.emplace_back("s_p_exact");
    }
    csv.header(cols);

    int truncation_warnings = 0;
    for (double x : cfg.sweep->points()) {
        const SystemParams p = sweep_params(cfg, x);
        const JointState state = evolve_closed_form(p);
        std::vector<std::string> cells{format_double(x)};
        if (cfg.wants_paper()) {
            for (int n : cfg.manifolds) {
                const Squeezing s = squeezing_paper(state, n);
                cells.push_back(format_double(s.s_x));
                cells.push_back(format_double(s.s_p));
            }
        }
        if (cfg.wants_exact()) {
            const Squeezing s = squeezing_parameters(reduced_density_matrix(state));
            truncation_warnings += s.truncation_warning ? 1 : 0;
            cells.push_back(format_double(s.s_x));
            cells.push_back(format_double(s.s_p));
        }
        csv.row(cells);
    }
    csv.comment("truncation_warnings=" + std::to_string(truncation_warnings));
    return csv.text();
}

bool VerifyResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string VerifyResult::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            return c.name;
        }
    }
    return {};
}

VerifyResult cmd_verify(const RunConfig& cfg) {
    VerifyResult out;
    auto check = [&](std::string name, double value, double tol) {
        out.checks.push_back({std::move(name), value, tol, value <= tol});
    };
    const SystemParams& p = cfg.params;
    const JointState closed = evolve_closed_form(p);
    const double dt = reference_step(p);

    // Closed form against the integrated generator it solves.
    const JointState integrated = integrate_schrodinger(p, dt, Generator::ClosedForm);
    double amp_dev = 0.0;
    double conservation = 0.0;
    for (int n = 0; n <= p.n_max; ++n) {
        amp_dev = std::max({amp_dev, std::abs(closed.ca()[n] - integrated.ca()[n]),
                            std::abs(closed.cb()[n] - integrated.cb()[n])});
        conservation = std::max(conservation, std::abs(manifold_probability(closed, n) -
                                                       std::norm(coherent_amplitude(n, p.alpha))));
    }
    check("closed_form_vs_integrator", amp_dev, 1e-8);
    check("manifold_conservation", conservation, 1e-12);
    check("unitarity", std::abs(closed.norm() - 1.0), 1e-10);

    const DensityMatrix exact = reduced_density_matrix(closed);
    const DensityMatrix eq5 = paper_density_matrix(closed);
    const DensityDiagnostics diag = validate_density(exact);
    check("exact_trace", diag.trace_error, 1e-10);
    check("exact_hermiticity", diag.hermiticity_error, 1e-12);
    check("exact_min_diagonal", std::max(0.0, -diag.min_diagonal), 1e-12);

    double diag_identity = 0.0;
    for (std::size_t n = 0; n < exact.dim(); ++n) {
        const double a = n < closed.ca().size() ? std::norm(closed.ca()[n]) : 0.0;
        const double b = n >= 1 ? std::norm(closed.cb()[n - 1]) : 0.0;
        diag_identity = std::max(diag_identity, std::abs(exact(n, n).real() - (a + b)));
    }
    check("exact_diagonal_identity", diag_identity, 1e-12);

    for (const DensityMatrix* rho : {&exact, &eq5}) {
        double sum = 0.0;
        for (std::size_t n = 0; n < rho->dim(); ++n) {
            sum += photon_number_distribution(*rho, static_cast<int>(n));
        }
        check("pnd_normalization_" + rho->provenance().label(), std::abs(sum - 1.0), 1e-10);
    }

    // Series against the displaced-parity oracle inside its trusted radius.
    const double radius = std::min(1.5, std::sqrt(static_cast<double>(p.n_max)) / 2.0);
    const Complex probes[] = {{0.0, 0.0}, {0.3, 0.2}, {-0.5, 0.6}, {0.9, -0.4}, {-1.2, -0.3}, {0.1, 1.4}};
    double wigner_dev = 0.0;
    double wigner_excess = 0.0;
    for (Complex beta : probes) {
        if (std::abs(beta) > radius) {
            beta *= radius / std::abs(beta);
        }
        const double series = wigner_series(exact, beta);
        wigner_dev = std::max(wigner_dev, std::abs(series - wigner_parity_oracle(exact, beta)));
        wigner_excess = std::max(wigner_excess, std::abs(series) - 2.0 / std::numbers::pi);
    }
    check("wigner_series_vs_parity", wigner_dev, 1e-8);
    check("wigner_bound", std::max(0.0, wigner_excess), 1e-9);

    // Coherent baselines at t = 0.
    std::vector<Complex> coherent{0.5, 1.0, 2.0};
    if (std::abs(p.alpha) > 0.0) {
        coherent.push_back(p.alpha);
    }
    double q_base = 0.0;
    double s_base = 0.0;
    for (Complex a : coherent) {
        const DensityMatrix rho0 =
            reduced_density_matrix(evolve_closed_form(make_params(p.g, p.delta, a, 0.0)));
        q_base = std::max(q_base, std::abs(mandel_q(rho0)));
        const Squeezing s = squeezing_parameters(rho0);
        s_base = std::max({s_base, std::abs(s.s_x), std::abs(s.s_p)});
    }
    check("coherent_baseline_q", q_base, 1e-10);
    check("coherent_baseline_squeezing", s_base, 1e-10);

    const FieldMoments moments = field_moments(exact);
    if (moments.n_mean > 1e-15) {
        check("q_floor", std::max(0.0, -1.0 - mandel_q(exact)), 1e-12);
    }
    const Squeezing s = squeezing_parameters(exact);
    check("squeezing_floor", std::max({0.0, -1.0 - s.s_x, -1.0 - s.s_p}), 1e-12);

    // Discrepancies.
    CsvWriter csv;
    provenance_header(csv, cfg);
    csv.header({"section", "row", "col", "paper_re", "paper_im", "exact_re", "exact_im", "abs_diff"});
    for (std::size_t m = 0; m < exact.dim(); ++m) {
        for (std::size_t n = 0; n < exact.dim(); ++n) {
            const double d = std::abs(eq5(m, n) - exact(m, n));
            out.rho_max_difference = std::max(out.rho_max_difference, d);
            csv.row({"rho", std::to_string(m), std::to_string(n), format_double(eq5(m, n).real()),
                     format_double(eq5(m, n).imag()), format_double(exact(m, n).real()),
                     format_double(exact(m, n).imag()), format_double(d)});
        }
    }
    for (std::size_t n = 0; n < exact.dim(); ++n) {
        const double paper = std::norm(coherent_amplitude(static_cast<int>(n), p.alpha));
        const double ex = exact(n, n).real();
        const double d = std::abs(paper - ex);
        out.pnd_max_difference = std::max(out.pnd_max_difference, d);
        csv.row({"pnd", std::to_string(n), std::to_string(n), format_double(paper), "0",
                 format_double(ex), "0", format_double(d)});
    }
    out.exact_coherence_01 = exact(0, 1);
    out.paper_coherence_01 = eq5(0, 1);

    const JointState printed = integrate_schrodinger(p, dt, Generator::PrintedEquationsOfMotion);
    for (int n = 0; n <= p.n_max; ++n) {
        out.printed_eom_max_deviation =
            std::max({out.printed_eom_max_deviation, std::abs(closed.ca()[n] - printed.ca()[n]),
                      std::abs(closed.cb()[n] - printed.cb()[n])});
    }
    out.csv = csv.text();

    std::ostringstream rep;
    rep << kToolName << ' ' << kToolVersion << " verify\n";
    rep << "params: g=" << format_double(p.g) << " delta=" << format_double(p.delta)
        << " alpha=" << complex_text(p.alpha) << " gt=" << format_double(cfg.gt)
        << " n_max=" << p.n_max << " dt=" << format_double(dt) << '\n';
    for (const auto& c : out.checks) {
        rep << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
            << " tol=" << format_shortest(c.tolerance) << '\n';
    }
    rep << "discrepancy rho_eq5_vs_exact max_abs=" << format_double(out.rho_max_difference) << '\n';
    rep << "discrepancy pnd_eq6_vs_exact max_abs=" << format_double(out.pnd_max_difference) << '\n';
    rep << "discrepancy coherence_01 exact_abs=" << format_double(std::abs(out.exact_coherence_01))
        << " paper_abs=" << format_double(std::abs(out.paper_coherence_01)) << '\n';
    rep << "discrepancy printed_eom_vs_closed_form max_abs="
        << format_double(out.printed_eom_max_deviation) << '\n';
    if (out.passed()) {
        rep << "result: PASS\n";
    } else {
        rep << "result: FAIL (first failure: " << out.first_failure() << ")\n";
    }
    out.report = rep.str();
    return out;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (!cfg.defaults_filled.empty()) {
            err << "defaults:";
            for (const auto& d : cfg.defaults_filled) {
                err << ' ' << d;
            }
            err << '\n';
        }
        std::string csv;
        int status = 0;
        switch (cfg.command) {
        case Command::Pnd: csv = cmd_pnd(cfg); break;
        case Command::Wigner: csv = cmd_wigner(cfg); break;
        case Command::Qscan: csv = cmd_qscan(cfg); break;
        case Command::Squeeze: csv = cmd_squeeze(cfg); break;
        case Command::Verify: {
            const VerifyResult result = cmd_verify(cfg);
            out << result.report;
            csv = result.csv;
            status = result.passed() ? 0 : 1;
            break;
        }
        }
        if (cfg.output_path.empty() || cfg.output_path == "-") {
            out << csv;
        } else {
            write_atomically(cfg.output_path, csv, cfg.force);
        }
        return status;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cavity field of a driven two-level atom: photon statistics, Wigner function, "
                 "squeezing"};
    app.name(kToolName);
    app.set_version_flag("--version", kToolVersion);

    RawFlags raw;
    std::string alpha, n_list, sweep, window, mode;
    double g = 0.0, delta = 0.0, gt = 0.0;
    int n_max = 0;
    app.add_option("command", raw.command, "pnd | wigner | qscan | squeeze | verify")->required();
    auto* o_alpha = app.add_option("--alpha", alpha, "coherent amplitude R[,I]");
    auto* o_g = app.add_option("--g", g, "atom-cavity coupling (default 1)");
    auto* o_delta = app.add_option("--delta", delta, "cavity detuning (default 0)");
    auto* o_gt = app.add_option("--gt", gt, "scaled interaction time g*t (default 1)");
    auto* o_n = app.add_option("--n", n_list, "comma-separated manifold indices");
    auto* o_nmax = app.add_option("--nmax", n_max, "Fock truncation (default automatic)");
    auto* o_sweep = app.add_option("--sweep", sweep, "VAR:START:STOP:STEPS, VAR in alpha|t|n");
    auto* o_window = app.add_option("--window", window, "RMIN:RMAX:IMIN:IMAX:RES");
    auto* o_mode = app.add_option("--mode", mode, "paper | exact | both (default both)");
    app.add_option("--out", raw.out, "output CSV path (default stdout)");
    app.add_flag("--force", raw.force, "overwrite an existing output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    if (o_alpha->count()) raw.alpha = alpha;
    if (o_g->count()) raw.g = g;
    if (o_delta->count()) raw.delta = delta;
    if (o_gt->count()) raw.gt = gt;
    if (o_n->count()) raw.n = n_list;
    if (o_nmax->count()) raw.n_max = n_max;
    if (o_sweep->count()) raw.sweep = sweep;
    if (o_window->count()) raw.window = window;
    if (o_mode->count()) raw.mode = mode;

    RunConfig cfg;
    try {
        cfg = resolve(raw);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return execute(cfg, out, err);
}

}  // namespace cavity::cli
