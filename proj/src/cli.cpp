#include "entropyne/cli.hpp"

#include "entropyne/amplifier.hpp"
#include "entropyne/errors.hpp"
#include "entropyne/fock_oracle.hpp"
#include "entropyne/gaussian.hpp"
#include "entropyne/grid.hpp"
#include "entropyne/matrix_io.hpp"
#include "entropyne/qubit.hpp"
#include "entropyne/relative_entropy.hpp"
#include "entropyne/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace entropyne {

namespace {

using Json = nlohmann::ordered_json;

struct CommonOptions {
    std::string format;
    std::string output;
    int threads = 0;
};

Json base_metadata(const std::string& subcommand, Json parameters, Json seed = nullptr) {
    Json m;
    m["tool"] = "entropyne";
    m["version"] = ENTROPYNE_VERSION;
    m["subcommand"] = subcommand;
    m["seed"] = std::move(seed);
    m["parameters"] = std::move(parameters);
    return m;
}

// Writes to --output when given, otherwise to the caller's stream.
void emit(const CommonOptions& opts, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
    if (opts.output.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(opts.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::UsageError, "cannot open output file '" + opts.output + "'");
    writer(file);
    if (!file) throw Error(ErrorKind::UsageError, "failed writing '" + opts.output + "'");
}

// Scalar reports: one "key value" line per entry, or the JSON object.
void write_report(const Json& report, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << report.dump(2) << '\n';
        return;
    }
    std::function<void(const std::string&, const Json&)> walk = [&](const std::string& prefix, const Json& j) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it->is_object()) {
                walk(key, *it);
            } else if (it->is_number_float()) {
                os << key << ' ' << format_double(it->get<double>()) << '\n';
            } else if (it->is_string()) {
                os << key << ' ' << it->get<std::string>() << '\n';
            } else {
                os << key << ' ' << it->dump() << '\n';
            }
        }
    };
    walk("", report);
}

// JSON cannot hold inf; such values are written as the string "inf".
Json number_or_text(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool grid) {
    opts.format = grid ? "csv" : "text";
    cmd->add_option("--format", opts.format, "Output format")
        ->check(grid ? CLI::IsMember({"csv", "json"}) : CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", opts.output, "Write to this file instead of stdout");
}

struct QubitGridArgs {
    CommonOptions common;
    double p_norm = 0.0;
    double h_norm = 0.0;
    double h0 = 0.0;
    std::string theta = "0:3.141592653589793:181";
    std::string temp;
};

int cmd_qubit_grid(const QubitGridArgs& a, std::ostream& out) {
    const GridSpec theta = GridSpec::parse(a.theta);
    const GridSpec temp = GridSpec::parse(a.temp);
    if (!(a.p_norm >= 0.0 && a.p_norm <= 1.0)) throw Error(ErrorKind::UsageError, "--p-norm must lie in [0, 1]");
    if (!(a.h_norm >= 0.0)) throw Error(ErrorKind::UsageError, "--h-norm must be nonnegative");
    const qubit::BlochHamiltonian bh{a.h0, {0.0, 0.0, a.h_norm}};
    DeltaGrid grid = qubit::qubit_delta_grid(a.p_norm, bh, theta, temp, resolve_threads(a.common.threads));
    grid.metadata = base_metadata("qubit-grid", {{"p_norm", a.p_norm},
                                                 {"h_norm", a.h_norm},
                                                 {"h0", a.h0},
                                                 {"theta", theta.to_string()},
                                                 {"temp", temp.to_string()}});
    emit(a.common, out, [&](std::ostream& os) {
        if (a.common.format == "json") os << grid_to_json(grid).dump() << '\n';
        else write_csv(grid, os);
    });
    return kExitOk;
}

struct AmplifierGridArgs {
    CommonOptions common;
    amplifier::AmplifierConfig cfg;
    std::string temp = "0.2:10:100";
    std::string nbar = "0.2:10:100";
};

int cmd_amplifier_grid(const AmplifierGridArgs& a, std::ostream& out) {
    const GridSpec temp = GridSpec::parse(a.temp);
    const GridSpec nbar = GridSpec::parse(a.nbar);
    DeltaGrid grid = amplifier::amplifier_delta_surface(a.cfg, temp, nbar, resolve_threads(a.common.threads));
    grid.metadata = base_metadata("amplifier-grid", {{"omega0", a.cfg.omega0},
                                                     {"omega", a.cfg.omega},
                                                     {"k", a.cfg.k},
                                                     {"t", a.cfg.t},
                                                     {"omega_t", a.cfg.omega_t},
                                                     {"temp", temp.to_string()},
                                                     {"nbar", nbar.to_string()}});
    emit(a.common, out, [&](std::ostream& os) {
        if (a.common.format == "json") os << grid_to_json(grid, true).dump() << '\n';
        else write_csv(grid, os, CsvLayout{true, true});
    });
    return kExitOk;
}

struct GaussianZArgs {
    CommonOptions common;
    double omega0 = 1.0;
    double omega1 = 0.5;
    double omega2_re = 0.0;
    double omega2_im = 0.0;
    double omega3 = 0.5;
    double beta = 1.0;
    bool fock = false;
    std::size_t levels = fock::kDefaultLevels;
};

int cmd_gaussian_z(const GaussianZArgs& a, std::ostream& out) {
    gaussian::QuadraticHamiltonian h;
    h.omega0 = a.omega0;
    h.omega1 = a.omega1;
    h.omega2 = Complex(a.omega2_re, a.omega2_im);
    h.omega3 = a.omega3;
    const auto su = gaussian::su11_coefficients(h, a.beta);
    const double log_z = gaussian::log_partition_function(h, a.beta);

    Json report;
    report["metadata"] = base_metadata("gaussian-z", {{"omega0", a.omega0},
                                                      {"omega1", a.omega1},
                                                      {"omega2_re", a.omega2_re},
                                                      {"omega2_im", a.omega2_im},
                                                      {"omega3", a.omega3},
                                                      {"beta", a.beta},
                                                      {"fock", a.fock},
                                                      {"levels", a.levels}});
    report["effective_frequency"] = std::sqrt(h.effective_frequency_squared());
    report["phi"] = su.phi;
    report["A_zero"] = su.A_zero;
    report["xi"] = number_or_text(su.xi);
    report["zeta"] = su.zeta;
    report["log_partition"] = log_z;
    report["partition"] = number_or_text(std::exp(log_z));
    if (a.fock) {
        const auto tr = fock::truncated_partition(h, a.beta, {a.levels, a.omega0});
        report["fock"] = {{"partition", tr.value},
                          {"levels", tr.levels},
                          {"relative_change", tr.relative_change},
                          {"relative_difference", std::abs(std::expm1(tr.log_value - log_z))}};
    }
    emit(a.common, out, [&](std::ostream& os) { write_report(report, a.common.format, os); });
    return kExitOk;
}

struct TsallisArgs {
    CommonOptions common;
    std::string rho_file;
    std::string sigma_file;
    std::optional<double> q;
    std::vector<double> deltas;
};

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

int cmd_tsallis(const TsallisArgs& a, std::ostream& out) {
    if (a.q.has_value() == !a.deltas.empty()) {
        throw Error(ErrorKind::UsageError, "give exactly one of --q or --delta-series");
    }
    const HermitianMatrix rho(read_matrix_file(a.rho_file), 1e-10);
    const HermitianMatrix sigma(read_matrix_file(a.sigma_file), 1e-10);
    if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "rho and sigma dimensions differ");

    Json params{{"rho_file", a.rho_file}, {"sigma_file", a.sigma_file}};
    if (a.q) params["q"] = *a.q;
    else params["delta_series"] = a.deltas;
    Json report;
    report["metadata"] = base_metadata("tsallis", params);

    if (a.q) {
        const double v = tsallis_relative_entropy(rho, sigma, *a.q);
        report["value"] = number_or_text(v);
        if (std::isinf(v)) report["note"] = "support of rho is not contained in support of sigma";
    } else {
        try {
            const TsallisSeries s = tsallis_series(rho, sigma);
            report["order0"] = s.order0;
            report["order1"] = s.order1;
            report["order2"] = s.order2;
            Json points = Json::object();
            std::vector<double> xs, rs;
            for (std::size_t i = 0; i < a.deltas.size(); ++i) {
                const double d = a.deltas[i];
                if (!(d > 0.0)) throw Error(ErrorKind::UsageError, "series deltas must be positive");
                const double direct = tsallis_relative_entropy(rho, sigma, 1.0 + d);
                const double series = s.evaluate(d);
                const double residual = std::abs(direct - series);
                points[std::to_string(i)] = {{"delta", d}, {"direct", direct}, {"series", series}, {"residual", residual}};
                if (residual > 0.0) {
                    xs.push_back(d);
                    rs.push_back(residual);
                }
            }
            report["points"] = std::move(points);
            if (xs.size() >= 2) report["residual_slope"] = loglog_slope(xs, rs);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SupportDeficient) throw;
            report["order0"] = "inf";
            report["note"] = std::string("series needs full-rank rho and sigma: ") + e.what();
        }
    }
    emit(a.common, out, [&](std::ostream& os) { write_report(report, a.common.format, os); });
    return kExitOk;
}

struct VerifyArgs {
    CommonOptions common;
    VerifyOptions options;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const VerifyReport report = run_verification(a.options);
    Json j = report.to_json();
    j["metadata"] = base_metadata("verify", {{"quick", a.options.quick}}, a.options.seed);
    emit(a.common, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UsageError:
        case ErrorKind::ParseError:
            return kExitUsage;
        default:
            return kExitDomain;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermodynamic distance between quantum states and Gibbs states", "entropyne"};
    app.set_version_flag("--version", std::string(ENTROPYNE_VERSION));
    app.require_subcommand(1);

    QubitGridArgs qg;
    auto* qubit_cmd = app.add_subcommand("qubit-grid", "Delta over (theta, T) for a qubit");
    add_common(qubit_cmd, qg.common, true);
    qubit_cmd->add_option("--p-norm", qg.p_norm, "Bloch vector length")->required();
    qubit_cmd->add_option("--h-norm", qg.h_norm, "Field strength |h|")->required();
    qubit_cmd->add_option("--h0", qg.h0, "Energy offset")->capture_default_str();
    qubit_cmd->add_option("--theta", qg.theta, "Angle grid start:stop:count")->capture_default_str();
    qubit_cmd->add_option("--temp", qg.temp, "Temperature grid start:stop:count")->required();
    qubit_cmd->add_option("--threads", qg.common.threads, "Worker threads (0: ENTROPYNE_THREADS or 1)");

    AmplifierGridArgs ag;
    auto* amp_cmd = app.add_subcommand("amplifier-grid", "Delta over (T, nbar) for thermal light and the amplifier");
    add_common(amp_cmd, ag.common, true);
    amp_cmd->add_option("--omega0", ag.cfg.omega0, "Signal frequency")->capture_default_str();
    amp_cmd->add_option("--omega", ag.cfg.omega, "Pump frequency")->capture_default_str();
    amp_cmd->add_option("--k", ag.cfg.k, "Interaction constant")->capture_default_str();
    amp_cmd->add_option("--t", ag.cfg.t, "Frozen time")->capture_default_str();
    amp_cmd->add_option("--omega-t", ag.cfg.omega_t, "Thermal-light mode frequency")->capture_default_str();
    amp_cmd->add_option("--temp", ag.temp, "Temperature grid start:stop:count")->capture_default_str();
    amp_cmd->add_option("--nbar", ag.nbar, "Mean photon number grid start:stop:count")->capture_default_str();
    amp_cmd->add_option("--threads", ag.common.threads, "Worker threads (0: ENTROPYNE_THREADS or 1)");

    GaussianZArgs gz;
    auto* z_cmd = app.add_subcommand("gaussian-z", "Closed-form partition function of a quadratic Hamiltonian");
    add_common(z_cmd, gz.common, false);
    z_cmd->add_option("--omega0", gz.omega0, "Quadrature frequency")->capture_default_str();
    z_cmd->add_option("--omega1", gz.omega1, "p^2 coefficient")->capture_default_str();
    z_cmd->add_option("--omega2-re", gz.omega2_re, "Re of the pq coefficient")->capture_default_str();
    z_cmd->add_option("--omega2-im", gz.omega2_im, "Im of the pq coefficient")->capture_default_str();
    z_cmd->add_option("--omega3", gz.omega3, "q^2 coefficient")->capture_default_str();
    z_cmd->add_option("--beta", gz.beta, "Inverse temperature")->capture_default_str();
    z_cmd->add_flag("--fock", gz.fock, "Also evaluate the truncated Fock trace");
    z_cmd->add_option("--levels", gz.levels, "Initial Fock truncation")->capture_default_str();

    TsallisArgs ts;
    auto* ts_cmd = app.add_subcommand("tsallis", "Tsallis relative entropy between two density matrices");
    add_common(ts_cmd, ts.common, false);
    ts_cmd->add_option("--rho-file", ts.rho_file)->required()->check(CLI::ExistingFile);
    ts_cmd->add_option("--sigma-file", ts.sigma_file)->required()->check(CLI::ExistingFile);
    auto* q_opt = ts_cmd->add_option("--q", ts.q, "Entropic index");
    auto* d_opt = ts_cmd->add_option("--delta-series", ts.deltas, "Comma-separated deltas for the series check")
                      ->delimiter(',');
    q_opt->excludes(d_opt);

    VerifyArgs vf;
    auto* v_cmd = app.add_subcommand("verify", "Run the oracle verification suite");
    vf.common.format = "json";
    v_cmd->add_option("-o,--output", vf.common.output, "Write to this file instead of stdout");
    v_cmd->add_option("--seed", vf.options.seed, "Base seed for sampled cases")->capture_default_str();
    v_cmd->add_flag("--quick", vf.options.quick, "Subsampled suites");
    v_cmd->add_flag("--inject-fault", vf.options.inject_fault)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (qubit_cmd->parsed()) return cmd_qubit_grid(qg, out);
        if (amp_cmd->parsed()) return cmd_amplifier_grid(ag, out);
        if (z_cmd->parsed()) return cmd_gaussian_z(gz, out);
        if (ts_cmd->parsed()) return cmd_tsallis(ts, out);
        if (v_cmd->parsed()) return cmd_verify(vf, out);
    } catch (const Error& e) {
        err << "entropyne: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "entropyne: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace entropyne
