#include "entropyne/amplifier.hpp"

#include "entropyne/errors.hpp"

#include <cmath>

namespace entropyne::amplifier {

void AmplifierConfig::validate() const {
    if (!(omega0 > 0.0) || !(omega_t > 0.0)) {
        throw Error(ErrorKind::DomainError, "omega0 and omega_t must be positive");
    }
    if (!(k >= 0.0)) throw Error(ErrorKind::DomainError, "k must be nonnegative");
    if (!std::isfinite(omega) || !std::isfinite(t)) throw Error(ErrorKind::DomainError, "omega and t must be finite");
}

gaussian::QuadraticHamiltonian amplifier_hamiltonian(const AmplifierConfig& cfg) {
    cfg.validate();
    const double c = std::cos(cfg.omega * cfg.t);
    const double s = std::sin(cfg.omega * cfg.t);
    gaussian::QuadraticHamiltonian h;
    h.omega0 = cfg.omega0;
    h.omega1 = 0.5 + cfg.k / cfg.omega0 * c;
    h.omega2 = Complex(cfg.k * s, 0.0);
    h.omega3 = 0.5 * cfg.omega0 * cfg.omega0 - cfg.k * cfg.omega0 * c;
    return h;
}

gaussian::CovarianceState thermal_light_covariance(const ThermalLight& tl, double omega0) {
    if (!(tl.nbar >= 0.0)) throw Error(ErrorKind::DomainError, "nbar must be nonnegative");
    if (!(omega0 > 0.0)) throw Error(ErrorKind::DomainError, "omega0 must be positive");
    const double scale = 0.5 * (1.0 + 2.0 * tl.nbar);
    gaussian::CovarianceState c;
    c.sigma_pp = scale * omega0;
    c.sigma_qq = scale / omega0;
    c.sigma_pq = 0.0;
    c.mean_p = 0.0;
    c.mean_q = 0.0;
    return c;
}

double thermal_light_entropy(double nbar) {
    if (!(nbar >= 0.0)) throw Error(ErrorKind::DomainError, "nbar must be nonnegative");
    if (nbar == 0.0) return 0.0;
    return nbar * std::log((1.0 + nbar) / nbar) + std::log1p(nbar);
}

double nbar_from_temperature(double t_prime, double omega_t) {
    if (!(t_prime > 0.0)) throw Error(ErrorKind::DomainError, "T' must be positive");
    if (!(omega_t > 0.0)) throw Error(ErrorKind::DomainError, "omega_t must be positive");
    return 1.0 / std::expm1(omega_t / t_prime);
}

DeltaRecord amplifier_delta(const AmplifierConfig& cfg, double nbar, double temperature) {
    const auto h = amplifier_hamiltonian(cfg);
    const auto c = thermal_light_covariance(ThermalLight{nbar, cfg.omega_t}, cfg.omega0);
    return gaussian::gaussian_delta(c, h, temperature);
}

DeltaGrid amplifier_delta_surface(const AmplifierConfig& cfg, const GridSpec& temperature,
                                  const GridSpec& nbar, unsigned threads) {
    cfg.validate();
    DeltaGrid g;
    g.axis1_name = "nbar";
    g.axis2_name = "T";
    g.axis1_values = nbar.values();
    g.axis2_values = temperature.values();
    for (double t : g.axis2_values) {
        if (!(t > 0.0)) throw Error(ErrorKind::UsageError, "temperature range must be positive");
    }
    for (double n : g.axis1_values) {
        if (!(n >= 0.0)) throw Error(ErrorKind::UsageError, "nbar range must be nonnegative");
    }
    g.cells.assign(g.axis1_values.size() * g.axis2_values.size(), std::nullopt);
    parallel_for(g.cells.size(), threads, [&](std::size_t k) {
        const std::size_t i1 = k / g.axis2_values.size();
        const std::size_t i2 = k % g.axis2_values.size();
        try {
            g.cells[k] = amplifier_delta(cfg, g.axis1_values[i1], g.axis2_values[i2]).delta;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DivergentPartition && e.kind() != ErrorKind::HyperbolicDomain) throw;
        }
    });
    if (!g.cells.empty() && g.flagged_count() == g.cells.size()) {
        throw Error(ErrorKind::DivergentPartition, "partition function diverges on every cell");
    }
    return g;
}

double delta_argmin_temperature(const AmplifierConfig& cfg, double nbar, std::pair<double, double> bracket) {
    auto [lo, hi] = bracket;
    if (!(lo > 0.0 && hi > lo)) throw Error(ErrorKind::BracketError, "bracket must satisfy 0 < lo < hi");
    auto f = [&](double t) { return amplifier_delta(cfg, nbar, t).delta; };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    const double f_lo = f(lo), f_hi = f(hi);
    while (b - a > 1e-6 * 0.5 * (a + b)) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double t_star = 0.5 * (a + b);
    const double f_star = f(t_star);
    // A minimum pressed against either end means Delta is monotone on the bracket.
    const double edge = 1e-6 * t_star;
    if (t_star - lo <= edge || hi - t_star <= edge || f_star > f_lo || f_star > f_hi) {
        throw Error(ErrorKind::BracketError, "Delta has no interior minimum on the bracket");
    }
    return t_star;
}

}  // namespace entropyne::amplifier
