#include "entropyne/gaussian.hpp"

#include "entropyne/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace entropyne::gaussian {

namespace {

constexpr double kWidthMargin = 1e-12;
constexpr double kUncertaintySlack = 1e-12;
constexpr double kDenominatorFloor = 1e-14;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

GaussianParams GaussianParams::make(Complex a1, double a2, Complex b1) {
    if (!finite(a1) || !std::isfinite(a2) || !finite(b1)) {
        throw Error(ErrorKind::InvalidGaussian, "parameters must be finite");
    }
    if (!(2.0 * a1.real() - a2 > kWidthMargin)) {
        throw Error(ErrorKind::InvalidGaussian, "need 2 Re(a1) > a2");
    }
    if (a2 < 0.0) {
        // det sigma < 1/4 for a2 < 0: purity above one.
        throw Error(ErrorKind::InvalidGaussian, "a2 < 0 gives an unphysical state");
    }
    return GaussianParams{a1, a2, b1};
}

QuadraticHamiltonian QuadraticHamiltonian::harmonic_oscillator(double omega0) {
    return QuadraticHamiltonian{omega0, 0.5, Complex(0.0, 0.0), 0.5 * omega0 * omega0};
}

Complex QuadraticHamiltonian::gamma1() const {
    return 0.5 * Complex(omega3 / omega0 - omega0 * omega1, -2.0 * omega2.real());
}

double QuadraticHamiltonian::effective_frequency_squared() const {
    const double c = k0_coefficient();
    return c * c - 4.0 * std::norm(gamma1());
}

double normalization(const GaussianParams& g) {
    GaussianParams::make(g.a1, g.a2, g.b1);
    const double d = g.width();
    const double re_b = 2.0 * g.b1.real();  // b1 + conj(b1)
    return std::sqrt(d / std::numbers::pi) * std::exp(-re_b * re_b / (4.0 * d));
}

CovarianceState covariance_from_params(const GaussianParams& g) {
    GaussianParams::make(g.a1, g.a2, g.b1);
    const double d = g.width();
    CovarianceState c;
    c.sigma_pp = (4.0 * std::norm(g.a1) - g.a2 * g.a2) / (2.0 * d);
    c.sigma_qq = 1.0 / (2.0 * d);
    c.sigma_pq = g.a1.imag() / d;
    c.mean_q = g.b1.real() / d;
    c.mean_p = (g.a2 * g.b1.imag() - 2.0 * (std::conj(g.a1) * g.b1).imag()) / d;
    return c;
}

double purity(const CovarianceState& c) {
    const double det = c.det();
    if (!(c.sigma_pp > 0.0 && c.sigma_qq > 0.0) || !(det >= 0.25 - kUncertaintySlack)) {
        std::ostringstream os;
        os << "det sigma = " << det << " violates the uncertainty bound";
        throw Error(ErrorKind::UnphysicalCovariance, os.str());
    }
    return std::min(1.0, 1.0 / (2.0 * std::sqrt(det)));
}

double entropy_gaussian(double mu) {
    if (!(mu > 0.0 && mu <= 1.0)) {
        throw Error(ErrorKind::DomainError, "purity must lie in (0, 1]");
    }
    if (mu == 1.0) return 0.0;
    return (1.0 - mu) / (2.0 * mu) * std::log((1.0 + mu) / (1.0 - mu)) - std::log(2.0 * mu / (1.0 + mu));
}

double mean_energy(const CovarianceState& c, const QuadraticHamiltonian& h) {
    const double re2 = h.omega2.real();
    const double fluct = h.omega1 * c.sigma_pp + h.omega3 * c.sigma_qq + 2.0 * re2 * c.sigma_pq;
    const double mean = h.omega1 * c.mean_p * c.mean_p + h.omega3 * c.mean_q * c.mean_q +
                        2.0 * re2 * c.mean_p * c.mean_q;
    return fluct + mean + h.omega2.imag();
}

Su11Coefficients su11_coefficients(const QuadraticHamiltonian& h, double beta) {
    if (!(beta > 0.0)) throw Error(ErrorKind::NegativeBeta, "beta must be positive");
    if (!(h.omega0 > 0.0)) throw Error(ErrorKind::DomainError, "omega0 must be positive");
    const double omega_sq = h.effective_frequency_squared();
    if (!(omega_sq > 0.0)) {
        std::ostringstream os;
        os << "effective frequency squared " << omega_sq << " is not positive";
        throw Error(ErrorKind::HyperbolicDomain, os.str());
    }
    const double omega_eff = std::sqrt(omega_sq);
    const double c = h.k0_coefficient();
    const Complex gamma = h.gamma1();

    Su11Coefficients s;
    s.gamma1 = gamma;
    s.phi = beta * omega_eff;

    // cosh(phi) + r sinh(phi) = e^{phi} [(1 + r) + e^{-2 phi}(1 - r)] / 2
    const double r = c / omega_eff;
    const double e2 = std::exp(-2.0 * s.phi);
    const double scaled = (1.0 + r) + e2 * (1.0 - r);
    const double sinh_over_denom = (1.0 - e2) / scaled;  // sinh(phi) / (cosh(phi) + r sinh(phi))

    s.A_zero = 4.0 * e2 / (scaled * scaled);
    s.A_plus = (-2.0 * std::conj(gamma) / omega_eff) * sinh_over_denom;
    s.A_minus = (-2.0 * gamma / omega_eff) * sinh_over_denom;
    s.A_plus_times_minus = 4.0 * std::norm(gamma) / omega_sq * sinh_over_denom * sinh_over_denom;
    const double sh = std::sinh(s.phi);
    s.xi = 4.0 * std::norm(gamma) * sh * sh / omega_sq;
    s.zeta = s.A_zero;
    return s;
}

double log_partition_function(const QuadraticHamiltonian& h, double beta) {
    const Su11Coefficients s = su11_coefficients(h, beta);
    if (!(h.k0_coefficient() > 0.0)) {
        throw Error(ErrorKind::DivergentPartition, "Hamiltonian unbounded below");
    }
    const double root = std::sqrt(s.zeta);
    if (s.xi < 1.0 && !(root * (1.0 + std::sqrt(s.xi)) < 1.0)) {
        throw Error(ErrorKind::DivergentPartition, "Legendre generating series does not converge");
    }
    const double one_minus_root = 1.0 - root;
    const double denom = one_minus_root * one_minus_root - s.A_plus_times_minus;
    if (!(denom > kDenominatorFloor)) {
        std::ostringstream os;
        os << "partition denominator " << denom << " not positive";
        throw Error(ErrorKind::DivergentPartition, os.str());
    }
    return 0.25 * std::log(s.zeta) - beta * h.omega2.imag() - 0.5 * std::log(denom);
}

double partition_function(const QuadraticHamiltonian& h, double beta) {
    return std::exp(log_partition_function(h, beta));
}

double legendre_p(unsigned n, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double fock_diagonal_element(const QuadraticHamiltonian& h, double beta, unsigned n) {
    const Su11Coefficients s = su11_coefficients(h, beta);
    if (!(s.xi < 1.0)) {
        throw Error(ErrorKind::DomainError, "xi >= 1 puts the Legendre argument off the real axis");
    }
    // Q_n = t^n P_n(x) with t = sqrt(A0 (1 - xi)), x = 1/sqrt(1 - xi), so x t = sqrt(A0).
    // The same recurrence on Q_n avoids forming P_n(x) and t^n separately.
    const double xt = std::sqrt(s.A_zero);
    const double t2 = s.A_zero - s.A_plus_times_minus;
    double prev = 1.0, cur = xt;
    if (n == 0) cur = 1.0;
    for (unsigned k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * xt * cur - k * t2 * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return std::exp(-beta * h.omega2.imag()) * std::pow(s.A_zero, 0.25) * cur;
}

DeltaRecord gaussian_delta(const CovarianceState& c, const QuadraticHamiltonian& h, double temperature) {
    require_nonzero_temperature(temperature);
    if (temperature < 0.0) {
        throw Error(ErrorKind::NegativeBeta, "Gaussian partition function diverges for T < 0");
    }
    const double energy = mean_energy(c, h);
    const double entropy = entropy_gaussian(purity(c));
    const double lnz = log_partition_function(h, 1.0 / temperature);
    return delta_from_scalars(energy, entropy, lnz, temperature);
}

}  // namespace entropyne::gaussian
