// gaussian.hpp - single-mode Gaussian states and quadratic Hamiltonians
//
// State kernel (position representation, q' is the row index):
//   <q'|rho|q> = N exp(-a1 q^2 - conj(a1) q'^2 + a2 q q' + b1 q + conj(b1) q')
// Quadratures p = i sqrt(w0/2)(a^dag - a), q = (a + a^dag)/sqrt(2 w0).
// Hamiltonian H = w1 p^2 + w2 p q + conj(w2) q p + w3 q^2.
//
// With D = 2 Re a1 - a2 the first moments are
//   <q> = Re b1 / D,   <p> = (a2 Im b1 - 2 Im(conj(a1) b1)) / D.

#pragma once

#include "entropyne/hermitian.hpp"
#include "entropyne/relative_entropy.hpp"

#include <complex>

namespace entropyne::gaussian {

struct GaussianParams {
    Complex a1{0.5, 0.0};
    double a2 = 0.0;
    Complex b1{0.0, 0.0};

    // Requires finite entries, 2 Re a1 - a2 > 1e-12 and a2 >= 0; throws InvalidGaussian.
    static GaussianParams make(Complex a1, double a2, Complex b1);
    double width() const { return 2.0 * a1.real() - a2; }  // D
};

struct CovarianceState {
    double sigma_pp = 0.5;
    double sigma_qq = 0.5;
    double sigma_pq = 0.0;
    double mean_p = 0.0;
    double mean_q = 0.0;

    double det() const { return sigma_pp * sigma_qq - sigma_pq * sigma_pq; }
};

struct QuadraticHamiltonian {
    double omega0 = 1.0;
    double omega1 = 0.5;
    Complex omega2{0.0, 0.0};
    double omega3 = 0.5;

    // w0 (a^dag a + 1/2) for the given quadrature frequency.
    static QuadraticHamiltonian harmonic_oscillator(double omega0);

    // w0 w1 + w3/w0, the K0 coefficient.
    double k0_coefficient() const { return omega0 * omega1 + omega3 / omega0; }
    // (w3/w0 - w0 w1 - 2i Re w2)/2, the K- coefficient.
    Complex gamma1() const;
    // (w0 w1 + w3/w0)^2 - 4|gamma1|^2 = 4 (w1 w3 - (Re w2)^2)
    double effective_frequency_squared() const;
};

struct Su11Coefficients {
    Complex gamma1;
    double phi = 0.0;
    Complex A_plus;
    Complex A_minus;
    double A_zero = 0.0;
    double xi = 0.0;
    double zeta = 0.0;
    double A_plus_times_minus = 0.0;  // A+ A-, real and finite even when xi overflows
};

double normalization(const GaussianParams& g);
CovarianceState covariance_from_params(const GaussianParams& g);

// mu = 1 / (2 sqrt(det sigma)); UnphysicalCovariance when det sigma < 1/4 - 1e-12.
double purity(const CovarianceState& c);

// Von Neumann entropy of a single-mode Gaussian state with purity mu.
double entropy_gaussian(double mu);

// Tr(Omega sigma) + <zeta> Omega <zeta>^T + Im w2.
double mean_energy(const CovarianceState& c, const QuadraticHamiltonian& h);

// Disentangled form e^{-beta H} = e^{-beta Im w2} e^{A+ K+} e^{ln(A0) K0} e^{A- K-}.
// HyperbolicDomain when the effective frequency squared is not positive.
Su11Coefficients su11_coefficients(const QuadraticHamiltonian& h, double beta);

// Z = zeta^{1/4} e^{-beta Im w2} / (1 - 2 zeta^{1/2} + zeta (1 - xi))^{1/2}.
double partition_function(const QuadraticHamiltonian& h, double beta);
double log_partition_function(const QuadraticHamiltonian& h, double beta);

// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre_p(unsigned n, double x);

// <n| e^{-beta H} |n> = e^{-beta Im w2} A0^{1/4} (A0 (1 - xi))^{n/2} P_n(1/sqrt(1 - xi)).
// DomainError for xi >= 1.
double fock_diagonal_element(const QuadraticHamiltonian& h, double beta, unsigned n);

// Delta for a Gaussian state against the Gibbs state of h at T > 0.
DeltaRecord gaussian_delta(const CovarianceState& c, const QuadraticHamiltonian& h, double temperature);

}  // namespace entropyne::gaussian
