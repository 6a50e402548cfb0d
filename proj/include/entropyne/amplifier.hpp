// amplifier.hpp - degenerate parametric amplifier against thermal light
//
//   H = w0 (a^dag a + 1/2) - k (a^dag^2 e^{-i w t} + a^2 e^{i w t})
//
// evaluated at a frozen time t, compared with the thermal light state of mean
// photon number nbar.

#pragma once

#include "entropyne/gaussian.hpp"
#include "entropyne/grid.hpp"

#include <utility>

namespace entropyne::amplifier {

struct AmplifierConfig {
    double omega0 = 1.0;   // signal frequency
    double omega = 3.0;    // pump frequency
    double k = 0.1;        // interaction constant
    double t = 0.0;        // frozen time
    double omega_t = 1.0;  // thermal-light mode frequency (nbar <-> T' only)

    void validate() const;
};

struct ThermalLight {
    double nbar = 0.0;
    double omega_t = 1.0;
};

// w1 = 1/2 + (k/w0) cos wt,  w2 = k sin wt,  w3 = w0^2/2 - k w0 cos wt.
gaussian::QuadraticHamiltonian amplifier_hamiltonian(const AmplifierConfig& cfg);

// sigma = ((1 + 2 nbar)/2) diag(w0, 1/w0), zero means.
gaussian::CovarianceState thermal_light_covariance(const ThermalLight& tl, double omega0);

// nbar ln((1 + nbar)/nbar) + ln(1 + nbar)
double thermal_light_entropy(double nbar);

// 1 / (e^{w_t/T'} - 1)
double nbar_from_temperature(double t_prime, double omega_t);

DeltaRecord amplifier_delta(const AmplifierConfig& cfg, double nbar, double temperature);

// Rows over nbar, columns over T. Cells whose partition function diverges are
// left empty; DivergentPartition is thrown only when every cell diverges.
DeltaGrid amplifier_delta_surface(const AmplifierConfig& cfg, const GridSpec& temperature,
                                  const GridSpec& nbar, unsigned threads = 1);

// Golden-section minimizer of T -> Delta(T, nbar) on (lo, hi), to a relative
// width of 1e-6. BracketError when the minimum sits on a bracket end.
double delta_argmin_temperature(const AmplifierConfig& cfg, double nbar, std::pair<double, double> bracket);

}  // namespace entropyne::amplifier
