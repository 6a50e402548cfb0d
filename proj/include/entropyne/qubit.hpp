// qubit.hpp - closed-form qubit thermodynamics in the Bloch parametrization
//
//   rho = (1 + p.sigma)/2,   H = (h0 + h.sigma)/2
//
// Energy, entropy and ln Z are evaluated from (|p|, p.h, h0, |h|, T) alone.
// The entropy is the von Neumann entropy of rho and ln Z = ln Tr e^{-H/T}:
//   S    = ln 2 - [(1-|p|) ln(1-|p|) + (1+|p|) ln(1+|p|)]/2
//   ln Z = -h0/(2T) + ln(2 cosh(|h|/(2T)))
// Dropping the ln 2 from both leaves Delta unchanged; keeping it makes S and
// ln Z agree with the matrix evaluations in hermitian.hpp.

#pragma once

#include "entropyne/grid.hpp"
#include "entropyne/hermitian.hpp"
#include "entropyne/relative_entropy.hpp"

#include <array>

namespace entropyne::qubit {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);

struct BlochState {
    Vec3 p{0.0, 0.0, 0.0};

    // Throws BlochNormExceeded when |p| > 1 + 1e-12.
    static BlochState make(const Vec3& p);
    double norm() const { return qubit::norm(p); }
};

struct BlochHamiltonian {
    double h0 = 0.0;
    Vec3 h{0.0, 0.0, 0.0};

    double norm() const { return qubit::norm(h); }
};

struct QubitObservables {
    double energy = 0.0;
    double entropy = 0.0;
    double log_partition = 0.0;
};

HermitianMatrix density_from_bloch(const BlochState& s);
HermitianMatrix hamiltonian_from_bloch(const BlochHamiltonian& bh);

// Binary entropy of the eigenvalues (1 +- r)/2 in nats.
double bloch_entropy(double p_norm);
double qubit_log_partition(const BlochHamiltonian& bh, double temperature);

QubitObservables qubit_observables(const BlochState& s, const BlochHamiltonian& bh, double temperature);

// p = -(h/|h|) tanh(|h|/(2T)); p = 0 when |h| = 0.
BlochState equilibrium_bloch(const BlochHamiltonian& bh, double temperature);

// sign * |h| / (2 artanh |p|), sign = +1 or -1.
double equilibrium_temperature(double p_norm, double h_norm, int sign);

// Delta for a state at angle theta from h with magnitude p_norm.
DeltaRecord qubit_delta(double p_norm, double theta, const BlochHamiltonian& bh, double temperature);

// Rows over theta, columns over T. The T range must not contain 0 and must
// have a single sign.
DeltaGrid qubit_delta_grid(double p_norm, const BlochHamiltonian& bh, const GridSpec& theta,
                           const GridSpec& temperature, unsigned threads = 1);

}  // namespace entropyne::qubit
