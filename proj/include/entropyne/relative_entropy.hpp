// relative_entropy.hpp - von Neumann and Tsallis relative entropies, the
// small-delta expansion of S_{1+delta}, and the free-energy distance Delta.

#pragma once

#include "entropyne/hermitian.hpp"

namespace entropyne {

// Tolerances used to accept a matrix as a density matrix.
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

// Throws InvalidState unless rho has unit trace and no eigenvalue below
// -kPositivityTolerance.
void require_density(const HermitianMatrix& rho);

// S(rho) = -Tr(rho ln rho) in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const HermitianMatrix& rho);

// Tr(rho (ln rho - ln sigma)); +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy_vn(const HermitianMatrix& rho, const HermitianMatrix& sigma);

// (1 - Tr(rho^q sigma^{1-q})) / (1 - q) for q > 0, q != 1.
// Returns +infinity for q > 1 when supp(rho) is not inside supp(sigma).
double tsallis_relative_entropy(const HermitianMatrix& rho, const HermitianMatrix& sigma, double q);

// Coefficients of S_{1+delta} = order0 + order1 delta + order2 delta^2 + O(delta^3).
struct TsallisSeries {
    double order0 = 0.0;
    double order1 = 0.0;
    double order2 = 0.0;

    double evaluate(double delta) const { return order0 + delta * (order1 + delta * order2); }
};

// Both states need full support (every eigenvalue > 1e-14), else SupportDeficient.
//   order0 = Tr(rho X),  order1 = Tr(rho X^2)/2,
//   order2 = [Tr(rho X^3) + Tr(rho [ln rho, ln sigma] ln sigma)]/6,
// with X = ln rho - ln sigma.
TsallisSeries tsallis_series(const HermitianMatrix& rho, const HermitianMatrix& sigma);

struct DeltaRecord {
    double energy = 0.0;
    double entropy = 0.0;
    double log_partition = 0.0;
    double temperature = 0.0;
    double delta = 0.0;
};

// Delta = E - T S + T ln Z.
DeltaRecord delta_from_scalars(double energy, double entropy, double log_partition,
                               double temperature);

// E = Tr(rho h), S = S(rho), ln Z = ln Tr e^{-h/T}.
DeltaRecord delta_from_operators(const HermitianMatrix& rho, const HermitianMatrix& h,
                                 double temperature);

}  // namespace entropyne
