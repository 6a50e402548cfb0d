// fock_oracle.hpp - brute-force references for the Gaussian closed forms
//
// Quadratic Hamiltonians are represented exactly on the first n_max Fock
// levels (the projection P H P, built from ladder matrices two levels larger
// and cropped). Traces and matrix elements of e^{-beta H} then come from a
// dense eigendecomposition. Kernel moments are plain quadratures of the
// position-space kernel and its analytic derivatives.

#pragma once

#include "entropyne/gaussian.hpp"
#include "entropyne/hermitian.hpp"
#include "entropyne/relative_entropy.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace entropyne::fock {

struct FockTruncation {
    std::size_t n_max = 200;  // basis size
    double omega0 = 1.0;
};

inline constexpr std::size_t kDefaultLevels = 200;
inline constexpr std::size_t kMaxLevels = 500;
inline constexpr std::size_t kStabilityStep = 50;
inline constexpr double kStabilityTolerance = 1e-10;

struct LadderMatrices {
    ComplexMatrix a;     // <n-1|a|n> = sqrt(n)
    ComplexMatrix adag;
    ComplexMatrix p;     // i sqrt(w0/2) (a^dag - a)
    ComplexMatrix q;     // (a + a^dag) / sqrt(2 w0)
};

LadderMatrices ladder_matrices(const FockTruncation& tr);

HermitianMatrix quadratic_hamiltonian_matrix(const gaussian::QuadraticHamiltonian& h, const FockTruncation& tr);

struct TruncatedTrace {
    double value = 0.0;         // Tr e^{-beta H_N}
    double log_value = 0.0;
    double last_level = 0.0;    // <N-1| e^{-beta H_N} |N-1>
    std::size_t levels = 0;
    double relative_change = 0.0;  // |Z(N) - Z(N - 50)| / Z(N), 0 when not certified
};

// Plain truncated trace of e^{-beta hm}.
TruncatedTrace truncated_trace(const HermitianMatrix& hm, double beta);

// Certified trace: starts at tr.n_max and grows by 50 levels (up to
// kMaxLevels) until the relative change over 50 levels is below 1e-10.
// TruncationUnstable otherwise.
TruncatedTrace truncated_partition(const gaussian::QuadraticHamiltonian& h, double beta,
                                   const FockTruncation& tr = {});

// <n| e^{-beta H_N} |n> for n < N.
std::vector<double> exp_diagonal(const gaussian::QuadraticHamiltonian& h, double beta, const FockTruncation& tr);

// sum_n nbar^n/(1+nbar)^{n+1} |n><n| on n_max levels, not renormalized.
HermitianMatrix thermal_light_fock(double nbar, std::size_t n_max);

// Delta of thermal light (renormalized on the truncation) against the Gibbs
// state of H_N at temperature T, via delta_from_operators.
DeltaRecord thermal_light_delta(const gaussian::QuadraticHamiltonian& h, double nbar, double temperature,
                                const FockTruncation& tr);

// Which kernel argument is the row (bra) index.
enum class KernelConvention {
    primed_row,    // rho(q', q) = <q'|rho|q>
    unprimed_row,  // rho(q', q) = <q|rho|q'>
};

struct QuadratureSpec {
    double half_width_sd = 12.0;  // domain half-width in standard deviations of the diagonal
    std::size_t nodes = 400;
    std::size_t max_doublings = 6;
    double tolerance = 1e-10;
};

struct KernelMoments {
    double unnormalized_trace = 0.0;  // integral of exp(exponent) over the diagonal, without N
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_pq = 0.0;
    double imag_residue = 0.0;  // largest imaginary part left in a real moment
    std::size_t nodes_used = 0;
};

// QuadratureUnstable when doubling the node count never settles.
KernelMoments kernel_moments(const gaussian::GaussianParams& g, const QuadratureSpec& spec = {},
                             KernelConvention convention = KernelConvention::primed_row);

// Seeded samplers for oracle sweeps. Hamiltonians are bounded below with a
// moderate squeeze so the certified Fock trace settles well before 500 levels.
gaussian::QuadraticHamiltonian random_quadratic_hamiltonian(std::uint64_t seed);
gaussian::GaussianParams random_gaussian_params(std::uint64_t seed);

}  // namespace entropyne::fock
