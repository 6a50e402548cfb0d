// hermitian.hpp - dense complex Hermitian matrices and spectral calculus
//
// Density matrices, Hamiltonians and Gibbs states all live here as
// HermitianMatrix values. Matrix functions (ln, powers, exponentials) are
// evaluated through the eigendecomposition.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>

namespace entropyne {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTolerance = 1e-12;

class HermitianMatrix {
public:
    HermitianMatrix() = default;

    // Throws NotHermitian when max |m(i,j) - conj(m(j,i))| exceeds tol.
    // The stored matrix is the exact Hermitian part (m + m†)/2.
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = kHermiticityTolerance);

    static HermitianMatrix diagonal(const RealVector& d);
    static HermitianMatrix identity(Eigen::Index dim);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }

private:
    ComplexMatrix m_;
};

struct SpectralDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, unitary

    ComplexMatrix reconstruct() const;
};

SpectralDecomposition eigendecompose(const HermitianMatrix& m);

enum class SupportPolicy {
    strict,  // f must be finite on every eigenvalue
    project, // f applied on eigenvalues > support threshold; kernel maps to 0
};

// Eigenvalues at or below this (relative to the largest |eigenvalue|, floor 1)
// are treated as the kernel under SupportPolicy::project.
inline constexpr double kSupportThreshold = 1e-14;

HermitianMatrix matrix_function(const HermitianMatrix& m, const std::function<double(double)>& f,
                                SupportPolicy policy = SupportPolicy::strict);
HermitianMatrix matrix_function(const SpectralDecomposition& spec,
                                const std::function<double(double)>& f,
                                SupportPolicy policy = SupportPolicy::strict);

// ln Tr e^{-h/T}, evaluated with the spectrum shifted by its minimum (T > 0)
// or maximum (T < 0).
double log_partition(const HermitianMatrix& h, double temperature);
double log_partition(const SpectralDecomposition& h_spec, double temperature);

// e^{-h/T} / Tr e^{-h/T}
HermitianMatrix gibbs_state(const HermitianMatrix& h, double temperature);

// Ginibre construction G G† / Tr(G G†) with seeded complex normal entries.
HermitianMatrix random_density_matrix(Eigen::Index dim, std::uint64_t seed);

// (G + G†)/2 with seeded complex normal entries, scaled so the spectral
// radius equals `scale` (scale <= 0 leaves it unscaled).
HermitianMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed, double scale = 1.0);

// Tr(a b) for Hermitian a, b; real by construction.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace entropyne
