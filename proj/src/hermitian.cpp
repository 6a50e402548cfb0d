#include "entropyne/hermitian.hpp"

#include "entropyne/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace entropyne {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square and nonempty");
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        std::ostringstream os;
        os << "max |m(i,j) - conj(m(j,i))| = " << asym << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
    ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
    return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eigendecompose(const HermitianMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double support_cutoff(const RealVector& lambda) {
    return kSupportThreshold * std::max(1.0, lambda.cwiseAbs().maxCoeff());
}

}  // namespace

HermitianMatrix matrix_function(const SpectralDecomposition& spec,
                                const std::function<double(double)>& f, SupportPolicy policy) {
    const RealVector& lambda = spec.eigenvalues;
    RealVector mapped(lambda.size());
    const double cutoff = support_cutoff(lambda);
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (policy == SupportPolicy::project && lambda(i) <= cutoff) {
            mapped(i) = 0.0;
            continue;
        }
        const double v = f(lambda(i));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "function not finite at eigenvalue " << lambda(i);
            throw Error(ErrorKind::DomainError, os.str());
        }
        mapped(i) = v;
    }
    ComplexMatrix out =
        spec.eigenvectors * mapped.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
    // Rounding leaves an anti-Hermitian residue of order eps * |f|.
    return HermitianMatrix(0.5 * (out + out.adjoint()));
}

HermitianMatrix matrix_function(const HermitianMatrix& m, const std::function<double(double)>& f,
                                SupportPolicy policy) {
    return matrix_function(eigendecompose(m), f, policy);
}

double log_partition(const SpectralDecomposition& h_spec, double temperature) {
    require_nonzero_temperature(temperature);
    const RealVector& lambda = h_spec.eigenvalues;
    const double ref = temperature > 0 ? lambda.minCoeff() : lambda.maxCoeff();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        sum += std::exp(-(lambda(i) - ref) / temperature);
    }
    if (!std::isfinite(sum)) {
        throw Error(ErrorKind::OverflowGuard, "partition sum overflowed");
    }
    return -ref / temperature + std::log(sum);
}

double log_partition(const HermitianMatrix& h, double temperature) {
    require_nonzero_temperature(temperature);
    return log_partition(eigendecompose(h), temperature);
}

HermitianMatrix gibbs_state(const HermitianMatrix& h, double temperature) {
    require_nonzero_temperature(temperature);
    const SpectralDecomposition spec = eigendecompose(h);
    const RealVector& lambda = spec.eigenvalues;
    const double ref = temperature > 0 ? lambda.minCoeff() : lambda.maxCoeff();
    RealVector w(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        w(i) = std::exp(-(lambda(i) - ref) / temperature);
    }
    const double z = w.sum();
    if (!std::isfinite(z) || z <= 0.0) {
        throw Error(ErrorKind::OverflowGuard, "Gibbs weights not normalizable");
    }
    w /= z;
    ComplexMatrix rho = spec.eigenvectors * w.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
    return HermitianMatrix(0.5 * (rho + rho.adjoint()));
}

namespace {

ComplexMatrix ginibre(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    // Fill column-major in a fixed order so the draw sequence is reproducible.
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

HermitianMatrix random_density_matrix(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw Error(ErrorKind::DomainError, "dimension must be >= 1");
    const ComplexMatrix g = ginibre(dim, seed);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return HermitianMatrix(0.5 * (rho + rho.adjoint()));
}

HermitianMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed, double scale) {
    if (dim < 1) throw Error(ErrorKind::DomainError, "dimension must be >= 1");
    const ComplexMatrix g = ginibre(dim, seed);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    if (scale > 0) {
        const double radius = eigendecompose(HermitianMatrix(h)).eigenvalues.cwiseAbs().maxCoeff();
        if (radius > 0) h *= scale / radius;
    }
    return HermitianMatrix(0.5 * (h + h.adjoint()));
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "trace_product dimensions differ");
    // Tr(ab) = sum_ij a_ij b_ji
    return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

}  // namespace entropyne
