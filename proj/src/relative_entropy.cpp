#include "entropyne/relative_entropy.hpp"

#include "entropyne/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace entropyne {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kFullSupportFloor = 1e-14;

// Weight of rho on the kernel of sigma above which supports are considered
// mismatched.
constexpr double kSupportLeakTolerance = 1e-12;

void require_density(const HermitianMatrix& rho, const SpectralDecomposition& spec) {
    const double tr = rho.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os << "trace " << tr << " differs from 1";
        throw Error(ErrorKind::InvalidState, os.str());
    }
    if (spec.eigenvalues.minCoeff() < -kPositivityTolerance) {
        std::ostringstream os;
        os << "negative eigenvalue " << spec.eigenvalues.minCoeff();
        throw Error(ErrorKind::InvalidState, os.str());
    }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "states have different dimensions");
    }
}

double entropy_from_spectrum(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) > 0.0) s -= p(i) * std::log(p(i));
    }
    return s;
}

double cutoff_for(const RealVector& lambda) {
    return kSupportThreshold * std::max(1.0, lambda.cwiseAbs().maxCoeff());
}

// <v_k| rho |v_k> for every eigenvector v_k of sigma.
RealVector populations(const HermitianMatrix& rho, const SpectralDecomposition& sigma_spec) {
    const ComplexMatrix& v = sigma_spec.eigenvectors;
    return (v.adjoint() * rho.matrix() * v).diagonal().real();
}

bool support_contained(const RealVector& rho_pop, const SpectralDecomposition& sigma_spec) {
    const double cutoff = cutoff_for(sigma_spec.eigenvalues);
    double leak = 0.0;
    for (Eigen::Index k = 0; k < rho_pop.size(); ++k) {
        if (sigma_spec.eigenvalues(k) <= cutoff) leak += rho_pop(k);
    }
    return leak <= kSupportLeakTolerance;
}

}  // namespace

void require_density(const HermitianMatrix& rho) {
    require_density(rho, eigendecompose(rho));
}

double von_neumann_entropy(const HermitianMatrix& rho) {
    const SpectralDecomposition spec = eigendecompose(rho);
    require_density(rho, spec);
    return std::max(0.0, entropy_from_spectrum(spec.eigenvalues));
}

double relative_entropy_vn(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    require_same_dim(rho, sigma);
    const SpectralDecomposition rho_spec = eigendecompose(rho);
    const SpectralDecomposition sigma_spec = eigendecompose(sigma);
    require_density(rho, rho_spec);
    require_density(sigma, sigma_spec);

    const RealVector pop = populations(rho, sigma_spec);
    if (!support_contained(pop, sigma_spec)) return kInfinity;

    const double cutoff = cutoff_for(sigma_spec.eigenvalues);
    double cross = 0.0;  // Tr(rho ln sigma) on supp(sigma)
    for (Eigen::Index k = 0; k < pop.size(); ++k) {
        if (sigma_spec.eigenvalues(k) > cutoff) cross += pop(k) * std::log(sigma_spec.eigenvalues(k));
    }
    return -entropy_from_spectrum(rho_spec.eigenvalues) - cross;
}

double tsallis_relative_entropy(const HermitianMatrix& rho, const HermitianMatrix& sigma, double q) {
    if (!(q > 0.0) || q == 1.0) {
        std::ostringstream os;
        os << "q = " << q << " outside q > 0, q != 1";
        throw Error(ErrorKind::UnsupportedQ, os.str());
    }
    require_same_dim(rho, sigma);
    const SpectralDecomposition rho_spec = eigendecompose(rho);
    const SpectralDecomposition sigma_spec = eigendecompose(sigma);
    require_density(rho, rho_spec);
    require_density(sigma, sigma_spec);

    if (q > 1.0 && !support_contained(populations(rho, sigma_spec), sigma_spec)) return kInfinity;

    const HermitianMatrix rho_q =
        matrix_function(rho_spec, [q](double x) { return std::pow(x, q); }, SupportPolicy::project);
    const HermitianMatrix sigma_1mq = matrix_function(
        sigma_spec, [q](double x) { return std::pow(x, 1.0 - q); }, SupportPolicy::project);
    const double overlap = trace_product(rho_q, sigma_1mq);
    return (1.0 - overlap) / (1.0 - q);
}

TsallisSeries tsallis_series(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    require_same_dim(rho, sigma);
    const SpectralDecomposition rho_spec = eigendecompose(rho);
    const SpectralDecomposition sigma_spec = eigendecompose(sigma);
    require_density(rho, rho_spec);
    require_density(sigma, sigma_spec);
    if (rho_spec.eigenvalues.minCoeff() <= kFullSupportFloor ||
        sigma_spec.eigenvalues.minCoeff() <= kFullSupportFloor) {
        throw Error(ErrorKind::SupportDeficient, "tsallis_series needs full-support states");
    }

    auto ln = [](double x) { return std::log(x); };
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix a = matrix_function(rho_spec, ln).matrix();
    const ComplexMatrix b = matrix_function(sigma_spec, ln).matrix();
    const ComplexMatrix x = a - b;
    const ComplexMatrix x2 = x * x;
    const ComplexMatrix commutator = a * b - b * a;

    TsallisSeries s;
    s.order0 = (r * x).trace().real();
    s.order1 = 0.5 * (r * x2).trace().real();
    s.order2 = ((r * x2 * x).trace() + (r * commutator * b).trace()).real() / 6.0;
    return s;
}

DeltaRecord delta_from_scalars(double energy, double entropy, double log_partition,
                               double temperature) {
    require_nonzero_temperature(temperature);
    if (!std::isfinite(energy) || !std::isfinite(entropy) || !std::isfinite(log_partition) ||
        !std::isfinite(temperature)) {
        throw Error(ErrorKind::DomainError, "Delta inputs must be finite");
    }
    DeltaRecord r;
    r.energy = energy;
    r.entropy = entropy;
    r.log_partition = log_partition;
    r.temperature = temperature;
    r.delta = energy - temperature * entropy + temperature * log_partition;
    return r;
}

DeltaRecord delta_from_operators(const HermitianMatrix& rho, const HermitianMatrix& h,
                                 double temperature) {
    require_nonzero_temperature(temperature);
    require_same_dim(rho, h);
    const double energy = trace_product(rho, h);
    const double entropy = von_neumann_entropy(rho);
    const double lnz = log_partition(h, temperature);
    return delta_from_scalars(energy, entropy, lnz, temperature);
}

}  // namespace entropyne
