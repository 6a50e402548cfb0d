#include "entropyne/fock_oracle.hpp"

#include "entropyne/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace entropyne::fock {

LadderMatrices ladder_matrices(const FockTruncation& tr) {
    if (tr.n_max < 2) throw Error(ErrorKind::DomainError, "Fock truncation needs n_max >= 2");
    if (!(tr.omega0 > 0.0)) throw Error(ErrorKind::DomainError, "omega0 must be positive");
    const auto n = static_cast<Eigen::Index>(tr.n_max);
    LadderMatrices l;
    l.a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) l.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    l.adag = l.a.adjoint();
    l.p = Complex(0.0, std::sqrt(tr.omega0 / 2.0)) * (l.adag - l.a);
    l.q = (l.a + l.adag) / std::sqrt(2.0 * tr.omega0);
    return l;
}

HermitianMatrix quadratic_hamiltonian_matrix(const gaussian::QuadraticHamiltonian& h, const FockTruncation& tr) {
    if (h.omega0 != tr.omega0) {
        throw Error(ErrorKind::DomainError, "truncation omega0 differs from the Hamiltonian's");
    }
    // Quadratic terms reach two levels up, so products formed two levels larger
    // are exact on the first n_max levels.
    const LadderMatrices l = ladder_matrices({tr.n_max + 2, tr.omega0});
    const ComplexMatrix full = h.omega1 * l.p * l.p + h.omega2 * l.p * l.q +
                               std::conj(h.omega2) * l.q * l.p + h.omega3 * l.q * l.q;
    const auto n = static_cast<Eigen::Index>(tr.n_max);
    const ComplexMatrix cropped = full.topLeftCorner(n, n);
    return HermitianMatrix(cropped, 1e-10 * std::max(1.0, cropped.cwiseAbs().maxCoeff()));
}

namespace {

// Weights e^{-beta (lambda - lambda_min)} and the shift, for a positive beta.
struct ShiftedWeights {
    RealVector w;
    double shift = 0.0;
};

ShiftedWeights boltzmann_weights(const SpectralDecomposition& spec, double beta) {
    ShiftedWeights s;
    s.shift = spec.eigenvalues.minCoeff();
    s.w = (-beta * (spec.eigenvalues.array() - s.shift)).exp().matrix();
    return s;
}

TruncatedTrace trace_from_spectrum(const SpectralDecomposition& spec, double beta) {
    const ShiftedWeights s = boltzmann_weights(spec, beta);
    TruncatedTrace t;
    t.levels = static_cast<std::size_t>(spec.eigenvalues.size());
    const double sum = s.w.sum();
    t.log_value = -beta * s.shift + std::log(sum);
    t.value = std::exp(t.log_value);
    const Eigen::Index top = spec.eigenvalues.size() - 1;
    const RealVector top_row = spec.eigenvectors.row(top).cwiseAbs2().transpose();
    t.last_level = std::exp(-beta * s.shift) * top_row.dot(s.w);
    return t;
}

}  // namespace

TruncatedTrace truncated_trace(const HermitianMatrix& hm, double beta) {
    if (!(beta > 0.0)) throw Error(ErrorKind::NegativeBeta, "beta must be positive");
    return trace_from_spectrum(eigendecompose(hm), beta);
}

TruncatedTrace truncated_partition(const gaussian::QuadraticHamiltonian& h, double beta, const FockTruncation& tr) {
    if (!(beta > 0.0)) throw Error(ErrorKind::NegativeBeta, "beta must be positive");
    std::size_t n = tr.n_max;
    const std::size_t cap = std::max(kMaxLevels, tr.n_max + kStabilityStep);
    TruncatedTrace prev = truncated_trace(quadratic_hamiltonian_matrix(h, {n, tr.omega0}), beta);
    double change = 0.0;
    while (n + kStabilityStep <= cap) {
        n += kStabilityStep;
        TruncatedTrace next = truncated_trace(quadratic_hamiltonian_matrix(h, {n, tr.omega0}), beta);
        change = std::abs(std::expm1(prev.log_value - next.log_value));
        next.relative_change = change;
        if (change < kStabilityTolerance) return next;
        prev = next;
    }
    std::ostringstream os;
    os << "relative change " << change << " over the last " << kStabilityStep << " levels at N = " << n;
    throw Error(ErrorKind::TruncationUnstable, os.str());
}

std::vector<double> exp_diagonal(const gaussian::QuadraticHamiltonian& h, double beta, const FockTruncation& tr) {
    if (!(beta > 0.0)) throw Error(ErrorKind::NegativeBeta, "beta must be positive");
    const SpectralDecomposition spec = eigendecompose(quadratic_hamiltonian_matrix(h, tr));
    const ShiftedWeights s = boltzmann_weights(spec, beta);
    const double scale = std::exp(-beta * s.shift);
    std::vector<double> d(tr.n_max);
    for (std::size_t n = 0; n < tr.n_max; ++n) {
        const RealVector row = spec.eigenvectors.row(static_cast<Eigen::Index>(n)).cwiseAbs2().transpose();
        d[n] = scale * row.dot(s.w);
    }
    return d;
}

HermitianMatrix thermal_light_fock(double nbar, std::size_t n_max) {
    if (!(nbar >= 0.0)) throw Error(ErrorKind::DomainError, "nbar must be nonnegative");
    RealVector d(static_cast<Eigen::Index>(n_max));
    const double ratio = nbar / (1.0 + nbar);
    double pn = 1.0 / (1.0 + nbar);
    for (Eigen::Index n = 0; n < d.size(); ++n) {
        d(n) = pn;
        pn *= ratio;
    }
    return HermitianMatrix::diagonal(d);
}

DeltaRecord thermal_light_delta(const gaussian::QuadraticHamiltonian& h, double nbar, double temperature,
                                const FockTruncation& tr) {
    const HermitianMatrix raw = thermal_light_fock(nbar, tr.n_max);
    const HermitianMatrix rho(raw.matrix() / raw.trace());
    return delta_from_operators(rho, quadratic_hamiltonian_matrix(h, tr), temperature);
}

namespace {

struct RawMoments {
    std::array<Complex, 6> m{};  // 1, q, q^2, p, p^2, qp (unnormalized)
};

// Trapezoid sums of the diagonal kernel times the moment integrands.
RawMoments integrate(const gaussian::GaussianParams& g, KernelConvention convention, double lo, double hi,
                     std::size_t nodes) {
    // Row-index derivative of the exponent at coincidence: d/dx E(x, y)|_{x=y=q} = slope * q + offset.
    // primed_row: E(x, y) = -conj(a1) x^2 - a1 y^2 + a2 x y + conj(b1) x + b1 y
    // unprimed_row: E(x, y) = -a1 x^2 - conj(a1) y^2 + a2 x y + b1 x + conj(b1) y
    const bool primed = convention == KernelConvention::primed_row;
    const Complex a_row = primed ? std::conj(g.a1) : g.a1;
    const Complex b_row = primed ? std::conj(g.b1) : g.b1;
    const Complex slope = -2.0 * a_row + g.a2;
    const Complex second = -2.0 * a_row;  // d^2/dx^2 E
    const double diag_quad = -(2.0 * g.a1.real() - g.a2);
    const double diag_lin = 2.0 * g.b1.real();
    const Complex minus_i(0.0, -1.0);

    const double h = (hi - lo) / static_cast<double>(nodes - 1);
    RawMoments r;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double q = lo + h * static_cast<double>(i);
        const double w = (i == 0 || i + 1 == nodes ? 0.5 : 1.0) * h;
        const double k = std::exp(diag_quad * q * q + diag_lin * q);
        const Complex l = slope * q + b_row;
        r.m[0] += w * k;
        r.m[1] += w * q * k;
        r.m[2] += w * q * q * k;
        r.m[3] += w * minus_i * l * k;
        r.m[4] += w * (-(second + l * l)) * k;
        r.m[5] += w * q * minus_i * l * k;
    }
    return r;
}

KernelMoments finish(const RawMoments& r, std::size_t nodes) {
    KernelMoments km;
    km.nodes_used = nodes;
    const double z = r.m[0].real();
    km.unnormalized_trace = z;
    const Complex mq = r.m[1] / z, mq2 = r.m[2] / z, mp = r.m[3] / z, mp2 = r.m[4] / z, mqp = r.m[5] / z;
    km.mean_q = mq.real();
    km.mean_p = mp.real();
    km.sigma_qq = mq2.real() - km.mean_q * km.mean_q;
    km.sigma_pp = mp2.real() - km.mean_p * km.mean_p;
    // (pq + qp)/2 = qp - i/2, so <qp> carries an imaginary part of exactly 1/2.
    km.sigma_pq = mqp.real() - km.mean_p * km.mean_q;
    km.imag_residue = std::max({std::abs(mp.imag()), std::abs(mp2.imag()), std::abs(mqp.imag() - 0.5)});
    return km;
}

double max_difference(const KernelMoments& a, const KernelMoments& b) {
    const double dz = std::abs(a.unnormalized_trace - b.unnormalized_trace) / std::abs(b.unnormalized_trace);
    return std::max({dz, std::abs(a.mean_q - b.mean_q), std::abs(a.mean_p - b.mean_p),
                     std::abs(a.sigma_qq - b.sigma_qq), std::abs(a.sigma_pp - b.sigma_pp),
                     std::abs(a.sigma_pq - b.sigma_pq)});
}

}  // namespace

KernelMoments kernel_moments(const gaussian::GaussianParams& g, const QuadratureSpec& spec,
                             KernelConvention convention) {
    const double alpha = 2.0 * g.a1.real() - g.a2;
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidGaussian, "diagonal kernel is not integrable");
    if (spec.nodes < 3) throw Error(ErrorKind::DomainError, "quadrature needs at least 3 nodes");
    // Diagonal kernel exp(-alpha q^2 + 2 Re(b1) q): centre Re(b1)/alpha, sd 1/sqrt(2 alpha).
    const double centre = g.b1.real() / alpha;
    const double sd = 1.0 / std::sqrt(2.0 * alpha);
    const double lo = centre - spec.half_width_sd * sd;
    const double hi = centre + spec.half_width_sd * sd;

    std::size_t nodes = spec.nodes;
    KernelMoments prev = finish(integrate(g, convention, lo, hi, nodes), nodes);
    for (std::size_t d = 0; d < spec.max_doublings; ++d) {
        nodes = 2 * nodes - 1;  // reuses the previous nodes
        KernelMoments next = finish(integrate(g, convention, lo, hi, nodes), nodes);
        if (max_difference(next, prev) < spec.tolerance) return next;
        prev = next;
    }
    throw Error(ErrorKind::QuadratureUnstable, "kernel moments did not settle under node doubling");
}

}  // namespace entropyne::fock

namespace entropyne::fock {

gaussian::QuadraticHamiltonian random_quadratic_hamiltonian(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    gaussian::QuadraticHamiltonian h;
    h.omega0 = 0.5 + 1.5 * u(rng);
    h.omega1 = 0.2 + 1.3 * u(rng);
    h.omega3 = (0.2 + 1.3 * u(rng)) * h.omega0 * h.omega0;
    const double re2 = 0.6 * (2.0 * u(rng) - 1.0) * std::sqrt(h.omega1 * h.omega3);
    const double im2 = 0.5 * (2.0 * u(rng) - 1.0);
    h.omega2 = Complex(re2, im2);
    return h;
}

gaussian::GaussianParams random_gaussian_params(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double re_a1 = 0.3 + 1.2 * u(rng);
    const double im_a1 = 2.0 * u(rng) - 1.0;
    const double a2 = 0.8 * 2.0 * re_a1 * u(rng);
    const double re_b1 = 2.0 * u(rng) - 1.0;
    const double im_b1 = 2.0 * u(rng) - 1.0;
    return gaussian::GaussianParams::make({re_a1, im_a1}, a2, {re_b1, im_b1});
}

}  // namespace entropyne::fock
