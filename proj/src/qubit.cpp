#include "entropyne/qubit.hpp"

#include "entropyne/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace entropyne::qubit {

namespace {

constexpr double kBlochSlack = 1e-12;

// x ln x with the x -> 0 limit.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// ln cosh(x) without overflow for large |x|.
double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Unit vector orthogonal to u (|u| = 1).
Vec3 orthogonal_unit(const Vec3& u) {
    // Cross with the coordinate axis least aligned with u.
    Vec3 e{0.0, 0.0, 0.0};
    const double ax = std::abs(u[0]), ay = std::abs(u[1]), az = std::abs(u[2]);
    if (ax <= ay && ax <= az) e[0] = 1.0;
    else if (ay <= az) e[1] = 1.0;
    else e[2] = 1.0;
    Vec3 c{u[1] * e[2] - u[2] * e[1], u[2] * e[0] - u[0] * e[2], u[0] * e[1] - u[1] * e[0]};
    const double n = norm(c);
    return {c[0] / n, c[1] / n, c[2] / n};
}

}  // namespace

double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

BlochState BlochState::make(const Vec3& p) {
    const double n = qubit::norm(p);
    if (!(n <= 1.0 + kBlochSlack)) {
        std::ostringstream os;
        os << "|p| = " << n << " exceeds 1";
        throw Error(ErrorKind::BlochNormExceeded, os.str());
    }
    return BlochState{p};
}

HermitianMatrix density_from_bloch(const BlochState& s) {
    BlochState::make(s.p);
    const auto& p = s.p;
    ComplexMatrix m(2, 2);
    m << Complex(1.0 + p[2], 0.0), Complex(p[0], -p[1]),
         Complex(p[0], p[1]), Complex(1.0 - p[2], 0.0);
    return HermitianMatrix(0.5 * m);
}

HermitianMatrix hamiltonian_from_bloch(const BlochHamiltonian& bh) {
    const auto& h = bh.h;
    ComplexMatrix m(2, 2);
    m << Complex(bh.h0 + h[2], 0.0), Complex(h[0], -h[1]),
         Complex(h[0], h[1]), Complex(bh.h0 - h[2], 0.0);
    return HermitianMatrix(0.5 * m);
}

double bloch_entropy(double p_norm) {
    const double r = std::min(1.0, std::max(0.0, p_norm));
    return std::numbers::ln2 - 0.5 * (xlogx(1.0 - r) + xlogx(1.0 + r));
}

double qubit_log_partition(const BlochHamiltonian& bh, double temperature) {
    require_nonzero_temperature(temperature);
    return -bh.h0 / (2.0 * temperature) + std::numbers::ln2 + log_cosh(bh.norm() / (2.0 * temperature));
}

QubitObservables qubit_observables(const BlochState& s, const BlochHamiltonian& bh, double temperature) {
    require_nonzero_temperature(temperature);
    BlochState::make(s.p);
    QubitObservables o;
    o.energy = 0.5 * (bh.h0 + dot(s.p, bh.h));
    o.entropy = bloch_entropy(s.norm());
    o.log_partition = qubit_log_partition(bh, temperature);
    return o;
}

BlochState equilibrium_bloch(const BlochHamiltonian& bh, double temperature) {
    require_nonzero_temperature(temperature);
    const double hn = bh.norm();
    if (hn == 0.0) return BlochState{};
    const double mag = std::tanh(hn / (2.0 * temperature));
    return BlochState{{-bh.h[0] / hn * mag, -bh.h[1] / hn * mag, -bh.h[2] / hn * mag}};
}

double equilibrium_temperature(double p_norm, double h_norm, int sign) {
    if (!(p_norm > 0.0 && p_norm < 1.0)) {
        throw Error(ErrorKind::DomainError, "equilibrium temperature needs 0 < |p| < 1");
    }
    if (!(h_norm > 0.0)) throw Error(ErrorKind::DomainError, "equilibrium temperature needs |h| > 0");
    if (sign != 1 && sign != -1) throw Error(ErrorKind::DomainError, "sign must be +1 or -1");
    return sign * h_norm / (2.0 * std::atanh(p_norm));
}

DeltaRecord qubit_delta(double p_norm, double theta, const BlochHamiltonian& bh, double temperature) {
    const double hn = bh.norm();
    const Vec3 axis = hn > 0.0 ? Vec3{bh.h[0] / hn, bh.h[1] / hn, bh.h[2] / hn} : Vec3{0.0, 0.0, 1.0};
    const Vec3 perp = orthogonal_unit(axis);
    const double c = std::cos(theta), s = std::sin(theta);
    const Vec3 p{p_norm * (c * axis[0] + s * perp[0]), p_norm * (c * axis[1] + s * perp[1]),
                 p_norm * (c * axis[2] + s * perp[2])};
    const QubitObservables o = qubit_observables(BlochState::make(p), bh, temperature);
    return delta_from_scalars(o.energy, o.entropy, o.log_partition, temperature);
}

DeltaGrid qubit_delta_grid(double p_norm, const BlochHamiltonian& bh, const GridSpec& theta,
                           const GridSpec& temperature, unsigned threads) {
    if (!(p_norm >= 0.0 && p_norm <= 1.0 + kBlochSlack)) {
        throw Error(ErrorKind::BlochNormExceeded, "p_norm must lie in [0, 1]");
    }
    DeltaGrid g;
    g.axis1_name = "theta";
    g.axis2_name = "T";
    g.axis1_values = theta.values();
    g.axis2_values = temperature.values();
    bool any_pos = false, any_neg = false;
    for (double t : g.axis2_values) {
        if (t > 0) any_pos = true;
        if (t < 0) any_neg = true;
    }
    if (any_pos && any_neg) {
        throw Error(ErrorKind::UsageError, "temperature range must not change sign");
    }
    for (double t : g.axis2_values) require_nonzero_temperature(t);
    g.cells.assign(g.axis1_values.size() * g.axis2_values.size(), std::nullopt);
    parallel_for(g.cells.size(), threads, [&](std::size_t k) {
        const std::size_t i1 = k / g.axis2_values.size();
        const std::size_t i2 = k % g.axis2_values.size();
        g.cells[k] = qubit_delta(p_norm, g.axis1_values[i1], bh, g.axis2_values[i2]).delta;
    });
    return g;
}

}  // namespace entropyne::qubit
