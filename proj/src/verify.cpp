#include "entropyne/verify.hpp"

#include "entropyne/amplifier.hpp"
#include "entropyne/errors.hpp"
#include "entropyne/fock_oracle.hpp"
#include "entropyne/gaussian.hpp"
#include "entropyne/qubit.hpp"
#include "entropyne/relative_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace entropyne {

bool VerifyReport::all_passed() const {
    return std::all_of(families.begin(), families.end(), [](const auto& f) { return f.passed; });
}

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = all_passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : families) {
        arr.push_back({{"family", f.name},
                       {"passed", f.passed},
                       {"measured", f.measured},
                       {"tolerance", f.tolerance},
                       {"cases", f.cases},
                       {"detail", f.detail}});
    }
    j["families"] = std::move(arr);
    return j;
}

namespace {

// Per-case seed from (base seed, family, case index).
std::uint64_t mix(std::uint64_t seed, std::uint64_t family, std::uint64_t k) {
    std::uint64_t x = seed ^ (family * 0x9E3779B97F4A7C15ull) ^ (k * 0xBF58476D1CE4E5B9ull);
    x ^= x >> 31;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 29;
    return x;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

FamilyResult make_result(std::string name, double measured, double tolerance, std::size_t cases,
                         std::string detail = {}) {
    FamilyResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tolerance;
    r.cases = cases;
    r.passed = std::isfinite(measured) && measured <= tolerance;
    r.detail = std::move(detail);
    return r;
}

FamilyResult check_reconstruction(std::uint64_t seed, std::size_t n) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto m = random_hermitian(static_cast<Eigen::Index>(2 + k % 7), mix(seed, 1, k), 0.0);
        const auto spec = eigendecompose(m);
        const double scale = std::max(1.0, m.matrix().norm());
        worst = std::max(worst, (m.matrix() - spec.reconstruct()).norm() / scale);
    }
    return make_result("hermitian.reconstruction", worst, 1e-10, n);
}

FamilyResult check_relative_entropy_sign(std::uint64_t seed, std::size_t n) {
    double worst = 0;  // most negative value, reported as a positive deviation
    for (std::size_t k = 0; k < n; ++k) {
        const auto dim = static_cast<Eigen::Index>(2 + k % 5);
        const auto rho = random_density_matrix(dim, mix(seed, 2, 2 * k));
        const auto sigma = random_density_matrix(dim, mix(seed, 2, 2 * k + 1));
        worst = std::max(worst, -relative_entropy_vn(rho, sigma));
        for (double q : {0.5, 1.5, 2.0, 3.0}) worst = std::max(worst, -tsallis_relative_entropy(rho, sigma, q));
    }
    return make_result("relative_entropy.nonnegativity", std::max(0.0, worst), 1e-10, n);
}

FamilyResult check_q_limit(std::uint64_t seed, std::size_t n) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto dim = static_cast<Eigen::Index>(2 + k % 3);
        const auto rho = random_density_matrix(dim, mix(seed, 3, 2 * k));
        const auto sigma = random_density_matrix(dim, mix(seed, 3, 2 * k + 1));
        const double vn = relative_entropy_vn(rho, sigma);
        for (double q : {1.0 + 1e-6, 1.0 - 1e-6}) {
            worst = std::max(worst, std::abs(tsallis_relative_entropy(rho, sigma, q) - vn));
        }
    }
    return make_result("relative_entropy.q_to_1", worst, 1e-4, n);
}

FamilyResult check_series_order(std::uint64_t seed, std::size_t n) {
    const std::vector<double> deltas{1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5)};
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto dim = static_cast<Eigen::Index>(2 + k % 3);
        const auto rho = random_density_matrix(dim, mix(seed, 4, 2 * k));
        const auto sigma = random_density_matrix(dim, mix(seed, 4, 2 * k + 1));
        const TsallisSeries s = tsallis_series(rho, sigma);
        std::vector<double> r;
        for (double d : deltas) r.push_back(std::abs(tsallis_relative_entropy(rho, sigma, 1.0 + d) - s.evaluate(d)));
        worst = std::max(worst, std::abs(loglog_slope(deltas, r) - 3.0));
    }
    return make_result("relative_entropy.series_order", worst, 0.3, n, "|slope - 3|");
}

FamilyResult check_delta_identity(std::uint64_t seed, std::size_t n) {
    double worst = 0;
    std::mt19937_64 rng(mix(seed, 5, 0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto dim = static_cast<Eigen::Index>(2 + k % 7);
        const auto rho = random_density_matrix(dim, mix(seed, 5, 2 * k + 1));
        const auto h = random_hermitian(dim, mix(seed, 5, 2 * k + 2), 1.0);
        const double mag = std::exp(std::log(0.5) + u(rng) * std::log(20.0));
        const double t = (k % 2 == 0) ? mag : -mag;
        const DeltaRecord d = delta_from_operators(rho, h, t);
        const double via_relative = t * relative_entropy_vn(rho, gibbs_state(h, t));
        const double wrong_sign = t > 0 ? -d.delta : d.delta;
        worst = std::max({worst, std::abs(d.delta - via_relative), wrong_sign});
    }
    return make_result("delta.relative_entropy_identity", std::max(0.0, worst), 1e-9, n);
}

FamilyResult check_qubit_consistency(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(mix(seed, 6, 0));
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        qubit::Vec3 dir{g(rng), g(rng), g(rng)};
        const double dn = qubit::norm(dir);
        const double r = u(rng);
        const auto s = qubit::BlochState::make({r * dir[0] / dn, r * dir[1] / dn, r * dir[2] / dn});
        const qubit::BlochHamiltonian bh{g(rng), {g(rng), g(rng), g(rng)}};
        const double t = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 5.0 * u(rng));
        const auto o = qubit::qubit_observables(s, bh, t);
        const auto rho = qubit::density_from_bloch(s);
        const auto h = qubit::hamiltonian_from_bloch(bh);
        worst = std::max({worst, std::abs(o.energy - trace_product(rho, h)),
                          std::abs(o.entropy - von_neumann_entropy(rho)),
                          std::abs(o.log_partition - log_partition(h, t))});
    }
    return make_result("qubit.operator_consistency", worst, 1e-10, n);
}

FamilyResult check_qubit_zero_locus() {
    const qubit::BlochHamiltonian bh{0.0, {0.0, 0.0, std::sqrt(14.0)}};
    double worst = 0;
    struct Case { double p; double theta; int sign; double expected; double tol; };
    const Case cases[] = {{0.01, std::numbers::pi, 1, 187.08, 0.5},
                          {0.99, std::numbers::pi, 1, 0.7069, 0.005},
                          {0.99, 0.0, -1, -0.7069, 0.005}};
    for (const auto& c : cases) {
        const double t = qubit::equilibrium_temperature(c.p, bh.norm(), c.sign);
        const double d = std::abs(qubit::qubit_delta(c.p, c.theta, bh, t).delta);
        // Normalise both conditions to a common "<= 1" scale.
        worst = std::max({worst, d / 1e-8, std::abs(t - c.expected) / c.tol});
    }
    return make_result("qubit.zero_locus", worst, 1.0, 3, "max(|Delta|/1e-8, |T - T_ref|/tol)");
}

FamilyResult check_partition_vs_fock(std::uint64_t seed, std::size_t n) {
    double worst = 0;
    for (double beta : {0.5, 1.0, 2.0}) {
        for (double w0 : {0.5, 1.0, 2.0}) {
            const double z = gaussian::partition_function(gaussian::QuadraticHamiltonian::harmonic_oscillator(w0), beta);
            const double exact = std::exp(-beta * w0 / 2) / (-std::expm1(-beta * w0));
            worst = std::max(worst, std::abs(z - exact) / exact);
        }
    }
    std::mt19937_64 rng(mix(seed, 7, 0));
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto h = fock::random_quadratic_hamiltonian(mix(seed, 7, k + 1));
        const double beta = u(rng);
        const double z = gaussian::partition_function(h, beta);
        const auto oracle = fock::truncated_partition(h, beta, {fock::kDefaultLevels, h.omega0});
        worst = std::max(worst, std::abs(z - oracle.value) / z);
    }
    return make_result("gaussian.partition_vs_fock", worst, 1e-8, n + 9);
}

FamilyResult check_legendre_diagonal() {
    const auto h = amplifier::amplifier_hamiltonian({1.0, 3.0, 0.1, 0.0, 1.0});
    const auto d = fock::exp_diagonal(h, 1.0, {fock::kDefaultLevels, 1.0});
    double worst = 0;
    for (unsigned n = 0; n <= 30; ++n) {
        worst = std::max(worst, std::abs(gaussian::fock_diagonal_element(h, 1.0, n) - d[n]));
    }
    return make_result("gaussian.legendre_diagonal", worst, 1e-8, 31);
}

FamilyResult check_kernel_moments(std::uint64_t seed, std::size_t n) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto g = fock::random_gaussian_params(mix(seed, 8, k));
        const auto c = gaussian::covariance_from_params(g);
        const auto km = fock::kernel_moments(g);
        worst = std::max({worst, std::abs(gaussian::normalization(g) * km.unnormalized_trace - 1.0),
                          std::abs(km.mean_q - c.mean_q), std::abs(km.mean_p - c.mean_p),
                          std::abs(km.sigma_qq - c.sigma_qq), std::abs(km.sigma_pp - c.sigma_pp),
                          std::abs(km.sigma_pq - c.sigma_pq), km.imag_residue});
    }
    return make_result("gaussian.kernel_moments", worst, 1e-8, n);
}

FamilyResult check_entropy_identity() {
    double worst = 0;
    for (double nbar : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto c = amplifier::thermal_light_covariance({nbar, 1.0}, 1.0);
        worst = std::max(worst, std::abs(gaussian::entropy_gaussian(gaussian::purity(c)) -
                                         amplifier::thermal_light_entropy(nbar)));
    }
    return make_result("gaussian.entropy_identity", worst, 1e-12, 6);
}

FamilyResult check_amplifier_locus() {
    double worst = 0;
    amplifier::AmplifierConfig k0{1.0, 3.0, 0.0, 0.0, 1.0};
    for (double nbar : {0.5, 1.0, 2.0, 5.0}) {
        const double t = 1.0 / std::log1p(1.0 / nbar);
        worst = std::max(worst, std::abs(amplifier::amplifier_delta(k0, nbar, t).delta) / 1e-9);
    }
    // T* = W / ln(1 + 1/nbar), W the effective frequency.
    const amplifier::AmplifierConfig cfg{1.0, 3.0, 0.1, 0.0, 1.0};
    const double w = std::sqrt(amplifier::amplifier_hamiltonian(cfg).effective_frequency_squared());
    for (double nbar : {1.0, 2.0, 3.0, 5.0}) {
        const double t_star = amplifier::delta_argmin_temperature(cfg, nbar, {0.1, 10.0 * nbar});
        const double predicted = w / std::log1p(1.0 / nbar);
        worst = std::max(worst, std::abs(t_star - predicted) / predicted / 1e-5);
    }
    return make_result("amplifier.minimum_locus", worst, 1.0, 8,
                       "max(Delta_k0/1e-9, |T* - W/ln(1+1/nbar)|/(1e-5 T*))");
}

FamilyResult check_amplifier_oracle(std::size_t n) {
    const amplifier::AmplifierConfig cfg{1.0, 3.0, 0.1, 0.0, 1.0};
    const auto h = amplifier::amplifier_hamiltonian(cfg);
    const std::pair<double, double> cells[] = {{2.0, 2.0}, {0.5, 1.0}, {1.0, 3.0}, {3.0, 0.7}, {2.5, 4.0}};
    double worst = 0;
    std::size_t used = 0;
    for (const auto& [nbar, t] : cells) {
        if (used++ >= n) break;
        const double closed = amplifier::amplifier_delta(cfg, nbar, t).delta;
        const double oracle = fock::thermal_light_delta(h, nbar, t, {250, 1.0}).delta;
        worst = std::max(worst, std::abs(closed - oracle));
    }
    return make_result("amplifier.fock_delta", worst, 1e-7, used);
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    const std::uint64_t seed = options.seed;
    const bool q = options.quick;
    VerifyReport report;
    std::vector<std::function<FamilyResult()>> suites{
        [&] { return check_reconstruction(seed, q ? 50 : 500); },
        [&] { return check_relative_entropy_sign(seed, q ? 100 : 1000); },
        [&] { return check_q_limit(seed, q ? 10 : 50); },
        [&] { return check_series_order(seed, q ? 10 : 50); },
        [&] { return check_delta_identity(seed, q ? 100 : 1000); },
        [&] { return check_qubit_consistency(seed, q ? 50 : 500); },
        [&] { return check_qubit_zero_locus(); },
        [&] { return check_partition_vs_fock(seed, q ? 5 : 50); },
        [&] { return check_legendre_diagonal(); },
        [&] { return check_kernel_moments(seed, q ? 20 : 100); },
        [&] { return check_entropy_identity(); },
        [&] { return check_amplifier_locus(); },
        [&] { return check_amplifier_oracle(q ? 2 : 5); },
    };
    for (const auto& suite : suites) {
        try {
            report.families.push_back(suite());
        } catch (const std::exception& e) {
            FamilyResult r;
            r.name = "exception";
            r.passed = false;
            r.measured = std::numeric_limits<double>::infinity();
            r.detail = e.what();
            report.families.push_back(r);
        }
    }
    if (options.inject_fault && !report.families.empty()) {
        auto& f = report.families.front();
        f.measured = 10.0 * std::max(f.tolerance, 1.0);
        f.passed = false;
        f.detail = "injected fault";
    }
    return report;
}

}  // namespace entropyne
