#include "rabi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rabi/error.hpp"

namespace rabi {

namespace {

using cd = std::complex<double>;

void require_normalized(const StateVector& psi0) {
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10) {
        throw ValidationError("initial state is not normalized (|psi|^2 = " + std::to_string(psi0.squaredNorm()) +
                              ")");
    }
}

}  // namespace

Propagator::Propagator(const OperatorMatrix& h) : eigen_(eigh(h)) {}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
    if (psi0.size() != eigen_.values.size()) {
        throw ValidationError("state dimension " + std::to_string(psi0.size()) + " does not match operator dimension " +
                              std::to_string(eigen_.values.size()));
    }
    require_normalized(psi0);
    const Eigen::MatrixXcd v = eigen_.vectors.cast<cd>();
    const Eigen::VectorXcd coeffs = v.transpose() * psi0;
    const Eigen::VectorXcd phases = (cd(0.0, -t) * eigen_.values.cast<cd>()).array().exp();
    return v * phases.cwiseProduct(coeffs);
}

std::vector<StateVector> evolve(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> times) {
    if (psi0.size() != h.rows()) {
        throw ValidationError("state dimension does not match Hamiltonian dimension");
    }
    require_normalized(psi0);
    const Propagator propagator(h);
    std::vector<StateVector> out;
    out.reserve(times.size());
    for (const double t : times) {
        out.push_back(propagator.evolve(psi0, t));
    }
    return out;
}

TunnellingFrequencies tunneling_frequencies(const ModelConfig& cfg) {
    return tunneling_frequencies(ModelId::aqrm, cfg);
}

TunnellingFrequencies tunneling_frequencies(ModelId model, const ModelConfig& cfg) {
    if (model != ModelId::aqrm && model != ModelId::arsm) {
        throw ValidationError("tunnelling frequencies are defined for the AQRM and ARSM only");
    }
    validate(model, cfg);
    const OverlapTable table(cfg.g / cfg.omega, 2);

    TunnellingFrequencies f;
    f.delta00 = cfg.epsilon;
    f.delta01 = cfg.omega - cfg.epsilon;
    f.omega00 = tunneling_element(model, 0, 0, cfg, table);
    f.omega01 = tunneling_element(model, 1, 0, cfg, table);
    f.freq00 = 0.5 * std::sqrt(f.delta00 * f.delta00 + 4.0 * f.omega00 * f.omega00);
    f.freq01 = 0.5 * std::sqrt(f.delta01 * f.delta01 + 4.0 * f.omega01 * f.omega01);

    const double eps_unit = model == ModelId::arsm ? epsilon_condition(model, cfg, 1) : cfg.omega;
    const double raw = cfg.epsilon / eps_unit;
    f.out_of_cycle = raw < 0.0 || raw > 1.0;
    f.eps_fraction = std::clamp(raw, 0.0, 1.0);
    f.omega_u = (1.0 - f.eps_fraction) * f.freq00 + f.eps_fraction * f.freq01;
    f.period_T = 2.0 * std::numbers::pi / f.omega_u;
    return f;
}

TwoLevelPopulations two_level_populations(double t, double delta, double coupling) {
    const double freq = 0.5 * std::sqrt(delta * delta + 4.0 * coupling * coupling);
    if (freq == 0.0) {
        return {1.0, 0.0};
    }
    const double c = std::cos(freq * t);
    const double s = std::sin(freq * t);
    const double inv = 1.0 / (freq * freq);
    return {c * c + 0.25 * delta * delta * inv * s * s, coupling * coupling * inv * s * s};
}

OperatorMatrix three_level_hamiltonian(const ModelConfig& cfg) {
    validate(ModelId::aqrm, cfg);
    const OverlapTable table(cfg.g / cfg.omega, 2);
    const double omega00 = tunneling_element(ModelId::aqrm, 0, 0, cfg, table);
    const double omega01 = tunneling_element(ModelId::aqrm, 1, 0, cfg, table);

    OperatorMatrix h = OperatorMatrix::Zero(3, 3);
    h(0, 0) = displaced_energy(0, Branch::plus, cfg);
    h(1, 1) = displaced_energy(0, Branch::minus, cfg);
    h(2, 2) = displaced_energy(1, Branch::minus, cfg);
    h(0, 1) = h(1, 0) = omega00;
    h(0, 2) = h(2, 0) = omega01;
    return h;
}

std::vector<DisplacedLabel> default_tracked_labels() {
    return {{0, Branch::plus}, {0, Branch::minus}, {1, Branch::plus}, {1, Branch::minus}};
}

PopulationTrace population_trace(ModelId model, const ModelConfig& cfg, std::size_t n_max, double t_max_in_T,
                                 std::size_t steps, std::span<const DisplacedLabel> labels) {
    if (steps < 1) {
        throw ValidationError("population_trace needs at least one time step");
    }
    if (!(t_max_in_T >= 0.0)) {
        throw ValidationError("t_max_in_T must be non-negative");
    }
    const TunnellingFrequencies freqs = tunneling_frequencies(model, cfg);
    if (!std::isfinite(freqs.period_T)) {
        throw ValidationError("tunnelling period is infinite (no tunnelling and no bias)");
    }

    PopulationTrace trace;
    trace.labels = labels.empty() ? default_tracked_labels()
                                  : std::vector<DisplacedLabel>(labels.begin(), labels.end());
    trace.period_T = freqs.period_T;
    trace.times = linear_grid(0.0, t_max_in_T, steps);

    const OperatorMatrix h = build_displaced_matrix(model, cfg, n_max);
    std::vector<Eigen::Index> rows;
    for (const auto& label : trace.labels) {
        rows.push_back(static_cast<Eigen::Index>(displaced_index(label, n_max)));
    }

    const Propagator propagator(h);
    const EigenSystem& sys = propagator.eigensystem();
    trace.spectral_norm = sys.values.cwiseAbs().maxCoeff();

    StateVector psi0 = StateVector::Zero(h.rows());
    psi0(static_cast<Eigen::Index>(displaced_index({0, Branch::plus}, n_max))) = 1.0;

    const Eigen::MatrixXcd v = sys.vectors.cast<cd>();
    const Eigen::MatrixXcd hc = h.cast<cd>();
    const Eigen::VectorXcd coeffs = v.transpose() * psi0;
    const double e0 = psi0.dot(hc * psi0).real();

    trace.populations.resize(static_cast<Eigen::Index>(trace.times.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i] * freqs.period_T;
        const Eigen::VectorXcd phases = (cd(0.0, -t) * sys.values.cast<cd>()).array().exp();
        const StateVector psi = v * phases.cwiseProduct(coeffs);
        for (std::size_t c = 0; c < rows.size(); ++c) {
            trace.populations(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = std::norm(psi(rows[c]));
        }
        trace.norm_drift = std::max(trace.norm_drift, std::abs(psi.squaredNorm() - 1.0));
        trace.energy_drift = std::max(trace.energy_drift, std::abs(psi.dot(hc * psi).real() - e0));
    }
    return trace;
}

double max_population(const PopulationTrace& trace, std::size_t column) {
    if (column >= static_cast<std::size_t>(trace.populations.cols())) {
        throw ValidationError("population column out of range");
    }
    return trace.populations.col(static_cast<Eigen::Index>(column)).maxCoeff();
}

}  // namespace rabi
