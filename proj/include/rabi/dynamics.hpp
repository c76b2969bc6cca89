// dynamics.hpp — tunnelling dynamics in the displaced-oscillator basis

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rabi/displaced.hpp"
#include "rabi/hilbert.hpp"
#include "rabi/models.hpp"
#include "rabi/spectra.hpp"

namespace rabi {

/// Exact propagator exp(−iHt) from one eigendecomposition of H.
class Propagator {
public:
    explicit Propagator(const OperatorMatrix& h);

    /// ψ(t) for ψ(0) = psi0. psi0 must be normalized to within 1e-10.
    StateVector evolve(const StateVector& psi0, double t) const;

    const EigenSystem& eigensystem() const { return eigen_; }

private:
    EigenSystem eigen_;
};

std::vector<StateVector> evolve(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> times);

struct TunnellingFrequencies {
    double delta00 = 0.0;   // ε
    double delta01 = 0.0;   // ω − ε
    double omega00 = 0.0;   // Ω₀₀ = ⟨0₋|H_t|0₊⟩
    double omega01 = 0.0;   // coupling between |0₊,+⟩ and |1₋,−⟩
    double freq00 = 0.0;    // ½√(δ₀₀² + 4Ω₀₀²)
    double freq01 = 0.0;    // ½√(δ₀₁² + 4Ω₀₁²)
    double omega_u = 0.0;   // (1 − ε̃) freq00 + ε̃ freq01
    double period_T = 0.0;  // 2π / ω_u
    double eps_fraction = 0.0;  // ε̃ after clamping to [0, 1]
    bool out_of_cycle = false;  // unclamped ε̃ left [0, 1]
};

/// Frequencies of |0₊,+⟩ ↔ |0₋,−⟩ and |0₊,+⟩ ↔ |1₋,−⟩. For the AQRM ε̃ = ε/ω;
/// for the ARSM ε̃ = ε/ε_c and the Ω include the Stark contribution.
TunnellingFrequencies tunneling_frequencies(const ModelConfig& cfg);
TunnellingFrequencies tunneling_frequencies(ModelId model, const ModelConfig& cfg);

struct TwoLevelPopulations {
    double initial = 1.0;  // P_m
    double target = 0.0;   // P_n
};

/// Closed-form populations of a two-level system with gap `delta` and coupling
/// `coupling`, starting in the initial level.
TwoLevelPopulations two_level_populations(double t, double delta, double coupling);

/// 3×3 model on (|0₊,+⟩, |0₋,−⟩, |1₋,−⟩).
OperatorMatrix three_level_hamiltonian(const ModelConfig& cfg);

/// |0₊,+⟩, |0₋,−⟩, |1₊,+⟩, |1₋,−⟩.
std::vector<DisplacedLabel> default_tracked_labels();

struct PopulationTrace {
    std::vector<double> times;  // in units of period_T
    std::vector<DisplacedLabel> labels;
    Eigen::MatrixXd populations;  // |times| × |labels|
    double period_T = 0.0;
    double norm_drift = 0.0;    // max |‖ψ(t)‖² − 1|
    double energy_drift = 0.0;  // max |⟨H⟩(t) − ⟨H⟩(0)|
    double spectral_norm = 0.0; // ‖H‖₂
};

/// Default truncation and sampling for dynamics runs.
inline constexpr std::size_t kDefaultDynamicsSteps = 2000;

/// Evolves |0₊,+⟩ under the displaced-basis AQRM or ARSM on
/// `steps` + 1 evenly spaced times in [0, t_max_in_T · T].
PopulationTrace population_trace(ModelId model, const ModelConfig& cfg, std::size_t n_max, double t_max_in_T,
                                 std::size_t steps, std::span<const DisplacedLabel> labels = {});

/// Largest population of tracked label `column` over the trace.
double max_population(const PopulationTrace& trace, std::size_t column);

}  // namespace rabi
