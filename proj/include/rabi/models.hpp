// models.hpp — Hamiltonians of the asymmetric Rabi family and their ε-conditions

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rabi/hilbert.hpp"

namespace rabi {

enum class ModelId {
    qrm,
    aqrm,
    arsm,
    arsm_variant_plus,   // H_A + U a†a σ+σ-  (frequency altered in the spin-up subspace)
    arsm_variant_minus,  // H_A - U a†a σ-σ+  (frequency altered in the spin-down subspace)
    aniso_aqrm,
    two_mode,
    two_qubit,
};

std::string_view to_string(ModelId model);

/// Accepts the CLI spellings (`qrm`, `aqrm`, `arsm`, `arsm-plus`, `arsm-minus`,
/// `aniso`, `two-mode`, `two-qubit`).
std::optional<ModelId> parse_model_id(std::string_view name);

bool is_single_mode(ModelId model);

/// Physical parameters of one model instance. Fields a model does not use are ignored.
struct ModelConfig {
    double delta = 1.0;     // qubit splitting Δ
    double omega = 1.0;     // field frequency ω
    double g = 0.0;         // coupling (g₁ for the anisotropic model)
    double epsilon = 0.0;   // bias ε
    double stark_u = 0.0;   // Stark coupling U
    double lambda = 1.0;    // g₂ / g₁ for the anisotropic model

    double omega1 = 1.0;    // two-mode
    double omega2 = 1.0;
    double g1 = 0.0;        // two-mode and two-qubit couplings
    double g2 = 0.0;
    double delta1 = 1.0;    // two-qubit
    double delta2 = 1.0;
    double epsilon1 = 0.0;
    double epsilon2 = 0.0;
};

/// Throws ValidationError when `cfg` violates the model's invariants
/// (ω > 0, |U| < ω for the Stark family, λ ≠ 0 for the anisotropic model).
void validate(ModelId model, const ModelConfig& cfg);

/// Fock truncation appropriate for `model` with `n_max` levels per mode.
BasisSpec basis_for(ModelId model, std::size_t n_max);
BasisSpec default_basis(ModelId model);

OperatorMatrix build_single_mode(ModelId model, const ModelConfig& cfg, const BasisSpec& spec);
OperatorMatrix build_two_mode(const ModelConfig& cfg, const BasisSpec& spec);
OperatorMatrix build_two_qubit(const ModelConfig& cfg, const BasisSpec& spec);

/// Dispatches to the builder matching `model`.
OperatorMatrix build_hamiltonian(ModelId model, const ModelConfig& cfg, const BasisSpec& spec);

/// Returns n·ε_c, the n-th bias value at which level crossings reappear.
/// Throws ValidationError for the two-mode and two-qubit models, which have no closed form.
double epsilon_condition(ModelId model, const ModelConfig& cfg, int n);

/// Energy offset added to eigenvalues when plotting against the coupling:
/// g²/ω, or (1+λ²)g₁²/ω for the anisotropic model. Multi-mode and multi-qubit
/// models are not rescaled.
double rescale_offset(ModelId model, const ModelConfig& cfg, double g);

/// `cfg` with the swept coupling set to `g`. For the anisotropic model g is g₁.
/// For the two-mode and two-qubit models g becomes g₁ and g₂ keeps its ratio
/// to g₁ (equal couplings when g₁ was zero).
ModelConfig with_coupling(ModelId model, ModelConfig cfg, double g);

/// Same configuration with ε (and ε₁, ε₂ for two qubits) set to `epsilon`.
ModelConfig with_bias(ModelId model, ModelConfig cfg, double epsilon);

/// Energy unit used to scale tolerances: ω, or min(ω₁, ω₂) for two modes.
double energy_unit(ModelId model, const ModelConfig& cfg);

}  // namespace rabi
