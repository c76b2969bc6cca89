// hilbert.hpp — truncated Fock-space and spin operator algebra
//
// Basis ordering used everywhere in this library:
//   single mode     spin ⊗ Fock            index = s * n_max + n
//   two modes       spin ⊗ mode1 ⊗ mode2
//   two qubits      qubit1 ⊗ qubit2 ⊗ Fock
// with spin index 0 = |↑⟩ (σ_z = +1) and 1 = |↓⟩.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace rabi {

/// Dense real matrix; every Hamiltonian built here is real symmetric.
using OperatorMatrix = Eigen::MatrixXd;

/// Complex state amplitudes in the same ordering as the operator it evolves under.
using StateVector = Eigen::VectorXcd;

/// Default number of Fock states for single-mode work at g/ω ≤ 1.5.
inline constexpr std::size_t kDefaultFockLevels = 120;
inline constexpr std::size_t kDefaultTwoModeLevels = 24;
inline constexpr std::size_t kDefaultTwoQubitLevels = 80;

/// Truncation of the computational Hilbert space.
struct BasisSpec {
    std::size_t n_max = kDefaultFockLevels;  // Fock states of mode 1, indices 0..n_max-1
    std::size_t n2_max = 0;                  // second mode; 0 means single mode
    int qubit_count = 1;

    static BasisSpec single(std::size_t n_max) { return {n_max, 0, 1}; }
    static BasisSpec two_mode(std::size_t n1, std::size_t n2) { return {n1, n2, 1}; }
    static BasisSpec two_qubit(std::size_t n_max) { return {n_max, 0, 2}; }

    bool is_two_mode() const { return n2_max != 0; }

    /// Throws ValidationError unless every truncation is ≥ 2 and the shape is supported.
    void validate() const;

    std::size_t dimension() const;
};

struct LadderOperators {
    OperatorMatrix a;
    OperatorMatrix a_dagger;
    OperatorMatrix number;
};

/// a, a† and a†a on the first `n_max` Fock states.
LadderOperators ladder_operators(std::size_t n_max);
LadderOperators ladder_operators(const BasisSpec& spec);

enum class PauliAxis { x, y, z };

/// Standard Pauli matrix in the σ_z eigenbasis. Complex because of σ_y; the
/// Hamiltonian builders use the real helpers below.
Eigen::Matrix2cd pauli(PauliAxis axis);

OperatorMatrix sigma_x();
OperatorMatrix sigma_z();
/// σ_+ = |↑⟩⟨↓| and σ_- = |↓⟩⟨↑|, both real.
OperatorMatrix sigma_plus();
OperatorMatrix sigma_minus();

OperatorMatrix identity(std::size_t dim);

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

/// P = σ_z exp(iπ a†a) for one qubit and one mode: diag(s·(-1)^n).
OperatorMatrix parity_operator(const BasisSpec& spec);

/// Frobenius norm of [A, B].
double commutator_norm(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

}  // namespace rabi
