// displaced.hpp — displaced-oscillator basis for the AQRM and ARSM
//
// The bias-free part ω a†a + g σ_x (a† + a) + (ε/2) σ_x is diagonal in the
// states |n_±, ±⟩ = |n_±⟩ ⊗ |±⟩ with σ_x|±⟩ = ±|±⟩ and displaced Fock states
//
//     |n_±⟩ = D(∓α)|n⟩,   D(β) = exp[β(a† − a)],   α = g/ω.
//
// The σ_z part of the Hamiltonian only couples opposite branches, through
// overlaps ⟨m₋|n₊⟩ = ⟨m|D(−2α)|n⟩ which are real and known in closed form.

#pragma once

#include <cstddef>

#include "rabi/hilbert.hpp"
#include "rabi/models.hpp"

namespace rabi {

enum class Branch { plus, minus };

struct DisplacedLabel {
    std::size_t n = 0;
    Branch branch = Branch::plus;

    friend bool operator==(const DisplacedLabel&, const DisplacedLabel&) = default;
};

/// Position of `label` in the matrix returned by build_displaced_matrix:
/// minus-branch states first (0..n_max-1), then plus-branch states.
std::size_t displaced_index(const DisplacedLabel& label, std::size_t n_max);

/// Associated Laguerre polynomial L_k^j(x) by forward three-term recurrence.
double laguerre_assoc(int k, int j, double x);

/// ⟨m₋|n₊⟩ at α = g/ω. For m ≥ n this is
///     e^{−2α²} (−2α)^{m−n} √(n!/m!) L_n^{m−n}(4α²),
/// and ⟨m₋|n₊⟩ = (−1)^{n−m} ⟨n₋|m₊⟩ otherwise.
double displaced_overlap(int m, int n, double alpha);

/// Dense table of ⟨m₋|n₊⟩ for 0 ≤ m, n < n_max, computed once and shared read-only.
class OverlapTable {
public:
    OverlapTable(double alpha, std::size_t n_max);

    double alpha() const { return alpha_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }

    /// ⟨m₋|n₊⟩; indices outside the table (including −1) yield 0.
    double operator()(long m, long n) const {
        const auto dim = static_cast<long>(entries_.rows());
        if (m < 0 || n < 0 || m >= dim || n >= dim) {
            return 0.0;
        }
        return entries_(m, n);
    }

    const Eigen::MatrixXd& matrix() const { return entries_; }

private:
    double alpha_;
    Eigen::MatrixXd entries_;
};

/// exp[β(a† − a)] on the truncated Fock space, from an eigendecomposition of
/// the Hermitian generator i(a† − a). Requires n_max ≥ 16β² + 60.
OperatorMatrix displacement_operator_numeric(double beta, const BasisSpec& spec);

/// E_n^± = nω − g²/ω ± ε/2.
double displaced_energy(std::size_t n, Branch branch, const ModelConfig& cfg);

/// Ω_mn = ⟨m₋, −| H_t |n₊, +⟩ for H_t = (Δ/2 + U a†a) σ_z (U = 0 for the AQRM).
double tunneling_element(ModelId model, int m, int n, const ModelConfig& cfg);
double tunneling_element(ModelId model, int m, int n, const ModelConfig& cfg, const OverlapTable& table);

/// Full 2·n_max Hamiltonian of the AQRM or ARSM in the displaced basis.
OperatorMatrix build_displaced_matrix(ModelId model, const ModelConfig& cfg, std::size_t n_max);

}  // namespace rabi
