#include "rabi/hilbert.hpp"

#include <cmath>
#include <string>

#include "rabi/error.hpp"

namespace rabi {

void BasisSpec::validate() const {
    if (n_max < 2) {
        throw ValidationError("Fock truncation n_max must be at least 2, got " + std::to_string(n_max));
    }
    if (n2_max == 1) {
        throw ValidationError("second-mode truncation must be at least 2");
    }
    if (qubit_count != 1 && qubit_count != 2) {
        throw ValidationError("qubit_count must be 1 or 2, got " + std::to_string(qubit_count));
    }
    if (qubit_count == 2 && is_two_mode()) {
        throw ValidationError("two qubits with two modes is not a supported basis shape");
    }
}

std::size_t BasisSpec::dimension() const {
    if (is_two_mode()) {
        return 2 * n_max * n2_max;
    }
    return n_max * (std::size_t{1} << qubit_count);
}

LadderOperators ladder_operators(std::size_t n_max) {
    BasisSpec::single(n_max).validate();
    const auto n = static_cast<Eigen::Index>(n_max);
    LadderOperators ops{OperatorMatrix::Zero(n, n), OperatorMatrix::Zero(n, n), OperatorMatrix::Zero(n, n)};
    for (Eigen::Index k = 1; k < n; ++k) {
        ops.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    ops.a_dagger = ops.a.transpose();
    for (Eigen::Index k = 0; k < n; ++k) {
        ops.number(k, k) = static_cast<double>(k);
    }
    return ops;
}

LadderOperators ladder_operators(const BasisSpec& spec) {
    spec.validate();
    return ladder_operators(spec.n_max);
}

Eigen::Matrix2cd pauli(PauliAxis axis) {
    using cd = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (axis) {
        case PauliAxis::x: m << 0, 1, 1, 0; break;
        case PauliAxis::y: m << 0, cd(0, -1), cd(0, 1), 0; break;
        case PauliAxis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

OperatorMatrix sigma_x() {
    OperatorMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

OperatorMatrix sigma_z() {
    OperatorMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

OperatorMatrix sigma_plus() {
    OperatorMatrix m(2, 2);
    m << 0, 1, 0, 0;
    return m;
}

OperatorMatrix sigma_minus() {
    OperatorMatrix m(2, 2);
    m << 0, 0, 1, 0;
    return m;
}

OperatorMatrix identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return OperatorMatrix::Identity(n, n);
}

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    const Eigen::Index rr = rhs.rows();
    const Eigen::Index rc = rhs.cols();
    OperatorMatrix out = OperatorMatrix::Zero(lhs.rows() * rr, lhs.cols() * rc);
    for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
        for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
            if (lhs(i, j) != 0.0) {
                out.block(i * rr, j * rc, rr, rc) = lhs(i, j) * rhs;
            }
        }
    }
    return out;
}

OperatorMatrix parity_operator(const BasisSpec& spec) {
    spec.validate();
    if (spec.qubit_count != 1 || spec.is_two_mode()) {
        throw ValidationError("parity operator is defined for one qubit and one mode only");
    }
    const auto n = static_cast<Eigen::Index>(spec.n_max);
    OperatorMatrix p = OperatorMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index s = 0; s < 2; ++s) {
        const double spin = s == 0 ? 1.0 : -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            p(s * n + k, s * n + k) = (k % 2 == 0) ? spin : -spin;
        }
    }
    return p;
}

double commutator_norm(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    if (lhs.rows() != lhs.cols() || rhs.rows() != rhs.cols() || lhs.rows() != rhs.rows()) {
        throw ValidationError("commutator_norm: operands must be square with equal dimensions");
    }
    return (lhs * rhs - rhs * lhs).norm();
}

}  // namespace rabi
