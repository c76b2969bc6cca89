#include "rabi/displaced.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "rabi/error.hpp"

namespace rabi {

std::size_t displaced_index(const DisplacedLabel& label, std::size_t n_max) {
    if (label.n >= n_max) {
        throw ValidationError("displaced label n = " + std::to_string(label.n) +
                              " outside truncation n_max = " + std::to_string(n_max));
    }
    return label.branch == Branch::minus ? label.n : n_max + label.n;
}

double laguerre_assoc(int k, int j, double x) {
    if (k <= 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = 1.0 + j - x;
    for (int i = 2; i <= k; ++i) {
        const double next = ((2.0 * i - 1.0 + j - x) * curr - (i - 1.0 + j) * prev) / i;
        prev = curr;
        curr = next;
    }
    return curr;
}

double displaced_overlap(int m, int n, double alpha) {
    if (m < n) {
        const double reflected = displaced_overlap(n, m, alpha);
        return ((n - m) % 2 == 0) ? reflected : -reflected;
    }
    // (−2α)^{m−n} √(n!/m!) as a running product keeps factorials out of range trouble.
    double prefactor = std::exp(-2.0 * alpha * alpha);
    for (int i = n + 1; i <= m; ++i) {
        prefactor *= -2.0 * alpha / std::sqrt(static_cast<double>(i));
    }
    return prefactor * laguerre_assoc(n, m - n, 4.0 * alpha * alpha);
}

OverlapTable::OverlapTable(double alpha, std::size_t n_max) : alpha_(alpha) {
    const auto dim = static_cast<Eigen::Index>(n_max);
    entries_.resize(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n <= m; ++n) {
            const double value = displaced_overlap(static_cast<int>(m), static_cast<int>(n), alpha);
            entries_(m, n) = value;
            entries_(n, m) = ((m - n) % 2 == 0) ? value : -value;
        }
    }
}

OperatorMatrix displacement_operator_numeric(double beta, const BasisSpec& spec) {
    spec.validate();
    const double required = 16.0 * beta * beta + 60.0;
    if (static_cast<double>(spec.n_max) < required) {
        throw ValidationError("displacement_operator_numeric: n_max = " + std::to_string(spec.n_max) +
                              " is below the required 16*beta^2 + 60 = " + std::to_string(required));
    }
    const auto n = static_cast<Eigen::Index>(spec.n_max);
    if (beta == 0.0) {
        return OperatorMatrix::Identity(n, n);
    }
    const auto ops = ladder_operators(spec.n_max);
    const Eigen::MatrixXcd generator =
        std::complex<double>(0.0, 1.0) * (ops.a_dagger - ops.a).cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(generator);
    // exp[β(a† − a)] = exp[−iβ S] with S = i(a† − a) Hermitian.
    const Eigen::VectorXcd phases =
        (std::complex<double>(0.0, -beta) * solver.eigenvalues().cast<std::complex<double>>()).array().exp();
    const Eigen::MatrixXcd& v = solver.eigenvectors();
    const Eigen::MatrixXcd result = v * phases.asDiagonal() * v.adjoint();
    return result.real();
}

double displaced_energy(std::size_t n, Branch branch, const ModelConfig& cfg) {
    const double sign = branch == Branch::plus ? 1.0 : -1.0;
    return static_cast<double>(n) * cfg.omega - cfg.g * cfg.g / cfg.omega + sign * 0.5 * cfg.epsilon;
}

namespace {

void require_displaced_model(ModelId model) {
    if (model != ModelId::aqrm && model != ModelId::arsm && model != ModelId::qrm) {
        throw ValidationError(std::string("displaced basis is implemented for the AQRM and ARSM, not ") +
                              std::string(to_string(model)));
    }
}

// ⟨m₋| a†a |n₊⟩ in terms of overlaps; terms with a −1 index vanish.
double number_element(int m, int n, double alpha, const OverlapTable& table) {
    const double sm = std::sqrt(static_cast<double>(m));
    const double sn = std::sqrt(static_cast<double>(n));
    return alpha * sn * table(m, n - 1) - alpha * sm * table(m - 1, n) + sm * sn * table(m - 1, n - 1) -
           alpha * alpha * table(m, n);
}

}  // namespace

double tunneling_element(ModelId model, int m, int n, const ModelConfig& cfg, const OverlapTable& table) {
    require_displaced_model(model);
    double value = 0.5 * cfg.delta * table(m, n);
    if (model == ModelId::arsm) {
        value += cfg.stark_u * number_element(m, n, table.alpha(), table);
    }
    return value;
}

double tunneling_element(ModelId model, int m, int n, const ModelConfig& cfg) {
    if (m < 0 || n < 0) {
        throw ValidationError("tunneling_element: indices must be non-negative");
    }
    validate(model, cfg);
    const OverlapTable table(cfg.g / cfg.omega, static_cast<std::size_t>(std::max(m, n)) + 1);
    return tunneling_element(model, m, n, cfg, table);
}

OperatorMatrix build_displaced_matrix(ModelId model, const ModelConfig& cfg, std::size_t n_max) {
    require_displaced_model(model);
    validate(model, cfg);
    BasisSpec::single(n_max).validate();

    ModelConfig effective = cfg;
    if (model == ModelId::qrm) {
        effective.epsilon = 0.0;
    }
    const OverlapTable table(cfg.g / cfg.omega, n_max);
    const auto dim = static_cast<Eigen::Index>(n_max);
    OperatorMatrix h = OperatorMatrix::Zero(2 * dim, 2 * dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto level = static_cast<std::size_t>(k);
        h(k, k) = displaced_energy(level, Branch::minus, effective);
        h(dim + k, dim + k) = displaced_energy(level, Branch::plus, effective);
    }
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double omega_mn =
                tunneling_element(model, static_cast<int>(m), static_cast<int>(n), effective, table);
            h(m, dim + n) = omega_mn;
            h(dim + n, m) = omega_mn;
        }
    }
    return h;
}

}  // namespace rabi
