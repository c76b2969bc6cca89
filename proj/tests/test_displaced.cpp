#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "rabi/displaced.hpp"
#include "rabi/error.hpp"
#include "rabi/spectra.hpp"

using namespace rabi;

namespace {

struct SeriesValue {
    double value = 0.0;
    double magnitude = 0.0;  // Σ |terms|, bounds the cancellation error
};

// Σ_i (−1)^i C(k+j, k−i) x^i / i!
SeriesValue laguerre_series(int k, int j, double x) {
    SeriesValue out;
    for (int i = 0; i <= k; ++i) {
        const double binom = std::exp(std::lgamma(k + j + 1.0) - std::lgamma(k - i + 1.0) - std::lgamma(j + i + 1.0));
        const double term = (i % 2 ? -1.0 : 1.0) * binom * std::pow(x, i) / std::tgamma(i + 1.0);
        out.value += term;
        out.magnitude += std::abs(term);
    }
    return out;
}

ModelConfig aqrm_config(double delta, double g, double eps) {
    ModelConfig cfg;
    cfg.delta = delta;
    cfg.omega = 1.0;
    cfg.g = g;
    cfg.epsilon = eps;
    return cfg;
}

}  // namespace

TEST_CASE("associated Laguerre values") {
    for (const int j : {0, 1, 5}) {
        for (const double x : {-1.0, 0.0, 2.5}) {
            CHECK(laguerre_assoc(0, j, x) == 1.0);
        }
    }
    CHECK(laguerre_assoc(1, 2, 3.0) == 0.0);
    CHECK(laguerre_assoc(2, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(laguerre_series(2, 0, 2.0).value == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("Laguerre recurrence agrees with the power series") {
    for (int k = 0; k <= 12; ++k) {
        for (int j = 0; j <= 8; ++j) {
            for (const double x : {0.04, 0.5, 1.0, 4.0, 9.0}) {
                const SeriesValue series = laguerre_series(k, j, x);
                CHECK(std::abs(laguerre_assoc(k, j, x) - series.value) <= 1e-13 * series.magnitude);
            }
        }
    }
}

TEST_CASE("overlap special values") {
    CHECK(displaced_overlap(0, 0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(displaced_overlap(1, 0, 0.5) == doctest::Approx(-std::exp(-0.5)).epsilon(1e-15));
    for (int m = 0; m < 6; ++m) {
        for (int n = 0; n < 6; ++n) {
            CHECK(displaced_overlap(m, n, 0.0) == (m == n ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("overlap reflection identity") {
    for (const double alpha : {0.1, 0.5, 1.0, 1.5}) {
        for (int m = 0; m <= 20; ++m) {
            for (int n = 0; n <= 20; ++n) {
                const double sign = (n - m) % 2 == 0 ? 1.0 : -1.0;
                CHECK(std::abs(displaced_overlap(m, n, alpha) - sign * displaced_overlap(n, m, alpha)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("overlaps equal the numeric displacement matrix") {
    const BasisSpec spec = BasisSpec::single(256);
    double worst = 0.0;
    for (const double alpha : {0.25, 0.5, 1.0, 1.5}) {
        const OperatorMatrix d = displacement_operator_numeric(-2.0 * alpha, spec);
        for (int m = 0; m <= 12; ++m) {
            for (int n = 0; n <= 12; ++n) {
                worst = std::max(worst, std::abs(displaced_overlap(m, n, alpha) - d(m, n)));
            }
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("numeric displacement operator") {
    const BasisSpec spec = BasisSpec::single(200);
    const OperatorMatrix zero = displacement_operator_numeric(0.0, spec);
    CHECK((zero - OperatorMatrix::Identity(200, 200)).cwiseAbs().maxCoeff() < 1e-12);

    const OperatorMatrix plus = displacement_operator_numeric(1.0, spec);
    const OperatorMatrix minus = displacement_operator_numeric(-1.0, spec);
    const OperatorMatrix product = plus * minus;
    CHECK((product.topLeftCorner(100, 100) - OperatorMatrix::Identity(100, 100)).cwiseAbs().maxCoeff() < 1e-10);

    const OperatorMatrix two = displacement_operator_numeric(2.0, spec);
    CHECK(std::abs(two(0, 0) - std::exp(-2.0)) < 1e-10);

    CHECK_THROWS_AS(displacement_operator_numeric(3.0, BasisSpec::single(150)), ValidationError);
}

TEST_CASE("overlap table is nearly orthogonal on its low block") {
    // at α = 1.5 states near n = 60 leak past 120 levels, so the block shrinks
    for (const auto& [alpha, block] : {std::pair{0.25, 60}, {0.5, 60}, {1.0, 60}, {1.5, 40}}) {
        const OverlapTable table(alpha, 120);
        const Eigen::MatrixXd t = table.matrix();
        const Eigen::MatrixXd gram = (t * t.transpose()).topLeftCorner(block, block);
        CHECK((gram - Eigen::MatrixXd::Identity(block, block)).cwiseAbs().rowwise().sum().maxCoeff() <= 1e-8);

        const OperatorMatrix d = displacement_operator_numeric(-2.0 * alpha, BasisSpec::single(400));
        CHECK((t - d.topLeftCorner(120, 120)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(table(-1, 3) == 0.0);
        CHECK(table(3, 120) == 0.0);
        CHECK(table(4, 7) == displaced_overlap(4, 7, alpha));
    }
}

TEST_CASE("displaced energies") {
    CHECK(displaced_energy(0, Branch::plus, aqrm_config(1.0, 1.0, 0.0)) == -1.0);
    CHECK(displaced_energy(2, Branch::minus, aqrm_config(1.0, 0.0, 0.4)) == doctest::Approx(1.8).epsilon(1e-15));
    for (const int m : {1, 2, 3}) {
        const ModelConfig cfg = aqrm_config(1.0, 0.7, m * 1.0);
        for (std::size_t n = 0; n < 10; ++n) {
            CHECK(displaced_energy(n, Branch::plus, cfg) ==
                  doctest::Approx(displaced_energy(n + m, Branch::minus, cfg)).epsilon(1e-14));
        }
    }
}

TEST_CASE("tunnelling elements") {
    const ModelConfig cfg = aqrm_config(0.1, 1.0, 0.0);
    CHECK(tunneling_element(ModelId::aqrm, 0, 0, cfg) == doctest::Approx(0.05 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(tunneling_element(ModelId::aqrm, 0, 0, cfg) == doctest::Approx(0.00676676).epsilon(1e-6));

    ModelConfig rs = aqrm_config(0.8, 0.7, 0.2);
    for (int m = 0; m <= 10; ++m) {
        for (int n = 0; n <= 10; ++n) {
            CHECK(tunneling_element(ModelId::arsm, m, n, rs) == tunneling_element(ModelId::aqrm, m, n, rs));
        }
    }
    rs.stark_u = 0.5;
    const double alpha = 0.7;
    const double expected = (0.4 - 0.5 * alpha * alpha) * displaced_overlap(0, 0, alpha);
    CHECK(tunneling_element(ModelId::arsm, 0, 0, rs) == doctest::Approx(expected).epsilon(1e-14));

    // ⟨m₋|a†a|n₊⟩ from the numeric displacement matrix: D(α)† N D(−α)
    const BasisSpec spec = BasisSpec::single(160);
    const OperatorMatrix d_minus = displacement_operator_numeric(alpha, spec);   // |n₋⟩ = D(α)|n⟩
    const OperatorMatrix d_plus = displacement_operator_numeric(-alpha, spec);   // |n₊⟩ = D(−α)|n⟩
    const auto ops = ladder_operators(spec);
    const OperatorMatrix number_elements = d_minus.transpose() * ops.number * d_plus;
    const OverlapTable table(alpha, 40);
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            const double oracle = 0.4 * displaced_overlap(m, n, alpha) + 0.5 * number_elements(m, n);
            CHECK(std::abs(tunneling_element(ModelId::arsm, m, n, rs, table) - oracle) < 1e-10);
        }
    }
    CHECK_THROWS_AS(tunneling_element(ModelId::aniso_aqrm, 0, 0, rs), ValidationError);
}

TEST_CASE("displaced matrix layout") {
    CHECK(displaced_index({3, Branch::minus}, 10) == 3);
    CHECK(displaced_index({3, Branch::plus}, 10) == 13);
    CHECK_THROWS_AS(displaced_index({10, Branch::plus}, 10), ValidationError);

    const ModelConfig cfg = aqrm_config(0.6, 0.9, 0.3);
    const OperatorMatrix h = build_displaced_matrix(ModelId::aqrm, cfg, 20);
    CHECK(h == h.transpose());
    for (int m = 0; m < 20; ++m) {
        for (int n = 0; n < 20; ++n) {
            CHECK(h(m, 20 + n) == doctest::Approx(tunneling_element(ModelId::aqrm, m, n, cfg)).epsilon(1e-14));
        }
        CHECK(h(m, m) == displaced_energy(static_cast<std::size_t>(m), Branch::minus, cfg));
        CHECK(h(20 + m, 20 + m) == displaced_energy(static_cast<std::size_t>(m), Branch::plus, cfg));
    }
}

TEST_CASE("zero splitting gives the displaced energies exactly") {
    const ModelConfig cfg = aqrm_config(0.0, 0.8, 0.3);
    const std::size_t n = 15;
    const OperatorMatrix h = build_displaced_matrix(ModelId::aqrm, cfg, n);
    CHECK(h.topRightCorner(n, n).isZero(0.0));
    std::vector<double> expected;
    for (std::size_t k = 0; k < n; ++k) {
        expected.push_back(displaced_energy(k, Branch::plus, cfg));
        expected.push_back(displaced_energy(k, Branch::minus, cfg));
    }
    std::sort(expected.begin(), expected.end());
    const Eigen::VectorXd got = eigenvalues(h);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(got(static_cast<Eigen::Index>(i)) == doctest::Approx(expected[i]).epsilon(1e-14));
    }
}

TEST_CASE("displaced and Fock bases give the same spectrum") {
    const ModelConfig a = aqrm_config(1.0, 0.8, 0.3);
    const Eigen::VectorXd fock = lowest_levels(ModelId::aqrm, a, BasisSpec::single(120), 10);
    const Eigen::VectorXd disp = eigenvalues(build_displaced_matrix(ModelId::aqrm, a, 120)).head(10);
    CHECK((fock - disp).cwiseAbs().maxCoeff() < 1e-6);

    ModelConfig r = aqrm_config(0.8, 1.0, 0.0);
    r.stark_u = 0.5;
    const Eigen::VectorXd fock_r = lowest_levels(ModelId::arsm, r, BasisSpec::single(120), 10);
    const Eigen::VectorXd disp_r = eigenvalues(build_displaced_matrix(ModelId::arsm, r, 120)).head(10);
    CHECK((fock_r - disp_r).cwiseAbs().maxCoeff() < 1e-6);
}
