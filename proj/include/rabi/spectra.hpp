// spectra.hpp — eigensolution, coupling sweeps and level-crossing classification

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "rabi/hilbert.hpp"
#include "rabi/models.hpp"

namespace rabi {

/// Ascending eigenvalues with orthonormal eigenvectors in matching columns.
/// Each eigenvector's largest-magnitude entry is positive.
struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Full decomposition of a symmetric matrix. Throws ValidationError if
/// `h` is not square or not exactly symmetric.
EigenSystem eigh(const OperatorMatrix& h);

/// Eigenvalues only, ascending.
Eigen::VectorXd eigenvalues(const OperatorMatrix& h);

/// Lowest `k` eigenvalues of `model` at `cfg` on `spec`.
Eigen::VectorXd lowest_levels(ModelId model, const ModelConfig& cfg, const BasisSpec& spec, std::size_t k);

/// Lowest `k` rescaled levels (E + rescale_offset) over an evenly spaced coupling grid.
struct SpectrumSweep {
    ModelId model = ModelId::aqrm;
    ModelConfig cfg;
    std::vector<double> g_grid;
    std::size_t k = 0;
    Eigen::MatrixXd energies;     // |g_grid| × k, rescaled
    std::vector<double> offsets;  // rescale offset applied to each row
};

/// `steps` intervals, i.e. steps + 1 grid points from g_min to g_max inclusive.
SpectrumSweep sweep(ModelId model, const ModelConfig& cfg, double g_min, double g_max, std::size_t steps,
                    std::size_t k, const BasisSpec& spec);

std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

/// Minimum of λ_{i+1}(g) − λ_i(g) found by golden-section search.
struct GapMinimum {
    double g_star = 0.0;
    double gap = 0.0;
    bool at_boundary = false;  // the minimum sits on an end of the bracket (monotone gap)
};

/// Relative g-resolution of min_gap's golden-section search.
inline constexpr double kGapResolution = 1e-10;

GapMinimum min_gap(ModelId model, const ModelConfig& cfg, std::size_t lower_level, double g_lo, double g_hi,
                   const BasisSpec& spec);

/// The larger truncation used to confirm a result: n + max(8, n/3).
constexpr std::size_t refined_truncation(std::size_t n_max) { return n_max + std::max<std::size_t>(8, n_max / 3); }

enum class Verdict { crossing, avoided };

const char* to_string(Verdict verdict);

/// Default crossing threshold, in units of the model's energy unit.
inline constexpr double kCrossingTolerance = 1e-8;

/// Gap fluctuations below this fraction of the crossing threshold are round-off
/// and do not count as growth under truncation refinement.
inline constexpr double kRefinementNoiseFraction = 0.1;

struct CrossingRecord {
    std::size_t lower_level = 0;  // pair (lower_level, lower_level + 1)
    double g_star = 0.0;
    double e_star = 0.0;          // rescaled mean energy of the pair at g_star
    double min_gap = 0.0;         // at the largest truncation
    Verdict verdict = Verdict::avoided;
    std::vector<double> refinement_trace;  // min gap per truncation, ascending truncations
    bool at_boundary = false;
};

/// Crossing iff the gap stays below `crossing_tol`·unit at every truncation and
/// does not grow as the truncation increases. `truncations` empty means
/// {spec.n_max, refined_truncation(spec.n_max)}.
CrossingRecord classify_crossing(ModelId model, const ModelConfig& cfg, std::size_t lower_level, double g_lo,
                                 double g_hi, const BasisSpec& spec, std::span<const std::size_t> truncations = {},
                                 double crossing_tol = kCrossingTolerance);

/// Every interior gap minimum of adjacent pairs among the lowest `levels`
/// states on a coupling grid, each refined and classified.
struct CrossingScan {
    std::vector<CrossingRecord> records;
    std::vector<double> pair_min_gap;  // smallest gap seen per pair over the whole range
    SpectrumSweep grid;                // the coarse sweep the minima were bracketed on
    std::size_t crossing_count() const;
};

CrossingScan find_crossings(ModelId model, const ModelConfig& cfg, double g_min, double g_max, std::size_t steps,
                            std::size_t levels, const BasisSpec& spec, std::span<const std::size_t> truncations = {},
                            double crossing_tol = kCrossingTolerance);

/// Levels whose unrescaled energy varies by less than `tol` over the whole sweep.
std::vector<std::size_t> scan_flat_levels(const SpectrumSweep& sweep, double tol);

/// Default flat-level tolerance, in units of ω.
inline constexpr double kFlatTolerance = 1e-6;

struct ConvergenceReport {
    std::vector<std::size_t> truncations;
    std::vector<Eigen::VectorXd> values;  // lowest k per truncation
    std::vector<double> drift;            // max |Δλ| between successive truncations
    bool converged = false;               // last drift below tolerance
};

/// Default convergence threshold, in units of the model's energy unit.
inline constexpr double kConvergenceTolerance = 1e-8;

ConvergenceReport convergence_check(ModelId model, const ModelConfig& cfg, double g, std::size_t k,
                                    std::span<const std::size_t> truncations,
                                    double tol = kConvergenceTolerance);

}  // namespace rabi
