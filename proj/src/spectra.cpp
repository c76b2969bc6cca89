#include "rabi/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "rabi/error.hpp"

namespace rabi {

namespace {

void require_symmetric(const OperatorMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ValidationError("eigensolver needs a non-empty square matrix");
    }
    if (h != h.transpose()) {
        throw ValidationError("eigensolver input is not symmetric");
    }
}

double gap_at(ModelId model, const ModelConfig& cfg, std::size_t lower, double g, const BasisSpec& spec) {
    const Eigen::VectorXd levels = lowest_levels(model, with_coupling(model, cfg, g), spec, lower + 2);
    return levels(static_cast<Eigen::Index>(lower) + 1) - levels(static_cast<Eigen::Index>(lower));
}

std::vector<std::size_t> resolve_truncations(const BasisSpec& spec, std::span<const std::size_t> truncations) {
    if (truncations.empty()) {
        return {spec.n_max, refined_truncation(spec.n_max)};
    }
    std::vector<std::size_t> out(truncations.begin(), truncations.end());
    if (!std::is_sorted(out.begin(), out.end())) {
        throw ValidationError("truncations must be ascending");
    }
    return out;
}

}  // namespace

EigenSystem eigh(const OperatorMatrix& h) {
    require_symmetric(h);
    const Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalQualityError("symmetric eigensolver did not converge");
    }
    EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < sys.vectors.cols(); ++k) {
        Eigen::Index pivot = 0;
        sys.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
        if (sys.vectors(pivot, k) < 0.0) {
            sys.vectors.col(k) *= -1.0;
        }
    }
    return sys;
}

Eigen::VectorXd eigenvalues(const OperatorMatrix& h) {
    require_symmetric(h);
    const Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalQualityError("symmetric eigensolver did not converge");
    }
    return solver.eigenvalues();
}

Eigen::VectorXd lowest_levels(ModelId model, const ModelConfig& cfg, const BasisSpec& spec, std::size_t k) {
    const OperatorMatrix h = build_hamiltonian(model, cfg, spec);
    if (k > static_cast<std::size_t>(h.rows())) {
        throw ValidationError("requested " + std::to_string(k) + " levels from a " + std::to_string(h.rows()) +
                              "-dimensional basis");
    }
    return eigenvalues(h).head(static_cast<Eigen::Index>(k));
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        grid[i] = i == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    }
    return grid;
}

SpectrumSweep sweep(ModelId model, const ModelConfig& cfg, double g_min, double g_max, std::size_t steps,
                    std::size_t k, const BasisSpec& spec) {
    if (!(g_min <= g_max)) {
        throw ValidationError("sweep needs g_min <= g_max");
    }
    if (steps < 2) {
        throw ValidationError("sweep needs at least 2 steps");
    }
    if (k == 0 || k > spec.dimension()) {
        throw ValidationError("level count must lie in [1, basis dimension]");
    }
    validate(model, cfg);

    SpectrumSweep out{model, cfg, linear_grid(g_min, g_max, steps), k, {}, {}};
    out.energies.resize(static_cast<Eigen::Index>(out.g_grid.size()), static_cast<Eigen::Index>(k));
    out.offsets.resize(out.g_grid.size());
    for (std::size_t r = 0; r < out.g_grid.size(); ++r) {
        const double g = out.g_grid[r];
        const double offset = rescale_offset(model, with_coupling(model, cfg, g), g);
        out.offsets[r] = offset;
        out.energies.row(static_cast<Eigen::Index>(r)) =
            (lowest_levels(model, with_coupling(model, cfg, g), spec, k).array() + offset).transpose();
    }
    return out;
}

GapMinimum min_gap(ModelId model, const ModelConfig& cfg, std::size_t lower_level, double g_lo, double g_hi,
                   const BasisSpec& spec) {
    if (!(g_lo < g_hi)) {
        throw ValidationError("min_gap needs g_lo < g_hi");
    }
    validate(model, cfg);
    auto gap = [&](double g) { return gap_at(model, cfg, lower_level, g, spec); };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = g_lo;
    double b = g_hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c);
    double fd = gap(d);
    for (int iter = 0; iter < 200; ++iter) {
        const double scale = std::max({std::abs(a), std::abs(b), 1e-4});
        if (b - a <= kGapResolution * scale) {
            break;
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap(d);
        }
    }
    GapMinimum best = fc < fd ? GapMinimum{c, fc, false} : GapMinimum{d, fd, false};

    // A monotone gap drives the search onto an end of the bracket.
    for (const double edge : {g_lo, g_hi}) {
        if (std::abs(best.g_star - edge) <= 1e3 * kGapResolution * std::max(std::abs(edge), 1e-4)) {
            const double f_edge = gap(edge);
            if (f_edge <= best.gap) {
                best = GapMinimum{edge, f_edge, true};
            } else {
                best.at_boundary = true;
            }
        }
    }
    return best;
}

const char* to_string(Verdict verdict) {
    return verdict == Verdict::crossing ? "crossing" : "avoided";
}

CrossingRecord classify_crossing(ModelId model, const ModelConfig& cfg, std::size_t lower_level, double g_lo,
                                 double g_hi, const BasisSpec& spec, std::span<const std::size_t> truncations,
                                 double crossing_tol) {
    const std::vector<std::size_t> levels = resolve_truncations(spec, truncations);
    const double unit = energy_unit(model, cfg);
    const double threshold = crossing_tol * unit;
    const double noise = kRefinementNoiseFraction * threshold;

    CrossingRecord record;
    record.lower_level = lower_level;
    GapMinimum found;
    BasisSpec last_spec = spec;
    for (const std::size_t n_max : levels) {
        last_spec = basis_for(model, n_max);
        if (model == ModelId::two_mode && spec.is_two_mode()) {
            last_spec.n2_max = spec.n2_max + (n_max - spec.n_max);
        }
        found = min_gap(model, cfg, lower_level, g_lo, g_hi, last_spec);
        record.refinement_trace.push_back(found.gap);
    }
    record.g_star = found.g_star;
    record.min_gap = found.gap;
    record.at_boundary = found.at_boundary;

    const ModelConfig at_star = with_coupling(model, cfg, found.g_star);
    const Eigen::VectorXd pair = lowest_levels(model, at_star, last_spec, lower_level + 2);
    record.e_star = 0.5 * (pair(static_cast<Eigen::Index>(lower_level)) +
                           pair(static_cast<Eigen::Index>(lower_level) + 1)) +
                    rescale_offset(model, at_star, found.g_star);

    bool crossing = !found.at_boundary;
    for (std::size_t i = 0; i < record.refinement_trace.size(); ++i) {
        const double gap = record.refinement_trace[i];
        if (!(gap < threshold)) {
            crossing = false;
        }
        if (i > 0 && gap > std::max(record.refinement_trace[i - 1], noise)) {
            crossing = false;
        }
    }
    record.verdict = crossing ? Verdict::crossing : Verdict::avoided;
    return record;
}

std::size_t CrossingScan::crossing_count() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const CrossingRecord& r) {
        return r.verdict == Verdict::crossing;
    }));
}

CrossingScan find_crossings(ModelId model, const ModelConfig& cfg, double g_min, double g_max, std::size_t steps,
                            std::size_t levels, const BasisSpec& spec, std::span<const std::size_t> truncations,
                            double crossing_tol) {
    if (levels < 2) {
        throw ValidationError("crossing search needs at least 2 levels");
    }
    CrossingScan scan;
    scan.grid = sweep(model, cfg, g_min, g_max, steps, levels, spec);
    const SpectrumSweep& grid = scan.grid;
    const auto rows = static_cast<Eigen::Index>(grid.g_grid.size());
    scan.pair_min_gap.assign(levels - 1, std::numeric_limits<double>::infinity());
    for (std::size_t pair = 0; pair + 1 < levels; ++pair) {
        const auto i = static_cast<Eigen::Index>(pair);
        const Eigen::VectorXd gaps = grid.energies.col(i + 1) - grid.energies.col(i);
        scan.pair_min_gap[pair] = gaps.minCoeff();
        for (Eigen::Index r = 1; r + 1 < rows; ++r) {
            if (gaps(r) < gaps(r - 1) && gaps(r) <= gaps(r + 1)) {
                CrossingRecord record = classify_crossing(model, cfg, pair, grid.g_grid[r - 1], grid.g_grid[r + 1],
                                                          spec, truncations, crossing_tol);
                scan.pair_min_gap[pair] = std::min(scan.pair_min_gap[pair], record.refinement_trace.front());
                scan.records.push_back(std::move(record));
            }
        }
    }
    std::stable_sort(scan.records.begin(), scan.records.end(),
                     [](const CrossingRecord& lhs, const CrossingRecord& rhs) { return lhs.g_star < rhs.g_star; });
    return scan;
}

std::vector<std::size_t> scan_flat_levels(const SpectrumSweep& sweep, double tol) {
    std::vector<std::size_t> flat;
    const auto rows = sweep.energies.rows();
    for (Eigen::Index k = 0; k < sweep.energies.cols(); ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double e = sweep.energies(r, k) - sweep.offsets[static_cast<std::size_t>(r)];
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        if (hi - lo < tol) {
            flat.push_back(static_cast<std::size_t>(k));
        }
    }
    return flat;
}

ConvergenceReport convergence_check(ModelId model, const ModelConfig& cfg, double g, std::size_t k,
                                    std::span<const std::size_t> truncations, double tol) {
    if (truncations.size() < 2 || !std::is_sorted(truncations.begin(), truncations.end())) {
        throw ValidationError("convergence_check needs at least two ascending truncations");
    }
    const ModelConfig at_g = with_coupling(model, cfg, g);
    ConvergenceReport report;
    for (const std::size_t n_max : truncations) {
        report.truncations.push_back(n_max);
        report.values.push_back(lowest_levels(model, at_g, basis_for(model, n_max), k));
        if (report.values.size() > 1) {
            const auto& prev = report.values[report.values.size() - 2];
            report.drift.push_back((report.values.back() - prev).cwiseAbs().maxCoeff());
        }
    }
    report.converged = report.drift.back() < tol * energy_unit(model, cfg);
    return report;
}

}  // namespace rabi
