#include "rabi/models.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <utility>

#include "rabi/error.hpp"

namespace rabi {

namespace {

constexpr std::array<std::pair<ModelId, std::string_view>, 8> kModelNames{{
    {ModelId::qrm, "qrm"},
    {ModelId::aqrm, "aqrm"},
    {ModelId::arsm, "arsm"},
    {ModelId::arsm_variant_plus, "arsm-plus"},
    {ModelId::arsm_variant_minus, "arsm-minus"},
    {ModelId::aniso_aqrm, "aniso"},
    {ModelId::two_mode, "two-mode"},
    {ModelId::two_qubit, "two-qubit"},
}};

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw ValidationError(std::string(name) + " must be > 0, got " + std::to_string(value));
    }
}

bool is_stark_family(ModelId model) {
    return model == ModelId::arsm || model == ModelId::arsm_variant_plus ||
           model == ModelId::arsm_variant_minus;
}

}  // namespace

std::string_view to_string(ModelId model) {
    for (const auto& [id, name] : kModelNames) {
        if (id == model) {
            return name;
        }
    }
    return "unknown";
}

std::optional<ModelId> parse_model_id(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return c == '_' ? '-' : static_cast<char>(std::tolower(c)); });
    for (const auto& [id, spelled] : kModelNames) {
        if (spelled == lowered) {
            return id;
        }
    }
    if (lowered == "aniso-aqrm") {
        return ModelId::aniso_aqrm;
    }
    return std::nullopt;
}

bool is_single_mode(ModelId model) {
    return model != ModelId::two_mode && model != ModelId::two_qubit;
}

void validate(ModelId model, const ModelConfig& cfg) {
    switch (model) {
        case ModelId::two_mode:
            require_positive(cfg.omega1, "omega1");
            require_positive(cfg.omega2, "omega2");
            return;
        case ModelId::two_qubit:
            require_positive(cfg.omega, "omega");
            return;
        default:
            break;
    }
    require_positive(cfg.omega, "omega");
    if (is_stark_family(model) && !(std::abs(cfg.stark_u) < cfg.omega)) {
        throw ValidationError("stark_u = " + std::to_string(cfg.stark_u) +
                              " violates |U| < omega (|U/omega| < 1 is required for a bounded spectrum)");
    }
    if (model == ModelId::aniso_aqrm && cfg.lambda == 0.0) {
        throw ValidationError("lambda must be nonzero for the anisotropic model");
    }
}

BasisSpec basis_for(ModelId model, std::size_t n_max) {
    switch (model) {
        case ModelId::two_mode: return BasisSpec::two_mode(n_max, n_max);
        case ModelId::two_qubit: return BasisSpec::two_qubit(n_max);
        default: return BasisSpec::single(n_max);
    }
}

BasisSpec default_basis(ModelId model) {
    switch (model) {
        case ModelId::two_mode: return basis_for(model, kDefaultTwoModeLevels);
        case ModelId::two_qubit: return basis_for(model, kDefaultTwoQubitLevels);
        default: return basis_for(model, kDefaultFockLevels);
    }
}

OperatorMatrix build_single_mode(ModelId model, const ModelConfig& cfg, const BasisSpec& spec) {
    if (!is_single_mode(model)) {
        throw ValidationError(std::string("build_single_mode: ") + std::string(to_string(model)) +
                              " is not a single-mode single-qubit model");
    }
    spec.validate();
    if (spec.qubit_count != 1 || spec.is_two_mode()) {
        throw ValidationError("build_single_mode needs a single-mode, single-qubit basis");
    }
    validate(model, cfg);

    const auto [a, ad, num] = ladder_operators(spec.n_max);
    const OperatorMatrix id_f = identity(spec.n_max);
    const OperatorMatrix id_s = identity(2);
    const double epsilon = model == ModelId::qrm ? 0.0 : cfg.epsilon;

    OperatorMatrix h = 0.5 * cfg.delta * kron(sigma_z(), id_f);
    h += 0.5 * epsilon * kron(sigma_x(), id_f);
    h += cfg.omega * kron(id_s, num);

    if (model == ModelId::aniso_aqrm) {
        // g₁ (σ-a† + σ+a) + g₂ (σ+a† + σ-a); each pair is a transpose pair,
        // so the sum is exactly symmetric.
        const double g1 = cfg.g;
        const double g2 = cfg.lambda * cfg.g;
        h += g1 * (kron(sigma_minus(), ad) + kron(sigma_plus(), a));
        h += g2 * (kron(sigma_plus(), ad) + kron(sigma_minus(), a));
    } else {
        h += cfg.g * kron(sigma_x(), OperatorMatrix(a + ad));
    }

    switch (model) {
        case ModelId::arsm:
            h += cfg.stark_u * kron(sigma_z(), num);
            break;
        case ModelId::arsm_variant_plus:
            h += cfg.stark_u * kron(sigma_plus() * sigma_minus(), num);
            break;
        case ModelId::arsm_variant_minus:
            h -= cfg.stark_u * kron(sigma_minus() * sigma_plus(), num);
            break;
        default:
            break;
    }
    return h;
}

OperatorMatrix build_two_mode(const ModelConfig& cfg, const BasisSpec& spec) {
    spec.validate();
    if (!spec.is_two_mode() || spec.qubit_count != 1) {
        throw ValidationError("build_two_mode needs a two-mode basis (n1_max, n2_max ≥ 2)");
    }
    validate(ModelId::two_mode, cfg);

    const auto m1 = ladder_operators(spec.n_max);
    const auto m2 = ladder_operators(spec.n2_max);
    const OperatorMatrix id1 = identity(spec.n_max);
    const OperatorMatrix id2 = identity(spec.n2_max);
    const OperatorMatrix id_modes = identity(spec.n_max * spec.n2_max);
    const OperatorMatrix id_s = identity(2);
    const OperatorMatrix x1 = kron(OperatorMatrix(m1.a + m1.a_dagger), id2);
    const OperatorMatrix x2 = kron(id1, OperatorMatrix(m2.a + m2.a_dagger));

    OperatorMatrix h = 0.5 * cfg.delta * kron(sigma_z(), id_modes);
    h += 0.5 * cfg.epsilon * kron(sigma_x(), id_modes);
    h += cfg.omega1 * kron(id_s, kron(m1.number, id2));
    h += cfg.omega2 * kron(id_s, kron(id1, m2.number));
    h += cfg.g1 * kron(sigma_x(), x1);
    h += cfg.g2 * kron(sigma_x(), x2);
    return h;
}

OperatorMatrix build_two_qubit(const ModelConfig& cfg, const BasisSpec& spec) {
    spec.validate();
    if (spec.qubit_count != 2) {
        throw ValidationError("build_two_qubit needs a basis with qubit_count = 2");
    }
    validate(ModelId::two_qubit, cfg);

    const auto [a, ad, num] = ladder_operators(spec.n_max);
    const OperatorMatrix id_f = identity(spec.n_max);
    const OperatorMatrix id_s = identity(2);
    const OperatorMatrix x = a + ad;
    const OperatorMatrix sx1 = kron(sigma_x(), id_s);
    const OperatorMatrix sx2 = kron(id_s, sigma_x());
    const OperatorMatrix sz1 = kron(sigma_z(), id_s);
    const OperatorMatrix sz2 = kron(id_s, sigma_z());

    OperatorMatrix h = kron(OperatorMatrix(0.5 * cfg.delta1 * sz1 + 0.5 * cfg.epsilon1 * sx1), id_f);
    h += kron(OperatorMatrix(0.5 * cfg.delta2 * sz2 + 0.5 * cfg.epsilon2 * sx2), id_f);
    h += cfg.omega * kron(identity(4), num);
    h += cfg.g1 * kron(sx1, x);
    h += cfg.g2 * kron(sx2, x);
    return h;
}

OperatorMatrix build_hamiltonian(ModelId model, const ModelConfig& cfg, const BasisSpec& spec) {
    switch (model) {
        case ModelId::two_mode: return build_two_mode(cfg, spec);
        case ModelId::two_qubit: return build_two_qubit(cfg, spec);
        default: return build_single_mode(model, cfg, spec);
    }
}

double epsilon_condition(ModelId model, const ModelConfig& cfg, int n) {
    if (n < 1) {
        throw ValidationError("epsilon_condition: n must be a positive integer");
    }
    if (!is_single_mode(model)) {
        throw ValidationError(std::string("no closed-form epsilon condition for ") +
                              std::string(to_string(model)));
    }
    validate(model, cfg);
    const double w = cfg.omega;
    const double u = cfg.stark_u;
    double unit = 0.0;
    switch (model) {
        case ModelId::qrm:
        case ModelId::aqrm:
            unit = w;
            break;
        case ModelId::arsm:
            unit = std::sqrt((w - u) * (w + u));
            break;
        case ModelId::arsm_variant_plus:
            unit = std::sqrt(w * (w + u));
            break;
        case ModelId::arsm_variant_minus:
            unit = std::sqrt(w * (w - u));
            break;
        case ModelId::aniso_aqrm:
            if (!(cfg.lambda > 0.0)) {
                throw ValidationError("anisotropic epsilon condition needs lambda > 0");
            }
            unit = 2.0 * std::sqrt(cfg.lambda) / (1.0 + cfg.lambda) * w;
            break;
        default:
            break;
    }
    return n * unit;
}

double rescale_offset(ModelId model, const ModelConfig& cfg, double g) {
    switch (model) {
        case ModelId::two_mode:
        case ModelId::two_qubit:
            return 0.0;
        case ModelId::aniso_aqrm:
            return (1.0 + cfg.lambda * cfg.lambda) * g * g / cfg.omega;
        default:
            return g * g / cfg.omega;
    }
}

ModelConfig with_coupling(ModelId model, ModelConfig cfg, double g) {
    if (model == ModelId::two_mode || model == ModelId::two_qubit) {
        const double ratio = cfg.g1 != 0.0 ? cfg.g2 / cfg.g1 : 1.0;
        cfg.g1 = g;
        cfg.g2 = ratio * g;
    }
    cfg.g = g;
    return cfg;
}

ModelConfig with_bias(ModelId model, ModelConfig cfg, double epsilon) {
    if (model == ModelId::two_qubit) {
        cfg.epsilon1 = epsilon;
        cfg.epsilon2 = epsilon;
    }
    cfg.epsilon = epsilon;
    return cfg;
}

double energy_unit(ModelId model, const ModelConfig& cfg) {
    if (model == ModelId::two_mode) {
        return std::min(cfg.omega1, cfg.omega2);
    }
    return cfg.omega;
}

}  // namespace rabi
