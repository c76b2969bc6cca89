#include "rabi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rabi/error.hpp"

namespace rabi::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ValidationError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "' (expected " +
                          std::string(expected) + ")");
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || std::isnan(out)) {
        bad_value(key, value, "a real number");
    }
    return out;
}

std::size_t to_count(std::string_view key, std::string_view value) {
    std::size_t out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        bad_value(key, value, "a non-negative integer");
    }
    return out;
}

std::vector<std::string> to_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto item = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
        if (!item.empty()) {
            out.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

Setter real(double ModelConfig::*field) {
    return [field](RunConfig& c, std::string_view k, std::string_view v) { c.params.*field = to_double(k, v); };
}

Setter real(double RunConfig::*field) {
    return [field](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_double(k, v); };
}

Setter count(std::size_t RunConfig::*field) {
    return [field](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_count(k, v); };
}

Setter text(std::string RunConfig::*field) {
    return [field](RunConfig& c, std::string_view, std::string_view v) { c.*field = std::string(v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"model",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const auto id = parse_model_id(v);
             if (!id) {
                 bad_value(k, v, "one of qrm, aqrm, arsm, arsm-plus, arsm-minus, aniso, two-mode, two-qubit");
             }
             c.model = id;
         }},
        {"delta", real(&ModelConfig::delta)},
        {"omega", real(&ModelConfig::omega)},
        {"g", real(&ModelConfig::g)},
        {"epsilon", real(&ModelConfig::epsilon)},
        {"stark_u", real(&ModelConfig::stark_u)},
        {"lambda", real(&ModelConfig::lambda)},
        {"omega1", real(&ModelConfig::omega1)},
        {"omega2", real(&ModelConfig::omega2)},
        {"g1", real(&ModelConfig::g1)},
        {"g2", real(&ModelConfig::g2)},
        {"delta1", real(&ModelConfig::delta1)},
        {"delta2", real(&ModelConfig::delta2)},
        {"epsilon1", real(&ModelConfig::epsilon1)},
        {"epsilon2", real(&ModelConfig::epsilon2)},
        {"n_max", count(&RunConfig::n_max)},
        {"g_min", real(&RunConfig::g_min)},
        {"g_max", real(&RunConfig::g_max)},
        {"g_steps", count(&RunConfig::g_steps)},
        {"levels", count(&RunConfig::levels)},
        {"pair", [](RunConfig& c, std::string_view k, std::string_view v) { c.pair = to_count(k, v); }},
        {"tol", [](RunConfig& c, std::string_view k, std::string_view v) { c.tol = to_double(k, v); }},
        {"t_max_T", real(&RunConfig::t_max_T)},
        {"steps", count(&RunConfig::steps)},
        {"n",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const auto n = to_count(k, v);
             if (n < 1 || n > 1000000) {
                 bad_value(k, v, "a positive integer");
             }
             c.n = static_cast<int>(n);
         }},
        {"eps_min", real(&RunConfig::eps_min)},
        {"eps_max", real(&RunConfig::eps_max)},
        {"eps_steps", count(&RunConfig::eps_steps)},
        {"out", text(&RunConfig::out)},
        {"in", text(&RunConfig::in)},
        {"x_col", text(&RunConfig::x_col)},
        {"y_cols", [](RunConfig& c, std::string_view, std::string_view v) { c.y_cols = to_list(v); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [key, setter] : setters()) {
            out.push_back(key);
        }
        return out;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    const auto it = setters().find(key);
    if (it == setters().end()) {
        throw ValidationError("unknown key '" + std::string(key) + "'");
    }
    value = trim(value);
    if (value.empty()) {
        throw ValidationError("empty value for '" + std::string(key) + "'");
    }
    it->second(cfg, key, value);
    cfg.given.insert(std::string(key));
}

RunConfig parse_config(std::string_view text, std::string_view source) {
    RunConfig cfg;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError(where + "expected 'key = value', got '" + std::string(line) + "'");
        }
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ValidationError(where + "missing key before '='");
        }
        try {
            apply_setting(cfg, key, line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        }
    }
    check_values(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

void check_values(const RunConfig& cfg) {
    const ModelConfig& p = cfg.params;
    if (!(p.omega > 0.0)) {
        throw ValidationError("omega must be > 0");
    }
    if (!(p.omega1 > 0.0) || !(p.omega2 > 0.0)) {
        throw ValidationError("omega1 and omega2 must be > 0");
    }
    if (cfg.has("stark_u") && !(std::abs(p.stark_u) < p.omega)) {
        throw ValidationError("stark_u = " + std::to_string(p.stark_u) + " violates |U| < omega (omega = " +
                              std::to_string(p.omega) + ")");
    }
    if (cfg.has("lambda") && p.lambda == 0.0) {
        throw ValidationError("lambda must be nonzero");
    }
    if (cfg.has("n_max") && cfg.n_max < 2) {
        throw ValidationError("n_max must be at least 2");
    }
    if (cfg.g_min > cfg.g_max) {
        throw ValidationError("g_min must not exceed g_max");
    }
    if (cfg.eps_min > cfg.eps_max) {
        throw ValidationError("eps_min must not exceed eps_max");
    }
}

std::vector<std::string> required_keys(ModelId model, std::string_view command) {
    if (command == "epsilon-c") {
        switch (model) {
            case ModelId::arsm:
            case ModelId::arsm_variant_plus:
            case ModelId::arsm_variant_minus:
                return {"omega", "stark_u"};
            case ModelId::aniso_aqrm:
                return {"omega", "lambda"};
            default:
                return {"omega"};
        }
    }
    std::vector<std::string> keys;
    switch (model) {
        case ModelId::qrm: keys = {"delta", "omega"}; break;
        case ModelId::aqrm: keys = {"delta", "omega", "epsilon"}; break;
        case ModelId::arsm:
        case ModelId::arsm_variant_plus:
        case ModelId::arsm_variant_minus: keys = {"delta", "omega", "epsilon", "stark_u"}; break;
        case ModelId::aniso_aqrm: keys = {"delta", "omega", "epsilon", "lambda"}; break;
        case ModelId::two_mode: keys = {"delta", "epsilon", "omega1", "omega2"}; break;
        case ModelId::two_qubit: keys = {"delta1", "delta2", "epsilon1", "epsilon2", "omega"}; break;
    }
    if (command == "scan") {
        std::erase_if(keys, [](const std::string& k) { return k.rfind("epsilon", 0) == 0; });
    }
    if (command == "dynamics") {
        keys.push_back("g");
    }
    return keys;
}

void require_keys(const RunConfig& cfg, std::string_view command) {
    if (!cfg.model) {
        throw ValidationError("missing required key 'model'");
    }
    for (const auto& key : required_keys(*cfg.model, command)) {
        if (!cfg.has(key)) {
            throw ValidationError("missing required key '" + key + "' for model " +
                                  std::string(to_string(*cfg.model)));
        }
    }
}

}  // namespace rabi::cli
