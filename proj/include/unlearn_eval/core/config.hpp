#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/hash.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

enum class PairingMode { FullCross };

inline std::string_view to_string(PairingMode) { return "FullCross"; }

inline PairingMode pairing_from_string(std::string_view text) {
    if (text == "FullCross") return PairingMode::FullCross;
    throw Error(ErrorCode::ParseError, "unknown pairing mode: " + std::string(text));
}

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
    bool operator==(const Bounds&) const = default;
};

// Evaluation-wide configuration. Serialized as a flat key-value text document
// with dotted section keys; see serialize()/parse_config().
struct EvaluationConfig {
    int schema_version = 1;
    std::uint64_t seed = 42;

    // Preservation pass/fail threshold (report-only; never enters metric math).
    double preservation_threshold = 0.9;

    PairingMode csdr_pairing = PairingMode::FullCross;
    PairingMode lpips_pairing = PairingMode::FullCross;

    double fid_ceiling = 400.0;
    double matrix_sqrt_epsilon = 1e-6;

    // Backend selection keys; the metric layer never names a concrete model.
    std::string embedder_backend = "mock";
    std::string perceptual_backend = "mock";
    std::string detector_backend = "mock";
    std::string extractor_backend = "mock";
    std::string embed_server;  // endpoint for the http backends, if selected
    std::string cache_dir;     // embedding cache; UNLEARN_EVAL_CACHE overrides

    // Harness knobs.
    int samples_per_variant = 50;
    int attack_budget = 8;
    double detection_confidence_min = 0.5;
    double efficiency_runtime_ceiling = 28800.0;

    // Forgetting-head training.
    double head_learning_rate = 0.05;
    int head_max_epochs = 200;
    int head_patience = 5;
    double head_holdout_fraction = 0.1;

    // Normalization bounds per metric family (FID uses (0, fid_ceiling)).
    Bounds csdr_bounds{0.0, 100.0};
    Bounds lpips_bounds{0.0, 1.0};
    Bounds rate_bounds{0.0, 100.0};

    bool operator==(const EvaluationConfig&) const = default;
};

// Reports violations; never throws.
inline std::vector<std::string> validate_config(const EvaluationConfig& config) {
    std::vector<std::string> v;
    auto check = [&v](bool ok, const char* message) {
        if (!ok) v.emplace_back(message);
    };
    check(config.schema_version == 1, "schema_version must be 1");
    check(config.preservation_threshold > 0.0 && config.preservation_threshold <= 1.0,
          "preservation_threshold must be in (0,1]");
    check(config.fid_ceiling > 0.0, "fid_ceiling must be > 0");
    check(config.matrix_sqrt_epsilon > 0.0, "matrix_sqrt_epsilon must be > 0");
    check(config.samples_per_variant >= 1, "samples_per_variant must be >= 1");
    check(config.attack_budget >= 1, "attack_budget must be >= 1");
    check(config.detection_confidence_min >= 0.0 && config.detection_confidence_min <= 1.0,
          "detection_confidence_min must be in [0,1]");
    check(config.efficiency_runtime_ceiling > 0.0, "efficiency_runtime_ceiling must be > 0");
    check(config.head_learning_rate > 0.0, "head_learning_rate must be > 0");
    check(config.head_max_epochs >= 1, "head_max_epochs must be >= 1");
    check(config.head_patience >= 1, "head_patience must be >= 1");
    check(config.head_holdout_fraction > 0.0 && config.head_holdout_fraction < 1.0,
          "head_holdout_fraction must be in (0,1)");
    check(config.csdr_bounds.lo < config.csdr_bounds.hi, "csdr_bounds must satisfy lo < hi");
    check(config.lpips_bounds.lo < config.lpips_bounds.hi, "lpips_bounds must satisfy lo < hi");
    check(config.rate_bounds.lo < config.rate_bounds.hi, "rate_bounds must satisfy lo < hi");
    check(!config.embedder_backend.empty(), "backends.embedder must be set");
    check(!config.perceptual_backend.empty(), "backends.perceptual must be set");
    check(!config.detector_backend.empty(), "backends.detector must be set");
    check(!config.extractor_backend.empty(), "backends.extractor must be set");
    return v;
}

namespace detail {

inline std::string format_double(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

}  // namespace detail

// Canonical key-value form; parse(serialize(c)) == c for any valid config.
inline std::string serialize_config(const EvaluationConfig& c) {
    std::ostringstream os;
    auto emit = [&os](const char* key, const std::string& value) {
        os << key << " = " << value << "\n";
    };
    emit("schema_version", std::to_string(c.schema_version));
    emit("seed", std::to_string(c.seed));
    emit("preservation_threshold", detail::format_double(c.preservation_threshold));
    emit("pairing.csdr", std::string(to_string(c.csdr_pairing)));
    emit("pairing.lpips", std::string(to_string(c.lpips_pairing)));
    emit("metrics.fid_ceiling", detail::format_double(c.fid_ceiling));
    emit("metrics.matrix_sqrt_epsilon", detail::format_double(c.matrix_sqrt_epsilon));
    emit("backends.embedder", c.embedder_backend);
    emit("backends.perceptual", c.perceptual_backend);
    emit("backends.detector", c.detector_backend);
    emit("backends.extractor", c.extractor_backend);
    emit("backends.embed_server", c.embed_server);
    emit("backends.cache_dir", c.cache_dir);
    emit("harness.samples_per_variant", std::to_string(c.samples_per_variant));
    emit("harness.attack_budget", std::to_string(c.attack_budget));
    emit("harness.detection_confidence_min", detail::format_double(c.detection_confidence_min));
    emit("harness.efficiency_runtime_ceiling",
         detail::format_double(c.efficiency_runtime_ceiling));
    emit("head.learning_rate", detail::format_double(c.head_learning_rate));
    emit("head.max_epochs", std::to_string(c.head_max_epochs));
    emit("head.patience", std::to_string(c.head_patience));
    emit("head.holdout_fraction", detail::format_double(c.head_holdout_fraction));
    emit("bounds.csdr.lo", detail::format_double(c.csdr_bounds.lo));
    emit("bounds.csdr.hi", detail::format_double(c.csdr_bounds.hi));
    emit("bounds.lpips.lo", detail::format_double(c.lpips_bounds.lo));
    emit("bounds.lpips.hi", detail::format_double(c.lpips_bounds.hi));
    emit("bounds.rate.lo", detail::format_double(c.rate_bounds.lo));
    emit("bounds.rate.hi", detail::format_double(c.rate_bounds.hi));
    return os.str();
}

inline EvaluationConfig parse_config(const std::string& text) {
    EvaluationConfig c;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ParseError, line_no, "expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "schema_version") c.schema_version = std::stoi(value);
            else if (key == "seed") c.seed = std::stoull(value);
            else if (key == "preservation_threshold") c.preservation_threshold = std::stod(value);
            else if (key == "pairing.csdr") c.csdr_pairing = pairing_from_string(value);
            else if (key == "pairing.lpips") c.lpips_pairing = pairing_from_string(value);
            else if (key == "metrics.fid_ceiling") c.fid_ceiling = std::stod(value);
            else if (key == "metrics.matrix_sqrt_epsilon") c.matrix_sqrt_epsilon = std::stod(value);
            else if (key == "backends.embedder") c.embedder_backend = value;
            else if (key == "backends.perceptual") c.perceptual_backend = value;
            else if (key == "backends.detector") c.detector_backend = value;
            else if (key == "backends.extractor") c.extractor_backend = value;
            else if (key == "backends.embed_server") c.embed_server = value;
            else if (key == "backends.cache_dir") c.cache_dir = value;
            else if (key == "harness.samples_per_variant") c.samples_per_variant = std::stoi(value);
            else if (key == "harness.attack_budget") c.attack_budget = std::stoi(value);
            else if (key == "harness.detection_confidence_min")
                c.detection_confidence_min = std::stod(value);
            else if (key == "harness.efficiency_runtime_ceiling")
                c.efficiency_runtime_ceiling = std::stod(value);
            else if (key == "head.learning_rate") c.head_learning_rate = std::stod(value);
            else if (key == "head.max_epochs") c.head_max_epochs = std::stoi(value);
            else if (key == "head.patience") c.head_patience = std::stoi(value);
            else if (key == "head.holdout_fraction") c.head_holdout_fraction = std::stod(value);
            else if (key == "bounds.csdr.lo") c.csdr_bounds.lo = std::stod(value);
            else if (key == "bounds.csdr.hi") c.csdr_bounds.hi = std::stod(value);
            else if (key == "bounds.lpips.lo") c.lpips_bounds.lo = std::stod(value);
            else if (key == "bounds.lpips.hi") c.lpips_bounds.hi = std::stod(value);
            else if (key == "bounds.rate.lo") c.rate_bounds.lo = std::stod(value);
            else if (key == "bounds.rate.hi") c.rate_bounds.hi = std::stod(value);
            else throw Error(ErrorCode::ParseError, line_no, "unknown config key: " + key);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::ParseError, line_no,
                        "bad value for " + key + ": " + e.what());
        }
    }
    return c;
}

inline EvaluationConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

inline std::string config_fingerprint(const EvaluationConfig& c) {
    return content_fingerprint(serialize_config(c));
}

}  // namespace unlearn_eval
