#pragma once

#include <memory>
#include <string>

#include "unlearn_eval/backends/http_embedder.hpp"
#include "unlearn_eval/backends/interfaces.hpp"
#include "unlearn_eval/backends/mock.hpp"
#include "unlearn_eval/core/config.hpp"

namespace unlearn_eval {

// Backends are selected by string key so encoder checkpoints can be swapped
// without touching the metric layer. Key "none" leaves a slot empty, which
// surfaces as BackendUnavailable on first use (fault-injection path).
inline std::shared_ptr<ImageEmbedder> make_embedder(const EvaluationConfig& config) {
    const std::string& key = config.embedder_backend;
    if (key == "mock") return std::make_shared<MockEmbedder>(config.seed);
    if (key == "http") {
        require(!config.embed_server.empty(), ErrorCode::BackendUnavailable,
                "backends.embed_server must be set for the http embedder");
        return std::make_shared<HttpEmbedder>(config.embed_server);
    }
    if (key == "none") return nullptr;
    throw Error(ErrorCode::BackendUnavailable, "unknown embedder backend: " + key);
}

inline std::shared_ptr<PerceptualScorer> make_perceptual(const EvaluationConfig& config) {
    const std::string& key = config.perceptual_backend;
    if (key == "mock") return std::make_shared<MockPerceptualScorer>();
    if (key == "none") return nullptr;
    throw Error(ErrorCode::BackendUnavailable, "unknown perceptual backend: " + key);
}

inline std::shared_ptr<ObjectDetector> make_detector(const EvaluationConfig& config) {
    const std::string& key = config.detector_backend;
    if (key == "mock") return std::make_shared<MockObjectDetector>();
    if (key == "none") return nullptr;
    throw Error(ErrorCode::BackendUnavailable, "unknown detector backend: " + key);
}

inline std::shared_ptr<FeatureExtractor> make_extractor(const EvaluationConfig& config) {
    const std::string& key = config.extractor_backend;
    if (key == "mock") return std::make_shared<MockFeatureExtractor>();
    if (key == "none") return nullptr;
    throw Error(ErrorCode::BackendUnavailable, "unknown extractor backend: " + key);
}

inline BackendSet make_backends(const EvaluationConfig& config) {
    BackendSet set;
    set.embedder = make_embedder(config);
    set.perceptual = make_perceptual(config);
    set.detector = make_detector(config);
    set.extractor = make_extractor(config);
    return set;
}

}  // namespace unlearn_eval
