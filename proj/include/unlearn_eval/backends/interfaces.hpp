#pragma once

#include <memory>
#include <string>
#include <vector>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/types.hpp"

namespace unlearn_eval {

struct Detection {
    std::string label;
    double confidence = 0.0;          // in [0,1]
    double x = 0, y = 0, w = 0, h = 0;  // pixels, within image bounds
};

using Embedding = std::vector<double>;

// Joint image/text embedder (CLIP-style encoder adapter).
class ImageEmbedder {
public:
    virtual ~ImageEmbedder() = default;

    virtual std::string model_id() const = 0;
    virtual std::size_t embedding_dim() const = 0;
    virtual bool normalizes() const = 0;

    // One vector per image, order-preserving, deterministic for fixed input.
    // Throws DecodeError(index) naming the offending item.
    virtual std::vector<Embedding> embed_images(const ImageSet& images) = 0;

    virtual Embedding embed_text(const std::string& text) = 0;
};

// Perceptual image-pair distance (LPIPS-style scorer adapter).
class PerceptualScorer {
public:
    virtual ~PerceptualScorer() = default;
    virtual std::string model_id() const = 0;
    // Nonnegative; deterministic for fixed inputs.
    virtual double perceptual_distance(const ImageRef& a, const ImageRef& b) = 0;
};

// Object detector (YOLO-style adapter).
class ObjectDetector {
public:
    virtual ~ObjectDetector() = default;
    virtual std::string model_id() const = 0;
    // Possibly empty; confidences sorted descending.
    virtual std::vector<Detection> detect_objects(const ImageRef& image) = 0;
};

// Feature extractor for distributional metrics (inception-style adapter).
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;
    virtual std::string model_id() const = 0;
    virtual std::size_t feature_dim() const = 0;
    virtual FeatureSet extract_features(const ImageSet& images) = 0;
};

// One evaluation's worth of backends, selected by string keys in the config.
struct BackendSet {
    std::shared_ptr<ImageEmbedder> embedder;
    std::shared_ptr<PerceptualScorer> perceptual;
    std::shared_ptr<ObjectDetector> detector;
    std::shared_ptr<FeatureExtractor> extractor;
};

inline ImageEmbedder& require_embedder(const BackendSet& backends) {
    require(backends.embedder != nullptr, ErrorCode::BackendUnavailable, "no embedder configured");
    return *backends.embedder;
}
inline PerceptualScorer& require_perceptual(const BackendSet& backends) {
    require(backends.perceptual != nullptr, ErrorCode::BackendUnavailable,
            "no perceptual scorer configured");
    return *backends.perceptual;
}
inline ObjectDetector& require_detector(const BackendSet& backends) {
    require(backends.detector != nullptr, ErrorCode::BackendUnavailable,
            "no object detector configured");
    return *backends.detector;
}
inline FeatureExtractor& require_extractor(const BackendSet& backends) {
    require(backends.extractor != nullptr, ErrorCode::BackendUnavailable,
            "no feature extractor configured");
    return *backends.extractor;
}

}  // namespace unlearn_eval
