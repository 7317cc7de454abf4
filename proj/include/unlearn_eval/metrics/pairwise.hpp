#pragma once

#include <string>

#include "unlearn_eval/backends/interfaces.hpp"
#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/types.hpp"

namespace unlearn_eval {

// Mean perceptual distance over the full N x K cross product of two sets.
// Symmetric whenever the backend distance is symmetric.
inline double average_lpips(const ImageSet& set_a, const ImageSet& set_b,
                            PerceptualScorer& scorer) {
    require(!set_a.empty() && !set_b.empty(), ErrorCode::PreconditionFailed,
            "average_lpips: empty image set");
    double total = 0.0;
    for (const ImageRef& a : set_a.items) {
        for (const ImageRef& b : set_b.items) {
            total += scorer.perceptual_distance(a, b);
        }
    }
    return total / (static_cast<double>(set_a.size()) * static_cast<double>(set_b.size()));
}

// Percentage of images with at least one detection of `label` at confidence
// >= confidence_min.
inline double detection_rate(const ImageSet& images, ObjectDetector& detector,
                             const std::string& label, double confidence_min) {
    require(!images.empty(), ErrorCode::PreconditionFailed, "detection_rate: empty image set");
    require(confidence_min >= 0.0 && confidence_min <= 1.0, ErrorCode::PreconditionFailed,
            "detection_rate: confidence_min must be in [0,1]");
    std::size_t hits = 0;
    for (const ImageRef& image : images.items) {
        for (const Detection& d : detector.detect_objects(image)) {
            if (d.label == label && d.confidence >= confidence_min) {
                ++hits;
                break;
            }
        }
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(images.size());
}

}  // namespace unlearn_eval
