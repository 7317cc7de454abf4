#pragma once

#include <cstdint>
#include <optional>

#include "unlearn_eval/core/errors.hpp"

namespace unlearn_eval {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }

    void add(bool truth, bool predicted) {
        if (truth && predicted) ++tp;
        else if (!truth && predicted) ++fp;
        else if (truth && !predicted) ++fn;
        else ++tn;
    }
};

// Accuracy/Precision/Recall/F1 as percents. Undefined ratios are reported
// as absent, never as zero.
struct ConfusionMetrics {
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

inline ConfusionMetrics confusion_metrics(const ConfusionCounts& c) {
    require(c.total() >= 1, ErrorCode::PreconditionFailed, "confusion_metrics: empty counts");
    ConfusionMetrics m;
    m.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    if (c.tp + c.fp > 0) {
        m.precision = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    }
    if (c.tp + c.fn > 0) {
        m.recall = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    }
    if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0) {
        m.f1 = 2.0 * (*m.precision) * (*m.recall) / (*m.precision + *m.recall);
    }
    return m;
}

}  // namespace unlearn_eval
