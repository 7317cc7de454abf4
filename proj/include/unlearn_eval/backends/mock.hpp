#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "unlearn_eval/backends/image_io.hpp"
#include "unlearn_eval/backends/interfaces.hpp"
#include "unlearn_eval/core/rng.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

// Deterministic stand-ins for the model-backed backends. They let the whole
// metric pipeline run bit-reproducibly without any weights: embeddings mix
// pixel statistics (so fixture classes stay separable) with hash-derived
// components (so distinct content gets distinct vectors).

namespace mock_detail {

struct PixelStats {
    double mean_r = 0, mean_g = 0, mean_b = 0;
    double mean = 0, stddev = 0;
    double row_gradient = 0, col_gradient = 0;
};

inline PixelStats pixel_stats(const ImageBuffer& image) {
    PixelStats s;
    const std::size_t n = image.rgb.size() / 3;
    double sum = 0, sum_sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s.mean_r += image.rgb[3 * i];
        s.mean_g += image.rgb[3 * i + 1];
        s.mean_b += image.rgb[3 * i + 2];
    }
    for (unsigned char v : image.rgb) {
        sum += v;
        sum_sq += static_cast<double>(v) * v;
    }
    const double count = static_cast<double>(image.rgb.size());
    s.mean_r /= 255.0 * static_cast<double>(n);
    s.mean_g /= 255.0 * static_cast<double>(n);
    s.mean_b /= 255.0 * static_cast<double>(n);
    s.mean = sum / count / 255.0;
    const double var = std::max(0.0, sum_sq / count - (sum / count) * (sum / count));
    s.stddev = std::sqrt(var) / 255.0;

    double row_acc = 0, col_acc = 0;
    std::size_t row_terms = 0, col_terms = 0;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x + 1 < image.width; ++x) {
            const std::size_t a = (static_cast<std::size_t>(y) * image.width + x) * 3;
            row_acc += std::abs(static_cast<int>(image.rgb[a]) - image.rgb[a + 3]);
            ++row_terms;
        }
    }
    for (int y = 0; y + 1 < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const std::size_t a = (static_cast<std::size_t>(y) * image.width + x) * 3;
            const std::size_t b = a + static_cast<std::size_t>(image.width) * 3;
            col_acc += std::abs(static_cast<int>(image.rgb[a]) - image.rgb[b]);
            ++col_terms;
        }
    }
    if (row_terms) s.row_gradient = row_acc / static_cast<double>(row_terms) / 255.0;
    if (col_terms) s.col_gradient = col_acc / static_cast<double>(col_terms) / 255.0;
    return s;
}

inline void l2_normalize(Embedding& v) {
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    require(norm > 0, ErrorCode::ZeroNormEmbedding, "mock embedding has zero norm");
    for (double& x : v) x /= norm;
}

inline std::shared_ptr<const ImageBuffer> decode_at(const ImageSet& images, std::size_t index) {
    try {
        return imageio::decode(images.items[index]);
    } catch (const Error& e) {
        throw Error(ErrorCode::DecodeError, index, e.what());
    }
}

}  // namespace mock_detail

class MockEmbedder final : public ImageEmbedder {
public:
    explicit MockEmbedder(std::uint64_t seed = 0) : seed_(seed) {}

    std::string model_id() const override { return "mock-embedder/8"; }
    std::size_t embedding_dim() const override { return 8; }
    bool normalizes() const override { return true; }

    std::vector<Embedding> embed_images(const ImageSet& images) override {
        require(!images.empty(), ErrorCode::PreconditionFailed, "embed_images: empty image set");
        std::vector<Embedding> out;
        out.reserve(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            out.push_back(embed_one(*mock_detail::decode_at(images, i)));
        }
        return out;
    }

    Embedding embed_text(const std::string& text) override {
        require(!text.empty(), ErrorCode::PreconditionFailed, "embed_text: empty text");
        SplitRng rng(seed_ ^ fnv1a64(normalize_phrase(text)), "mock-text-embed");
        Embedding v(embedding_dim());
        for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = rng.next_double() * 2.0 - 1.0;
        v.back() = 1.0;
        mock_detail::l2_normalize(v);
        return v;
    }

private:
    Embedding embed_one(const ImageBuffer& image) const {
        const auto stats = mock_detail::pixel_stats(image);
        SplitRng rng(seed_ ^ fnv1a64(imageio::content_hash(image)), "mock-image-embed");
        Embedding v(embedding_dim());
        v[0] = stats.mean_r;
        v[1] = stats.mean_g;
        v[2] = stats.mean_b;
        v[3] = stats.stddev;
        v[4] = rng.next_double() * 2.0 - 1.0;
        v[5] = rng.next_double() * 2.0 - 1.0;
        v[6] = rng.next_double() * 2.0 - 1.0;
        v[7] = 1.0;
        mock_detail::l2_normalize(v);
        return v;
    }

    std::uint64_t seed_;
};

// Mean per-pixel absolute difference under unit-scaled pixels; falls back to
// the global-mean difference when shapes differ. Symmetric, zero on self.
class MockPerceptualScorer final : public PerceptualScorer {
public:
    std::string model_id() const override { return "mock-perceptual/absdiff"; }

    double perceptual_distance(const ImageRef& a, const ImageRef& b) override {
        const auto pa = imageio::decode(a);
        const auto pb = imageio::decode(b);
        if (pa->width == pb->width && pa->height == pb->height) {
            double acc = 0;
            for (std::size_t i = 0; i < pa->rgb.size(); ++i) {
                acc += std::abs(static_cast<int>(pa->rgb[i]) - static_cast<int>(pb->rgb[i]));
            }
            return acc / static_cast<double>(pa->rgb.size()) / 255.0;
        }
        const auto sa = mock_detail::pixel_stats(*pa);
        const auto sb = mock_detail::pixel_stats(*pb);
        return std::abs(sa.mean - sb.mean);
    }
};

// Detections come from fixture metadata: a sidecar file `<image>.det` with
// one `label<TAB>confidence<TAB>x<TAB>y<TAB>w<TAB>h` line per detection.
// Images without a sidecar yield no detections.
class MockObjectDetector final : public ObjectDetector {
public:
    std::string model_id() const override { return "mock-detector/sidecar"; }

    std::vector<Detection> detect_objects(const ImageRef& image) override {
        std::vector<Detection> detections;
        if (image.path.empty()) return detections;
        const std::string sidecar = image.path + ".det";
        std::ifstream in(sidecar);
        if (!in) return detections;

        const auto pixels = imageio::decode(image);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            const std::vector<std::string> f = split(line, '\t');
            if (f.size() != 6) {
                throw Error(ErrorCode::ParseError, line_no, "bad detection sidecar: " + sidecar);
            }
            Detection d;
            d.label = f[0];
            d.confidence = std::clamp(std::stod(f[1]), 0.0, 1.0);
            d.x = std::clamp(std::stod(f[2]), 0.0, static_cast<double>(pixels->width));
            d.y = std::clamp(std::stod(f[3]), 0.0, static_cast<double>(pixels->height));
            d.w = std::clamp(std::stod(f[4]), 0.0, static_cast<double>(pixels->width) - d.x);
            d.h = std::clamp(std::stod(f[5]), 0.0, static_cast<double>(pixels->height) - d.y);
            detections.push_back(std::move(d));
        }
        std::stable_sort(detections.begin(), detections.end(),
                         [](const Detection& a, const Detection& b) {
                             return a.confidence > b.confidence;
                         });
        return detections;
    }
};

// Four content statistics per image: overall mean, stddev, and the mean
// horizontal/vertical gradients (all unit-scaled).
class MockFeatureExtractor final : public FeatureExtractor {
public:
    std::string model_id() const override { return "mock-extractor/4"; }
    std::size_t feature_dim() const override { return 4; }

    FeatureSet extract_features(const ImageSet& images) override {
        require(!images.empty(), ErrorCode::PreconditionFailed,
                "extract_features: empty image set");
        FeatureSet features;
        features.dim = feature_dim();
        features.rows.reserve(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            const auto stats = mock_detail::pixel_stats(*mock_detail::decode_at(images, i));
            features.rows.push_back({stats.mean, stats.stddev, stats.row_gradient,
                                     stats.col_gradient});
        }
        return features;
    }
};

}  // namespace unlearn_eval
