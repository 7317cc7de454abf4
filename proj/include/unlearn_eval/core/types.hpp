#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unlearn_eval/core/errors.hpp"

namespace unlearn_eval {

// ---------------------------------------------------------------------------
// Task taxonomy
// ---------------------------------------------------------------------------

enum class Spatial { Global, Local };
enum class Perceptual { Abstract, Concrete };

enum class TaskType {
    Style,
    Theme,
    Material,
    PhotoFilter,
    ColorTone,
    DescriptiveStatus,
    Property,
    CollectiveConcept,
    Occupation,
    Person,
    Object,
    BrandIcon,
    Entity,
};

enum class Association { Strong, Weak, NotApplicable };

struct TaskCategory {
    Spatial spatial = Spatial::Global;
    Perceptual perceptual = Perceptual::Abstract;
    TaskType task_type = TaskType::Style;
    Association association = Association::NotApplicable;

    bool operator==(const TaskCategory&) const = default;
};

inline std::string_view to_string(Spatial v) {
    return v == Spatial::Global ? "Global" : "Local";
}
inline std::string_view to_string(Perceptual v) {
    return v == Perceptual::Abstract ? "Abstract" : "Concrete";
}
inline std::string_view to_string(TaskType v) {
    switch (v) {
        case TaskType::Style: return "Style";
        case TaskType::Theme: return "Theme";
        case TaskType::Material: return "Material";
        case TaskType::PhotoFilter: return "PhotoFilter";
        case TaskType::ColorTone: return "ColorTone";
        case TaskType::DescriptiveStatus: return "DescriptiveStatus";
        case TaskType::Property: return "Property";
        case TaskType::CollectiveConcept: return "CollectiveConcept";
        case TaskType::Occupation: return "Occupation";
        case TaskType::Person: return "Person";
        case TaskType::Object: return "Object";
        case TaskType::BrandIcon: return "BrandIcon";
        case TaskType::Entity: return "Entity";
    }
    return "Style";
}
inline std::string_view to_string(Association v) {
    switch (v) {
        case Association::Strong: return "Strong";
        case Association::Weak: return "Weak";
        case Association::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

template <typename Enum>
Enum enum_from_string(std::string_view text);

template <>
inline Spatial enum_from_string<Spatial>(std::string_view text) {
    if (text == "Global") return Spatial::Global;
    if (text == "Local") return Spatial::Local;
    throw Error(ErrorCode::ParseError, "unknown Spatial value: " + std::string(text));
}
template <>
inline Perceptual enum_from_string<Perceptual>(std::string_view text) {
    if (text == "Abstract") return Perceptual::Abstract;
    if (text == "Concrete") return Perceptual::Concrete;
    throw Error(ErrorCode::ParseError, "unknown Perceptual value: " + std::string(text));
}
template <>
inline TaskType enum_from_string<TaskType>(std::string_view text) {
    using T = TaskType;
    for (T t : {T::Style, T::Theme, T::Material, T::PhotoFilter, T::ColorTone,
                T::DescriptiveStatus, T::Property, T::CollectiveConcept,
                T::Occupation, T::Person, T::Object, T::BrandIcon, T::Entity}) {
        if (to_string(t) == text) return t;
    }
    throw Error(ErrorCode::ParseError, "unknown TaskType value: " + std::string(text));
}
template <>
inline Association enum_from_string<Association>(std::string_view text) {
    if (text == "Strong") return Association::Strong;
    if (text == "Weak") return Association::Weak;
    if (text == "NotApplicable") return Association::NotApplicable;
    throw Error(ErrorCode::ParseError, "unknown Association value: " + std::string(text));
}

inline std::string category_key(const TaskCategory& c) {
    std::string out;
    out += to_string(c.spatial);
    out += '/';
    out += to_string(c.perceptual);
    out += '/';
    out += to_string(c.task_type);
    out += '/';
    out += to_string(c.association);
    return out;
}

// ---------------------------------------------------------------------------
// Images and features
// ---------------------------------------------------------------------------

// Decoded RGB8 image. Backends own decoding; this is the in-memory handle.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // height*width*3, row-major

    bool valid() const {
        return width >= 1 && height >= 1 &&
               rgb.size() == static_cast<std::size_t>(width) * height * 3;
    }
};

// Either a file on disk (decoded lazily by a backend) or an in-memory buffer.
struct ImageRef {
    std::string path;
    std::shared_ptr<const ImageBuffer> pixels;

    static ImageRef from_path(std::string p) { return {std::move(p), nullptr}; }
    static ImageRef from_buffer(ImageBuffer buf) {
        return {"", std::make_shared<const ImageBuffer>(std::move(buf))};
    }
};

enum class PromptVariant { Target, NullVariant, ReplaceVariant, Freeform };

inline std::string_view to_string(PromptVariant v) {
    switch (v) {
        case PromptVariant::Target: return "Target";
        case PromptVariant::NullVariant: return "NullVariant";
        case PromptVariant::ReplaceVariant: return "ReplaceVariant";
        case PromptVariant::Freeform: return "Freeform";
    }
    return "Freeform";
}
template <>
inline PromptVariant enum_from_string<PromptVariant>(std::string_view text) {
    for (PromptVariant v : {PromptVariant::Target, PromptVariant::NullVariant,
                            PromptVariant::ReplaceVariant, PromptVariant::Freeform}) {
        if (to_string(v) == text) return v;
    }
    throw Error(ErrorCode::ParseError, "unknown PromptVariant value: " + std::string(text));
}

struct Provenance {
    std::string model_id;
    std::string prompt;
    PromptVariant variant = PromptVariant::Freeform;
    std::uint64_t seed = 0;
};

// Ordered image collection. Item i refers to the same image across runs for
// identical provenance.
struct ImageSet {
    std::vector<ImageRef> items;
    Provenance provenance;

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
};

struct FeatureSet {
    std::size_t dim = 0;
    std::vector<std::vector<double>> rows;

    std::size_t size() const { return rows.size(); }
};

// ---------------------------------------------------------------------------
// Metric results
// ---------------------------------------------------------------------------

enum class MetricUnits { Percent, Distance, Score, Rate };

inline std::string_view to_string(MetricUnits u) {
    switch (u) {
        case MetricUnits::Percent: return "Percent";
        case MetricUnits::Distance: return "Distance";
        case MetricUnits::Score: return "Score";
        case MetricUnits::Rate: return "Rate";
    }
    return "Score";
}
template <>
inline MetricUnits enum_from_string<MetricUnits>(std::string_view text) {
    for (MetricUnits u : {MetricUnits::Percent, MetricUnits::Distance,
                          MetricUnits::Score, MetricUnits::Rate}) {
        if (to_string(u) == text) return u;
    }
    throw Error(ErrorCode::ParseError, "unknown MetricUnits value: " + std::string(text));
}

struct MetricResult {
    std::string name;
    double raw_value = 0.0;
    MetricUnits units = MetricUnits::Score;
    std::size_t sample_count = 1;
    std::map<std::string, std::string> details;  // optional breakdown table

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (sample_count < 1) v.push_back(name + ": sample_count must be >= 1");
        if (!std::isfinite(raw_value)) v.push_back(name + ": raw_value must be finite");
        return v;
    }
};

}  // namespace unlearn_eval
