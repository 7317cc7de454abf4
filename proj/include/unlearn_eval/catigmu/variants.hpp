#pragma once

#include <cctype>
#include <string>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/prompt.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

// do(T='none'): drop the target and its associations, keeping only the
// retained context.
struct NullVariant {
    std::string text;
    bool degenerate = false;  // the whole prompt was the target
};

inline NullVariant make_null_variant(const PromptSpec& prompt) {
    require(prompt.valid(), ErrorCode::PreconditionFailed,
            "make_null_variant: prompt violates its invariants");
    const std::string text = PromptSpec::remove_spans(
        prompt.full_text, prompt.target_offset, prompt.target_span.size(),
        prompt.association_offset,
        prompt.association_span ? prompt.association_span->size() : 0);
    return {text, text.empty()};
}

// do(T != t): substitute the target span with an unrelated replacement.
// When the target opened the sentence capitalized and the replacement is
// all-lowercase, the replacement's first letter is capitalized to match.
inline std::string make_replace_variant(const PromptSpec& prompt, const std::string& replacement) {
    require(prompt.valid(), ErrorCode::PreconditionFailed,
            "make_replace_variant: prompt violates its invariants");
    if (normalize_phrase(replacement) == normalize_phrase(prompt.target_span)) {
        throw Error(ErrorCode::InvalidReplacement,
                    "replacement '" + replacement + "' normalizes to the target span");
    }
    require(!trim(replacement).empty(), ErrorCode::InvalidReplacement, "replacement is empty");

    std::string fitted = replacement;
    const unsigned char first_target = static_cast<unsigned char>(prompt.target_span.front());
    bool replacement_has_upper = false;
    for (char c : fitted) {
        if (std::isupper(static_cast<unsigned char>(c))) {
            replacement_has_upper = true;
            break;
        }
    }
    if (std::isupper(first_target) && !replacement_has_upper) {
        fitted = capitalize_first(std::move(fitted));
    }

    std::string out = prompt.full_text;
    out.replace(prompt.target_offset, prompt.target_span.size(), fitted);
    return normalize_whitespace(out);
}

}  // namespace unlearn_eval
