#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

// A prompt decomposed as retained context plus a marked forget-target span,
// with an optional association span erased together with the target.
//
// Offsets index into full_text and make span removal exact even when the
// same word occurs elsewhere in the prompt.
struct PromptSpec {
    std::string full_text;
    std::string retained_context;                 // the remaining part of the prompt
    std::string target_span;                      // the forget target
    std::optional<std::string> association_span;  // erased together with the target
    std::string placeholder_id = "T";

    std::size_t target_offset = std::string::npos;
    std::optional<std::size_t> association_offset;

    bool operator==(const PromptSpec&) const = default;

    // Splice marked spans out of full_text and normalize whitespace.
    static std::string remove_spans(const std::string& full,
                                    std::size_t target_off, std::size_t target_len,
                                    std::optional<std::size_t> assoc_off,
                                    std::size_t assoc_len) {
        // Remove the later span first so the earlier offset stays valid.
        std::string text = full;
        struct Span { std::size_t off; std::size_t len; };
        std::vector<Span> spans;
        spans.push_back({target_off, target_len});
        if (assoc_off) spans.push_back({*assoc_off, assoc_len});
        if (spans.size() == 2 && spans[0].off < spans[1].off) std::swap(spans[0], spans[1]);
        for (const Span& s : spans) text.erase(s.off, s.len);
        return normalize_whitespace(text);
    }

    // Build a spec from explicit span positions; derives retained_context.
    static PromptSpec from_spans(std::string full_text,
                                 std::size_t target_offset, std::size_t target_length,
                                 std::optional<std::size_t> association_offset = {},
                                 std::size_t association_length = 0,
                                 std::string placeholder_id = "T") {
        require(target_offset + target_length <= full_text.size() && target_length > 0,
                ErrorCode::PreconditionFailed, "target span out of range");
        PromptSpec spec;
        spec.full_text = std::move(full_text);
        spec.target_offset = target_offset;
        spec.target_span = spec.full_text.substr(target_offset, target_length);
        if (association_offset) {
            require(*association_offset + association_length <= spec.full_text.size() &&
                        association_length > 0,
                    ErrorCode::PreconditionFailed, "association span out of range");
            const bool overlaps = *association_offset < target_offset + target_length &&
                                  target_offset < *association_offset + association_length;
            require(!overlaps, ErrorCode::PreconditionFailed,
                    "association span overlaps target span");
            spec.association_offset = association_offset;
            spec.association_span = spec.full_text.substr(*association_offset, association_length);
        }
        spec.retained_context = remove_spans(spec.full_text, target_offset, target_length,
                                             association_offset, association_length);
        spec.placeholder_id = std::move(placeholder_id);
        return spec;
    }

    // Invariant check; empty means valid.
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (target_span.empty()) {
            v.push_back("target_span must be non-empty");
            return v;
        }
        if (target_offset == std::string::npos ||
            full_text.compare(target_offset, target_span.size(), target_span) != 0) {
            if (full_text.find(target_span) == std::string::npos) {
                v.push_back("target_span must be a contiguous substring of full_text");
            } else {
                v.push_back("target_offset does not point at target_span");
            }
        }
        if (association_span && (!association_offset ||
                                 full_text.compare(*association_offset, association_span->size(),
                                                   *association_span) != 0)) {
            v.push_back("association_offset does not point at association_span");
        }
        if (v.empty()) {
            const std::string rebuilt =
                remove_spans(full_text, target_offset, target_span.size(), association_offset,
                             association_span ? association_span->size() : 0);
            if (rebuilt != normalize_whitespace(retained_context)) {
                v.push_back("removing target/association spans does not recompose retained_context");
            }
        }
        return v;
    }

    bool valid() const { return violations().empty(); }
};

}  // namespace unlearn_eval
