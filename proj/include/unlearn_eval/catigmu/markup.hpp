#pragma once

#include <string>
#include <string_view>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/prompt.hpp"

namespace unlearn_eval {

// Prompt markup grammar for corpus files (bit-exact):
//   target span:      {{t:TEXT}}
//   association span: {{a:TEXT}}
// Exactly one target span per prompt; at most one association span. TEXT may
// not contain '{' or '}'. Everything outside the markers is literal text.
inline PromptSpec parse_prompt_markup(std::string_view markup,
                                      std::string placeholder_id = "T") {
    std::string full;
    full.reserve(markup.size());
    std::size_t target_off = std::string::npos;
    std::size_t target_len = 0;
    std::optional<std::size_t> assoc_off;
    std::size_t assoc_len = 0;

    std::size_t i = 0;
    while (i < markup.size()) {
        if (markup.compare(i, 4, "{{t:") == 0 || markup.compare(i, 4, "{{a:") == 0) {
            const bool is_target = markup[i + 2] == 't';
            const std::size_t body_start = i + 4;
            const std::size_t close = markup.find("}}", body_start);
            require(close != std::string_view::npos, ErrorCode::InvalidPromptMarkup,
                    "unterminated span marker in: " + std::string(markup));
            const std::string_view body = markup.substr(body_start, close - body_start);
            require(!body.empty(), ErrorCode::InvalidPromptMarkup,
                    "empty span marker in: " + std::string(markup));
            require(body.find('{') == std::string_view::npos &&
                        body.find('}') == std::string_view::npos,
                    ErrorCode::InvalidPromptMarkup, "nested braces in span marker");
            if (is_target) {
                require(target_off == std::string::npos, ErrorCode::InvalidPromptMarkup,
                        "multiple target spans in: " + std::string(markup));
                target_off = full.size();
                target_len = body.size();
            } else {
                require(!assoc_off.has_value(), ErrorCode::InvalidPromptMarkup,
                        "multiple association spans in: " + std::string(markup));
                assoc_off = full.size();
                assoc_len = body.size();
            }
            full.append(body);
            i = close + 2;
        } else {
            full.push_back(markup[i]);
            ++i;
        }
    }
    require(target_off != std::string::npos, ErrorCode::InvalidPromptMarkup,
            "prompt markup has no {{t:...}} span: " + std::string(markup));
    return PromptSpec::from_spans(std::move(full), target_off, target_len, assoc_off, assoc_len,
                                  std::move(placeholder_id));
}

inline std::string to_prompt_markup(const PromptSpec& spec) {
    struct Marker {
        std::size_t off;
        std::size_t len;
        const char* tag;
    };
    std::vector<Marker> markers{{spec.target_offset, spec.target_span.size(), "t"}};
    if (spec.association_offset && spec.association_span) {
        markers.push_back({*spec.association_offset, spec.association_span->size(), "a"});
    }
    if (markers.size() == 2 && markers[0].off > markers[1].off) std::swap(markers[0], markers[1]);

    std::string out;
    std::size_t cursor = 0;
    for (const Marker& m : markers) {
        out.append(spec.full_text, cursor, m.off - cursor);
        out += "{{";
        out += m.tag;
        out += ':';
        out.append(spec.full_text, m.off, m.len);
        out += "}}";
        cursor = m.off + m.len;
    }
    out.append(spec.full_text, cursor, std::string::npos);
    return out;
}

}  // namespace unlearn_eval
