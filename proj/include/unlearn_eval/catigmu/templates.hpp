#pragma once

#include <string>
#include <vector>

#include "unlearn_eval/catigmu/lexicon.hpp"
#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/prompt.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

// Expand scene templates into marked prompts. Placeholders: {t} for the
// target word (required, first occurrence becomes the target span) and
// {type} for the task's included subject/scene types. Order is
// deterministic: target words x included types x templates, as listed.
// The first letter of each expanded sentence is capitalized.
inline std::vector<PromptSpec> expand_templates(const std::string& task_name,
                                                const TaxonomyLexicon& lexicon,
                                                const std::vector<std::string>& scene_templates) {
    if (scene_templates.empty()) {
        throw Error(ErrorCode::EmptyTemplateSet, "no scene templates for task " + task_name);
    }
    const TaskPrompts* task = lexicon.task(task_name);
    if (task == nullptr || task->target_words.empty()) {
        throw Error(ErrorCode::UnknownTask,
                    "task '" + task_name + "' has no target words in the lexicon");
    }

    std::vector<PromptSpec> prompts;
    for (const std::string& target : task->target_words) {
        for (std::size_t type_index = 0;; ++type_index) {
            const bool have_types = !task->included_types.empty();
            if (have_types && type_index >= task->included_types.size()) break;
            const std::string type = have_types ? task->included_types[type_index] : std::string();

            for (const std::string& raw_template : scene_templates) {
                std::string text = raw_template;
                const bool wants_type = text.find("{type}") != std::string::npos;
                require(!wants_type || have_types, ErrorCode::PreconditionFailed,
                        "template uses {type} but task '" + task_name + "' lists no types");
                if (wants_type) {
                    while (replace_first(text, "{type}", type)) {
                    }
                }
                const std::size_t slot = text.find("{t}");
                require(slot != std::string::npos, ErrorCode::PreconditionFailed,
                        "template is missing the {t} placeholder: " + raw_template);
                text.replace(slot, 3, target);
                text = capitalize_first(std::move(text));
                prompts.push_back(PromptSpec::from_spans(text, slot, target.size()));
            }
            if (!have_types) break;
        }
    }
    return prompts;
}

}  // namespace unlearn_eval
