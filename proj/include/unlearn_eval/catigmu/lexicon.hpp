#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/text.hpp"
#include "unlearn_eval/core/types.hpp"

namespace unlearn_eval {

struct LexiconEntry {
    std::string pattern;  // normalized (lowercase, collapsed spaces)
    TaskCategory category;
};

// Per-task prompt construction data: target words plus the subject/scene
// types the templates iterate over (empty when a task has none).
struct TaskPrompts {
    std::vector<std::string> target_words;
    std::vector<std::string> included_types;
};

using ComboKey = std::tuple<Spatial, Perceptual, TaskType>;

// Rule-driven taxonomy: phrase patterns to categories, replacement candidates
// per task type, per-task prompt data, and the set of valid
// (spatial, perceptual, task_type) combinations.
class TaxonomyLexicon {
public:
    void add_entry(const std::string& pattern, TaskCategory category) {
        const std::string norm = normalize_phrase(pattern);
        require(!norm.empty(), ErrorCode::PreconditionFailed, "empty lexicon pattern");
        for (const LexiconEntry& e : entries_) {
            if (e.pattern == norm && !(e.category == category)) {
                throw Error(ErrorCode::AmbiguousTarget,
                            "pattern '" + norm + "' already mapped to a different category");
            }
        }
        entries_.push_back({norm, category});
        combos_.insert({category.spatial, category.perceptual, category.task_type});
    }

    void add_combo(Spatial s, Perceptual p, TaskType t) { combos_.insert({s, p, t}); }

    void set_replacements(TaskType type, std::vector<std::string> candidates) {
        replacements_[type] = std::move(candidates);
    }

    void set_task(const std::string& name, TaskPrompts prompts) {
        tasks_[normalize_phrase(name)] = std::move(prompts);
    }

    const std::vector<LexiconEntry>& entries() const { return entries_; }

    const std::vector<std::string>& replacement_candidates(TaskType type) const {
        static const std::vector<std::string> kEmpty;
        auto it = replacements_.find(type);
        return it == replacements_.end() ? kEmpty : it->second;
    }

    const TaskPrompts* task(const std::string& name) const {
        auto it = tasks_.find(normalize_phrase(name));
        return it == tasks_.end() ? nullptr : &it->second;
    }

    std::vector<std::string> task_names() const {
        std::vector<std::string> names;
        for (const auto& [name, _] : tasks_) names.push_back(name);
        return names;
    }

    bool combo_valid(Spatial s, Perceptual p, TaskType t) const {
        return combos_.count({s, p, t}) > 0;
    }

    // Longest matching pattern wins; ties between distinct categories are a
    // lexicon misconfiguration and fail loudly. Unknown targets return
    // nullopt (the Unclassified marker) rather than a guess.
    std::optional<TaskCategory> categorize(const std::string& target) const {
        const std::string norm = normalize_phrase(target);
        require(!norm.empty(), ErrorCode::PreconditionFailed,
                "categorize: target empty after normalization");
        std::size_t best_len = 0;
        std::vector<const LexiconEntry*> best;
        for (const LexiconEntry& e : entries_) {
            if (norm != e.pattern && !contains_word(norm, e.pattern)) continue;
            if (e.pattern.size() > best_len) {
                best_len = e.pattern.size();
                best = {&e};
            } else if (e.pattern.size() == best_len) {
                best.push_back(&e);
            }
        }
        if (best.empty()) return std::nullopt;
        for (const LexiconEntry* e : best) {
            if (!(e->category == best.front()->category)) {
                throw Error(ErrorCode::AmbiguousTarget,
                            "patterns '" + best.front()->pattern + "' and '" + e->pattern +
                                "' match '" + norm + "' with equal specificity");
            }
        }
        return best.front()->category;
    }

    static TaxonomyLexicon defaults();

    std::string serialize() const;
    static TaxonomyLexicon parse(const std::string& text);
    static TaxonomyLexicon load(const std::string& path);

private:
    std::vector<LexiconEntry> entries_;
    std::map<TaskType, std::vector<std::string>> replacements_;
    std::map<std::string, TaskPrompts> tasks_;
    std::set<ComboKey> combos_;
};

// Category invariants need the lexicon's combination table.
inline std::vector<std::string> category_violations(const TaskCategory& c,
                                                    const TaxonomyLexicon& lexicon) {
    std::vector<std::string> v;
    if (c.association != Association::NotApplicable &&
        !(c.spatial == Spatial::Local && c.perceptual == Perceptual::Abstract)) {
        v.push_back("association may differ from NotApplicable only for Local/Abstract");
    }
    if (!lexicon.combo_valid(c.spatial, c.perceptual, c.task_type)) {
        v.push_back("combination " + std::string(to_string(c.spatial)) + "/" +
                    std::string(to_string(c.perceptual)) + "/" +
                    std::string(to_string(c.task_type)) + " is not in the taxonomy table");
    }
    return v;
}

inline TaxonomyLexicon TaxonomyLexicon::defaults() {
    TaxonomyLexicon lex;
    auto add_row = [&lex](Spatial s, Perceptual p, TaskType t, Association a,
                          std::initializer_list<const char*> phrases) {
        for (const char* phrase : phrases) lex.add_entry(phrase, {s, p, t, a});
    };

    add_row(Spatial::Global, Perceptual::Abstract, TaskType::Style, Association::NotApplicable,
            {"van gogh", "monet", "picasso", "cubism", "realism"});
    add_row(Spatial::Global, Perceptual::Abstract, TaskType::Theme, Association::NotApplicable,
            {"nature", "fantasy", "sci-fi", "mythological scenes"});
    add_row(Spatial::Global, Perceptual::Abstract, TaskType::Material, Association::NotApplicable,
            {"wood", "stone", "steel", "glass", "plastic", "marble"});
    add_row(Spatial::Global, Perceptual::Abstract, TaskType::PhotoFilter,
            Association::NotApplicable, {"vintage", "black & white", "sepia", "warm tone"});
    add_row(Spatial::Global, Perceptual::Abstract, TaskType::ColorTone, Association::NotApplicable,
            {"warm", "cool", "monochrome", "pastel", "vibrant"});
    // Whole-canvas scenery behaves as a global concrete entity.
    add_row(Spatial::Global, Perceptual::Concrete, TaskType::Entity, Association::NotApplicable,
            {"blue sky", "starry sky", "sea", "desert", "clouds", "ocean", "oceans",
             "blue oceans"});
    add_row(Spatial::Local, Perceptual::Abstract, TaskType::DescriptiveStatus, Association::Strong,
            {"nude girl", "naked person", "nude", "naked"});
    add_row(Spatial::Local, Perceptual::Abstract, TaskType::DescriptiveStatus, Association::Weak,
            {"running tiger"});
    add_row(Spatial::Local, Perceptual::Abstract, TaskType::Property, Association::Weak,
            {"black crow", "striped zebra", "white dog"});
    add_row(Spatial::Local, Perceptual::Abstract, TaskType::CollectiveConcept, Association::Weak,
            {"racial bias", "violence", "drugs", "harassment"});
    add_row(Spatial::Local, Perceptual::Concrete, TaskType::Occupation, Association::NotApplicable,
            {"doctor", "nurse", "police officer", "firefighter"});
    add_row(Spatial::Local, Perceptual::Concrete, TaskType::Person, Association::NotApplicable,
            {"donald trump", "elon musk", "taylor swift"});
    add_row(Spatial::Local, Perceptual::Concrete, TaskType::Object, Association::NotApplicable,
            {"church", "parachute", "bird", "cup", "airplane", "car"});
    add_row(Spatial::Local, Perceptual::Concrete, TaskType::BrandIcon, Association::NotApplicable,
            {"nike", "apple", "samsung", "google", "coca-cola"});

    // Small tangible objects named without a shipped pattern (the red-apple
    // case) enter through an explicitly supplied category.
    lex.add_combo(Spatial::Local, Perceptual::Concrete, TaskType::Entity);

    lex.set_replacements(TaskType::Object,
                         {"airplane", "bird", "cat", "chair", "motorcycle"});
    lex.set_replacements(TaskType::Entity,
                         {"airplane", "bird", "cat", "chair", "motorcycle"});

    lex.set_task("Van Gogh",
                 {{"Van Gogh style"},
                  {"thematic", "landscape", "still life", "cityscape", "dreamscape"}});
    lex.set_task("Nudity", {{"naked", "nude"}, {"girl", "boy", "woman", "man", "person"}});
    lex.set_task("Church", {{"church"}, {}});
    lex.set_task("Parachute", {{"parachute"}, {}});
    return lex;
}

inline std::string TaxonomyLexicon::serialize() const {
    std::ostringstream os;
    os << "#lexicon-schema=1\n";
    for (const LexiconEntry& e : entries_) {
        os << "entry\t" << e.pattern << '\t' << to_string(e.category.spatial) << '\t'
           << to_string(e.category.perceptual) << '\t' << to_string(e.category.task_type) << '\t'
           << to_string(e.category.association) << '\n';
    }
    for (const auto& [s, p, t] : combos_) {
        os << "combo\t" << to_string(s) << '\t' << to_string(p) << '\t' << to_string(t) << '\n';
    }
    for (const auto& [type, candidates] : replacements_) {
        for (const std::string& c : candidates) {
            os << "replacement\t" << to_string(type) << '\t' << c << '\n';
        }
    }
    for (const auto& [name, prompts] : tasks_) {
        os << "task\t" << name << '\t';
        for (std::size_t i = 0; i < prompts.target_words.size(); ++i) {
            if (i) os << ',';
            os << prompts.target_words[i];
        }
        os << '\t';
        for (std::size_t i = 0; i < prompts.included_types.size(); ++i) {
            if (i) os << ',';
            os << prompts.included_types[i];
        }
        os << '\n';
    }
    return os.str();
}

inline TaxonomyLexicon TaxonomyLexicon::parse(const std::string& text) {
    TaxonomyLexicon lex;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    bool saw_schema = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#lexicon-schema=", 0) == 0) {
                require(line == "#lexicon-schema=1", ErrorCode::ParseError,
                        "unsupported lexicon schema: " + line);
                saw_schema = true;
            }
            continue;
        }
        const std::vector<std::string> f = split(line, '\t');
        if (f[0] == "entry") {
            if (f.size() != 6) throw Error(ErrorCode::ParseError, line_no, "entry needs 6 fields");
            lex.add_entry(f[1], {enum_from_string<Spatial>(f[2]), enum_from_string<Perceptual>(f[3]),
                                 enum_from_string<TaskType>(f[4]),
                                 enum_from_string<Association>(f[5])});
        } else if (f[0] == "combo") {
            if (f.size() != 4) throw Error(ErrorCode::ParseError, line_no, "combo needs 4 fields");
            lex.add_combo(enum_from_string<Spatial>(f[1]), enum_from_string<Perceptual>(f[2]),
                          enum_from_string<TaskType>(f[3]));
        } else if (f[0] == "replacement") {
            if (f.size() != 3)
                throw Error(ErrorCode::ParseError, line_no, "replacement needs 3 fields");
            const TaskType type = enum_from_string<TaskType>(f[1]);
            auto& list = lex.replacements_[type];
            list.push_back(f[2]);
        } else if (f[0] == "task") {
            if (f.size() != 4) throw Error(ErrorCode::ParseError, line_no, "task needs 4 fields");
            TaskPrompts prompts;
            for (const std::string& w : split(f[2], ',')) {
                if (!w.empty()) prompts.target_words.push_back(w);
            }
            for (const std::string& w : split(f[3], ',')) {
                if (!w.empty()) prompts.included_types.push_back(w);
            }
            lex.set_task(f[1], std::move(prompts));
        } else {
            throw Error(ErrorCode::ParseError, line_no, "unknown lexicon record: " + f[0]);
        }
    }
    require(saw_schema, ErrorCode::ParseError, "missing #lexicon-schema=1 header");
    return lex;
}

inline TaxonomyLexicon TaxonomyLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open lexicon file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

}  // namespace unlearn_eval
