#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/text.hpp"

namespace unlearn_eval {

enum class SourceKind { REAL, LAION, SD_GEN };
enum class RoleKind { Target, Pair };
enum class SplitKind { Train, Test };

inline std::string_view to_string(SourceKind s) {
    switch (s) {
        case SourceKind::REAL: return "REAL";
        case SourceKind::LAION: return "LAION";
        case SourceKind::SD_GEN: return "SD-GEN";
    }
    return "REAL";
}
inline std::string_view to_string(RoleKind r) {
    return r == RoleKind::Target ? "target" : "pair";
}
inline std::string_view to_string(SplitKind s) {
    return s == SplitKind::Train ? "train" : "test";
}

inline SourceKind source_from_string(std::string_view text) {
    if (text == "REAL") return SourceKind::REAL;
    if (text == "LAION") return SourceKind::LAION;
    if (text == "SD-GEN") return SourceKind::SD_GEN;
    throw Error(ErrorCode::ParseError, "unknown source: " + std::string(text));
}
inline RoleKind role_from_string(std::string_view text) {
    if (text == "target") return RoleKind::Target;
    if (text == "pair") return RoleKind::Pair;
    throw Error(ErrorCode::ParseError, "unknown role: " + std::string(text));
}
inline SplitKind split_from_string(std::string_view text) {
    if (text == "train") return SplitKind::Train;
    if (text == "test") return SplitKind::Test;
    throw Error(ErrorCode::ParseError, "unknown split: " + std::string(text));
}

// One labeled image. Role implies the binary label: target rows carry the
// forget content (label 1), pair rows are the retained counterparts (0).
struct ManifestRecord {
    std::string path;
    std::string task;
    SourceKind source = SourceKind::REAL;
    RoleKind role = RoleKind::Target;
    SplitKind split = SplitKind::Train;
    bool label = true;  // target present?

    bool operator==(const ManifestRecord&) const = default;
};

using CountKey = std::tuple<std::string, SourceKind, RoleKind, SplitKind>;

struct DatasetManifest {
    std::vector<ManifestRecord> records;
    std::map<CountKey, std::size_t> counts;

    bool operator==(const DatasetManifest& other) const { return records == other.records; }

    std::vector<std::string> tasks() const {
        std::set<std::string> names;
        for (const ManifestRecord& r : records) names.insert(r.task);
        return {names.begin(), names.end()};
    }
};

namespace manifest_detail {

inline void validate_and_count(DatasetManifest& manifest) {
    std::set<std::string> train_paths, test_paths;
    manifest.counts.clear();
    for (const ManifestRecord& r : manifest.records) {
        const bool expected_label = r.role == RoleKind::Target;
        if (r.label != expected_label) {
            throw Error(ErrorCode::ParseError,
                        "label inconsistent with role for " + r.path + " (role " +
                            std::string(to_string(r.role)) + ")");
        }
        auto& bucket = r.split == SplitKind::Train ? train_paths : test_paths;
        if (!bucket.insert(r.path).second) {
            throw Error(ErrorCode::DuplicatePath,
                        "duplicate path within split: " + r.path);
        }
        ++manifest.counts[{r.task, r.source, r.role, r.split}];
    }
    for (const std::string& p : train_paths) {
        if (test_paths.count(p)) {
            throw Error(ErrorCode::SplitLeak, "path appears in both train and test: " + p);
        }
    }
}

}  // namespace manifest_detail

// Grammar (bit-exact): `path<TAB>task<TAB>source<TAB>role<TAB>split<TAB>label`,
// UTF-8, LF line endings, '#'-prefixed comment lines permitted, header
// `#schema=1`. Labels are 0/1.
inline DatasetManifest parse_manifest(const std::string& text) {
    DatasetManifest manifest;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            throw Error(ErrorCode::ParseError, line_no, "CRLF line ending; manifest must be LF");
        }
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> f = split(line, '\t');
        if (f.size() != 6) {
            throw Error(ErrorCode::ParseError, line_no,
                        "expected 6 tab-separated fields, got " + std::to_string(f.size()));
        }
        ManifestRecord r;
        r.path = f[0];
        r.task = f[1];
        try {
            r.source = source_from_string(f[2]);
            r.role = role_from_string(f[3]);
            r.split = split_from_string(f[4]);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, line_no, e.what());
        }
        if (f[5] == "1") r.label = true;
        else if (f[5] == "0") r.label = false;
        else throw Error(ErrorCode::ParseError, line_no, "label must be 0 or 1");
        if (r.path.empty()) throw Error(ErrorCode::ParseError, line_no, "empty path");
        manifest.records.push_back(std::move(r));
    }
    if (manifest.records.empty()) {
        throw Error(ErrorCode::ParseError, "manifest contains no records");
    }
    manifest_detail::validate_and_count(manifest);
    return manifest;
}

inline std::string serialize_manifest(const DatasetManifest& manifest) {
    std::ostringstream os;
    os << "#schema=1\n";
    for (const ManifestRecord& r : manifest.records) {
        os << r.path << '\t' << r.task << '\t' << to_string(r.source) << '\t' << to_string(r.role)
           << '\t' << to_string(r.split) << '\t' << (r.label ? '1' : '0') << '\n';
    }
    return os.str();
}

// Load, validate invariants, compute counts. Relative record paths resolve
// against the manifest's directory; with verify_paths every record must
// exist on disk.
inline DatasetManifest load_manifest(const std::string& path, bool verify_paths = true) {
    namespace fs = std::filesystem;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open manifest: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    DatasetManifest manifest = parse_manifest(buffer.str());

    const fs::path base = fs::path(path).parent_path();
    for (ManifestRecord& r : manifest.records) {
        fs::path p(r.path);
        if (p.is_relative()) p = base / p;
        r.path = p.lexically_normal().string();
        if (verify_paths && !fs::exists(r.path)) {
            throw Error(ErrorCode::IoError, "manifest path does not exist: " + r.path);
        }
    }
    // Re-validate after path resolution (resolution can collide paths).
    manifest_detail::validate_and_count(manifest);
    return manifest;
}

// Directory layout rules for build_manifest: path segments under the root
// are <task>/<source>/<role>/<split>/<image>.
struct LayoutRules {
    std::set<std::string> image_extensions = {".png", ".jpg", ".jpeg", ".ppm"};
    std::set<std::string> auxiliary_extensions = {".det"};  // sidecars, skipped
};

inline DatasetManifest build_manifest(const std::string& root_dir,
                                      const LayoutRules& rules = {}) {
    namespace fs = std::filesystem;
    DatasetManifest manifest;
    if (!fs::exists(root_dir)) {
        throw Error(ErrorCode::IoError, "no such directory: " + root_dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    const fs::path root(root_dir);
    for (const fs::path& file : files) {
        const std::string ext = to_lower(file.extension().string());
        if (rules.auxiliary_extensions.count(ext)) continue;
        const fs::path rel = file.lexically_relative(root);
        std::vector<std::string> segments;
        for (const auto& part : rel) segments.push_back(part.string());
        if (segments.size() != 5 || !rules.image_extensions.count(ext)) {
            throw Error(ErrorCode::UnrecognizedLayout,
                        "unexpected file outside task/source/role/split layout: " + file.string());
        }
        ManifestRecord r;
        r.path = file.string();
        r.task = segments[0];
        try {
            r.source = source_from_string(segments[1]);
            r.role = role_from_string(segments[2]);
            r.split = split_from_string(segments[3]);
        } catch (const Error& e) {
            throw Error(ErrorCode::UnrecognizedLayout,
                        std::string(e.what()) + " in path " + file.string());
        }
        r.label = r.role == RoleKind::Target;
        manifest.records.push_back(std::move(r));
    }
    manifest_detail::validate_and_count(manifest);
    return manifest;
}

}  // namespace unlearn_eval
