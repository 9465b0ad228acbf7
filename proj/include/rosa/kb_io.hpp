#pragma once

#include "rosa/case_base.hpp"
#include "rosa/graph.hpp"
#include "rosa/policy.hpp"

#include <filesystem>
#include <functional>
#include <string>

#include <json.hpp>

namespace rosa {

inline constexpr const char * kb_format_name = "rosa-kb";
inline constexpr int kb_format_version = 1;

nlohmann::json graph_to_json(const FarmGraph & g);
nlohmann::json policy_to_json(const CompatibilityPolicy & policy);
nlohmann::json case_to_json(const Case & c);
nlohmann::json concept_to_json(const Concept & c);
nlohmann::json kb_to_json(const KnowledgeBase & kb);

// Decoders throw ParseError naming the JSON pointer of the offending field.
FarmGraph graph_from_json(const nlohmann::json & j, const std::string & where = "");
CompatibilityPolicy policy_from_json(const nlohmann::json & j, const std::string & where = "");
KnowledgeBase kb_from_json(const nlohmann::json & j);

enum class LoadMode {
    Strict,  // IntegrityError when the audit reports any error
    Lenient, // structural decode only; callers run audit() themselves
};

KnowledgeBase parse_kb(const std::string & text, LoadMode mode = LoadMode::Strict);
KnowledgeBase load_kb(const std::filesystem::path & path, LoadMode mode = LoadMode::Strict);

std::string serialize_kb(const KnowledgeBase & kb);
void save_kb(const KnowledgeBase & kb, const std::filesystem::path & path);

// Writes to a sibling temporary file, then renames over `path`. The hook runs
// between the two steps (tests use it to simulate a crash).
void write_atomically(const std::filesystem::path & path, const std::string & content,
    const std::function<void()> & before_rename = {});

} // namespace rosa
