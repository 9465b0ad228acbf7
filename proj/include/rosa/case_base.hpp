#pragma once

#include "rosa/graph.hpp"
#include "rosa/policy.hpp"
#include "rosa/taxonomy.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rosa {

// Explanation text with optional `{v:<vertex-id>}` placeholders.
struct ExplanationTemplate {
    std::string text;

    struct Segment {
        bool placeholder = false;
        std::string text; // literal text, or the vertex id for placeholders
    };

    // An unterminated `{v:` is kept as literal text.
    std::vector<Segment> segments() const;
    std::set<VertexId> placeholders() const;

    bool operator==(const ExplanationTemplate &) const = default;
};

enum class CaseStatus { Draft, Validated, Rejected };

std::string_view to_string(CaseStatus status);
std::optional<CaseStatus> parse_case_status(std::string_view text);
bool transition_allowed(CaseStatus from, CaseStatus to);

struct Case {
    std::string id;
    std::string graph_id;
    std::set<VertexId> vertex_set;
    ExplanationTemplate explanation;
    CaseStatus status = CaseStatus::Draft;
    std::vector<std::string> notes; // append-only review history and provenance

    bool operator==(const Case &) const = default;
};

struct KnowledgeBase {
    Taxonomy taxonomy;
    RoleVocabulary roles = RoleVocabulary::defaults();
    std::map<std::string, FarmGraph> graphs;
    std::map<std::string, Case> cases;
    CompatibilityPolicy policy;
    std::uint64_t version = 0;

    const FarmGraph & graph(const std::string & id) const;
    const Case & case_at(const std::string & id) const;
    // The case's subgraph of its owning farm graph.
    FarmGraph fragment(const Case & c) const;
};

// Structural equality: canonical form for graphs, map equality elsewhere.
bool equivalent(const KnowledgeBase & a, const KnowledgeBase & b);

// Full referential-integrity and well-formedness audit.
std::vector<Violation> audit(const KnowledgeBase & kb);

KnowledgeBase add_graph(const KnowledgeBase & kb, FarmGraph g);

// Creates a Draft case whose vertex set is the relation closure of `seeds`.
// An empty `case_id` picks the next free "case-N".
std::pair<KnowledgeBase, std::string> add_case(const KnowledgeBase & kb, const std::string & graph_id,
    const std::set<VertexId> & seeds, ExplanationTemplate explanation, std::string case_id = {});

KnowledgeBase set_status(const KnowledgeBase & kb, const std::string & case_id, CaseStatus status,
    const std::string & note);

// Explicit edit of a case's explanation; appends `note` when non-empty.
KnowledgeBase edit_explanation(const KnowledgeBase & kb, const std::string & case_id, ExplanationTemplate explanation,
    const std::string & note);

KnowledgeBase append_note(const KnowledgeBase & kb, const std::string & case_id, const std::string & note);

KnowledgeBase with_policy(const KnowledgeBase & kb, CompatibilityPolicy policy);

// Replaces placeholders with vertex labels. Without a mapping the labels come
// from `labels` directly; with a mapping each placeholder id is first mapped
// and then looked up in `labels` (the target graph).
std::string render_explanation(const ExplanationTemplate & explanation, const FarmGraph & labels,
    const std::map<VertexId, VertexId> * mapping = nullptr);

} // namespace rosa
