#pragma once

#include "rosa/case_base.hpp"
#include "rosa/matcher.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rosa {

struct AdaptedExplanation {
    std::string case_id;
    Mapping mapping;
    std::string text;
    std::vector<VertexId> unresolved; // placeholders left verbatim in `text`
};

// Substitutes target labels for the placeholders of `explanation`. Text
// outside placeholder spans is copied unchanged.
AdaptedExplanation adapt_explanation(const std::string & case_id, const ExplanationTemplate & explanation,
    const FarmGraph & target, const Mapping & mapping);

// Throws UnknownCase, or InvalidMapping when the mapping does not fit the
// case fragment and target graph.
AdaptedExplanation adapt(const KnowledgeBase & kb, const MatchResult & match);

// Structural check only (sorts, injectivity, edge images); the compatibility
// policy used at match time may differ from the KB default.
bool mapping_fits(const FarmGraph & pattern, const FarmGraph & target, const Mapping & mapping, bool require_total);

enum class Decision { Accept, Reject };

std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view text);

struct ReviewVerdict {
    MatchResult match;
    Decision decision = Decision::Reject;
    std::optional<std::string> edited_text; // Accept only
    std::string comment;
    std::string reviewer;
    std::string timestamp;
};

struct ReviewOutcome {
    KnowledgeBase kb;
    std::optional<std::string> new_case_id;
};

// Accept: new Draft case on the target graph, source promoted to Validated.
// Reject: verdict appended to the source case's notes. Either way the version
// advances by exactly one.
ReviewOutcome record_review(const KnowledgeBase & kb, const ReviewVerdict & verdict, std::uint64_t expected_version);

} // namespace rosa
