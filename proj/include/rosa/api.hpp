#pragma once

#include "rosa/case_base.hpp"
#include "rosa/config.hpp"
#include "rosa/matcher.hpp"
#include "rosa/store.hpp"

#include <optional>
#include <string>

#include <json.hpp>

namespace rosa {

// Applies the fields present in `overrides` (threshold, allowed, forbidden)
// on top of `base`, then checks the result against the taxonomy.
CompatibilityPolicy override_policy(const Taxonomy & tax, CompatibilityPolicy base, const nlohmann::json & overrides);

// Ranked matches for one target with adapted explanations inlined. Both the
// CLI (--json) and POST /api/match emit exactly this document.
nlohmann::json match_report(const KnowledgeBase & kb, const std::string & target_graph_id, std::size_t k,
    const CompatibilityPolicy & policy, const MatchLimits & limits);

nlohmann::json error_body(const std::string & code, const std::string & message);

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

// HTTP-shaped request handling without a transport, so the service logic is
// testable in-process. Requests carry method, path and raw JSON body.
class Api {
public:
    Api(KbStore & store, std::optional<CompatibilityPolicy> default_policy, MatchLimits limits);

    ApiResponse handle(const std::string & method, const std::string & path, const std::string & body) const;

private:
    CompatibilityPolicy base_policy(const KnowledgeBase & kb) const;

    ApiResponse get_kb() const;
    ApiResponse get_graph(const std::string & id) const;
    ApiResponse get_cases() const;
    ApiResponse get_version() const;
    ApiResponse post_match(const nlohmann::json & request) const;
    ApiResponse post_review(const nlohmann::json & request) const;
    ApiResponse put_case(const std::string & id, const nlohmann::json & request) const;

    KbStore & store_;
    std::optional<CompatibilityPolicy> default_policy_;
    MatchLimits limits_;
};

} // namespace rosa
