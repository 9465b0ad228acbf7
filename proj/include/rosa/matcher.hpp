#pragma once

#include "rosa/case_base.hpp"
#include "rosa/graph.hpp"
#include "rosa/policy.hpp"
#include "rosa/taxonomy.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace rosa {

// Total, injective, sort-preserving assignment case vertex -> target vertex.
using Mapping = std::map<VertexId, VertexId>;

struct MatchLimits {
    std::size_t max_mappings = 64; // per case
    std::size_t max_results = 50;  // cap on k for one retrieve
};

struct MappingSet {
    std::vector<Mapping> mappings; // ordered lexicographically by target ids
    bool truncated = false;
    std::size_t total = 0; // before truncation
};

struct MatchResult {
    std::string case_id;
    std::string target_graph_id;
    Mapping mapping;
    double score = 0.0;
    std::map<VertexId, double> per_vertex;
};

// Every case edge (r, role, e) must have its image (m(r), role, m(e)) in the
// target; concepts must be compatible under the policy.
bool is_valid_mapping(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const Mapping & mapping);

// Visits every valid mapping of `pattern` into `target` in search order.
// Returning false from the visitor stops the search.
void enumerate_mappings(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const std::function<bool(const Mapping &)> & visit);

MappingSet find_mappings(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const MatchLimits & limits = {});

MappingSet find_mappings(const KnowledgeBase & kb, const Case & c, const FarmGraph & target,
    const CompatibilityPolicy & policy, const MatchLimits & limits = {});

// Mean concept similarity over all pattern vertices.
double score_match(const Taxonomy & tax, const FarmGraph & pattern, const FarmGraph & target, const Mapping & mapping);

std::map<VertexId, double> per_vertex_similarity(const Taxonomy & tax, const FarmGraph & pattern,
    const FarmGraph & target, const Mapping & mapping);

// Best mapping per non-rejected case, ranked by score desc, vertex count desc,
// case id asc; at most min(k, limits.max_results) results.
std::vector<MatchResult> retrieve(const KnowledgeBase & kb, const FarmGraph & target, const CompatibilityPolicy & policy,
    std::size_t k, const MatchLimits & limits = {});

} // namespace rosa
