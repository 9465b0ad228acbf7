#pragma once

#include "rosa/taxonomy.hpp"

#include <set>
#include <utility>

namespace rosa {

// Unordered concept pair, stored with the smaller id first.
struct ConceptPair {
    ConceptId first;
    ConceptId second;

    ConceptPair(ConceptId a, ConceptId b)
    {
        if (b < a)
            std::swap(a, b);
        first = std::move(a);
        second = std::move(b);
    }

    auto operator<=>(const ConceptPair &) const = default;
};

struct CompatibilityPolicy {
    static constexpr double default_threshold = 0.5;

    double threshold = default_threshold;
    std::set<ConceptPair> allowed_pairs;
    std::set<ConceptPair> forbidden_pairs;

    bool allows(const ConceptId & a, const ConceptId & b) const { return allowed_pairs.contains({a, b}); }
    bool forbids(const ConceptId & a, const ConceptId & b) const { return forbidden_pairs.contains({a, b}); }

    bool operator==(const CompatibilityPolicy &) const = default;
};

// Throws InvalidPolicy when the threshold is outside [0,1] or a pair is both
// allowed and forbidden; UnknownConcept / KindMismatch for bad pairs.
void check_policy(const Taxonomy & tax, const CompatibilityPolicy & policy);

// forbidden ⇒ false, else allowed ⇒ true, else similarity ≥ threshold.
bool compatible(const CompatibilityPolicy & policy, const Taxonomy & tax, const ConceptId & a, const ConceptId & b);

} // namespace rosa
