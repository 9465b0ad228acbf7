#include "rosa/policy.hpp"

#include "rosa/error.hpp"

namespace rosa {

void check_policy(const Taxonomy & tax, const CompatibilityPolicy & policy)
{
    if (!(policy.threshold >= 0.0 && policy.threshold <= 1.0))
        fail(ErrorCode::InvalidPolicy, "threshold " + std::to_string(policy.threshold) + " is outside [0,1]");
    auto check = [&](const ConceptPair & p) {
        if (tax.at(p.first).kind != tax.at(p.second).kind)
            fail(ErrorCode::KindMismatch, "policy pair (" + p.first + ", " + p.second + ") mixes kinds");
    };
    for (const auto & p : policy.allowed_pairs) {
        check(p);
        if (policy.forbidden_pairs.contains(p))
            fail(ErrorCode::InvalidPolicy, "pair (" + p.first + ", " + p.second + ") is both allowed and forbidden");
    }
    for (const auto & p : policy.forbidden_pairs)
        check(p);
}

bool compatible(const CompatibilityPolicy & policy, const Taxonomy & tax, const ConceptId & a, const ConceptId & b)
{
    // similarity() validates existence and kind before the pair lookups can
    // short-circuit.
    auto sim = tax.similarity(a, b);
    if (policy.forbids(a, b))
        return false;
    if (policy.allows(a, b))
        return true;
    return sim >= policy.threshold;
}

} // namespace rosa
