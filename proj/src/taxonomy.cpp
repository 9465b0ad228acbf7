#include "rosa/taxonomy.hpp"

#include "rosa/error.hpp"

#include <algorithm>
#include <functional>

namespace rosa {

std::string_view to_string(ConceptKind kind)
{
    return kind == ConceptKind::Entity ? "entity" : "relation";
}

std::optional<ConceptKind> parse_concept_kind(std::string_view text)
{
    if (text == "entity")
        return ConceptKind::Entity;
    if (text == "relation")
        return ConceptKind::Relation;
    return std::nullopt;
}

Taxonomy Taxonomy::from_concepts(std::vector<Concept> concepts)
{
    Taxonomy tax;
    for (auto & c : concepts) {
        if (c.id.empty())
            fail(ErrorCode::ParseError, "concept with empty id");
        auto id = c.id;
        if (!tax.concepts_.emplace(id, std::move(c)).second)
            fail(ErrorCode::DuplicateId, "duplicate concept id '" + id + "'");
    }
    tax.rebuild();
    return tax;
}

Taxonomy Taxonomy::with_concept(Concept c) const
{
    if (c.id.empty())
        fail(ErrorCode::UnknownConcept, "concept id must not be empty");
    if (contains(c.id))
        fail(ErrorCode::DuplicateId, "concept '" + c.id + "' already exists");
    Taxonomy next = *this;
    auto id = c.id;
    next.concepts_.emplace(id, std::move(c));
    next.rebuild();
    return next;
}

Taxonomy Taxonomy::with_parents(const ConceptId & id, std::set<ConceptId> parents) const
{
    if (!contains(id))
        fail(ErrorCode::UnknownConcept, "unknown concept '" + id + "'");
    Taxonomy next = *this;
    next.concepts_.at(id).parents = std::move(parents);
    next.rebuild();
    return next;
}

const Concept & Taxonomy::at(const ConceptId & id) const
{
    auto it = concepts_.find(id);
    if (it == concepts_.end())
        fail(ErrorCode::UnknownConcept, "unknown concept '" + id + "'");
    return it->second;
}

std::optional<ConceptId> Taxonomy::root(ConceptKind kind) const
{
    for (const auto & [id, c] : concepts_)
        if (c.kind == kind && c.parents.empty())
            return id;
    return std::nullopt;
}

void Taxonomy::rebuild()
{
    for (const auto & [id, c] : concepts_) {
        for (const auto & p : c.parents) {
            if (p == id)
                fail(ErrorCode::CycleDetected, "concept '" + id + "' is its own parent");
            auto it = concepts_.find(p);
            if (it == concepts_.end())
                fail(ErrorCode::UnknownParent, "concept '" + id + "' has unknown parent '" + p + "'");
            if (it->second.kind != c.kind)
                fail(ErrorCode::KindMismatch,
                    "concept '" + id + "' (" + std::string(to_string(c.kind)) + ") has parent '" + p + "' of kind " +
                        std::string(to_string(it->second.kind)));
        }
    }

    // Longest-path depth by memoised DFS; a grey node on the stack means a cycle.
    enum class Mark { White, Grey, Black };
    std::map<ConceptId, Mark> mark;
    depth_.clear();
    ancestors_.clear();
    std::function<void(const ConceptId &)> visit = [&](const ConceptId & id) {
        auto & m = mark[id];
        if (m == Mark::Black)
            return;
        if (m == Mark::Grey)
            fail(ErrorCode::CycleDetected, "parent cycle through '" + id + "'");
        m = Mark::Grey;
        std::size_t d = 0;
        std::set<ConceptId> anc{id};
        for (const auto & p : concepts_.at(id).parents) {
            visit(p);
            d = std::max(d, depth_.at(p) + 1);
            const auto & pa = ancestors_.at(p);
            anc.insert(pa.begin(), pa.end());
        }
        depth_[id] = d;
        ancestors_[id] = std::move(anc);
        mark[id] = Mark::Black;
    };
    for (const auto & [id, c] : concepts_)
        visit(id);

    std::optional<ConceptId> entity_root, relation_root;
    for (const auto & [id, c] : concepts_) {
        if (!c.parents.empty())
            continue;
        auto & slot = c.kind == ConceptKind::Entity ? entity_root : relation_root;
        if (slot)
            fail(ErrorCode::MultipleRoots,
                "both '" + *slot + "' and '" + id + "' are " + std::string(to_string(c.kind)) + " roots");
        slot = id;
    }
}

bool Taxonomy::subsumes(const ConceptId & ancestor, const ConceptId & descendant) const
{
    at(ancestor);
    return ancestors(descendant).contains(ancestor);
}

std::size_t Taxonomy::depth(const ConceptId & id) const
{
    at(id);
    return depth_.at(id);
}

const std::set<ConceptId> & Taxonomy::ancestors(const ConceptId & id) const
{
    at(id);
    return ancestors_.at(id);
}

void Taxonomy::require_same_kind(const ConceptId & a, const ConceptId & b) const
{
    if (at(a).kind != at(b).kind)
        fail(ErrorCode::KindMismatch, "concepts '" + a + "' and '" + b + "' differ in kind");
}

std::set<ConceptId> Taxonomy::least_common_subsumers(const ConceptId & a, const ConceptId & b) const
{
    require_same_kind(a, b);
    const auto & aa = ancestors(a);
    const auto & ba = ancestors(b);
    std::set<ConceptId> common;
    std::set_intersection(aa.begin(), aa.end(), ba.begin(), ba.end(), std::inserter(common, common.end()));

    // Keep only the minimal elements: drop any common ancestor that strictly
    // subsumes another common ancestor.
    std::set<ConceptId> result;
    for (const auto & c : common) {
        bool minimal = std::none_of(common.begin(), common.end(),
            [&](const ConceptId & other) { return other != c && ancestors_.at(other).contains(c); });
        if (minimal)
            result.insert(c);
    }
    return result;
}

double Taxonomy::similarity(const ConceptId & a, const ConceptId & b) const
{
    require_same_kind(a, b);
    if (a == b)
        return 1.0;
    auto lcs = least_common_subsumers(a, b);
    // Deepest candidate; std::set iteration gives lexicographic tie-break.
    std::size_t best = 0;
    for (const auto & c : lcs)
        best = std::max(best, depth_.at(c));
    auto denom = depth_.at(a) + depth_.at(b);
    return static_cast<double>(2 * best) / static_cast<double>(denom);
}

std::set<std::string> Taxonomy::inherited_attributes(const ConceptId & id) const
{
    std::set<std::string> out;
    for (const auto & anc : ancestors(id)) {
        const auto & attrs = concepts_.at(anc).attributes;
        out.insert(attrs.begin(), attrs.end());
    }
    return out;
}

} // namespace rosa
