#include "rosa/case_base.hpp"

#include "rosa/error.hpp"

#include <algorithm>

namespace rosa {

std::vector<ExplanationTemplate::Segment> ExplanationTemplate::segments() const
{
    static constexpr std::string_view open = "{v:";
    std::vector<Segment> out;
    auto push_literal = [&](std::string_view s) {
        if (s.empty())
            return;
        if (!out.empty() && !out.back().placeholder)
            out.back().text += s;
        else
            out.push_back({false, std::string(s)});
    };

    std::string_view rest = text;
    while (!rest.empty()) {
        auto start = rest.find(open);
        if (start == std::string_view::npos) {
            push_literal(rest);
            break;
        }
        auto close = rest.find('}', start + open.size());
        if (close == std::string_view::npos) {
            push_literal(rest);
            break;
        }
        push_literal(rest.substr(0, start));
        out.push_back({true, std::string(rest.substr(start + open.size(), close - start - open.size()))});
        rest.remove_prefix(close + 1);
    }
    return out;
}

std::set<VertexId> ExplanationTemplate::placeholders() const
{
    std::set<VertexId> out;
    for (const auto & s : segments())
        if (s.placeholder)
            out.insert(s.text);
    return out;
}

std::string_view to_string(CaseStatus status)
{
    switch (status) {
    case CaseStatus::Draft: return "draft";
    case CaseStatus::Validated: return "validated";
    case CaseStatus::Rejected: return "rejected";
    }
    return "draft";
}

std::optional<CaseStatus> parse_case_status(std::string_view text)
{
    if (text == "draft")
        return CaseStatus::Draft;
    if (text == "validated")
        return CaseStatus::Validated;
    if (text == "rejected")
        return CaseStatus::Rejected;
    return std::nullopt;
}

bool transition_allowed(CaseStatus from, CaseStatus to)
{
    switch (from) {
    case CaseStatus::Draft: return to == CaseStatus::Validated || to == CaseStatus::Rejected;
    case CaseStatus::Rejected: return to == CaseStatus::Draft;
    case CaseStatus::Validated: return false;
    }
    return false;
}

const FarmGraph & KnowledgeBase::graph(const std::string & id) const
{
    auto it = graphs.find(id);
    if (it == graphs.end())
        fail(ErrorCode::UnknownGraph, "unknown graph '" + id + "'");
    return it->second;
}

const Case & KnowledgeBase::case_at(const std::string & id) const
{
    auto it = cases.find(id);
    if (it == cases.end())
        fail(ErrorCode::UnknownCase, "unknown case '" + id + "'");
    return it->second;
}

FarmGraph KnowledgeBase::fragment(const Case & c) const
{
    return induced_case_fragment(graph(c.graph_id), c.vertex_set);
}

bool equivalent(const KnowledgeBase & a, const KnowledgeBase & b)
{
    if (!(a.taxonomy == b.taxonomy && a.roles == b.roles && a.cases == b.cases && a.policy == b.policy &&
            a.version == b.version && a.graphs.size() == b.graphs.size()))
        return false;
    for (const auto & [id, g] : a.graphs) {
        auto it = b.graphs.find(id);
        if (it == b.graphs.end() || canonical_form(g) != canonical_form(it->second))
            return false;
    }
    return true;
}

std::vector<Violation> audit(const KnowledgeBase & kb)
{
    std::vector<Violation> out;
    auto append = [&](std::vector<Violation> more) { out.insert(out.end(), more.begin(), more.end()); };

    for (const auto & [id, g] : kb.graphs) {
        if (id != g.id)
            out.push_back({Rule::EmptyId, id, "graph stored under key '" + id + "' has id '" + g.id + "'"});
        append(validate_graph(kb.taxonomy, kb.roles, g));
    }

    // Relation arity is whatever the edges say; flag concepts whose vertices
    // disagree on their role sets.
    std::map<ConceptId, std::map<std::multiset<std::string>, std::string>> role_sets;
    for (const auto & [gid, g] : kb.graphs) {
        std::map<VertexId, std::multiset<std::string>> per_vertex;
        for (const auto & r : g.relations)
            per_vertex[r.id];
        for (const auto & e : g.edges)
            if (auto it = per_vertex.find(e.relation); it != per_vertex.end())
                it->second.insert(e.role);
        for (const auto & r : g.relations)
            role_sets[r.concept_id].emplace(per_vertex[r.id], gid + ":" + r.id);
    }
    for (const auto & [cid, sets] : role_sets) {
        if (sets.size() < 2)
            continue;
        std::string where;
        for (const auto & [roles, example] : sets)
            where += (where.empty() ? "" : ", ") + example;
        out.push_back({Rule::InconsistentArity, cid, "relation concept used with different role sets (" + where + ")",
            Severity::Warning});
    }

    for (const auto & [id, c] : kb.cases) {
        auto subject = "case " + id;
        if (id != c.id)
            out.push_back({Rule::EmptyId, subject, "case stored under key '" + id + "' has id '" + c.id + "'"});
        auto git = kb.graphs.find(c.graph_id);
        if (git == kb.graphs.end()) {
            out.push_back({Rule::UnknownGraph, subject, "references missing graph '" + c.graph_id + "'"});
            continue;
        }
        const auto & g = git->second;
        bool vertices_ok = true;
        for (const auto & v : c.vertex_set) {
            if (!g.has_vertex(v)) {
                out.push_back({Rule::UnknownCaseVertex, subject, "vertex '" + v + "' is not in graph '" + g.id + "'"});
                vertices_ok = false;
            }
        }
        if (vertices_ok && relation_closure(g, c.vertex_set) != c.vertex_set)
            out.push_back({Rule::OpenFragment, subject, "vertex set is not closed under relation completeness"});
        for (const auto & p : c.explanation.placeholders())
            if (!c.vertex_set.contains(p))
                out.push_back({Rule::UnresolvedPlaceholder, subject, "placeholder {v:" + p + "} is outside the fragment"});
    }

    const auto & policy = kb.policy;
    if (!(policy.threshold >= 0.0 && policy.threshold <= 1.0))
        out.push_back({Rule::InvalidThreshold, "policy", "threshold must lie in [0,1]"});
    auto check_pairs = [&](const std::set<ConceptPair> & pairs, std::string_view which) {
        for (const auto & p : pairs) {
            auto subject = std::string(which) + " (" + p.first + ", " + p.second + ")";
            if (!kb.taxonomy.contains(p.first) || !kb.taxonomy.contains(p.second)) {
                out.push_back({Rule::PolicyUnknownConcept, subject, "pair names a concept missing from the taxonomy"});
                continue;
            }
            if (kb.taxonomy.at(p.first).kind != kb.taxonomy.at(p.second).kind)
                out.push_back({Rule::PolicyKindMismatch, subject, "pair mixes entity and relation concepts"});
        }
    };
    check_pairs(policy.allowed_pairs, "allowed");
    check_pairs(policy.forbidden_pairs, "forbidden");
    for (const auto & p : policy.allowed_pairs)
        if (policy.forbidden_pairs.contains(p))
            out.push_back(
                {Rule::PolicyConflict, "(" + p.first + ", " + p.second + ")", "pair is both allowed and forbidden"});
    return out;
}

namespace {

KnowledgeBase bumped(KnowledgeBase kb)
{
    ++kb.version;
    return kb;
}

Case & mutable_case(KnowledgeBase & kb, const std::string & case_id)
{
    auto it = kb.cases.find(case_id);
    if (it == kb.cases.end())
        fail(ErrorCode::UnknownCase, "unknown case '" + case_id + "'");
    return it->second;
}

std::string next_case_id(const KnowledgeBase & kb)
{
    for (std::size_t n = kb.cases.size() + 1;; ++n) {
        auto id = "case-" + std::to_string(n);
        if (!kb.cases.contains(id))
            return id;
    }
}

void require_resolved(const ExplanationTemplate & explanation, const std::set<VertexId> & vertices)
{
    for (const auto & p : explanation.placeholders())
        if (!vertices.contains(p))
            fail(ErrorCode::UnresolvedPlaceholder, "placeholder {v:" + p + "} does not name a vertex of the fragment");
}

} // namespace

KnowledgeBase add_graph(const KnowledgeBase & kb, FarmGraph g)
{
    if (kb.graphs.contains(g.id))
        fail(ErrorCode::DuplicateId, "graph '" + g.id + "' already exists");
    auto violations = validate_graph(kb.taxonomy, kb.roles, g);
    if (has_errors(violations))
        fail(ErrorCode::InvalidGraph, "graph '" + g.id + "' is invalid: " + describe(violations.front()));
    auto next = bumped(kb);
    auto id = g.id;
    next.graphs.emplace(id, std::move(g));
    return next;
}

std::pair<KnowledgeBase, std::string> add_case(const KnowledgeBase & kb, const std::string & graph_id,
    const std::set<VertexId> & seeds, ExplanationTemplate explanation, std::string case_id)
{
    const auto & g = kb.graph(graph_id);
    auto vertices = relation_closure(g, seeds);
    require_resolved(explanation, vertices);
    if (case_id.empty())
        case_id = next_case_id(kb);
    else if (kb.cases.contains(case_id))
        fail(ErrorCode::DuplicateId, "case '" + case_id + "' already exists");

    auto next = bumped(kb);
    next.cases.emplace(case_id, Case{case_id, graph_id, std::move(vertices), std::move(explanation), CaseStatus::Draft, {}});
    return {std::move(next), case_id};
}

KnowledgeBase set_status(const KnowledgeBase & kb, const std::string & case_id, CaseStatus status,
    const std::string & note)
{
    auto current = kb.case_at(case_id).status;
    if (!transition_allowed(current, status))
        fail(ErrorCode::IllegalTransition, "case '" + case_id + "': " + std::string(to_string(current)) + " -> " +
                                               std::string(to_string(status)) + " is not allowed");
    auto next = bumped(kb);
    auto & c = mutable_case(next, case_id);
    c.status = status;
    c.notes.push_back(std::string(to_string(current)) + " -> " + std::string(to_string(status)) +
                      (note.empty() ? "" : ": " + note));
    return next;
}

KnowledgeBase edit_explanation(const KnowledgeBase & kb, const std::string & case_id, ExplanationTemplate explanation,
    const std::string & note)
{
    require_resolved(explanation, kb.case_at(case_id).vertex_set);
    auto next = bumped(kb);
    auto & c = mutable_case(next, case_id);
    c.explanation = std::move(explanation);
    if (!note.empty())
        c.notes.push_back(note);
    return next;
}

KnowledgeBase append_note(const KnowledgeBase & kb, const std::string & case_id, const std::string & note)
{
    kb.case_at(case_id);
    auto next = bumped(kb);
    mutable_case(next, case_id).notes.push_back(note);
    return next;
}

KnowledgeBase with_policy(const KnowledgeBase & kb, CompatibilityPolicy policy)
{
    check_policy(kb.taxonomy, policy);
    auto next = bumped(kb);
    next.policy = std::move(policy);
    return next;
}

std::string render_explanation(const ExplanationTemplate & explanation, const FarmGraph & labels,
    const std::map<VertexId, VertexId> * mapping)
{
    std::string out;
    for (const auto & s : explanation.segments()) {
        if (!s.placeholder) {
            out += s.text;
            continue;
        }
        VertexId target = s.text;
        if (mapping) {
            auto it = mapping->find(s.text);
            if (it == mapping->end())
                fail(ErrorCode::UnresolvedPlaceholder, "mapping does not cover placeholder {v:" + s.text + "}");
            target = it->second;
        }
        if (!labels.has_vertex(target))
            fail(ErrorCode::UnresolvedPlaceholder,
                "placeholder {v:" + s.text + "} resolves to '" + target + "', absent from graph '" + labels.id + "'");
        out += labels.label_of(target);
    }
    return out;
}

} // namespace rosa
