#include "rosa/adaptation.hpp"

#include "rosa/error.hpp"

#include <set>

namespace rosa {

AdaptedExplanation adapt_explanation(const std::string & case_id, const ExplanationTemplate & explanation,
    const FarmGraph & target, const Mapping & mapping)
{
    AdaptedExplanation out{case_id, mapping, {}, {}};
    for (const auto & s : explanation.segments()) {
        if (!s.placeholder) {
            out.text += s.text;
            continue;
        }
        auto it = mapping.find(s.text);
        if (it == mapping.end() || !target.has_vertex(it->second)) {
            out.text += "{v:" + s.text + "}";
            out.unresolved.push_back(s.text);
            continue;
        }
        out.text += target.label_of(it->second);
    }
    return out;
}

bool mapping_fits(const FarmGraph & pattern, const FarmGraph & target, const Mapping & mapping, bool require_total)
{
    if (require_total && mapping.size() != pattern.vertex_count())
        return false;
    std::set<VertexId> images;
    for (const auto & [p, t] : mapping) {
        auto ps = pattern.sort_of(p);
        auto ts = target.sort_of(t);
        if (!ps || !ts || *ps != *ts || !images.insert(t).second)
            return false;
    }
    std::set<Edge> target_edges(target.edges.begin(), target.edges.end());
    for (const auto & e : pattern.edges) {
        auto r = mapping.find(e.relation);
        auto x = mapping.find(e.entity);
        if (r == mapping.end() || x == mapping.end())
            continue;
        if (!target_edges.contains({r->second, e.role, x->second}))
            return false;
    }
    return true;
}

AdaptedExplanation adapt(const KnowledgeBase & kb, const MatchResult & match)
{
    const auto & c = kb.case_at(match.case_id);
    auto git = kb.graphs.find(match.target_graph_id);
    if (git == kb.graphs.end())
        fail(ErrorCode::InvalidMapping, "unknown target graph '" + match.target_graph_id + "'");
    if (!mapping_fits(kb.fragment(c), git->second, match.mapping, false))
        fail(ErrorCode::InvalidMapping,
            "mapping of case '" + c.id + "' does not fit target graph '" + match.target_graph_id + "'");
    return adapt_explanation(c.id, c.explanation, git->second, match.mapping);
}

std::string_view to_string(Decision d)
{
    return d == Decision::Accept ? "accept" : "reject";
}

std::optional<Decision> parse_decision(std::string_view text)
{
    if (text == "accept")
        return Decision::Accept;
    if (text == "reject")
        return Decision::Reject;
    return std::nullopt;
}

namespace {

std::string describe_mapping(const Mapping & m)
{
    std::string out;
    for (const auto & [p, t] : m)
        out += (out.empty() ? "" : ", ") + p + "->" + t;
    return out;
}

std::string attribution(const ReviewVerdict & v)
{
    std::string out;
    if (!v.reviewer.empty())
        out += " by " + v.reviewer;
    if (!v.timestamp.empty())
        out += " at " + v.timestamp;
    return out;
}

// Points each placeholder at the image of its vertex.
ExplanationTemplate transfer_template(const ExplanationTemplate & source, const Mapping & mapping)
{
    ExplanationTemplate out;
    for (const auto & s : source.segments()) {
        if (!s.placeholder) {
            out.text += s.text;
            continue;
        }
        auto it = mapping.find(s.text);
        out.text += "{v:" + (it == mapping.end() ? s.text : it->second) + "}";
    }
    return out;
}

} // namespace

ReviewOutcome record_review(const KnowledgeBase & kb, const ReviewVerdict & verdict, std::uint64_t expected_version)
{
    if (expected_version != kb.version)
        fail(ErrorCode::StaleVersion, "verdict targets version " + std::to_string(expected_version) +
                                          " but the knowledge base is at version " + std::to_string(kb.version));
    if (verdict.edited_text && verdict.decision != Decision::Accept)
        fail(ErrorCode::InvalidVerdict, "edited text is only allowed with an accept decision");

    const auto & match = verdict.match;
    auto cit = kb.cases.find(match.case_id);
    auto git = kb.graphs.find(match.target_graph_id);
    if (cit == kb.cases.end() || git == kb.graphs.end())
        fail(ErrorCode::UnknownMatch,
            "match refers to unknown case '" + match.case_id + "' or graph '" + match.target_graph_id + "'");
    const auto & source = cit->second;
    const auto & target = git->second;
    if (!mapping_fits(kb.fragment(source), target, match.mapping, true))
        fail(ErrorCode::UnknownMatch, "mapping is not a valid match of case '" + source.id + "' onto '" + target.id + "'");

    auto comment = verdict.comment.empty() ? std::string() : ": " + verdict.comment;
    ReviewOutcome out{kb, std::nullopt};

    if (verdict.decision == Decision::Reject) {
        out.kb = append_note(kb, source.id,
            "rejected match onto " + target.id + " [" + describe_mapping(match.mapping) + "]" + attribution(verdict) + comment);
    } else {
        if (source.status == CaseStatus::Rejected)
            fail(ErrorCode::IllegalTransition, "case '" + source.id + "' is rejected and cannot be validated by a match");

        std::set<VertexId> seeds;
        for (const auto & [p, t] : match.mapping)
            seeds.insert(t);
        auto explanation = verdict.edited_text ? ExplanationTemplate{*verdict.edited_text}
                                               : transfer_template(source.explanation, match.mapping);
        auto [next, new_id] = add_case(kb, target.id, seeds, std::move(explanation));
        next = append_note(next, new_id, "adapted from case " + source.id + attribution(verdict) + comment);

        auto source_note = "accepted match onto " + target.id + " as case " + new_id + attribution(verdict) + comment;
        if (source.status == CaseStatus::Draft)
            next = set_status(next, source.id, CaseStatus::Validated, source_note);
        else
            next = append_note(next, source.id, source_note);
        out.kb = std::move(next);
        out.new_case_id = new_id;
    }
    out.kb.version = kb.version + 1;
    return out;
}

} // namespace rosa
