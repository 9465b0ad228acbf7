#include "rosa/api.hpp"

#include "rosa/adaptation.hpp"
#include "rosa/error.hpp"
#include "rosa/kb_io.hpp"

#include <chrono>
#include <ctime>
#include <vector>

namespace rosa {

using nlohmann::json;

CompatibilityPolicy override_policy(const Taxonomy & tax, CompatibilityPolicy base, const json & overrides)
{
    if (!overrides.is_null()) {
        if (!overrides.is_object())
            fail(ErrorCode::InvalidPolicy, "policy override must be an object");
        auto given = policy_from_json(overrides, "/policy");
        if (overrides.contains("threshold"))
            base.threshold = given.threshold;
        if (overrides.contains("allowed"))
            base.allowed_pairs = given.allowed_pairs;
        if (overrides.contains("forbidden"))
            base.forbidden_pairs = given.forbidden_pairs;
    }
    check_policy(tax, base);
    return base;
}

json match_report(const KnowledgeBase & kb, const std::string & target_graph_id, std::size_t k,
    const CompatibilityPolicy & policy, const MatchLimits & limits)
{
    const auto & target = kb.graph(target_graph_id);
    auto results = retrieve(kb, target, policy, k, limits);

    json rows = json::array();
    std::size_t rank = 0;
    for (const auto & r : results) {
        auto adapted = adapt(kb, r);
        const auto & c = kb.case_at(r.case_id);
        rows.push_back({
            {"rank", ++rank},
            {"case_id", r.case_id},
            {"source_graph_id", c.graph_id},
            {"case_status", to_string(c.status)},
            {"score", r.score},
            {"mapping", r.mapping},
            {"per_vertex", r.per_vertex},
            {"explanation", adapted.text},
            {"unresolved", adapted.unresolved},
        });
    }
    return {
        {"version", kb.version},
        {"target_graph_id", target_graph_id},
        {"k", k},
        {"policy", policy_to_json(policy)},
        {"results", std::move(rows)},
    };
}

json error_body(const std::string & code, const std::string & message)
{
    return {{"code", code}, {"message", message}};
}

namespace {

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::UnknownGraph:
    case ErrorCode::UnknownCase: return 404;
    case ErrorCode::StaleVersion: return 409;
    case ErrorCode::IllegalTransition:
    case ErrorCode::UnknownMatch: return 422;
    case ErrorCode::IoError: return 500;
    default: return 400;
    }
}

std::vector<std::string> split_path(const std::string & path)
{
    std::vector<std::string> out;
    std::string part;
    for (char ch : path) {
        if (ch == '/') {
            if (!part.empty())
                out.push_back(std::move(part));
            part.clear();
        } else {
            part += ch;
        }
    }
    if (!part.empty())
        out.push_back(std::move(part));
    return out;
}

std::string utc_now()
{
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t expected_version(const json & request)
{
    if (!request.contains("expected_version") || !request.at("expected_version").is_number_unsigned())
        fail(ErrorCode::ParseError, "expected_version (non-negative integer) is required");
    return request.at("expected_version").get<std::uint64_t>();
}

} // namespace

Api::Api(KbStore & store, std::optional<CompatibilityPolicy> default_policy, MatchLimits limits) :
    store_(store),
    default_policy_(std::move(default_policy)),
    limits_(limits)
{
}

CompatibilityPolicy Api::base_policy(const KnowledgeBase & kb) const
{
    return default_policy_ ? *default_policy_ : kb.policy;
}

ApiResponse Api::handle(const std::string & method, const std::string & path, const std::string & body) const
{
    try {
        auto parts = split_path(path);
        if (parts.empty() || parts[0] != "api")
            return {404, error_body("NotFound", "no route for " + path)};
        parts.erase(parts.begin());

        auto request = [&] {
            if (body.empty())
                return json::object();
            try {
                return json::parse(body);
            } catch (const json::parse_error & e) {
                fail(ErrorCode::ParseError, e.what());
            }
        };
        auto method_not_allowed = ApiResponse{405, error_body("MethodNotAllowed", method + " " + path)};

        if (parts.size() == 1 && parts[0] == "kb")
            return method == "GET" ? get_kb() : method_not_allowed;
        if (parts.size() == 1 && parts[0] == "version")
            return method == "GET" ? get_version() : method_not_allowed;
        if (parts.size() == 2 && parts[0] == "graphs")
            return method == "GET" ? get_graph(parts[1]) : method_not_allowed;
        if (parts.size() == 1 && parts[0] == "cases")
            return method == "GET" ? get_cases() : method_not_allowed;
        if (parts.size() == 2 && parts[0] == "cases")
            return method == "PUT" ? put_case(parts[1], request()) : method_not_allowed;
        if (parts.size() == 1 && parts[0] == "match")
            return method == "POST" ? post_match(request()) : method_not_allowed;
        if (parts.size() == 1 && parts[0] == "reviews")
            return method == "POST" ? post_review(request()) : method_not_allowed;
        return {404, error_body("NotFound", "no route for " + path)};
    } catch (const Error & e) {
        return {http_status(e.code()), error_body(std::string(to_string(e.code())), e.what())};
    } catch (const json::exception & e) {
        return {400, error_body("ParseError", e.what())};
    }
}

ApiResponse Api::get_kb() const
{
    auto kb = store_.snapshot();
    json concepts = json::array();
    for (const auto & [id, c] : kb->taxonomy.concepts())
        concepts.push_back(concept_to_json(c));
    json roles = json::array();
    for (const auto & [name, r] : kb->roles.roles())
        roles.push_back({{"name", name}, {"repeatable", r.repeatable}});
    json graphs = json::array();
    for (const auto & [id, g] : kb->graphs) {
        json entry = {{"id", id}, {"farm", g.metadata.farm}, {"zone", g.metadata.zone},
            {"entity_count", g.entities.size()}, {"relation_count", g.relations.size()}};
        if (g.metadata.choreme_image)
            entry["choreme_image"] = *g.metadata.choreme_image;
        graphs.push_back(std::move(entry));
    }
    json cases = json::array();
    for (const auto & [id, c] : kb->cases)
        cases.push_back(
            {{"id", id}, {"graph_id", c.graph_id}, {"status", to_string(c.status)}, {"vertex_count", c.vertex_set.size()}});
    return {200,
        {{"version", kb->version}, {"roles", roles}, {"taxonomy", concepts}, {"graphs", graphs}, {"cases", cases},
            {"policy", policy_to_json(base_policy(*kb))}}};
}

ApiResponse Api::get_graph(const std::string & id) const
{
    auto kb = store_.snapshot();
    auto body = graph_to_json(kb->graph(id));
    body["version"] = kb->version;
    return {200, body};
}

ApiResponse Api::get_cases() const
{
    auto kb = store_.snapshot();
    json cases = json::array();
    for (const auto & [id, c] : kb->cases) {
        auto entry = case_to_json(c);
        entry["rendered"] = render_explanation(c.explanation, kb->graph(c.graph_id));
        cases.push_back(std::move(entry));
    }
    return {200, {{"version", kb->version}, {"cases", cases}}};
}

ApiResponse Api::get_version() const
{
    return {200, {{"version", store_.snapshot()->version}}};
}

ApiResponse Api::post_match(const json & request) const
{
    auto kb = store_.snapshot();
    auto target = request.at("target_graph_id").get<std::string>();
    std::size_t k = request.contains("k") ? request.at("k").get<std::size_t>() : 10;
    auto policy = override_policy(kb->taxonomy, base_policy(*kb), request.value("policy", json()));
    return {200, match_report(*kb, target, k, policy, limits_)};
}

ApiResponse Api::post_review(const json & request) const
{
    ReviewVerdict verdict;
    const auto & m = request.at("match");
    verdict.match.case_id = m.at("case_id").get<std::string>();
    verdict.match.target_graph_id = m.at("target_graph_id").get<std::string>();
    verdict.match.mapping = m.at("mapping").get<Mapping>();
    auto decision = parse_decision(request.at("decision").get<std::string>());
    if (!decision)
        fail(ErrorCode::InvalidVerdict, "decision must be \"accept\" or \"reject\"");
    verdict.decision = *decision;
    if (request.contains("edited_text") && !request.at("edited_text").is_null())
        verdict.edited_text = request.at("edited_text").get<std::string>();
    verdict.comment = request.value("comment", std::string());
    verdict.reviewer = request.value("reviewer", std::string());
    verdict.timestamp = request.value("timestamp", utc_now());
    auto expected = expected_version(request);

    std::optional<std::string> new_case;
    auto snap = store_.apply([&](const KnowledgeBase & kb) {
        auto outcome = record_review(kb, verdict, expected);
        new_case = outcome.new_case_id;
        return std::move(outcome.kb);
    });
    json body = {{"version", snap->version}, {"decision", to_string(verdict.decision)}};
    body["new_case_id"] = new_case ? json(*new_case) : json();
    return {200, body};
}

ApiResponse Api::put_case(const std::string & id, const json & request) const
{
    auto expected = expected_version(request);
    std::optional<CaseStatus> status;
    if (request.contains("status")) {
        status = parse_case_status(request.at("status").get<std::string>());
        if (!status)
            fail(ErrorCode::ParseError, "status must be one of draft, validated, rejected");
    }
    std::optional<std::string> explanation;
    if (request.contains("explanation"))
        explanation = request.at("explanation").get<std::string>();
    auto note = request.value("note", std::string());
    if (!explanation && !status && note.empty())
        fail(ErrorCode::ParseError, "nothing to update: give explanation, status or note");

    auto snap = store_.apply([&](const KnowledgeBase & kb) {
        if (kb.version != expected)
            fail(ErrorCode::StaleVersion, "case edit targets version " + std::to_string(expected) +
                                              " but the knowledge base is at version " + std::to_string(kb.version));
        auto next = kb;
        if (explanation)
            next = edit_explanation(next, id, ExplanationTemplate{*explanation}, status ? "" : note);
        if (status)
            next = set_status(next, id, *status, note);
        if (!explanation && !status && !note.empty())
            next = append_note(next, id, note);
        next.version = kb.version + 1;
        return next;
    });
    return {200, {{"version", snap->version}, {"case", case_to_json(snap->case_at(id))}}};
}

} // namespace rosa
