#include "rosa/cli.hpp"

#include "rosa/api.hpp"
#include "rosa/case_base.hpp"
#include "rosa/config.hpp"
#include "rosa/error.hpp"
#include "rosa/kb_io.hpp"
#include "rosa/server.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace rosa {

using nlohmann::json;

namespace {

int exit_code_for(const Error & e)
{
    switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::ConfigError: return 2;
    default: return 1;
    }
}

json pairs_override(const std::vector<std::string> & pairs)
{
    json out = json::array();
    for (const auto & p : pairs) {
        // an empty value clears the list
        if (p.empty())
            continue;
        auto comma = p.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::InvalidPolicy, "concept pair '" + p + "' must be written a,b");
        out.push_back({p.substr(0, comma), p.substr(comma + 1)});
    }
    return out;
}

std::string format_mapping(const json & mapping)
{
    std::string out;
    for (const auto & [k, v] : mapping.items())
        out += (out.empty() ? "" : ", ") + k + "->" + v.get<std::string>();
    return out;
}

int cmd_validate(const std::string & path, std::ostream & out, std::ostream & err)
{
    KnowledgeBase kb;
    try {
        kb = load_kb(path, LoadMode::Lenient);
    } catch (const Error & e) {
        err << "rosa validate: " << e.what() << "\n";
        return 2;
    }
    auto violations = audit(kb);
    for (const auto & v : violations)
        out << describe(v) << "\n";
    if (has_errors(violations)) {
        out << path << ": invalid\n";
        return 1;
    }
    out << path << ": ok (" << kb.taxonomy.size() << " concepts, " << kb.graphs.size() << " graphs, "
        << kb.cases.size() << " cases, version " << kb.version << ")\n";
    return 0;
}

struct MatchOptions {
    std::string kb_path;
    std::string target;
    std::size_t k = 10;
    std::optional<double> threshold;
    std::vector<std::string> allow;
    std::vector<std::string> forbid;
    std::size_t max_mappings = MatchLimits{}.max_mappings;
    std::size_t max_results = MatchLimits{}.max_results;
    bool json_output = false;
};

int cmd_match(const MatchOptions & opt, std::ostream & out)
{
    auto kb = load_kb(opt.kb_path);
    json overrides = json::object();
    if (opt.threshold)
        overrides["threshold"] = *opt.threshold;
    if (!opt.allow.empty())
        overrides["allowed"] = pairs_override(opt.allow);
    if (!opt.forbid.empty())
        overrides["forbidden"] = pairs_override(opt.forbid);
    auto policy = override_policy(kb.taxonomy, kb.policy, overrides);
    MatchLimits limits{opt.max_mappings, opt.max_results};
    auto report = match_report(kb, opt.target, opt.k, policy, limits);

    if (opt.json_output) {
        out << report.dump(2) << "\n";
        return 0;
    }
    const auto & rows = report.at("results");
    out << "target " << opt.target << " (kb version " << kb.version << "), " << rows.size() << " match"
        << (rows.size() == 1 ? "" : "es") << "\n";
    if (rows.empty())
        return 0;
    out << std::left << std::setw(6) << "rank" << std::setw(24) << "case" << std::setw(8) << "score"
        << "mapping\n";
    for (const auto & r : rows) {
        std::ostringstream score;
        score << std::fixed << std::setprecision(4) << r.at("score").get<double>();
        out << std::left << std::setw(6) << r.at("rank").get<std::size_t>() << std::setw(24)
            << r.at("case_id").get<std::string>() << std::setw(8) << score.str() << format_mapping(r.at("mapping"))
            << "\n";
        out << "      " << r.at("explanation").get<std::string>() << "\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"rosa: case-based reasoning over farm spatial structures"};
    app.require_subcommand(1);

    std::string validate_path;
    auto validate = app.add_subcommand("validate", "Check a knowledge base and list violations");
    validate->add_option("kb", validate_path, "Knowledge-base file")->required();

    MatchOptions match_opt;
    auto match = app.add_subcommand("match", "Rank the cases matching a target graph");
    match->add_option("kb", match_opt.kb_path, "Knowledge-base file")->required();
    match->add_option("--target", match_opt.target, "Target graph id")->required();
    match->add_option("-k", match_opt.k, "Number of results")->check(CLI::PositiveNumber);
    match->add_option("--threshold", match_opt.threshold, "Similarity threshold override")->check(CLI::Range(0.0, 1.0));
    match->add_option("--allow", match_opt.allow, "Allowed concept pair a,b (replaces the KB list; \"\" clears it)");
    match->add_option("--forbid", match_opt.forbid, "Forbidden concept pair a,b (replaces the KB list; \"\" clears it)");
    match->add_option("--max-mappings", match_opt.max_mappings, "Mappings kept per case")->check(CLI::PositiveNumber);
    match->add_option("--max-results", match_opt.max_results, "Cap on k")->check(CLI::PositiveNumber);
    match->add_flag("--json", match_opt.json_output, "Emit the JSON report");

    auto cases = app.add_subcommand("case", "Manage cases");
    cases->require_subcommand(1);

    std::string add_kb, add_graph_id, add_text, add_id;
    std::vector<std::string> add_seeds;
    auto case_add = cases->add_subcommand("add", "Add a draft case from seed vertices");
    case_add->add_option("kb", add_kb, "Knowledge-base file")->required();
    case_add->add_option("--graph", add_graph_id, "Owning graph id")->required();
    case_add->add_option("--seed", add_seeds, "Seed vertex id (repeatable)")->delimiter(',');
    case_add->add_option("--explanation", add_text, "Explanation template with {v:<id>} placeholders")->required();
    case_add->add_option("--id", add_id, "Case id (default: next case-N)");

    std::string list_kb, list_graph, list_status;
    auto case_list = cases->add_subcommand("list", "List cases");
    case_list->add_option("kb", list_kb, "Knowledge-base file")->required();
    case_list->add_option("--graph", list_graph, "Only cases of this graph");
    case_list->add_option("--status", list_status, "Only cases with this status")
        ->check(CLI::IsMember({"draft", "validated", "rejected"}));

    std::string status_kb, status_case, status_value, status_note;
    auto case_status = cases->add_subcommand("set-status", "Change a case's validation status");
    case_status->add_option("kb", status_kb, "Knowledge-base file")->required();
    case_status->add_option("case", status_case, "Case id")->required();
    case_status->add_option("status", status_value, "draft | validated | rejected")
        ->required()
        ->check(CLI::IsMember({"draft", "validated", "rejected"}));
    case_status->add_option("--note", status_note, "Reason recorded in the case notes");

    std::string config_path;
    auto serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
    serve_cmd->add_option("--config", config_path, "Config file (JSON)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError & e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*validate)
            return cmd_validate(validate_path, out, err);
        if (*match)
            return cmd_match(match_opt, out);
        if (*case_add) {
            auto kb = load_kb(add_kb);
            std::set<VertexId> seeds(add_seeds.begin(), add_seeds.end());
            auto [next, id] = add_case(kb, add_graph_id, seeds, ExplanationTemplate{add_text}, add_id);
            save_kb(next, add_kb);
            out << id << " (" << next.case_at(id).vertex_set.size() << " vertices, version " << next.version << ")\n";
            return 0;
        }
        if (*case_list) {
            auto kb = load_kb(list_kb);
            for (const auto & [id, c] : kb.cases) {
                if (!list_graph.empty() && c.graph_id != list_graph)
                    continue;
                if (!list_status.empty() && to_string(c.status) != list_status)
                    continue;
                out << std::left << std::setw(24) << id << std::setw(20) << c.graph_id << std::setw(11)
                    << to_string(c.status) << render_explanation(c.explanation, kb.graph(c.graph_id)) << "\n";
            }
            return 0;
        }
        if (*case_status) {
            auto kb = load_kb(status_kb);
            auto next = set_status(kb, status_case, *parse_case_status(status_value), status_note);
            save_kb(next, status_kb);
            out << status_case << ": " << status_value << " (version " << next.version << ")\n";
            return 0;
        }
        if (*serve_cmd)
            return serve(load_config(config_path));
    } catch (const Error & e) {
        err << "rosa: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 1;
}

} // namespace rosa
