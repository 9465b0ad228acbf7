#include "rosa/kb_io.hpp"

#include "rosa/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

namespace rosa {

using nlohmann::json;

namespace {

template <typename T, typename Key>
std::vector<T> sorted_by(std::vector<T> v, Key key)
{
    std::sort(v.begin(), v.end(), [&](const T & a, const T & b) { return key(a) < key(b); });
    return v;
}

json pairs_to_json(const std::set<ConceptPair> & pairs)
{
    json out = json::array();
    for (const auto & p : pairs)
        out.push_back({p.first, p.second});
    return out;
}

// Field access with JSON-pointer style diagnostics.
class Field {
public:
    Field(const json & j, std::string path) :
        j_(j),
        path_(std::move(path))
    {
    }

    [[noreturn]] void error(const std::string & what) const
    {
        fail(ErrorCode::ParseError, "at " + (path_.empty() ? std::string("/") : path_) + ": " + what);
    }

    const json & value() const { return j_; }
    const std::string & path() const { return path_; }

    Field member(const std::string & key) const
    {
        if (!j_.is_object())
            error("expected an object");
        auto it = j_.find(key);
        if (it == j_.end())
            error("missing field '" + key + "'");
        return {*it, path_ + "/" + key};
    }

    bool has(const std::string & key) const { return j_.is_object() && j_.contains(key); }

    std::string string() const
    {
        if (!j_.is_string())
            error("expected a string");
        return j_.get<std::string>();
    }

    std::string string(const std::string & key) const { return member(key).string(); }

    std::string string_or(const std::string & key, std::string fallback) const
    {
        return has(key) ? member(key).string() : std::move(fallback);
    }

    bool boolean_or(const std::string & key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        auto f = member(key);
        if (!f.j_.is_boolean())
            f.error("expected a boolean");
        return f.j_.get<bool>();
    }

    double number() const
    {
        if (!j_.is_number())
            error("expected a number");
        return j_.get<double>();
    }

    std::uint64_t unsigned_number() const
    {
        if (!j_.is_number_unsigned())
            error("expected a non-negative integer");
        return j_.get<std::uint64_t>();
    }

    std::vector<Field> items() const
    {
        if (!j_.is_array())
            error("expected an array");
        std::vector<Field> out;
        for (std::size_t i = 0; i < j_.size(); ++i)
            out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
        return out;
    }

    std::vector<Field> items_or_empty(const std::string & key) const
    {
        return has(key) ? member(key).items() : std::vector<Field>{};
    }

    std::set<std::string> string_set(const std::string & key) const
    {
        std::set<std::string> out;
        for (const auto & f : items_or_empty(key))
            if (!out.insert(f.string()).second)
                f.error("duplicate entry '" + f.string() + "'");
        return out;
    }

private:
    const json & j_;
    std::string path_;
};

std::set<ConceptPair> pairs_from(const Field & f)
{
    std::set<ConceptPair> out;
    for (const auto & item : f.items()) {
        auto parts = item.items();
        if (parts.size() != 2)
            item.error("expected a pair of concept ids");
        out.insert(ConceptPair(parts[0].string(), parts[1].string()));
    }
    return out;
}

FarmGraph graph_from(const Field & f)
{
    FarmGraph g;
    g.id = f.string("id");
    if (f.has("metadata")) {
        auto m = f.member("metadata");
        g.metadata.farm = m.string_or("farm", "");
        g.metadata.zone = m.string_or("zone", "");
        if (m.has("choreme_image"))
            g.metadata.choreme_image = m.string("choreme_image");
    }
    for (const auto & e : f.items_or_empty("entities")) {
        EntityVertex v{e.string("id"), e.string("concept"), e.string_or("label", ""), {}};
        if (e.has("attributes")) {
            auto attrs = e.member("attributes");
            if (!attrs.value().is_object())
                attrs.error("expected an object of attribute values");
            for (const auto & [name, value] : attrs.value().items())
                v.attribute_values[name] = Field(value, attrs.path() + "/" + name).string();
        }
        g.entities.push_back(std::move(v));
    }
    for (const auto & r : f.items_or_empty("relations"))
        g.relations.push_back({r.string("id"), r.string("concept"), r.string_or("label", "")});
    for (const auto & e : f.items_or_empty("edges"))
        g.edges.push_back({e.string("relation"), e.string("role"), e.string("entity")});
    return g;
}

CompatibilityPolicy policy_from(const Field & f)
{
    CompatibilityPolicy p;
    if (f.has("threshold"))
        p.threshold = f.member("threshold").number();
    if (f.has("allowed"))
        p.allowed_pairs = pairs_from(f.member("allowed"));
    if (f.has("forbidden"))
        p.forbidden_pairs = pairs_from(f.member("forbidden"));
    return p;
}

} // namespace

json concept_to_json(const Concept & c)
{
    return {
        {"id", c.id},
        {"label", c.label},
        {"kind", to_string(c.kind)},
        {"parents", c.parents},
        {"attributes", c.attributes},
    };
}

json graph_to_json(const FarmGraph & g)
{
    json metadata = {{"farm", g.metadata.farm}, {"zone", g.metadata.zone}};
    if (g.metadata.choreme_image)
        metadata["choreme_image"] = *g.metadata.choreme_image;

    auto by_id = [](const auto & v) { return v.id; };
    json entities = json::array();
    for (const auto & e : sorted_by(g.entities, by_id))
        entities.push_back({{"id", e.id}, {"concept", e.concept_id}, {"label", e.label}, {"attributes", e.attribute_values}});
    json relations = json::array();
    for (const auto & r : sorted_by(g.relations, by_id))
        relations.push_back({{"id", r.id}, {"concept", r.concept_id}, {"label", r.label}});
    json edges = json::array();
    for (const auto & e : sorted_by(g.edges, [](const Edge & e) { return e; }))
        edges.push_back({{"relation", e.relation}, {"role", e.role}, {"entity", e.entity}});

    return {
        {"id", g.id},
        {"metadata", std::move(metadata)},
        {"entities", std::move(entities)},
        {"relations", std::move(relations)},
        {"edges", std::move(edges)},
    };
}

json policy_to_json(const CompatibilityPolicy & policy)
{
    return {
        {"threshold", policy.threshold},
        {"allowed", pairs_to_json(policy.allowed_pairs)},
        {"forbidden", pairs_to_json(policy.forbidden_pairs)},
    };
}

json case_to_json(const Case & c)
{
    return {
        {"id", c.id},
        {"graph_id", c.graph_id},
        {"vertices", c.vertex_set},
        {"explanation", c.explanation.text},
        {"status", to_string(c.status)},
        {"notes", c.notes},
    };
}

json kb_to_json(const KnowledgeBase & kb)
{
    json roles = json::array();
    for (const auto & [name, r] : kb.roles.roles())
        roles.push_back({{"name", name}, {"repeatable", r.repeatable}});
    json concepts = json::array();
    for (const auto & [id, c] : kb.taxonomy.concepts())
        concepts.push_back(concept_to_json(c));
    json graphs = json::array();
    for (const auto & [id, g] : kb.graphs)
        graphs.push_back(graph_to_json(g));
    json cases = json::array();
    for (const auto & [id, c] : kb.cases)
        cases.push_back(case_to_json(c));

    return {
        {"format", kb_format_name},
        {"format_version", kb_format_version},
        {"version", kb.version},
        {"roles", std::move(roles)},
        {"taxonomy", std::move(concepts)},
        {"graphs", std::move(graphs)},
        {"cases", std::move(cases)},
        {"policy", policy_to_json(kb.policy)},
    };
}

FarmGraph graph_from_json(const json & j, const std::string & where)
{
    return graph_from(Field(j, where));
}

CompatibilityPolicy policy_from_json(const json & j, const std::string & where)
{
    return policy_from(Field(j, where));
}

KnowledgeBase kb_from_json(const json & j)
{
    Field root(j, "");
    if (!j.is_object())
        root.error("expected a knowledge-base object");
    if (root.string("format") != kb_format_name)
        root.member("format").error("expected \"" + std::string(kb_format_name) + "\"");
    auto fv = root.member("format_version");
    if (fv.unsigned_number() != static_cast<std::uint64_t>(kb_format_version))
        fv.error("unsupported format version " + fv.value().dump());

    KnowledgeBase kb;
    kb.version = root.has("version") ? root.member("version").unsigned_number() : 0;

    if (root.has("roles")) {
        std::vector<Role> roles;
        for (const auto & r : root.member("roles").items())
            roles.push_back({r.string("name"), r.boolean_or("repeatable", false)});
        try {
            kb.roles = RoleVocabulary(std::move(roles));
        } catch (const Error & e) {
            root.member("roles").error(e.what());
        }
    }

    std::vector<Concept> concepts;
    for (const auto & c : root.items_or_empty("taxonomy")) {
        auto kind_field = c.member("kind");
        auto kind = parse_concept_kind(kind_field.string());
        if (!kind)
            kind_field.error("kind must be \"entity\" or \"relation\"");
        concepts.push_back({c.string("id"), c.string_or("label", ""), *kind, c.string_set("parents"), c.string_set("attributes")});
    }
    try {
        kb.taxonomy = Taxonomy::from_concepts(std::move(concepts));
    } catch (const Error & e) {
        fail(ErrorCode::ParseError, std::string("at /taxonomy: ") + e.what());
    }

    for (const auto & gf : root.items_or_empty("graphs")) {
        auto g = graph_from(gf);
        if (kb.graphs.contains(g.id))
            gf.member("id").error("duplicate graph id '" + g.id + "'");
        kb.graphs.emplace(g.id, std::move(g));
    }

    for (const auto & cf : root.items_or_empty("cases")) {
        Case c;
        c.id = cf.string("id");
        c.graph_id = cf.string("graph_id");
        c.vertex_set = cf.string_set("vertices");
        c.explanation.text = cf.string_or("explanation", "");
        auto status_field = cf.member("status");
        auto status = parse_case_status(status_field.string());
        if (!status)
            status_field.error("status must be one of draft, validated, rejected");
        c.status = *status;
        for (const auto & n : cf.items_or_empty("notes"))
            c.notes.push_back(n.string());
        if (kb.cases.contains(c.id))
            cf.member("id").error("duplicate case id '" + c.id + "'");
        kb.cases.emplace(c.id, std::move(c));
    }

    if (root.has("policy"))
        kb.policy = policy_from(root.member("policy"));
    return kb;
}

KnowledgeBase parse_kb(const std::string & text, LoadMode mode)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error & e) {
        fail(ErrorCode::ParseError, e.what());
    }
    auto kb = kb_from_json(j);
    if (mode == LoadMode::Strict) {
        for (const auto & v : audit(kb))
            if (v.severity == Severity::Error)
                fail(ErrorCode::IntegrityError, describe(v));
    }
    return kb;
}

KnowledgeBase load_kb(const std::filesystem::path & path, LoadMode mode)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        fail(ErrorCode::IoError, "error reading '" + path.string() + "'");
    try {
        return parse_kb(buffer.str(), mode);
    } catch (const Error & e) {
        if (e.code() == ErrorCode::ParseError)
            fail(ErrorCode::ParseError, path.string() + ": " + e.what());
        throw;
    }
}

std::string serialize_kb(const KnowledgeBase & kb)
{
    return kb_to_json(kb).dump(2) + "\n";
}

void save_kb(const KnowledgeBase & kb, const std::filesystem::path & path)
{
    write_atomically(path, serialize_kb(kb));
}

void write_atomically(const std::filesystem::path & path, const std::string & content,
    const std::function<void()> & before_rename)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out)
            fail(ErrorCode::IoError, "error writing '" + tmp.string() + "'");
    }
    if (before_rename)
        before_rename();
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorCode::IoError, "cannot replace '" + path.string() + "': " + ec.message());
}

} // namespace rosa
