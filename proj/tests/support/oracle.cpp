#include "oracle.hpp"

#include "rosa/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace rosa::testing {

std::vector<std::vector<ConceptId>> all_root_paths(const Taxonomy & tax, const ConceptId & id)
{
    const auto & parents = tax.at(id).parents;
    if (parents.empty())
        return {{id}};
    std::vector<std::vector<ConceptId>> out;
    for (const auto & p : parents) {
        for (auto path : all_root_paths(tax, p)) {
            path.insert(path.begin(), id);
            out.push_back(std::move(path));
        }
    }
    return out;
}

std::size_t brute_depth(const Taxonomy & tax, const ConceptId & id)
{
    std::size_t best = 0;
    for (const auto & path : all_root_paths(tax, id))
        best = std::max(best, path.size() - 1);
    return best;
}

std::set<ConceptId> brute_ancestors(const Taxonomy & tax, const ConceptId & id)
{
    std::set<ConceptId> seen{id};
    std::deque<ConceptId> todo{id};
    while (!todo.empty()) {
        auto cur = todo.front();
        todo.pop_front();
        for (const auto & p : tax.at(cur).parents)
            if (seen.insert(p).second)
                todo.push_back(p);
    }
    return seen;
}

std::set<ConceptId> brute_lcs(const Taxonomy & tax, const ConceptId & a, const ConceptId & b)
{
    auto aa = brute_ancestors(tax, a);
    auto ba = brute_ancestors(tax, b);
    std::set<ConceptId> common;
    for (const auto & c : aa)
        if (ba.contains(c))
            common.insert(c);
    std::set<ConceptId> out;
    for (const auto & c : common) {
        bool strictly_above_another = false;
        for (const auto & d : common)
            if (d != c && brute_ancestors(tax, d).contains(c))
                strictly_above_another = true;
        if (!strictly_above_another)
            out.insert(c);
    }
    return out;
}

double brute_similarity(const Taxonomy & tax, const ConceptId & a, const ConceptId & b)
{
    if (a == b)
        return 1.0;
    std::size_t deepest = 0;
    for (const auto & c : brute_lcs(tax, a, b))
        deepest = std::max(deepest, brute_depth(tax, c));
    return 2.0 * static_cast<double>(deepest) / static_cast<double>(brute_depth(tax, a) + brute_depth(tax, b));
}

bool preserves_roles(const FarmGraph & pattern, const FarmGraph & target, const Mapping & mapping)
{
    for (const auto & e : pattern.edges) {
        auto r = mapping.find(e.relation);
        auto x = mapping.find(e.entity);
        if (r == mapping.end() || x == mapping.end())
            return false;
        bool found = std::any_of(target.edges.begin(), target.edges.end(), [&](const Edge & t) {
            return t.relation == r->second && t.role == e.role && t.entity == x->second;
        });
        if (!found)
            return false;
    }
    return true;
}

std::set<Mapping> brute_force_mappings(const Taxonomy & tax, const CompatibilityPolicy & policy,
    const FarmGraph & pattern, const FarmGraph & target)
{
    auto pv = std::vector<VertexId>();
    for (const auto & id : pattern.vertex_ids())
        pv.push_back(id);
    auto tv = std::vector<VertexId>();
    for (const auto & id : target.vertex_ids())
        tv.push_back(id);
    if (pv.size() > 10 || tv.size() > 10)
        fail(ErrorCode::TooLarge, "brute force is limited to 10 vertices per side");

    // Vertex-level admissibility, tabulated once: same sort and compatible
    // concepts (forbidden, then allowed, then similarity threshold).
    std::vector<std::vector<char>> admissible(pv.size(), std::vector<char>(tv.size(), 0));
    for (std::size_t i = 0; i < pv.size(); ++i) {
        for (std::size_t j = 0; j < tv.size(); ++j) {
            if (pattern.sort_of(pv[i]) != target.sort_of(tv[j]))
                continue;
            const auto & a = pattern.concept_of(pv[i]);
            const auto & b = target.concept_of(tv[j]);
            bool ok;
            if (policy.forbidden_pairs.contains(ConceptPair(a, b)))
                ok = false;
            else if (policy.allowed_pairs.contains(ConceptPair(a, b)))
                ok = true;
            else
                ok = brute_similarity(tax, a, b) >= policy.threshold;
            admissible[i][j] = ok;
        }
    }

    std::set<Mapping> out;
    std::vector<int> assign(pv.size(), -1);
    std::vector<char> used(tv.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == pv.size()) {
            Mapping m;
            for (std::size_t k = 0; k < pv.size(); ++k) {
                if (!admissible[k][assign[k]])
                    return;
                m[pv[k]] = tv[assign[k]];
            }
            if (preserves_roles(pattern, target, m))
                out.insert(std::move(m));
            return;
        }
        for (std::size_t j = 0; j < tv.size(); ++j) {
            if (used[j])
                continue;
            used[j] = 1;
            assign[i] = static_cast<int>(j);
            rec(i + 1);
            used[j] = 0;
        }
    };
    if (pv.size() <= tv.size())
        rec(0);
    return out;
}

namespace {

const std::vector<ConceptId> entity_pool = {
    "parc", "prairie", "parcours", "pacage", "champ", "cereales", "ruisseau", "bergerie", "amande", "nougat", "bois"};
const std::vector<ConceptId> relation_pool = {"est_a_cote", "borde", "contient", "isole_de", "donne_acces"};
const std::vector<std::string> role_pool = {"sujet", "objet", "complement"};

template <typename T>
const T & pick(std::mt19937 & rng, const std::vector<T> & v)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(std::mt19937 & rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void add_relation(std::mt19937 & rng, FarmGraph & g, const std::string & id, const std::vector<VertexId> & entities)
{
    g.relations.push_back({id, pick(rng, relation_pool), id});
    auto roles = role_pool;
    std::shuffle(roles.begin(), roles.end(), rng);
    auto arity = uniform(rng, 1, std::min<std::size_t>(3, entities.size() + 1));
    for (std::size_t i = 0; i < arity; ++i) {
        Edge e{id, roles[i], pick(rng, entities)};
        if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end())
            g.edges.push_back(e);
    }
}

FarmGraph random_graph(std::mt19937 & rng, const std::string & id, std::size_t entities, std::size_t relations)
{
    FarmGraph g;
    g.id = id;
    std::vector<VertexId> ids;
    for (std::size_t i = 0; i < entities; ++i) {
        auto vid = id + "-e" + std::to_string(i);
        g.entities.push_back({vid, pick(rng, entity_pool), vid, {}});
        ids.push_back(vid);
    }
    if (ids.empty())
        return g;
    for (std::size_t i = 0; i < relations; ++i)
        add_relation(rng, g, id + "-r" + std::to_string(i), ids);
    return g;
}

FarmGraph perturbed_copy(std::mt19937 & rng, const FarmGraph & pattern, std::size_t max_vertices)
{
    FarmGraph g;
    g.id = "t";
    auto rename = [](const VertexId & v) { return "t-" + v; };
    std::bernoulli_distribution perturb(0.3);
    std::vector<VertexId> entity_ids;
    for (const auto & e : pattern.entities) {
        g.entities.push_back({rename(e.id), perturb(rng) ? pick(rng, entity_pool) : e.concept_id, e.label, {}});
        entity_ids.push_back(rename(e.id));
    }
    for (const auto & r : pattern.relations)
        g.relations.push_back({rename(r.id), perturb(rng) ? pick(rng, relation_pool) : r.concept_id, r.label});
    for (const auto & e : pattern.edges)
        g.edges.push_back({rename(e.relation), e.role, rename(e.entity)});

    auto extra = uniform(rng, 0, max_vertices - std::min(max_vertices, g.vertex_count()));
    for (std::size_t i = 0; i < extra; ++i) {
        if (entity_ids.empty() || std::bernoulli_distribution(0.5)(rng)) {
            auto vid = "t-x" + std::to_string(i);
            g.entities.push_back({vid, pick(rng, entity_pool), vid, {}});
            entity_ids.push_back(vid);
        } else {
            add_relation(rng, g, "t-y" + std::to_string(i), entity_ids);
        }
    }
    std::shuffle(g.entities.begin(), g.entities.end(), rng);
    std::shuffle(g.relations.begin(), g.relations.end(), rng);
    std::shuffle(g.edges.begin(), g.edges.end(), rng);
    return g;
}

} // namespace

ConceptPair random_pair(std::mt19937 & rng, const Taxonomy &, ConceptKind kind)
{
    const auto & pool = kind == ConceptKind::Entity ? entity_pool : relation_pool;
    return ConceptPair(pick(rng, pool), pick(rng, pool));
}

RandomInstance random_instance(std::mt19937 & rng, const Taxonomy & tax, std::size_t max_vertices)
{
    RandomInstance out;
    auto entities = uniform(rng, 0, std::min<std::size_t>(5, max_vertices));
    auto relations = entities == 0 ? 0 : uniform(rng, 0, std::min<std::size_t>(3, max_vertices - entities));
    out.pattern = random_graph(rng, "p", entities, relations);

    if (std::bernoulli_distribution(0.5)(rng)) {
        out.target = perturbed_copy(rng, out.pattern, max_vertices);
    } else {
        auto te = uniform(rng, 0, std::min<std::size_t>(6, max_vertices));
        auto tr = te == 0 ? 0 : uniform(rng, 0, max_vertices - te);
        out.target = random_graph(rng, "t", te, tr);
    }

    static const std::vector<double> thresholds = {0.0, 0.3, 0.5, 2.0 / 3.0, 0.8, 1.0};
    out.policy.threshold = pick(rng, thresholds);
    for (auto n = uniform(rng, 0, 2); n > 0; --n) {
        auto kind = std::bernoulli_distribution(0.7)(rng) ? ConceptKind::Entity : ConceptKind::Relation;
        out.policy.allowed_pairs.insert(random_pair(rng, tax, kind));
    }
    for (auto n = uniform(rng, 0, 2); n > 0; --n) {
        auto kind = std::bernoulli_distribution(0.7)(rng) ? ConceptKind::Entity : ConceptKind::Relation;
        auto p = random_pair(rng, tax, kind);
        if (!out.policy.allowed_pairs.contains(p))
            out.policy.forbidden_pairs.insert(p);
    }
    return out;
}

} // namespace rosa::testing
