#include "rosa/matcher.hpp"

#include "rosa/error.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <map>
#include <set>
#include <tuple>

namespace rosa {

namespace {

void require_matchable(const Taxonomy & tax, const FarmGraph & g, std::string_view what)
{
    auto violations = validate_structure(g);
    for (const auto & e : g.entities)
        if (!tax.contains(e.concept_id) || tax.at(e.concept_id).kind != ConceptKind::Entity)
            violations.push_back({Rule::UnknownConcept, e.id, "'" + e.concept_id + "' is not an entity concept"});
    for (const auto & r : g.relations)
        if (!tax.contains(r.concept_id) || tax.at(r.concept_id).kind != ConceptKind::Relation)
            violations.push_back({Rule::UnknownConcept, r.id, "'" + r.concept_id + "' is not a relation concept"});
    if (has_errors(violations))
        fail(ErrorCode::InvalidGraph, std::string(what) + " graph '" + g.id + "' is invalid: " + describe(violations.front()));
}

// Dense integer view of a pattern/target pair.
class SearchModel {
public:
    SearchModel(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
        const FarmGraph & target)
    {
        index(pattern, pattern_ids_, pattern_concepts_, pattern_is_relation_, pattern_index_);
        index(target, target_ids_, target_concepts_, target_is_relation_, target_index_);
        const auto n = pattern_ids_.size();
        const auto m = target_ids_.size();

        std::map<std::string, int> role_index;
        auto role_of = [&](const std::string & role) {
            return role_index.emplace(role, static_cast<int>(role_index.size())).first->second;
        };
        for (const auto & e : pattern.edges) {
            int r = pattern_index_.at(e.relation), x = pattern_index_.at(e.entity), role = role_of(e.role);
            pattern_edges_.push_back({r, role, x});
        }
        roles_ = role_index.size();

        target_neighbours_.assign(m * roles_, {});
        for (const auto & e : target.edges) {
            auto it = role_index.find(e.role);
            if (it == role_index.end())
                continue; // roles the pattern never uses cannot constrain it
            int r = target_index_.at(e.relation), x = target_index_.at(e.entity);
            target_edges_.insert({r, it->second, x});
            target_neighbours_[r * roles_ + it->second].push_back(x);
            target_neighbours_[x * roles_ + it->second].push_back(r);
        }

        // Per-role degree: injectivity means a pattern vertex needs at least as
        // many role-ρ edges as it has in the pattern.
        std::vector<std::vector<int>> pattern_degree(n, std::vector<int>(roles_, 0));
        std::vector<std::vector<int>> target_degree(m, std::vector<int>(roles_, 0));
        for (const auto & [r, role, x] : pattern_edges_) {
            ++pattern_degree[r][role];
            ++pattern_degree[x][role];
        }
        for (const auto & [r, role, x] : target_edges_) {
            ++target_degree[r][role];
            ++target_degree[x][role];
        }

        std::map<std::pair<ConceptId, ConceptId>, bool> compat_cache;
        domain_.assign(n, std::vector<char>(m, 0));
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t t = 0; t < m; ++t) {
                if (pattern_is_relation_[p] != target_is_relation_[t])
                    continue;
                bool degree_ok = true;
                for (std::size_t role = 0; role < roles_; ++role)
                    degree_ok = degree_ok && pattern_degree[p][role] <= target_degree[t][role];
                if (!degree_ok)
                    continue;
                auto key = std::make_pair(pattern_concepts_[p], target_concepts_[t]);
                auto it = compat_cache.find(key);
                if (it == compat_cache.end())
                    it = compat_cache.emplace(key, compatible(policy, tax, key.first, key.second)).first;
                domain_[p][t] = it->second;
            }
        }

        neighbours_.assign(n, {});
        for (const auto & [r, role, x] : pattern_edges_) {
            neighbours_[r].push_back({x, role, true});
            neighbours_[x].push_back({r, role, false});
        }

        // Most-constrained first: descending incident-edge count, ties by id.
        order_.resize(n);
        for (std::size_t p = 0; p < n; ++p)
            order_[p] = static_cast<int>(p);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (neighbours_[a].size() != neighbours_[b].size())
                return neighbours_[a].size() > neighbours_[b].size();
            return pattern_ids_[a] < pattern_ids_[b];
        });
    }

    void search(const std::function<bool(const Mapping &)> & visit)
    {
        const auto n = pattern_ids_.size();
        if (n > target_ids_.size())
            return;
        assignment_.assign(n, -1);
        used_.assign(target_ids_.size(), 0);
        visit_ = &visit;
        stopped_ = false;
        extend(0);
    }

private:
    struct Neighbour {
        int vertex;
        int role;
        bool self_is_relation;
    };

    static void index(const FarmGraph & g, std::vector<VertexId> & ids, std::vector<ConceptId> & concepts,
        std::vector<char> & is_relation, std::map<VertexId, int> & lookup)
    {
        for (const auto & e : g.entities) {
            ids.push_back(e.id);
            concepts.push_back(e.concept_id);
            is_relation.push_back(0);
        }
        for (const auto & r : g.relations) {
            ids.push_back(r.id);
            concepts.push_back(r.concept_id);
            is_relation.push_back(1);
        }
        for (std::size_t i = 0; i < ids.size(); ++i)
            lookup[ids[i]] = static_cast<int>(i);
    }

    bool edge_present(int t_self, const Neighbour & nb) const
    {
        int t_other = assignment_[nb.vertex];
        return nb.self_is_relation ? target_edges_.contains({t_self, nb.role, t_other})
                                   : target_edges_.contains({t_other, nb.role, t_self});
    }

    bool consistent(int p, int t) const
    {
        for (const auto & nb : neighbours_[p])
            if (assignment_[nb.vertex] >= 0 && !edge_present(t, nb))
                return false;
        return true;
    }

    // Every unassigned neighbour must keep at least one free, compatible,
    // adjacent candidate.
    bool forward_check(int p, int t) const
    {
        for (const auto & nb : neighbours_[p]) {
            if (assignment_[nb.vertex] >= 0)
                continue;
            const auto & cands = target_neighbours_[t * roles_ + nb.role];
            bool any = std::any_of(cands.begin(), cands.end(),
                [&](int c) { return !used_[c] && domain_[nb.vertex][c]; });
            if (!any)
                return false;
        }
        return true;
    }

    const std::vector<int> * anchored_candidates(int p) const
    {
        for (const auto & nb : neighbours_[p])
            if (assignment_[nb.vertex] >= 0)
                return &target_neighbours_[assignment_[nb.vertex] * roles_ + nb.role];
        return nullptr;
    }

    void extend(std::size_t depth)
    {
        if (stopped_)
            return;
        if (depth == order_.size()) {
            Mapping m;
            for (std::size_t p = 0; p < pattern_ids_.size(); ++p)
                m.emplace(pattern_ids_[p], target_ids_[assignment_[p]]);
            if (!(*visit_)(m))
                stopped_ = true;
            return;
        }
        int p = order_[depth];
        auto try_candidate = [&](int t) {
            if (stopped_ || used_[t] || !domain_[p][t] || !consistent(p, t))
                return;
            assignment_[p] = t;
            used_[t] = 1;
            if (forward_check(p, t))
                extend(depth + 1);
            used_[t] = 0;
            assignment_[p] = -1;
        };
        if (auto anchored = anchored_candidates(p)) {
            // Neighbour lists can repeat a vertex when several roles join the
            // same pair; dedupe so each candidate is tried once.
            std::vector<int> cands = *anchored;
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (int t : cands)
                try_candidate(t);
        } else {
            for (std::size_t t = 0; t < target_ids_.size(); ++t)
                try_candidate(static_cast<int>(t));
        }
    }

    std::vector<VertexId> pattern_ids_, target_ids_;
    std::vector<ConceptId> pattern_concepts_, target_concepts_;
    std::vector<char> pattern_is_relation_, target_is_relation_;
    std::map<VertexId, int> pattern_index_, target_index_;
    std::size_t roles_ = 0;

    std::vector<std::tuple<int, int, int>> pattern_edges_;
    std::set<std::tuple<int, int, int>> target_edges_;
    std::vector<std::vector<int>> target_neighbours_; // [vertex * roles + role]
    std::vector<std::vector<char>> domain_;
    std::vector<std::vector<Neighbour>> neighbours_;
    std::vector<int> order_;

    std::vector<int> assignment_;
    std::vector<char> used_;
    const std::function<bool(const Mapping &)> * visit_ = nullptr;
    bool stopped_ = false;
};

} // namespace

bool is_valid_mapping(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const Mapping & mapping)
{
    if (mapping.size() != pattern.vertex_count())
        return false;
    std::set<VertexId> images;
    for (const auto & [p, t] : mapping) {
        auto ps = pattern.sort_of(p);
        auto ts = target.sort_of(t);
        if (!ps || !ts || *ps != *ts || !images.insert(t).second)
            return false;
        if (!compatible(policy, tax, pattern.concept_of(p), target.concept_of(t)))
            return false;
    }
    std::set<Edge> target_edges(target.edges.begin(), target.edges.end());
    for (const auto & e : pattern.edges)
        if (!target_edges.contains({mapping.at(e.relation), e.role, mapping.at(e.entity)}))
            return false;
    return true;
}

void enumerate_mappings(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const std::function<bool(const Mapping &)> & visit)
{
    require_matchable(tax, pattern, "case");
    require_matchable(tax, target, "target");
    SearchModel model(tax, policy, pattern, target);
    model.search(visit);
}

MappingSet find_mappings(const Taxonomy & tax, const CompatibilityPolicy & policy, const FarmGraph & pattern,
    const FarmGraph & target, const MatchLimits & limits)
{
    if (limits.max_mappings == 0)
        fail(ErrorCode::LimitZero, "max_mappings must be at least 1");
    std::set<Mapping> found;
    enumerate_mappings(tax, policy, pattern, target, [&](const Mapping & m) {
        found.insert(m);
        return true;
    });
    MappingSet out;
    out.total = found.size();
    out.truncated = found.size() > limits.max_mappings;
    for (const auto & m : found) {
        if (out.mappings.size() == limits.max_mappings)
            break;
        out.mappings.push_back(m);
    }
    return out;
}

MappingSet find_mappings(const KnowledgeBase & kb, const Case & c, const FarmGraph & target,
    const CompatibilityPolicy & policy, const MatchLimits & limits)
{
    return find_mappings(kb.taxonomy, policy, kb.fragment(c), target, limits);
}

std::map<VertexId, double> per_vertex_similarity(const Taxonomy & tax, const FarmGraph & pattern,
    const FarmGraph & target, const Mapping & mapping)
{
    std::map<VertexId, double> out;
    for (const auto & id : pattern.vertex_ids()) {
        auto it = mapping.find(id);
        if (it == mapping.end())
            fail(ErrorCode::PartialMapping, "mapping does not cover case vertex '" + id + "'");
        out[id] = tax.similarity(pattern.concept_of(id), target.concept_of(it->second));
    }
    return out;
}

double score_match(const Taxonomy & tax, const FarmGraph & pattern, const FarmGraph & target, const Mapping & mapping)
{
    auto sims = per_vertex_similarity(tax, pattern, target, mapping);
    if (sims.empty())
        return 1.0;
    double sum = 0.0;
    for (const auto & [id, s] : sims)
        sum += s;
    return sum / static_cast<double>(sims.size());
}

std::vector<MatchResult> retrieve(const KnowledgeBase & kb, const FarmGraph & target, const CompatibilityPolicy & policy,
    std::size_t k, const MatchLimits & limits)
{
    if (k == 0)
        fail(ErrorCode::LimitZero, "k must be at least 1");
    require_matchable(kb.taxonomy, target, "target");

    struct Ranked {
        MatchResult result;
        std::size_t vertex_count;
    };
    std::vector<Ranked> ranked;
    for (const auto & [id, c] : kb.cases) {
        if (c.status == CaseStatus::Rejected)
            continue;
        auto pattern = kb.fragment(c);
        std::optional<Mapping> best;
        double best_score = -1.0;
        enumerate_mappings(kb.taxonomy, policy, pattern, target, [&](const Mapping & m) {
            double s = score_match(kb.taxonomy, pattern, target, m);
            if (s > best_score || (s == best_score && m < *best)) {
                best_score = s;
                best = m;
            }
            return true;
        });
        if (!best)
            continue;
        MatchResult r{id, target.id, *best, best_score, per_vertex_similarity(kb.taxonomy, pattern, target, *best)};
        ranked.push_back({std::move(r), pattern.vertex_count()});
    }

    std::sort(ranked.begin(), ranked.end(), [](const Ranked & a, const Ranked & b) {
        if (a.result.score != b.result.score)
            return a.result.score > b.result.score;
        if (a.vertex_count != b.vertex_count)
            return a.vertex_count > b.vertex_count;
        return a.result.case_id < b.result.case_id;
    });

    auto keep = std::min({k, limits.max_results, ranked.size()});
    std::vector<MatchResult> out;
    for (std::size_t i = 0; i < keep; ++i)
        out.push_back(std::move(ranked[i].result));
    return out;
}

} // namespace rosa
