#pragma once

#include "rosa/case_base.hpp"
#include "rosa/graph.hpp"
#include "rosa/matcher.hpp"
#include "rosa/policy.hpp"
#include "rosa/taxonomy.hpp"

#include <cstddef>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rosa::testing {

std::filesystem::path data_dir();
std::filesystem::path golden_dir();

// data/desk.rosa.json: 7 farm graphs, 13 cases.
KnowledgeBase desk_kb();
// data/desk-targets.rosa.json: desk plus target farms cible-a and cible-b.
KnowledgeBase desk_targets_kb();
const Taxonomy & fixture_taxonomy();

// Graph builder for compact test fixtures.
class GraphBuilder {
public:
    explicit GraphBuilder(std::string id) { g_.id = std::move(id); }

    GraphBuilder & entity(std::string id, std::string concept_id, std::string label = {});
    GraphBuilder & relation(std::string id, std::string concept_id, std::string label = {});
    GraphBuilder & edge(std::string relation, std::string role, std::string entity);
    FarmGraph build() const { return g_; }

private:
    FarmGraph g_;
};

// Target containing an exact copy of the prairie-isole fragment plus extra
// structure, with vertex ids distinct from the source graph.
FarmGraph target_with_isolation_copy();

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    const std::filesystem::path & path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path & path);

} // namespace rosa::testing
