#include "fixtures.hpp"

#include "rosa/kb_io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace rosa::testing {

std::filesystem::path data_dir()
{
    return ROSA_DATA_DIR;
}

std::filesystem::path golden_dir()
{
    return ROSA_GOLDEN_DIR;
}

KnowledgeBase desk_kb()
{
    return load_kb(data_dir() / "desk.rosa.json");
}

KnowledgeBase desk_targets_kb()
{
    return load_kb(data_dir() / "desk-targets.rosa.json");
}

const Taxonomy & fixture_taxonomy()
{
    static const Taxonomy tax = desk_kb().taxonomy;
    return tax;
}

GraphBuilder & GraphBuilder::entity(std::string id, std::string concept_id, std::string label)
{
    if (label.empty())
        label = id;
    g_.entities.push_back({std::move(id), std::move(concept_id), std::move(label), {}});
    return *this;
}

GraphBuilder & GraphBuilder::relation(std::string id, std::string concept_id, std::string label)
{
    if (label.empty())
        label = id;
    g_.relations.push_back({std::move(id), std::move(concept_id), std::move(label)});
    return *this;
}

GraphBuilder & GraphBuilder::edge(std::string relation, std::string role, std::string entity)
{
    g_.edges.push_back({std::move(relation), std::move(role), std::move(entity)});
    return *this;
}

FarmGraph target_with_isolation_copy()
{
    return GraphBuilder("cible-copie")
        .entity("t-prairie", "prairie", "prairie du bord")
        .entity("t-cereales", "cereales", "champ 3")
        .entity("t-ruisseau", "ruisseau", "ruisseau")
        .entity("t-bergerie", "bergerie", "bergerie")
        .entity("t-parc", "parc", "parc 1")
        .entity("t-champ", "champ", "champ 4")
        .relation("t-isole", "isole_de", "isole de")
        .relation("t-cote", "est_a_cote", "est à côté 1")
        .relation("t-borde", "borde", "borde 1")
        .edge("t-isole", "sujet", "t-prairie")
        .edge("t-isole", "objet", "t-cereales")
        .edge("t-isole", "complement", "t-ruisseau")
        .edge("t-cote", "sujet", "t-bergerie")
        .edge("t-cote", "objet", "t-parc")
        .edge("t-borde", "sujet", "t-champ")
        .edge("t-borde", "objet", "t-ruisseau")
        .build();
}

TempDir::TempDir()
{
    auto base = std::filesystem::temp_directory_path() / "rosa-test-XXXXXX";
    std::string tmpl = base.string();
    if (!mkdtemp(tmpl.data()))
        throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace rosa::testing
