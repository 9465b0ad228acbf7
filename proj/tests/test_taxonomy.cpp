#include "rosa/error.hpp"
#include "rosa/taxonomy.hpp"

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

using namespace rosa;
using rosa::testing::fixture_taxonomy;

namespace {

Concept entity(ConceptId id, std::set<ConceptId> parents = {})
{
    return {id, id, ConceptKind::Entity, std::move(parents), {}};
}

Concept relation(ConceptId id, std::set<ConceptId> parents = {})
{
    return {id, id, ConceptKind::Relation, std::move(parents), {}};
}

ErrorCode code_of(auto && fn)
{
    try {
        fn();
    } catch (const Error & e) {
        return e.code();
    }
    FAIL("expected an rosa::Error");
    return ErrorCode::IoError;
}

// root -> x -> d and root -> y1 -> y -> d
Taxonomy diamond()
{
    return Taxonomy::from_concepts({entity("root"), entity("x", {"root"}), entity("y1", {"root"}),
        entity("y", {"y1"}), entity("d", {"x", "y"}), relation("rel")});
}

} // namespace

TEST_CASE("add_concept inserts under an existing parent")
{
    auto tax = Taxonomy::from_concepts({entity("entite"), entity("surface", {"entite"}),
        entity("surface_en_herbe", {"surface"}), entity("batiment", {"entite"}),
        entity("batiment_exploitation", {"batiment"})});

    auto with_parc = tax.with_concept(entity("parc", {"surface_en_herbe"}));
    CHECK(with_parc.subsumes("surface_en_herbe", "parc"));
    CHECK_FALSE(tax.contains("parc"));

    auto with_bergerie = with_parc.with_concept(entity("bergerie", {"batiment_exploitation"}));
    CHECK(with_bergerie.subsumes("batiment_exploitation", "bergerie"));
    CHECK(with_bergerie.subsumes("entite", "bergerie"));
}

TEST_CASE("add_concept rejects malformed concepts")
{
    auto tax = Taxonomy::from_concepts({entity("entite"), relation("relation")});
    CHECK(code_of([&] { tax.with_concept(entity("x", {"x"})); }) == ErrorCode::CycleDetected);
    CHECK(code_of([&] { tax.with_concept(entity("entite")); }) == ErrorCode::DuplicateId);
    CHECK(code_of([&] { tax.with_concept(entity("x", {"nowhere"})); }) == ErrorCode::UnknownParent);
    CHECK(code_of([&] { tax.with_concept(entity("x", {"relation"})); }) == ErrorCode::KindMismatch);
    CHECK(code_of([&] { tax.with_concept(entity("second_root")); }) == ErrorCode::MultipleRoots);
}

TEST_CASE("hierarchy edits that close a loop are refused")
{
    auto tax = Taxonomy::from_concepts({entity("entite"), entity("a", {"entite"}), entity("b", {"a"})});
    CHECK(code_of([&] { tax.with_parents("a", {"b"}); }) == ErrorCode::CycleDetected);
    auto moved = tax.with_parents("b", {"entite"});
    CHECK(moved.depth("b") == 1);
    CHECK(code_of([] {
        Taxonomy::from_concepts({entity("entite"), entity("a", {"entite", "c"}), entity("b", {"a"}), entity("c", {"b"})});
    }) == ErrorCode::CycleDetected);
}

TEST_CASE("subsumes on the farm vocabulary")
{
    const auto & tax = fixture_taxonomy();
    CHECK(tax.subsumes("amenagement", "puits"));
    CHECK(tax.subsumes("surface_en_herbe", "parc"));
    CHECK(tax.subsumes("batiment_exploitation", "bergerie"));
    CHECK(tax.subsumes("puits", "puits"));
    CHECK_FALSE(tax.subsumes("puits", "amenagement"));
    CHECK(code_of([&] { tax.subsumes("amenagement", "licorne"); }) == ErrorCode::UnknownConcept);
}

TEST_CASE("subsumes is a partial order on the fixture taxonomy")
{
    const auto & tax = fixture_taxonomy();
    REQUIRE(tax.size() >= 20);
    std::vector<ConceptId> ids;
    for (const auto & [id, c] : tax.concepts())
        ids.push_back(id);
    for (const auto & a : ids) {
        CHECK(tax.subsumes(a, a));
        for (const auto & b : ids) {
            // matches the independent reachability oracle
            CHECK(tax.subsumes(a, b) == rosa::testing::brute_ancestors(tax, b).contains(a));
            if (a != b && tax.subsumes(a, b))
                CHECK_FALSE(tax.subsumes(b, a));
            for (const auto & c : ids)
                if (tax.subsumes(a, b) && tax.subsumes(b, c))
                    CHECK(tax.subsumes(a, c));
        }
    }
}

TEST_CASE("depth is the longest path to the root")
{
    const auto & tax = fixture_taxonomy();
    CHECK(tax.depth("entite") == 0);
    CHECK(tax.depth("relation") == 0);
    // frozen from all_root_paths: entite -> surface -> surface_en_herbe
    CHECK(rosa::testing::brute_depth(tax, "surface_en_herbe") == 2);
    CHECK(tax.depth("surface_en_herbe") == 2);

    auto d = diamond();
    // paths d-x-root (2 steps) and d-y-y1-root (3 steps)
    CHECK(rosa::testing::all_root_paths(d, "d").size() == 2);
    CHECK(rosa::testing::brute_depth(d, "d") == 3);
    CHECK(d.depth("d") == 3);

    for (const auto & [id, c] : tax.concepts())
        CHECK(tax.depth(id) == rosa::testing::brute_depth(tax, id));
    CHECK(code_of([&] { tax.depth("licorne"); }) == ErrorCode::UnknownConcept);
}

TEST_CASE("least common subsumers")
{
    const auto & tax = fixture_taxonomy();
    CHECK(tax.least_common_subsumers("parc", "parc") == std::set<ConceptId>{"parc"});
    CHECK(tax.least_common_subsumers("parc", "prairie") == std::set<ConceptId>{"surface_en_herbe"});
    CHECK(tax.least_common_subsumers("parc", "bergerie") == std::set<ConceptId>{"entite"});
    CHECK(code_of([&] { tax.least_common_subsumers("parc", "contient"); }) == ErrorCode::KindMismatch);

    // two incomparable common parents
    auto multi = Taxonomy::from_concepts({entity("root"), entity("x", {"root"}), entity("y", {"root"}),
        entity("a", {"x", "y"}), entity("b", {"x", "y"})});
    CHECK(multi.least_common_subsumers("a", "b") == std::set<ConceptId>{"x", "y"});
    CHECK(multi.similarity("a", "b") == doctest::Approx(0.5));
}

TEST_CASE("least common subsumers agree with the oracle and are pairwise incomparable")
{
    for (const auto & tax : {fixture_taxonomy(), diamond()}) {
        for (const auto & [a, ca] : tax.concepts()) {
            for (const auto & [b, cb] : tax.concepts()) {
                if (ca.kind != cb.kind)
                    continue;
                auto lcs = tax.least_common_subsumers(a, b);
                CHECK_FALSE(lcs.empty());
                CHECK(lcs == rosa::testing::brute_lcs(tax, a, b));
                for (const auto & x : lcs)
                    for (const auto & y : lcs)
                        if (x != y)
                            CHECK_FALSE(tax.subsumes(x, y));
            }
        }
    }
}

TEST_CASE("concept similarity examples")
{
    const auto & tax = fixture_taxonomy();
    CHECK(tax.similarity("parc", "parc") == 1.0);
    CHECK(tax.similarity("entite", "entite") == 1.0);
    // lcs surface_en_herbe at depth 2, both leaves at depth 3
    CHECK(rosa::testing::brute_similarity(tax, "parc", "prairie") == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(tax.similarity("parc", "prairie") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(tax.similarity("parc", "bergerie") == 0.0);
    CHECK(code_of([&] { tax.similarity("parc", "contient"); }) == ErrorCode::KindMismatch);
    CHECK(code_of([&] { tax.similarity("parc", "licorne"); }) == ErrorCode::UnknownConcept);
}

TEST_CASE("concept similarity properties")
{
    const auto & tax = fixture_taxonomy();
    for (const auto & [a, ca] : tax.concepts()) {
        for (const auto & [b, cb] : tax.concepts()) {
            if (ca.kind != cb.kind)
                continue;
            auto s = tax.similarity(a, b);
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
            CHECK(s == tax.similarity(b, a));
            CHECK((s == 1.0) == (a == b));
            CHECK(s == doctest::Approx(rosa::testing::brute_similarity(tax, a, b)));

            // non-decreasing in the depth of the lcs for equal-depth partners
            for (const auto & [c, cc] : tax.concepts()) {
                if (cc.kind != ca.kind || tax.depth(b) != tax.depth(c))
                    continue;
                auto lb = tax.least_common_subsumers(a, b);
                auto lc = tax.least_common_subsumers(a, c);
                if (lb.size() == 1 && lc.size() == 1 && *lb.begin() != *lc.begin() &&
                    tax.subsumes(*lb.begin(), *lc.begin()))
                    CHECK(tax.similarity(a, c) >= s);
            }
        }
    }
}

TEST_CASE("refining a concept never lowers its depth")
{
    auto tax = fixture_taxonomy();
    auto before = tax.depth("pacage");
    auto refined = tax.with_parents("pacage", {"parc", "parcours"});
    CHECK(refined.depth("pacage") >= before);
    CHECK(refined.least_common_subsumers("parc", "parcours") == std::set<ConceptId>{"surface_en_herbe"});
}
