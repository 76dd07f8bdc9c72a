#include <set>
#include <string>

#include "doctest.h"
#include "support.hpp"

#include "sigpoly/adjacency.hpp"
#include "sigpoly/certifier.hpp"
#include "sigpoly/error.hpp"
#include "sigpoly/polyhedral.hpp"

using namespace sigpoly;

namespace {

std::set<std::string> keys(const std::vector<GeneratorFacet>& facets) {
    std::set<std::string> out;
    for (const auto& f : facets) out.insert(f.key());
    return out;
}

// Nontrivial classes from a full double-description run over every vertex.
std::set<std::string> brute_classes(const PolytopeSpec& spec) {
    std::set<std::string> out;
    for (const auto& f : enumerate_facets(spec))
        if (!is_nonnegativity(f)) out.insert(canonical_class_rep(f).key());
    return out;
}

}  // namespace

TEST_CASE("seed facets") {
    const BellInequality s642 = seed_facet({6, 4, 2});
    CHECK(s642.same_as(four_output_generators()[0]));
    CHECK(verify_facet(s642, PolytopeSpec{6, 4, 2}).is_tight);

    const BellInequality s442 = seed_facet({4, 4, 2});
    CHECK(verify_facet(s442, PolytopeSpec{4, 4, 2}).is_tight);
    CHECK(canonical_class_rep(s442) == canonical_class_rep(lift_input(lift_output(ml_game(3, 2), {0, 0, 1, 2}), 1)));

    CHECK(seed_facet({3, 3, 2}).same_as(ml_game(3, 2)));
    CHECK(verify_facet(seed_facet({3, 4, 1}), PolytopeSpec{3, 4, 1}).is_tight);

    try {
        seed_facet({3, 3, 3});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterOutOfRange);
    }
}

TEST_CASE("decomposition of the three-output polytope") {
    const PolytopeSpec spec{3, 3, 2};
    const DecompositionState st = adjacency_decomposition(spec, ml_game(3, 2));
    CHECK_FALSE(st.partial);
    CHECK(st.budget_status == "complete");
    CHECK(keys(st.nontrivial()) == std::set<std::string>{canonical_class_rep(ml_game(3, 2)).key()});
    for (const auto& c : st.classes) {
        CHECK(verify_facet(c.facet.canonical, spec).is_tight);
        CHECK(c.trivial == is_nonnegativity(c.facet.canonical));
    }
}

TEST_CASE("decomposition agrees with full enumeration") {
    for (const PolytopeSpec spec : {PolytopeSpec{2, 3, 1}, PolytopeSpec{3, 3, 2}, PolytopeSpec{3, 4, 2}}) {
        const DecompositionState st = adjacency_decomposition(spec, seed_facet(spec));
        CHECK(keys(st.nontrivial()) == brute_classes(spec));
    }
}

TEST_CASE("decomposition of the four-output square polytope") {
    const PolytopeSpec spec{4, 4, 2};
    const DecompositionState st = adjacency_decomposition(spec, ml_game(4, 2));
    const auto found = keys(st.nontrivial());
    CHECK(found.count(canonical_class_rep(ml_game(4, 2)).key()) == 1);
    CHECK(found.count(canonical_class_rep(anti_guessing(3, 1, 2)).key()) == 1);
    for (const auto& c : st.classes) CHECK((c.status == ClassStatus::Considered || c.trivial));
}

TEST_CASE("budgets stop early with a partial state") {
    DecompositionOptions opts;
    opts.budget.max_classes = 1;
    const DecompositionState st = adjacency_decomposition({6, 4, 2}, seed_facet({6, 4, 2}), opts);
    CHECK(st.partial);
    CHECK(st.budget_status == "max_classes reached");
    CHECK(st.classes.size() >= 1);
}

TEST_CASE("threads give the same classes") {
    DecompositionOptions opts;
    opts.threads = 3;
    const DecompositionState par = adjacency_decomposition({4, 4, 2}, ml_game(4, 2), opts);
    const DecompositionState seq = adjacency_decomposition({4, 4, 2}, ml_game(4, 2));
    CHECK(keys(par.nontrivial()) == keys(seq.nontrivial()));
}

TEST_CASE("seeds must be facets") {
    try {
        adjacency_decomposition({3, 3, 2}, ml_game(3, 3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeedNotFacet);
    }
}
