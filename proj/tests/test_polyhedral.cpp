#include <algorithm>
#include <chrono>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "sigpoly/certifier.hpp"
#include "sigpoly/error.hpp"
#include "sigpoly/hull.hpp"
#include "sigpoly/linalg.hpp"
#include "sigpoly/lp.hpp"
#include "sigpoly/polyhedral.hpp"

using namespace sigpoly;
using testing_support::chan;
using testing_support::ineq;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::ParseError;
}

// Affine rank by plain rational elimination of the difference vectors.
int oracle_affine_rank(const std::vector<std::vector<int>>& pts) {
    if (pts.size() < 2) return 0;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> r;
        for (std::size_t k = 0; k < pts[i].size(); ++k) r.emplace_back(pts[i][k] - pts[0][k]);
        rows.push_back(std::move(r));
    }
    int rank = 0;
    const std::size_t width = rows.front().size();
    for (std::size_t c = 0; c < width && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][c].is_zero()) continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < width; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> tight_points(const BellInequality& b, const VertexSet& vs) {
    std::vector<std::vector<int>> out;
    for (int i : tight_vertices(b, vs)) out.push_back(vs.points()[i]);
    return out;
}

void check_certificate(const BellInequality& cert, const ClassicalChannel& p, const VertexSet& vs) {
    for (const auto& v : vs.vertices()) CHECK(score(cert, v) <= cert.gamma);
    CHECK(score(cert, p) > cert.gamma);
}

}  // namespace

TEST_CASE("affine rank") {
    CHECK(affine_rank(std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}}) == 2);
    CHECK(affine_rank(std::vector<std::vector<int>>{{1, 2}, {1, 2}}) == 0);
    const VertexSet vs({3, 3, 2});
    CHECK(affine_rank(vs.points()) == 6);
    CHECK(oracle_affine_rank(vs.points()) == 6);
    const std::vector<std::vector<Rational>> rp{{Rational(1, 2), 0}, {0, Rational(1, 3)}, {Rational(1, 4), Rational(1, 6)}};
    CHECK(affine_rank(rp) == 1);

    const AffineHull h = affine_hull(VertexSet({4, 3, 1}).points());
    CHECK(h.rank == 2);
    CHECK(h.independent.size() == 3);
    CHECK(h.pivots.size() == 2);
}

TEST_CASE("double description on small hulls") {
    const auto square = hull_facets({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(square.size() == 4);
    const auto cube = hull_facets({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    CHECK(cube.size() == 6);
    // A triangle embedded in 3-space has three edges relative to its affine hull.
    const std::vector<std::vector<int>> tri{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto edges = hull_facets(tri);
    CHECK(edges.size() == 3);
    for (const auto& f : edges) {
        int tight = 0;
        for (const auto& p : tri) {
            mpz_class v = 0;
            for (int k = 0; k < 3; ++k) v += f.a[k] * p[k];
            CHECK(v <= f.b);
            if (v == f.b) ++tight;
        }
        CHECK(tight == 2);
    }
}

TEST_CASE("double description honours a deadline") {
    HullOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK(code_of([&] { hull_facets(VertexSet({4, 4, 2}).points(), opts); }) == ErrorCode::BudgetExceeded);
}

TEST_CASE("zero-one feasibility") {
    // x0 + x1 = 1, x1 + x2 = 1/2.
    const auto ok = zero_one_feasibility(2, {{0}, {0, 1}, {1}}, {Rational(1), Rational(1, 2)});
    REQUIRE(ok.feasible);
    std::vector<Rational> lhs(2);
    const std::vector<std::vector<int>> cols{{0}, {0, 1}, {1}};
    for (const auto& [j, v] : ok.solution) {
        CHECK(v.sign() > 0);
        for (int r : cols[j]) lhs[r] += v;
    }
    CHECK(lhs == std::vector<Rational>{Rational(1), Rational(1, 2)});

    // x0 = 1 and x0 = 2 cannot both hold.
    const auto bad = zero_one_feasibility(2, {{0, 1}}, {Rational(1), Rational(2)});
    REQUIRE_FALSE(bad.feasible);
    CHECK(bad.farkas[0] + bad.farkas[1] <= Rational(0));
    CHECK(bad.farkas[0] * Rational(1) + bad.farkas[1] * Rational(2) > Rational(0));
}

TEST_CASE("verify_facet") {
    const FacetVerdict ml4 = verify_facet(ml_game(4, 2), PolytopeSpec{4, 4, 2});
    CHECK(ml4.is_valid);
    CHECK(ml4.is_tight);
    CHECK(ml4.affine_rank_of_tight_set == 11);

    const FacetVerdict ml3 = verify_facet(ml_game(3, 3), PolytopeSpec{3, 3, 3});
    CHECK(ml3.is_valid);
    CHECK_FALSE(ml3.is_tight);

    const FacetVerdict kg = verify_facet(k_guessing(4, 2, 2), PolytopeSpec{6, 4, 2});
    CHECK(kg.is_valid);
    CHECK(kg.is_tight);

    CHECK_FALSE(verify_facet(ml_game(3, 1), PolytopeSpec{3, 3, 2}).is_valid);
}

TEST_CASE("hull membership") {
    const VertexSet c1({3, 4, 1});
    const MembershipResult u = hull_membership(uniform_channel(3, 4), c1);
    REQUIRE(u.member);
    REQUIRE(u.witness);
    CHECK(u.witness->reconstruct() == uniform_channel(3, 4));
    CHECK(u.witness->terms.size() == 4);
    for (const auto& t : u.witness->terms) CHECK(t.weight == Rational(1, 4));

    const ClassicalChannel e = testing_support::erasure_half();
    const VertexSet c2({3, 4, 2});
    const MembershipResult ne = hull_membership(e, c2);
    CHECK_FALSE(ne.member);
    REQUIRE(ne.certificate);
    check_certificate(*ne.certificate, e, c2);

    const VertexSet c332({3, 3, 2});
    const MembershipResult id = hull_membership(identity_channel(3), c332);
    CHECK_FALSE(id.member);
    REQUIRE(id.certificate);
    check_certificate(*id.certificate, identity_channel(3), c332);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const ClassicalChannel p = testing_support::random_channel(rng, 3, 4);
        const MembershipResult r = hull_membership(p, c2);
        if (r.member) {
            REQUIRE(r.witness);
            CHECK(r.witness->reconstruct() == p);
            CHECK(r.witness->messages() <= 2);
        } else {
            REQUIRE(r.certificate);
            check_certificate(*r.certificate, p, c2);
        }
    }
}

TEST_CASE("subfacets are ridges") {
    const VertexSet c3({3, 3, 2});
    const auto ridges = enumerate_subfacets(ml_game(3, 2), c3);
    CHECK_FALSE(ridges.empty());
    for (const auto& r : ridges) {
        std::vector<std::vector<int>> pts;
        for (int i : tight_vertices(ml_game(3, 2), c3))
            if (score(r, c3.vertices()[i]) == r.gamma) pts.push_back(c3.points()[i]);
        CHECK(oracle_affine_rank(pts) == 4);
    }

    const VertexSet c4({4, 4, 2});
    for (const auto& r : enumerate_subfacets(ml_game(4, 2), c4)) {
        std::vector<std::vector<int>> pts;
        for (int i : tight_vertices(ml_game(4, 2), c4))
            if (score(r, c4.vertices()[i]) == r.gamma) pts.push_back(c4.points()[i]);
        CHECK(oracle_affine_rank(pts) == 10);
    }

    CHECK(code_of([&] { enumerate_subfacets(ml_game(3, 3), PolytopeSpec{3, 3, 3}); }) == ErrorCode::NotAFacet);
}

TEST_CASE("rotation") {
    const VertexSet c3({3, 3, 2});
    const BellInequality f = ml_game(3, 2);
    for (const auto& r : enumerate_subfacets(f, c3)) {
        const BellInequality g = rotate_facet(f, r, c3);
        const FacetVerdict v = verify_facet(g, c3);
        CHECK(v.is_tight);
        CHECK(oracle_affine_rank(tight_points(g, c3)) == 5);
        CHECK_FALSE(normal_form(g).same_as(normal_form(f)));
        CHECK(rotate_facet(g, f, c3).same_as(normal_form(f)));
    }
    CHECK(code_of([&] { rotate_facet(f, f, c3); }) == ErrorCode::NotARidge);
}

TEST_CASE("rotation through the six-input, four-output polytope stays in the eight classes") {
    const VertexSet vs({6, 4, 2});
    std::set<std::string> known;
    for (const auto& g : four_output_generators()) known.insert(canonical_class_rep(g).key());
    const BellInequality a = four_output_generators()[0];
    int seen = 0;
    for (const auto& r : enumerate_subfacets(a, vs)) {
        const BellInequality g = rotate_facet(a, r, vs);
        CHECK(verify_facet(g, vs).is_tight);
        if (is_nonnegativity(g)) continue;
        CHECK(known.count(canonical_class_rep(g).key()) == 1);
        ++seen;
    }
    CHECK(seen > 0);
}

TEST_CASE("full facet enumeration agrees with the families") {
    const auto f33 = enumerate_facets({3, 3, 2});
    CHECK(f33.size() == 15);
    int trivial = 0;
    std::set<std::string> classes;
    for (const auto& f : f33) {
        if (is_nonnegativity(f)) {
            ++trivial;
        } else {
            classes.insert(canonical_class_rep(f).key());
        }
    }
    CHECK(trivial == 9);
    CHECK(classes == std::set<std::string>{canonical_class_rep(ml_game(3, 2)).key()});

    const auto f23 = enumerate_facets({2, 3, 1});
    CHECK(f23.size() == 3);
    for (const auto& f : f23) CHECK(is_nonnegativity(f));
}

TEST_CASE("reduce_to_hull folds columns for one message") {
    const BellInequality a = ineq({{1, 0}, {0, 1}, {0, 0}}, 1);
    const BellInequality b = ineq({{0, 1}, {1, 0}, {0, 0}}, 1);
    CHECK(reduce_to_hull(a, {2, 3, 1}).same_as(reduce_to_hull(b, {2, 3, 1})));
    CHECK(reduce_to_hull(a, {2, 3, 2}).same_as(normal_form(a)));
}

TEST_CASE("vertex dump") {
    const std::string dump = vertex_dump({2, 2, 1});
    CHECK(dump == "1 1 0 0\n0 0 1 1\n");
}
