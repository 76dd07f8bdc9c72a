#include <set>

#include "doctest.h"
#include "support.hpp"

#include "sigpoly/channel.hpp"
#include "sigpoly/error.hpp"

using namespace sigpoly;
using testing_support::chan;
using testing_support::mat;

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

// Independent count: walk all n'^n assignments and keep those with at most d distinct outputs.
long brute_vertex_count(int n, int n_prime, int d) {
    long total = 0;
    std::vector<int> a(n, 0);
    while (true) {
        std::set<int> used(a.begin(), a.end());
        if (static_cast<int>(used.size()) <= d) ++total;
        int i = n - 1;
        while (i >= 0 && a[i] == n_prime - 1) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
    return total;
}

}  // namespace

TEST_CASE("rationals normalise and parse") {
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational::parse(" 10/4 ") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(code_of([] { Rational::parse("1/0"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { Rational::parse("abc"); }) == ErrorCode::ParseError);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(best_rational_approximation(0.333333333333, 1000) == Rational(1, 3));
    CHECK(best_rational_approximation(0.5, 10) == Rational(1, 2));
}

TEST_CASE("new_channel validates stochasticity") {
    CHECK_NOTHROW(chan({{1, 0}, {0, 1}}));
    const Rational h(1, 2);
    const ClassicalChannel e = chan({{h, 0, 0}, {0, h, 0}, {0, 0, h}, {h, h, h}});
    CHECK(e.n() == 3);
    CHECK(e.n_prime() == 4);
    CHECK(code_of([] { chan({{Rational(1, 2)}, {Rational(1, 3)}}); }) == ErrorCode::NonStochastic);
    CHECK(code_of([] { chan({{Rational(3, 2)}, {Rational(-1, 2)}}); }) == ErrorCode::NegativeEntry);
}

TEST_CASE("vertex enumeration") {
    const auto two = enumerate_vertices({2, 2, 1});
    REQUIRE(two.size() == 2);
    CHECK(two[0].assignment() == std::vector<int>{0, 0});
    CHECK(two[1].assignment() == std::vector<int>{1, 1});

    CHECK(enumerate_vertices({3, 3, 2}).size() == 21);
    CHECK(enumerate_vertices({6, 4, 2}).size() == 376);

    const auto vs = enumerate_vertices({4, 3, 2});
    for (std::size_t i = 1; i < vs.size(); ++i) CHECK(vs[i - 1] < vs[i]);
    for (const auto& v : vs) CHECK(v.rank() <= 2);
}

TEST_CASE("vertex_count matches brute force") {
    for (int n = 1; n <= 5; ++n)
        for (int np = 1; np <= 5; ++np) {
            CHECK(vertex_count({n, np, 1}) == np);
            for (int d = 1; d <= std::min(n, np); ++d) CHECK(vertex_count({n, np, d}) == brute_vertex_count(n, np, d));
        }
    CHECK(vertex_count({3, 3, 2}) == 21);
    CHECK(vertex_count({6, 4, 2}) == 376);
}

TEST_CASE("spec validation and dimension") {
    CHECK(code_of([] { PolytopeSpec{3, 2, 3}.validate(); }) == ErrorCode::ParameterOutOfRange);
    CHECK(code_of([] { PolytopeSpec{0, 2, 1}.validate(); }) == ErrorCode::ParameterOutOfRange);
    CHECK(PolytopeSpec{3, 3, 2}.dimension() == 6);
    CHECK(PolytopeSpec{6, 4, 2}.dimension() == 18);
    CHECK(PolytopeSpec{4, 5, 1}.dimension() == 4);
}

TEST_CASE("compose_processing") {
    const ClassicalChannel e = testing_support::erasure_half();
    CHECK(compose_processing(identity_channel(4), e, identity_channel(3)) == e);

    const ClassicalChannel post = chan({{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const Rational h(1, 2);
    CHECK(compose_processing(post, e, identity_channel(3)) == chan({{h, h, 0}, {0, 0, h}, {h, h, h}}));

    const ClassicalChannel dup = chan({{1, 1, 0}, {0, 0, 1}});
    CHECK(compose_processing(identity_channel(2), identity_channel(2), dup) == chan({{1, 1, 0}, {0, 0, 1}}));

    CHECK(code_of([&] { compose_processing(identity_channel(3), e, identity_channel(3)); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("vertex_factorize") {
    const DeterministicVertex v({0, 2, 2, 0}, 3);
    CHECK(v.to_channel() == chan({{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 1, 1, 0}}));
    const auto [enc, dec] = vertex_factorize(v, 2);
    CHECK(enc == chan({{1, 0, 0, 1}, {0, 1, 1, 0}}));
    CHECK(dec == chan({{1, 0}, {0, 0}, {0, 1}}));
    CHECK(dec.matrix() * enc.matrix() == v.to_channel().matrix());

    const auto [enc1, dec1] = vertex_factorize(DeterministicVertex({1, 1, 1}, 3), 1);
    CHECK(enc1 == chan({{1, 1, 1}}));
    CHECK(dec1 == chan({{0}, {1}, {0}}));

    const auto [encp, decp] = vertex_factorize(DeterministicVertex({2, 0, 1}, 3), 3);
    CHECK(encp == chan({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    CHECK(decp == identity_channel(3));

    CHECK(code_of([] { vertex_factorize(DeterministicVertex({0, 1, 2}, 3), 2); }) == ErrorCode::TooManyOutputsUsed);

    for (const auto& w : enumerate_vertices({4, 3, 2})) {
        const auto [e, d] = vertex_factorize(w, 2);
        CHECK(d.matrix() * e.matrix() == w.to_channel().matrix());
    }
}

TEST_CASE("protocol reconstruction") {
    SimulationProtocol p;
    const auto [e0, d0] = vertex_factorize(DeterministicVertex({0, 0}, 2), 1);
    const auto [e1, d1] = vertex_factorize(DeterministicVertex({1, 1}, 2), 1);
    p.terms.push_back({Rational(1, 4), e0, d0});
    p.terms.push_back({Rational(3, 4), e1, d1});
    CHECK(p.messages() == 1);
    CHECK(p.reconstruct() == chan({{Rational(1, 4), Rational(1, 4)}, {Rational(3, 4), Rational(3, 4)}}));
}
