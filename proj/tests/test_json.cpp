#include <random>

#include "doctest.h"
#include "support.hpp"

#include "sigpoly/json_io.hpp"

using namespace sigpoly;

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

}  // namespace

TEST_CASE("channel documents") {
    const ClassicalChannel e = testing_support::erasure_half();
    const Json j = to_json(e);
    CHECK(j["n"] == 3);
    CHECK(j["n_prime"] == 4);
    CHECK(j["entries"][3][1] == "1/2");
    CHECK(j["entries"][0][1] == "0");
    CHECK(channel_from_json(Json::parse(j.dump())) == e);

    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        const ClassicalChannel p = testing_support::random_channel(rng, 4, 3);
        CHECK(channel_from_json(Json::parse(to_json(p).dump())) == p);
    }

    CHECK(code_of([] { channel_from_json(Json::parse(R"({"n":1,"n_prime":2,"entries":[["1/2"],["1/3"]]})")); }) ==
          ErrorCode::NonStochastic);
    CHECK(code_of([] { channel_from_json(Json::parse(R"({"n":2,"n_prime":2,"entries":[["1"],["0"]]})")); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { channel_from_json(Json::parse(R"({"n":1,"n_prime":1,"entries":[[0.5]]})")); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { channel_from_json(Json::parse(R"({"n":1})")); }) == ErrorCode::ParseError);
}

TEST_CASE("inequality documents") {
    const BellInequality r = rescale_ambiguous(ambiguous_game(5, 2), 3, {Rational(1), Rational(2)});
    const Json j = to_json(r);
    CHECK(j["gamma"] == "6");
    CHECK(j["family"] == "ambiguous-rescaled");
    const BellInequality back = inequality_from_json(Json::parse(j.dump()));
    CHECK(back.same_as(r));
    CHECK(back.family == r.family);

    const BellInequality amb = general_ambiguous_game({6, 6, 5, 2, {0, 0, 1, 1, 2}});
    CHECK(inequality_from_json(to_json(amb)).same_as(amb));
}

TEST_CASE("error documents") {
    const Json j = to_json(Error(ErrorCode::NonStochastic, "column 0 sums to 5/6"));
    CHECK(j["error"]["code"] == "NonStochastic");
    CHECK(j["error"]["message"] == "column 0 sums to 5/6");
}

TEST_CASE("setup documents") {
    const QuantumSetup s = standard_setup(SetupKind::Erasure, Rational(1, 2), 3);
    const Json j = setup_to_json(s, "erasure", Rational(1, 2), 3);
    CHECK(j["mu"] == "1/2");
    CHECK(j["dims"]["output"] == 4);
    CHECK(channel_or_setup_from_json(Json::parse(j.dump())) == testing_support::erasure_half());

    const Json brief = Json::parse(R"({"kind":"depolarizing","mu":"1","d":2})");
    CHECK(channel_or_setup_from_json(brief) == identity_channel(2));

    const Json explicit_setup = Json::parse(R"({
        "kind": "explicit",
        "states": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]],
        "povm": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[1,0]]]]
    })");
    const ClassicalChannel p = channel_or_setup_from_json(explicit_setup);
    CHECK(p == testing_support::chan({{1, Rational(1, 2)}, {0, Rational(1, 2)}}));
}

TEST_CASE("certification report") {
    const ClassicalChannel e = testing_support::erasure_half();
    const Json j = to_json(certify_signaling_dimension(e), e);
    CHECK(j["kappa_lower"] == 3);
    CHECK(j["kappa_upper"] == 3);
    CHECK(j["exact"] == true);
    CHECK(j["method_trace"].size() == 3);
    CHECK(j.contains("violated_inequality"));
    CHECK(j.contains("protocol_witness"));
    CHECK(channel_from_json(j["channel"]) == e);
}
