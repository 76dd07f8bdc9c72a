#pragma once

#include <string>

#include "json.hpp"

#include "sigpoly/adjacency.hpp"
#include "sigpoly/certifier.hpp"
#include "sigpoly/channel.hpp"
#include "sigpoly/error.hpp"
#include "sigpoly/facets.hpp"
#include "sigpoly/quantum.hpp"

namespace sigpoly {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const RationalMatrix& m);
Json to_json(const ClassicalChannel& p);
Json to_json(const BellInequality& ineq);
Json to_json(const PolytopeSpec& spec);
Json to_json(const SimulationProtocol& protocol);
Json to_json(const CertificationResult& result, const ClassicalChannel& p);
Json to_json(const DecompositionState& state);
Json to_json(const Error& error);

/// Accepts "p/q", "p", or a JSON integer. Throws ParseError.
Rational rational_from_json(const Json& j);
RationalMatrix matrix_from_json(const Json& j);
/// Throws ParseError, DimensionMismatch, NegativeEntry, NonStochastic.
ClassicalChannel channel_from_json(const Json& j);
BellInequality inequality_from_json(const Json& j);

/// Setup document: kind, mu, d, and for explicit setups the states, POVM and Kraus
/// operators as nested [re, im] pairs.
Json setup_to_json(const QuantumSetup& setup, const std::string& kind, const Rational& mu, int d);
QuantumSetup setup_from_json(const Json& j);

/// A channel document, or a setup document whose induced channel is returned.
ClassicalChannel channel_or_setup_from_json(const Json& j);

}  // namespace sigpoly
