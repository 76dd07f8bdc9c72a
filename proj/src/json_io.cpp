#include "sigpoly/json_io.hpp"

#include <complex>
#include <string>
#include <vector>

namespace sigpoly {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) parse_fail(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

Json complex_matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix complex_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) parse_fail("complex matrix must be a nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_fail("ragged complex matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& z = row[c];
            if (z.is_number()) {
                m(r, c) = {z.get<double>(), 0.0};
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = {z[0].get<double>(), z[1].get<double>()};
            } else {
                parse_fail("complex entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

std::vector<CMatrix> complex_list_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.empty()) parse_fail(std::string(what) + " must be a non-empty array");
    std::vector<CMatrix> out;
    for (const auto& m : j) out.push_back(complex_matrix_from_json(m));
    return out;
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const ClassicalChannel& p) {
    return Json{{"n", p.n()}, {"n_prime", p.n_prime()}, {"entries", to_json(p.matrix())}};
}

Json to_json(const BellInequality& ineq) {
    Json j{{"gamma", to_json(ineq.gamma)}, {"G", to_json(ineq.g)}};
    if (!ineq.family.empty()) j["family"] = ineq.family;
    return j;
}

Json to_json(const PolytopeSpec& spec) { return Json{{"n", spec.n}, {"n_prime", spec.n_prime}, {"d", spec.d}}; }

Json to_json(const SimulationProtocol& protocol) {
    Json terms = Json::array();
    for (const auto& t : protocol.terms) {
        terms.push_back({{"weight", to_json(t.weight)},
                         {"encoder", to_json(t.encoder.matrix())},
                         {"decoder", to_json(t.decoder.matrix())}});
    }
    return Json{{"messages", protocol.messages()}, {"terms", std::move(terms)}};
}

Json to_json(const CertificationResult& result, const ClassicalChannel& p) {
    Json trace = Json::array();
    for (const auto& step : result.trace) trace.push_back({{"d", step.d}, {"verdict", step.verdict}, {"method", step.method}});
    Json j{{"channel", to_json(p)},
           {"kappa_lower", result.lower},
           {"kappa_upper", result.upper},
           {"exact", result.exact},
           {"method_trace", std::move(trace)}};
    if (result.violated) j["violated_inequality"] = to_json(*result.violated);
    if (result.protocol) j["protocol_witness"] = to_json(*result.protocol);
    return j;
}

Json to_json(const DecompositionState& state) {
    Json classes = Json::array();
    for (const auto& c : state.classes) {
        Json entry = to_json(c.facet.canonical);
        entry["status"] = c.status == ClassStatus::Considered ? "considered" : "unconsidered";
        entry["trivial"] = c.trivial;
        entry["class_size"] = c.facet.class_size().get_str();
        classes.push_back(std::move(entry));
    }
    return Json{{"spec", to_json(state.spec)},
                {"seed", to_json(state.seed)},
                {"classes", std::move(classes)},
                {"counts",
                 {{"classes", state.classes.size()},
                  {"nontrivial", state.nontrivial_count()},
                  {"ridges_processed", state.ridges_processed}}},
                {"budget_status", state.budget_status},
                {"partial", state.partial},
                {"seconds", state.seconds}};
}

Json to_json(const Error& error) {
    return Json{{"error", {{"code", std::string(to_string(error.code()))}, {"message", error.what()}}}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) parse_fail("rationals must be strings such as \"3/4\"");
    return Rational::parse(j.get<std::string>());
}

RationalMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
        parse_fail("matrix must be a non-empty array of rows");
    }
    std::vector<std::vector<Rational>> rows;
    const std::size_t cols = j.front().size();
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) parse_fail("matrix rows differ in length");
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        rows.push_back(std::move(r));
    }
    return RationalMatrix::from_rows(rows);
}

ClassicalChannel channel_from_json(const Json& j) {
    const int n = int_field(j, "n");
    const int n_prime = int_field(j, "n_prime");
    RationalMatrix m = matrix_from_json(field(j, "entries"));
    if (static_cast<int>(m.rows()) != n_prime || static_cast<int>(m.cols()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "entries shape differs from n_prime x n");
    }
    return new_channel(std::move(m));
}

BellInequality inequality_from_json(const Json& j) {
    BellInequality ineq(matrix_from_json(field(j, "G")), rational_from_json(field(j, "gamma")));
    if (j.contains("family")) {
        if (!j["family"].is_string()) parse_fail("family must be a string");
        ineq.family = j["family"].get<std::string>();
    }
    return ineq;
}

Json setup_to_json(const QuantumSetup& setup, const std::string& kind, const Rational& mu, int d) {
    Json states = Json::array();
    for (const auto& s : setup.states) states.push_back(complex_matrix_to_json(s.matrix()));
    Json povm = Json::array();
    for (const auto& e : setup.povm.elements()) povm.push_back(complex_matrix_to_json(e));
    Json kraus = Json::array();
    for (const auto& k : setup.channel.kraus()) kraus.push_back(complex_matrix_to_json(k));
    return Json{{"kind", kind},
                {"mu", to_json(mu)},
                {"d", d},
                {"dims", {{"input", setup.channel.in_dim()}, {"output", setup.channel.out_dim()}}},
                {"states", std::move(states)},
                {"povm", std::move(povm)},
                {"kraus", std::move(kraus)}};
}

QuantumSetup setup_from_json(const Json& j) {
    const std::string kind = field(j, "kind").is_string() ? j["kind"].get<std::string>() : "";
    if (!j.contains("states") && !j.contains("povm") && !j.contains("kraus")) {
        const int d = int_field(j, "d");
        const Rational mu = j.contains("mu") ? rational_from_json(j["mu"]) : Rational(1);
        if (kind == "erasure") return standard_setup(SetupKind::Erasure, mu, d);
        if (kind == "depolarizing") return standard_setup(SetupKind::Depolarizing, mu, d);
        if (kind == "identity") return standard_setup(SetupKind::Identity, mu, d);
        parse_fail("unknown setup kind \"" + kind + "\"");
    }
    std::vector<DensityMatrix> states;
    for (auto& m : complex_list_from_json(field(j, "states"), "states")) states.emplace_back(std::move(m));
    Povm povm(complex_list_from_json(field(j, "povm"), "povm"));
    QuantumChannel channel = j.contains("kraus") ? QuantumChannel(complex_list_from_json(j["kraus"], "kraus"))
                                                 : QuantumChannel::identity(states.front().dim());
    return QuantumSetup{std::move(states), std::move(povm), std::move(channel)};
}

ClassicalChannel channel_or_setup_from_json(const Json& j) {
    if (j.is_object() && j.contains("entries")) return channel_from_json(j);
    if (j.is_object() && j.contains("setup")) return induced_channel(setup_from_json(j["setup"]));
    if (j.is_object() && j.contains("kind")) return induced_channel(setup_from_json(j));
    parse_fail("expected a channel or a quantum setup document");
}

}  // namespace sigpoly
