#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sigpoly/adjacency.hpp"
#include "sigpoly/certifier.hpp"
#include "sigpoly/json_io.hpp"
#include "sigpoly/polyhedral.hpp"
#include "sigpoly/quantum.hpp"

using namespace sigpoly;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kBudget = 3;

Json read_document(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

template <typename T>
std::optional<T> env_default(const char* name) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return std::nullopt;
    std::istringstream in(raw);
    T value{};
    if (!(in >> value)) throw Error(ErrorCode::ParseError, std::string("bad value in ") + name);
    return value;
}

PolytopeSpec spec_of(int n, int n_prime, int d) {
    PolytopeSpec spec{n, n_prime, d};
    spec.validate();
    return spec;
}

struct Output {
    std::string path;
    void emit(const Json& doc) const {
        if (path.empty() || path == "-") {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream out(path);
            if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
            out << doc.dump(2) << '\n';
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signaling polytopes, Bell inequalities and signaling-dimension certificates"};
    app.require_subcommand(1);
    Output output;
    app.add_option("-o,--output", output.path, "Write the JSON document here instead of standard output");

    int n = 0, n_prime = 0, d = 0;
    auto add_spec = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "Inputs")->required();
        cmd->add_option("--n-prime", n_prime, "Outputs")->required();
        cmd->add_option("--d", d, "Messages")->required();
    };

    auto* vertices = app.add_subcommand("vertices", "Enumerate or count deterministic vertices");
    add_spec(vertices);
    bool count_only = false;
    bool dump = false;
    vertices->add_flag("--count-only", count_only, "Only report the closed-form count");
    vertices->add_flag("--dump", dump, "Emit flattened 0/1 vertices instead of assignments");

    auto* facets = app.add_subcommand("facets", "Generator facet classes by adjacency decomposition");
    add_spec(facets);
    std::string seed_path;
    std::optional<std::size_t> max_classes;
    std::optional<double> max_seconds;
    int threads = 1;
    bool expand_trivial = false;
    facets->add_option("--seed", seed_path, "Seed facet inequality (JSON)");
    facets->add_option("--max-classes", max_classes, "Stop after this many classes");
    facets->add_option("--max-seconds", max_seconds, "Stop after this many seconds");
    facets->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    facets->add_flag("--expand-trivial", expand_trivial, "Also rotate around non-negativity classes");

    auto* certify = app.add_subcommand("certify", "Bound the signaling dimension of a channel");
    std::string channel_path;
    std::optional<int> certify_d;
    std::size_t max_vertices = CertifyOptions{}.max_vertices;
    certify->add_option("--channel", channel_path, "Channel or quantum setup JSON, - for standard input")->required();
    certify->add_option("--d", certify_d, "Test membership at this message count only");
    certify->add_option("--max-vertices", max_vertices, "Largest polytope handed to the LP");

    auto* score_cmd = app.add_subcommand("score", "Evaluate an inequality on a channel");
    std::string inequality_path;
    score_cmd->add_option("--inequality", inequality_path, "Inequality JSON")->required();
    score_cmd->add_option("--channel", channel_path, "Channel JSON, - for standard input")->required();

    auto* verify = app.add_subcommand("verify-facet", "Check validity and tightness of an inequality");
    verify->add_option("--inequality", inequality_path, "Inequality JSON, - for standard input")->required();
    add_spec(verify);

    auto* bounds = app.add_subcommand("replacer-bounds", "Signaling-dimension bounds for partial replacer channels");
    std::string mu_text;
    std::string kind = "depolarizing";
    bounds->add_option("--mu", mu_text, "Mixing weight as P/Q")->required();
    bounds->add_option("--d", d, "Input dimension")->required();
    bounds->add_option("--kind", kind, "erasure or depolarizing")->check(CLI::IsMember({"erasure", "depolarizing"}));

    auto* generate = app.add_subcommand("generate", "Classical channel induced by a built-in quantum setup");
    std::string gen_kind;
    std::string gen_mu = "1";
    generate->add_option("--kind", gen_kind, "erasure, depolarizing or identity")
        ->required()
        ->check(CLI::IsMember({"erasure", "depolarizing", "identity"}));
    generate->add_option("--mu", gen_mu, "Mixing weight as P/Q");
    generate->add_option("--d", d, "Dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << Json{{"error", {{"code", "Usage"}, {"message", e.what()}}}}.dump(2) << '\n';
        return kUsage;
    }

    try {
        if (*vertices) {
            const PolytopeSpec spec = spec_of(n, n_prime, d);
            Json doc{{"spec", to_json(spec)}};
            const mpz_class count = vertex_count(spec);
            doc["count"] = count.fits_slong_p() ? Json(count.get_si()) : Json(count.get_str());
            if (!count_only) {
                Json list = Json::array();
                for (const auto& v : enumerate_vertices(spec)) list.push_back(dump ? Json(v.flatten()) : Json(v.assignment()));
                doc[dump ? "flattened" : "assignments"] = std::move(list);
            }
            output.emit(doc);
        } else if (*facets) {
            const PolytopeSpec spec = spec_of(n, n_prime, d);
            DecompositionOptions options;
            options.threads = threads;
            options.expand_trivial = expand_trivial;
            options.budget.max_classes = max_classes ? max_classes : env_default<std::size_t>("SIGPOLY_MAX_CLASSES");
            options.budget.max_seconds = max_seconds ? max_seconds : env_default<double>("SIGPOLY_MAX_SECONDS");
            const BellInequality seed = seed_path.empty() ? seed_facet(spec) : inequality_from_json(read_document(seed_path));
            const DecompositionState state = adjacency_decomposition(spec, seed, options);
            output.emit(to_json(state));
            return state.partial ? kBudget : kOk;
        } else if (*certify) {
            const ClassicalChannel p = channel_or_setup_from_json(read_document(channel_path));
            CertifyOptions options;
            options.max_vertices = max_vertices;
            if (certify_d) {
                const DimensionVerdict v = check_dimension(p, *certify_d, options);
                Json doc{{"channel", to_json(p)},
                         {"d", *certify_d},
                         {"verdict", v.step.verdict},
                         {"method", v.step.method}};
                if (v.certificate) doc["violated_inequality"] = to_json(*v.certificate);
                if (v.witness) doc["protocol_witness"] = to_json(*v.witness);
                output.emit(doc);
            } else {
                output.emit(to_json(certify_signaling_dimension(p, options), p));
            }
        } else if (*score_cmd) {
            const BellInequality ineq = inequality_from_json(read_document(inequality_path));
            const ClassicalChannel p = channel_or_setup_from_json(read_document(channel_path));
            const Rational s = score(ineq, p);
            output.emit(Json{{"score", to_json(s)}, {"gamma", to_json(ineq.gamma)}, {"violated", s > ineq.gamma}});
        } else if (*verify) {
            const PolytopeSpec spec = spec_of(n, n_prime, d);
            const BellInequality ineq = inequality_from_json(read_document(inequality_path));
            const FacetVerdict v = verify_facet(ineq, spec);
            output.emit(Json{{"spec", to_json(spec)},
                             {"is_valid", v.is_valid},
                             {"is_tight", v.is_tight},
                             {"tight_vertex_count", v.tight_vertex_count},
                             {"affine_rank_of_tight_set", v.affine_rank_of_tight_set}});
        } else if (*bounds) {
            const Rational mu = Rational::parse(mu_text);
            const ReplacerSpec spec{mu, d, kind == "erasure" ? ReplacerKind::Erasure : ReplacerKind::Depolarizing, {}};
            const auto [lower, upper] = replacer_bounds(spec);
            Json doc{{"kind", kind}, {"mu", to_json(mu)}, {"d", d}, {"lower", lower}, {"upper", upper}};
            if (spec.kind == ReplacerKind::Erasure) {
                doc["erasure_dimension"] = erasure_dimension(mu, d);
                doc["ambiguous_root_bound"] = erasure_root_bound(mu, d, d + 1);
            }
            output.emit(doc);
        } else if (*generate) {
            const Rational mu = Rational::parse(gen_mu);
            const SetupKind setup_kind = gen_kind == "erasure"        ? SetupKind::Erasure
                                         : gen_kind == "depolarizing" ? SetupKind::Depolarizing
                                                                      : SetupKind::Identity;
            const QuantumSetup setup = standard_setup(setup_kind, mu, d);
            Json doc = to_json(induced_channel(setup));
            doc["setup"] = setup_to_json(setup, gen_kind, mu, d);
            output.emit(doc);
        }
    } catch (const Error& e) {
        std::cout << to_json(e).dump(2) << '\n';
        const bool budget = e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::ResourceBudget;
        return budget ? kBudget : kValidation;
    }
    return kOk;
}
