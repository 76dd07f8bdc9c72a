#include "sigpoly/polyhedral.hpp"

#include <sstream>

#include "sigpoly/error.hpp"
#include "sigpoly/linalg.hpp"
#include "sigpoly/lp.hpp"

namespace sigpoly {

namespace {

/// Integer multiple of an inequality, indexed like a flattened vertex.
struct ScaledForm {
    std::vector<mpz_class> coeff;
    mpz_class bound;
    int n = 0;

    explicit ScaledForm(const BellInequality& ineq) : n(ineq.n()) {
        mpz_class lcm = ineq.gamma.denominator();
        for (const auto& v : ineq.g.data()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
        const Rational s{lcm};
        bound = (ineq.gamma * s).numerator();
        coeff.reserve(ineq.g.data().size());
        for (const auto& v : ineq.g.data()) coeff.push_back((v * s).numerator());
    }

    mpz_class value(const DeterministicVertex& v) const {
        mpz_class acc = 0;
        for (int x = 0; x < v.n(); ++x) acc += coeff[v.output(x) * n + x];
        return acc;
    }
};

void check_dims(const BellInequality& ineq, const PolytopeSpec& spec) {
    if (ineq.n() != spec.n || ineq.n_prime() != spec.n_prime) {
        throw Error(ErrorCode::DimensionMismatch, "inequality shape does not match the polytope");
    }
}

std::vector<std::vector<int>> select(const VertexSet& vs, const std::vector<int>& idx) {
    std::vector<std::vector<int>> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(vs.points()[i]);
    return out;
}

BellInequality from_hull_facet(const HullFacet& f, int n_prime, int n) {
    RationalMatrix g(n_prime, n);
    for (int y = 0; y < n_prime; ++y)
        for (int x = 0; x < n; ++x) g(y, x) = Rational(f.a[y * n + x]);
    return {std::move(g), Rational(f.b)};
}

}  // namespace

VertexSet::VertexSet(const PolytopeSpec& spec) : spec_(spec), vertices_(enumerate_vertices(spec)) {
    points_.reserve(vertices_.size());
    for (const auto& v : vertices_) points_.push_back(v.flatten());
}

std::vector<int> tight_vertices(const BellInequality& ineq, const VertexSet& vs) {
    check_dims(ineq, vs.spec());
    const ScaledForm form(ineq);
    std::vector<int> tight;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const mpz_class v = form.value(vs.vertices()[i]);
        if (v > form.bound) throw Error(ErrorCode::NotAFacet, "inequality is violated by a vertex");
        if (v == form.bound) tight.push_back(static_cast<int>(i));
    }
    return tight;
}

FacetVerdict verify_facet(const BellInequality& ineq, const VertexSet& vs) {
    check_dims(ineq, vs.spec());
    const ScaledForm form(ineq);
    FacetVerdict verdict;
    verdict.is_valid = true;
    std::vector<std::vector<int>> tight;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const mpz_class v = form.value(vs.vertices()[i]);
        if (v > form.bound) verdict.is_valid = false;
        if (v == form.bound) tight.push_back(vs.points()[i]);
    }
    verdict.tight_vertex_count = static_cast<int>(tight.size());
    verdict.affine_rank_of_tight_set = tight.empty() ? -1 : affine_rank(tight);
    verdict.is_tight = verdict.is_valid && verdict.affine_rank_of_tight_set == vs.spec().dimension() - 1;
    return verdict;
}

FacetVerdict verify_facet(const BellInequality& ineq, const PolytopeSpec& spec) {
    check_dims(ineq, spec);
    return verify_facet(ineq, VertexSet(spec));
}

MembershipResult hull_membership(const ClassicalChannel& p, const VertexSet& vs) {
    const PolytopeSpec& spec = vs.spec();
    if (p.n() != spec.n || p.n_prime() != spec.n_prime) {
        throw Error(ErrorCode::DimensionMismatch, "channel shape does not match the polytope");
    }
    const int n = spec.n;
    // The last output row is implied by column sums; one extra row enforces sum(lambda) = 1.
    const int rows = n * (spec.n_prime - 1) + 1;
    std::vector<std::vector<int>> columns;
    columns.reserve(vs.size());
    for (const auto& v : vs.vertices()) {
        std::vector<int> col;
        for (int x = 0; x < n; ++x)
            if (v.output(x) < spec.n_prime - 1) col.push_back(v.output(x) * n + x);
        col.push_back(rows - 1);
        columns.push_back(std::move(col));
    }
    std::vector<Rational> b(rows);
    for (int y = 0; y + 1 < spec.n_prime; ++y)
        for (int x = 0; x < n; ++x) b[y * n + x] = p.entry(y, x);
    b[rows - 1] = 1;

    const FeasibilityResult lp = zero_one_feasibility(rows, columns, b);
    MembershipResult out;
    out.member = lp.feasible;
    if (lp.feasible) {
        SimulationProtocol protocol;
        for (const auto& [j, weight] : lp.solution) {
            auto [enc, dec] = vertex_factorize(vs.vertices()[j], spec.d);
            protocol.terms.push_back(ProtocolTerm{weight, std::move(enc), std::move(dec)});
        }
        out.witness = std::move(protocol);
    } else {
        RationalMatrix g(spec.n_prime, n);
        for (int y = 0; y + 1 < spec.n_prime; ++y)
            for (int x = 0; x < n; ++x) g(y, x) = lp.farkas[y * n + x];
        BellInequality cert(std::move(g), -lp.farkas[rows - 1], "separating");
        out.certificate = normal_form(cert);
    }
    return out;
}

MembershipResult hull_membership(const ClassicalChannel& p, const PolytopeSpec& spec) {
    spec.validate();
    if (p.n() != spec.n || p.n_prime() != spec.n_prime) {
        throw Error(ErrorCode::DimensionMismatch, "channel shape does not match the polytope");
    }
    return hull_membership(p, VertexSet(spec));
}

std::vector<BellInequality> enumerate_subfacets(const BellInequality& ineq, const VertexSet& vs,
                                                const HullOptions& options) {
    const FacetVerdict verdict = verify_facet(ineq, vs);
    if (!verdict.is_tight) throw Error(ErrorCode::NotAFacet, "inequality is not a facet of the polytope");
    const std::vector<int> tight = tight_vertices(ineq, vs);
    const auto facets = hull_facets(select(vs, tight), options);
    std::vector<BellInequality> out;
    out.reserve(facets.size());
    for (const auto& f : facets) out.push_back(from_hull_facet(f, vs.spec().n_prime, vs.spec().n));
    return out;
}

std::vector<BellInequality> enumerate_subfacets(const BellInequality& ineq, const PolytopeSpec& spec) {
    check_dims(ineq, spec);
    return enumerate_subfacets(ineq, VertexSet(spec));
}

BellInequality reduce_to_hull(const BellInequality& ineq, const PolytopeSpec& spec) {
    if (spec.d != 1) return normal_form(ineq);
    BellInequality folded = ineq;
    for (int y = 0; y < ineq.n_prime(); ++y) {
        Rational sum;
        for (int x = 0; x < ineq.n(); ++x) {
            sum += ineq.g(y, x);
            folded.g(y, x) = 0;
        }
        folded.g(y, 0) = sum;
    }
    return normal_form(folded);
}

BellInequality rotate_facet(const BellInequality& facet, const BellInequality& ridge, const VertexSet& vs) {
    check_dims(facet, vs.spec());
    check_dims(ridge, vs.spec());
    const ScaledForm f(facet);
    const ScaledForm h(ridge);
    std::vector<int> on_facet;
    std::vector<int> off_facet;
    std::vector<mpz_class> fval(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        fval[i] = f.value(vs.vertices()[i]);
        if (fval[i] > f.bound) throw Error(ErrorCode::NotARidge, "facet inequality is not valid");
        (fval[i] == f.bound ? on_facet : off_facet).push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> ridge_points;
    for (int i : on_facet) {
        const mpz_class v = h.value(vs.vertices()[i]);
        if (v > h.bound) throw Error(ErrorCode::NotARidge, "ridge inequality cuts the facet");
        if (v == h.bound) ridge_points.push_back(vs.points()[i]);
    }
    if (ridge_points.empty() || affine_rank(ridge_points) != vs.spec().dimension() - 2) {
        throw Error(ErrorCode::NotARidge, "tight set is not of ridge dimension");
    }
    if (off_facet.empty()) throw Error(ErrorCode::NotAFacet, "every vertex lies on the facet");

    // Smallest admissible tilt of the ridge hyperplane towards the off-facet vertices.
    Rational theta;
    bool first = true;
    for (int i : off_facet) {
        const Rational t(h.value(vs.vertices()[i]) - h.bound, f.bound - fval[i]);
        if (first || t > theta) {
            theta = t;
            first = false;
        }
    }
    RationalMatrix g(facet.n_prime(), facet.n());
    for (int y = 0; y < facet.n_prime(); ++y)
        for (int x = 0; x < facet.n(); ++x)
            g(y, x) = Rational(h.coeff[y * facet.n() + x]) + Rational(f.coeff[y * facet.n() + x]) * theta;
    const Rational gamma = Rational(h.bound) + Rational(f.bound) * theta;
    return reduce_to_hull(BellInequality(std::move(g), gamma), vs.spec());
}

BellInequality rotate_facet(const BellInequality& facet, const BellInequality& ridge, const PolytopeSpec& spec) {
    check_dims(facet, spec);
    return rotate_facet(facet, ridge, VertexSet(spec));
}

std::vector<BellInequality> enumerate_facets(const PolytopeSpec& spec, const HullOptions& options) {
    const VertexSet vs(spec);
    const auto facets = hull_facets(vs.points(), options);
    std::vector<BellInequality> out;
    out.reserve(facets.size());
    for (const auto& f : facets) out.push_back(reduce_to_hull(from_hull_facet(f, spec.n_prime, spec.n), spec));
    return out;
}

std::string vertex_dump(const PolytopeSpec& spec) {
    std::ostringstream os;
    for (const auto& v : enumerate_vertices(spec)) {
        const auto flat = v.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? " " : "") << flat[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace sigpoly
