#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "sigpoly/channel.hpp"
#include "sigpoly/facets.hpp"
#include "sigpoly/hull.hpp"

namespace sigpoly {

struct FacetVerdict {
    bool is_valid = false;
    bool is_tight = false;
    int tight_vertex_count = 0;
    int affine_rank_of_tight_set = -1;
};

struct MembershipResult {
    bool member = false;
    std::optional<SimulationProtocol> witness;
    std::optional<BellInequality> certificate;
};

/// Vertices of a polytope, enumerated once and shared by the routines below.
class VertexSet {
public:
    explicit VertexSet(const PolytopeSpec& spec);

    const PolytopeSpec& spec() const noexcept { return spec_; }
    const std::vector<DeterministicVertex>& vertices() const noexcept { return vertices_; }
    /// Row-major 0/1 flattenings, aligned with vertices().
    const std::vector<std::vector<int>>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return vertices_.size(); }

private:
    PolytopeSpec spec_;
    std::vector<DeterministicVertex> vertices_;
    std::vector<std::vector<int>> points_;
};

FacetVerdict verify_facet(const BellInequality& ineq, const PolytopeSpec& spec);
FacetVerdict verify_facet(const BellInequality& ineq, const VertexSet& vertices);

/// Indices of vertices attaining the bound; throws NotAFacet if some vertex exceeds it.
std::vector<int> tight_vertices(const BellInequality& ineq, const VertexSet& vertices);

MembershipResult hull_membership(const ClassicalChannel& p, const PolytopeSpec& spec);
MembershipResult hull_membership(const ClassicalChannel& p, const VertexSet& vertices);

/// Ridges of a facet: facets of the convex hull of its tight vertices. Throws NotAFacet.
std::vector<BellInequality> enumerate_subfacets(const BellInequality& ineq, const PolytopeSpec& spec);
std::vector<BellInequality> enumerate_subfacets(const BellInequality& ineq, const VertexSet& vertices,
                                                const HullOptions& options = {});

/// The other facet through a ridge, in normal form. Throws NotARidge.
BellInequality rotate_facet(const BellInequality& facet, const BellInequality& ridge, const PolytopeSpec& spec);
BellInequality rotate_facet(const BellInequality& facet, const BellInequality& ridge, const VertexSet& vertices);

/// Every facet of the polytope, in normal form, by double description over all vertices.
std::vector<BellInequality> enumerate_facets(const PolytopeSpec& spec, const HullOptions& options = {});

/// For d = 1 the affine hull forces equal columns; folds G onto its first column so that
/// equivalent facets share one normal form. Plain normal_form otherwise.
BellInequality reduce_to_hull(const BellInequality& ineq, const PolytopeSpec& spec);

/// One flattened vertex per line, space separated, row-major.
std::string vertex_dump(const PolytopeSpec& spec);

}  // namespace sigpoly
