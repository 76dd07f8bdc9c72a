#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigpoly/channel.hpp"
#include "sigpoly/facets.hpp"

namespace sigpoly {

enum class ClassStatus { Unconsidered, Considered };

struct FacetClass {
    GeneratorFacet facet;
    ClassStatus status = ClassStatus::Unconsidered;
    /// Non-negativity pattern; a facet of the polytope but satisfied by every channel.
    bool trivial = false;
};

struct DecompositionBudget {
    std::optional<std::size_t> max_classes;
    std::optional<double> max_seconds;
};

struct DecompositionOptions {
    DecompositionBudget budget;
    int threads = 1;
    /// Also rotate around the ridges of non-negativity classes. Off by default: their
    /// faces carry most of the vertices and dominate the run time.
    bool expand_trivial = false;
};

struct DecompositionState {
    PolytopeSpec spec;
    BellInequality seed;
    /// Classes in discovery order.
    std::vector<FacetClass> classes;
    /// True when the budget stopped the run before the queue drained.
    bool partial = false;
    std::string budget_status = "complete";
    std::size_t ridges_processed = 0;
    double seconds = 0;

    std::size_t nontrivial_count() const;
    std::vector<GeneratorFacet> nontrivial() const;
};

/// ML facet on d+1 outcomes lifted to the spec's shape; for d = 1 a simplex facet.
/// Throws ParameterOutOfRange unless min{n, n'} > d >= 1.
BellInequality seed_facet(const PolytopeSpec& spec);

/// Discovers generator facet classes breadth first from a seed facet.
/// Throws SeedNotFacet; budget exhaustion returns a partial state.
DecompositionState adjacency_decomposition(const PolytopeSpec& spec, const BellInequality& seed,
                                           const DecompositionOptions& options = {});

}  // namespace sigpoly
