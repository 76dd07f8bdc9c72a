#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace sigpoly {

/// Inequality a.x <= b over the full coordinate space, primitive integer coefficients.
struct HullFacet {
    std::vector<mpz_class> a;
    mpz_class b;
};

struct HullOptions {
    /// Throws Error(BudgetExceeded) once passed.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Facets of conv(points) relative to its affine hull, by exact double description.
/// Coefficients are supported on the pivot coordinates of the affine hull; every point
/// satisfies each facet and each facet is tight on a set of affine rank dim-1.
std::vector<HullFacet> hull_facets(const std::vector<std::vector<int>>& points, const HullOptions& options = {});

}  // namespace sigpoly
