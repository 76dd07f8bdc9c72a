#pragma once

#include <vector>

#include <gmpxx.h>

#include "sigpoly/rational.hpp"

namespace sigpoly {

/// Affine structure of a finite point set.
struct AffineHull {
    int rank = 0;
    /// rank+1 affinely independent points (indices into the input), the first input point leading.
    std::vector<int> independent;
    /// Coordinates onto which projection is injective on the affine hull; size == rank.
    std::vector<int> pivots;
};

AffineHull affine_hull(const std::vector<std::vector<int>>& points);

/// Max number of affinely independent points minus one.
int affine_rank(const std::vector<std::vector<int>>& points);
int affine_rank(const std::vector<std::vector<Rational>>& points);

/// Incremental row echelon basis over the integers (fraction free).
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t width) : width_(width) {}

    /// Reduces v against the basis and keeps it if independent. Returns true when the rank grew.
    bool insert(std::vector<mpz_class> v);
    bool insert(const std::vector<int>& v);

    int rank() const noexcept { return static_cast<int>(rows_.size()); }
    const std::vector<int>& pivots() const noexcept { return pivots_; }

private:
    void reduce(std::vector<mpz_class>& v) const;

    std::size_t width_;
    std::vector<std::vector<mpz_class>> rows_;
    std::vector<int> pivots_;
};

}  // namespace sigpoly
