#include "sigpoly/linalg.hpp"

#include "sigpoly/error.hpp"

namespace sigpoly {

namespace {

void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) {
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g > 1) {
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

}  // namespace

void EchelonBasis::reduce(std::vector<mpz_class>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const int p = pivots_[i];
        if (v[p] == 0) continue;
        const mpz_class a = rows_[i][p];
        const mpz_class b = v[p];
        for (std::size_t c = 0; c < width_; ++c) v[c] = a * v[c] - b * rows_[i][c];
        make_primitive(v);
    }
}

bool EchelonBasis::insert(std::vector<mpz_class> v) {
    if (v.size() != width_) throw Error(ErrorCode::DimensionMismatch, "vector width mismatch");
    reduce(v);
    for (std::size_t c = 0; c < width_; ++c) {
        if (v[c] != 0) {
            pivots_.push_back(static_cast<int>(c));
            rows_.push_back(std::move(v));
            return true;
        }
    }
    return false;
}

bool EchelonBasis::insert(const std::vector<int>& v) {
    std::vector<mpz_class> z(v.begin(), v.end());
    return insert(std::move(z));
}

AffineHull affine_hull(const std::vector<std::vector<int>>& points) {
    AffineHull out;
    if (points.empty()) throw Error(ErrorCode::DimensionMismatch, "empty point set");
    const std::size_t width = points.front().size();
    EchelonBasis basis(width);
    out.independent.push_back(0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != width) throw Error(ErrorCode::DimensionMismatch, "points differ in length");
        if (basis.rank() == static_cast<int>(width)) break;
        std::vector<mpz_class> diff(width);
        for (std::size_t c = 0; c < width; ++c) diff[c] = points[i][c] - points[0][c];
        if (basis.insert(std::move(diff))) out.independent.push_back(static_cast<int>(i));
    }
    out.rank = basis.rank();
    out.pivots = basis.pivots();
    return out;
}

int affine_rank(const std::vector<std::vector<int>>& points) { return affine_hull(points).rank; }

int affine_rank(const std::vector<std::vector<Rational>>& points) {
    if (points.empty()) throw Error(ErrorCode::DimensionMismatch, "empty point set");
    const std::size_t width = points.front().size();
    EchelonBasis basis(width);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != width) throw Error(ErrorCode::DimensionMismatch, "points differ in length");
        // Clear denominators so the difference is an integer vector with the same span.
        mpz_class lcm = 1;
        std::vector<Rational> diff(width);
        for (std::size_t c = 0; c < width; ++c) {
            diff[c] = points[i][c] - points[0][c];
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), diff[c].denominator().get_mpz_t());
        }
        std::vector<mpz_class> z(width);
        for (std::size_t c = 0; c < width; ++c) z[c] = (diff[c] * Rational(lcm)).numerator();
        basis.insert(std::move(z));
    }
    return basis.rank();
}

}  // namespace sigpoly
