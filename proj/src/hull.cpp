#include "sigpoly/hull.hpp"

#include <algorithm>
#include <cstdint>
#include <type_traits>

#include "sigpoly/error.hpp"
#include "sigpoly/linalg.hpp"
#include "sigpoly/rational.hpp"

namespace sigpoly {

namespace {

struct Overflow {};

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    static Bits intersect(const Bits& a, const Bits& b) {
        Bits out;
        out.words_.resize(a.words_.size());
        for (std::size_t i = 0; i < a.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
        return out;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool subset_of(const Bits& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

inline long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long checked_add(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long checked_sub(long a, long b) {
    long r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline mpz_class checked_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class checked_add(const mpz_class& a, const mpz_class& b) { return a + b; }
inline mpz_class checked_sub(const mpz_class& a, const mpz_class& b) { return a - b; }

inline long gcd_of(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        const long t = a % b;
        a = b;
        b = t;
    }
    return a;
}
inline mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline int sign_of(long v) { return (v > 0) - (v < 0); }
inline int sign_of(const mpz_class& v) { return sgn(v); }

template <class T>
T from_mpz(const mpz_class& v) {
    if constexpr (std::is_same_v<T, long>) {
        if (!v.fits_slong_p()) throw Overflow{};
        return v.get_si();
    } else {
        return v;
    }
}

template <class T>
void make_primitive(std::vector<T>& v) {
    T g = 0;
    for (const auto& x : v) g = gcd_of(g, x);
    if (g > 1) {
        for (auto& x : v) x /= g;
    }
}

template <class T>
struct Ray {
    std::vector<T> w;
    Bits zero;
};

struct Problem {
    int dim = 0;
    std::vector<std::vector<int>> proj;  // projected points, one per constraint
    std::vector<int> order;              // insertion order; first dim+1 are the initial basis
    std::vector<std::vector<mpz_class>> initial;  // initial rays
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

template <class T>
T evaluate(const std::vector<int>& point, const std::vector<T>& w) {
    T acc = w[0];
    for (std::size_t j = 0; j < point.size(); ++j) {
        if (point[j] == 0) continue;
        acc = checked_sub(acc, checked_mul(T(point[j]), w[j + 1]));
    }
    return acc;
}

template <class T>
std::vector<std::vector<mpz_class>> double_description(const Problem& pb) {
    const std::size_t m = pb.proj.size();
    std::vector<Ray<T>> rays;
    for (std::size_t k = 0; k < pb.initial.size(); ++k) {
        Ray<T> r;
        r.zero = Bits(m);
        for (const auto& x : pb.initial[k]) r.w.push_back(from_mpz<T>(x));
        for (std::size_t j = 0; j < pb.initial.size(); ++j)
            if (j != k) r.zero.set(pb.order[j]);
        rays.push_back(std::move(r));
    }
    const std::size_t need = pb.dim >= 1 ? static_cast<std::size_t>(pb.dim - 1) : 0;
    std::size_t steps = 0;
    for (std::size_t idx = pb.initial.size(); idx < pb.order.size(); ++idx) {
        if (pb.deadline && (++steps % 4 == 0) && std::chrono::steady_clock::now() > *pb.deadline) {
            throw Error(ErrorCode::BudgetExceeded, "hull computation exceeded its time budget");
        }
        const int row = pb.order[idx];
        std::vector<T> values(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            values[i] = evaluate(pb.proj[row], rays[i].w);
            const int s = sign_of(values[i]);
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
            else rays[i].zero.set(row);
        }
        if (neg.empty()) continue;
        std::vector<Ray<T>> fresh;
        for (std::size_t pi : pos) {
            for (std::size_t ni : neg) {
                Bits common = Bits::intersect(rays[pi].zero, rays[ni].zero);
                if (common.count() < need) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == pi || r == ni) continue;
                    if (common.subset_of(rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray<T> nr;
                const T vp = values[pi];
                const T vn = -values[ni];
                nr.w.resize(rays[pi].w.size());
                for (std::size_t c = 0; c < nr.w.size(); ++c) {
                    nr.w[c] = checked_add(checked_mul(vp, rays[ni].w[c]), checked_mul(vn, rays[pi].w[c]));
                }
                make_primitive(nr.w);
                common.set(row);
                nr.zero = std::move(common);
                fresh.push_back(std::move(nr));
            }
        }
        std::vector<Ray<T>> kept;
        kept.reserve(rays.size() - neg.size() + fresh.size());
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (sign_of(values[i]) >= 0) kept.push_back(std::move(rays[i]));
        for (auto& r : fresh) kept.push_back(std::move(r));
        rays = std::move(kept);
    }
    std::vector<std::vector<mpz_class>> out;
    out.reserve(rays.size());
    for (const auto& r : rays) {
        std::vector<mpz_class> w;
        w.reserve(r.w.size());
        for (const auto& x : r.w) w.emplace_back(x);
        out.push_back(std::move(w));
    }
    return out;
}

/// Rays of the cone cut out by the initial rows: columns of the inverse matrix, made primitive.
std::vector<std::vector<mpz_class>> initial_rays(const Problem& pb) {
    const std::size_t k = static_cast<std::size_t>(pb.dim) + 1;
    // Augmented [M | I] solved with exact rationals.
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k));
    for (std::size_t i = 0; i < k; ++i) {
        const auto& p = pb.proj[pb.order[i]];
        a[i][0] = 1;
        for (std::size_t j = 0; j < p.size(); ++j) a[i][j + 1] = -p[j];
        a[i][k + i] = 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c].is_zero()) ++piv;
        if (piv == k) throw Error(ErrorCode::DimensionMismatch, "initial simplex is degenerate");
        std::swap(a[piv], a[c]);
        const Rational inv = Rational(1) / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            const Rational f = a[r][c];
            for (std::size_t j = 0; j < 2 * k; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<std::vector<mpz_class>> rays(k);
    for (std::size_t col = 0; col < k; ++col) {
        mpz_class lcm = 1;
        for (std::size_t r = 0; r < k; ++r) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a[r][k + col].denominator().get_mpz_t());
        }
        std::vector<mpz_class> w(k);
        for (std::size_t r = 0; r < k; ++r) w[r] = (a[r][k + col] * Rational(lcm)).numerator();
        make_primitive(w);
        rays[col] = std::move(w);
    }
    return rays;
}

}  // namespace

std::vector<HullFacet> hull_facets(const std::vector<std::vector<int>>& points, const HullOptions& options) {
    const AffineHull hull = affine_hull(points);
    if (hull.rank == 0) return {};
    const std::size_t width = points.front().size();

    Problem pb;
    pb.dim = hull.rank;
    pb.deadline = options.deadline;
    pb.proj.reserve(points.size());
    for (const auto& p : points) {
        std::vector<int> q(hull.pivots.size());
        for (std::size_t j = 0; j < hull.pivots.size(); ++j) q[j] = p[hull.pivots[j]];
        pb.proj.push_back(std::move(q));
    }
    std::vector<bool> in_basis(points.size(), false);
    for (int i : hull.independent) {
        pb.order.push_back(i);
        in_basis[i] = true;
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!in_basis[i]) pb.order.push_back(static_cast<int>(i));
    pb.initial = initial_rays(pb);

    std::vector<std::vector<mpz_class>> rays;
    try {
        rays = double_description<long>(pb);
    } catch (const Overflow&) {
        rays = double_description<mpz_class>(pb);
    }

    std::vector<HullFacet> out;
    out.reserve(rays.size());
    for (const auto& w : rays) {
        HullFacet f;
        f.a.assign(width, 0);
        f.b = w[0];
        for (std::size_t j = 0; j < hull.pivots.size(); ++j) f.a[hull.pivots[j]] = w[j + 1];
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const HullFacet& x, const HullFacet& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

}  // namespace sigpoly
