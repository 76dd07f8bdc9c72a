#include "sigpoly/facets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "sigpoly/error.hpp"

namespace sigpoly {

namespace {

[[noreturn]] void out_of_range(const std::string& what) { throw Error(ErrorCode::ParameterOutOfRange, what); }

void check_dims(const BellInequality& ineq, int n, int n_prime) {
    if (ineq.n() != n || ineq.n_prime() != n_prime) {
        throw Error(ErrorCode::DimensionMismatch, "inequality is " + std::to_string(ineq.n_prime()) + "x" +
                                                      std::to_string(ineq.n()) + ", channel is " +
                                                      std::to_string(n_prime) + "x" + std::to_string(n));
    }
}

using IntMatrix = std::vector<std::vector<long>>;

IntMatrix to_int_matrix(const RationalMatrix& g) {
    IntMatrix out(g.rows(), std::vector<long>(g.cols()));
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const Rational& v = g(r, c);
            if (!v.is_integer() || !v.numerator().fits_slong_p()) {
                throw Error(ErrorCode::ParameterOutOfRange, "normal form entry does not fit a machine integer");
            }
            out[r][c] = v.numerator().get_si();
        }
    return out;
}

/// One branch of the canonical-form search: rows chosen so far and the ordered column groups they induce.
struct CanonState {
    std::vector<int> rows;
    std::vector<std::vector<int>> groups;
    unsigned long used = 0;
};

/// Row produced by appending `row` to the state, plus the refined groups.
std::pair<std::vector<long>, std::vector<std::vector<int>>> extend(const IntMatrix& m, const CanonState& s, int row) {
    std::vector<long> line;
    std::vector<std::vector<int>> groups;
    line.reserve(m.front().size());
    for (const auto& group : s.groups) {
        std::vector<int> cols = group;
        std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) { return m[row][a] < m[row][b]; });
        std::size_t i = 0;
        while (i < cols.size()) {
            std::size_t j = i;
            std::vector<int> block;
            while (j < cols.size() && m[row][cols[j]] == m[row][cols[i]]) {
                block.push_back(cols[j]);
                line.push_back(m[row][cols[j]]);
                ++j;
            }
            std::sort(block.begin(), block.end());
            groups.push_back(std::move(block));
            i = j;
        }
    }
    return {std::move(line), std::move(groups)};
}

}  // namespace

BellInequality k_guessing(int n_prime, int k, int d) {
    if (n_prime < 2 || k < 1 || k > n_prime - 1 || d < 1 || d > n_prime) {
        out_of_range("k_guessing requires n' >= 2, 1 <= k <= n'-1, 1 <= d <= n'");
    }
    // Columns enumerate k-subsets of rows in lexicographic order of the subsets.
    std::vector<std::vector<int>> subsets;
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        subsets.push_back(comb);
        int i = k - 1;
        while (i >= 0 && comb[i] == n_prime - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    RationalMatrix g(n_prime, subsets.size());
    for (std::size_t c = 0; c < subsets.size(); ++c)
        for (int y : subsets[c]) g(y, c) = 1;
    const mpz_class gamma = binomial(n_prime, k) - binomial(n_prime - d, k);
    return {std::move(g), Rational(gamma), "k-guessing"};
}

BellInequality ml_game(int n_prime, int d) {
    if (n_prime < 2 || d < 1 || d > n_prime) out_of_range("ml_game requires n' >= 2, 1 <= d <= n'");
    return {RationalMatrix::identity(n_prime), Rational(d), "maximum-likelihood"};
}

BellInequality ambiguous_game(int n_prime, int d) {
    if (n_prime < 4 || d < 2 || d > n_prime - 2) out_of_range("ambiguous_game requires n' >= 4, 2 <= d <= n'-2");
    RationalMatrix g(n_prime, n_prime - 1);
    for (int i = 0; i < n_prime - 1; ++i) {
        g(i, i) = n_prime - d;
        g(n_prime - 1, i) = 1;
    }
    return {std::move(g), Rational(d * (n_prime - d)), "ambiguous"};
}

BellInequality general_ambiguous_game(const AmbiguousGameSpec& spec) {
    if (spec.n < 1 || spec.n_prime < 1 || spec.k < 0 || spec.k > spec.n_prime || spec.d < 1 ||
        spec.d > std::min(spec.n, spec.n_prime) || static_cast<int>(spec.guesses.size()) != spec.k) {
        out_of_range("general ambiguous game requires 0 <= k <= n', 1 <= d <= min{n,n'} and k guesses");
    }
    RationalMatrix g(spec.n_prime, spec.n);
    for (int y = 0; y < spec.k; ++y) {
        const int x = spec.guesses[y];
        if (x < 0 || x >= spec.n) out_of_range("guess outside the input range");
        g(y, x) = 1;
    }
    const Rational amb(1, spec.n - spec.d + 1);
    for (int y = spec.k; y < spec.n_prime; ++y)
        for (int x = 0; x < spec.n; ++x) g(y, x) = amb;
    return {std::move(g), Rational(spec.d), "general-ambiguous"};
}

BellInequality anti_guessing(int eps, int m_prime, int d) {
    const int n_prime = eps + m_prime;
    if (m_prime < 0 || d < 2 || d > n_prime - 2 || eps < 3 || eps > n_prime - d + 1) {
        out_of_range("anti_guessing requires n'-2 >= d >= 2 and n'-d+1 >= eps >= 3");
    }
    RationalMatrix g(n_prime, n_prime);
    for (int y = 0; y < eps; ++y)
        for (int x = 0; x < eps; ++x)
            if (x != eps - 1 - y) g(y, x) = 1;
    for (int i = eps; i < n_prime; ++i) g(i, i) = 1;
    return {std::move(g), Rational(eps + d - 2), "anti-guessing"};
}

BellInequality lift_input(const BellInequality& ineq, int pad) {
    if (pad < 0) out_of_range("input lifting pad must be non-negative");
    RationalMatrix g(ineq.n_prime(), ineq.n() + pad);
    for (int y = 0; y < ineq.n_prime(); ++y)
        for (int x = 0; x < ineq.n(); ++x) g(y, x) = ineq.g(y, x);
    return {std::move(g), ineq.gamma, ineq.family};
}

BellInequality lift_output(const BellInequality& ineq, const std::vector<int>& f) {
    std::vector<bool> hit(ineq.n_prime(), false);
    for (int src : f) {
        if (src < 0 || src >= ineq.n_prime()) throw Error(ErrorCode::NotSurjective, "lifting map leaves the row range");
        hit[src] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        throw Error(ErrorCode::NotSurjective, "lifting map is not surjective");
    }
    RationalMatrix g(f.size(), ineq.n());
    for (std::size_t y = 0; y < f.size(); ++y)
        for (int x = 0; x < ineq.n(); ++x) g(y, x) = ineq.g(f[y], x);
    return {std::move(g), ineq.gamma, ineq.family};
}

BellInequality rescale_ambiguous(const BellInequality& ineq, int row, const std::pair<Rational, Rational>& split) {
    if (row < 0 || row >= ineq.n_prime()) throw Error(ErrorCode::BadSplit, "row outside the inequality");
    int col = -1;
    for (int x = 0; x < ineq.n(); ++x) {
        if (ineq.g(row, x).is_zero()) continue;
        if (col >= 0) throw Error(ErrorCode::BadSplit, "row has more than one nonzero entry");
        col = x;
    }
    if (col < 0) throw Error(ErrorCode::BadSplit, "row has no nonzero entry");
    if (split.first.sign() <= 0 || split.second.sign() <= 0 || split.first + split.second != ineq.g(row, col)) {
        throw Error(ErrorCode::BadSplit, "split parts must be positive and sum to " + ineq.g(row, col).to_string());
    }
    BellInequality out = lift_input(ineq, 1);
    out.g(row, col) = split.first;
    out.g(row, ineq.n()) = split.second;
    out.family = ineq.family.empty() ? "rescaled" : ineq.family + "-rescaled";
    return out;
}

BellInequality normal_form(const BellInequality& ineq) {
    BellInequality out = ineq;
    for (int x = 0; x < out.n(); ++x) {
        Rational lo = out.g(0, x);
        for (int y = 1; y < out.n_prime(); ++y) lo = std::min(lo, out.g(y, x));
        if (lo.is_zero()) continue;
        for (int y = 0; y < out.n_prime(); ++y) out.g(y, x) -= lo;
        out.gamma -= lo;
    }
    mpz_class lcm = out.gamma.denominator();
    for (const Rational& v : out.g.data()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
    const Rational scale_up{lcm};
    mpz_class gcd = (out.gamma * scale_up).numerator();
    for (const Rational& v : out.g.data()) {
        const mpz_class z = (v * scale_up).numerator();
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), z.get_mpz_t());
    }
    gcd = abs(gcd);
    if (gcd == 0) return out;
    const Rational factor(lcm, gcd);
    out.gamma *= factor;
    for (int y = 0; y < out.n_prime(); ++y)
        for (int x = 0; x < out.n(); ++x) out.g(y, x) *= factor;
    return out;
}

GeneratorFacet canonical_class_rep(const BellInequality& ineq) {
    const BellInequality nf = normal_form(ineq);
    const IntMatrix m = to_int_matrix(nf.g);
    const int rows = nf.n_prime();
    const int cols = nf.n();

    CanonState root;
    root.groups.emplace_back(cols);
    std::iota(root.groups.front().begin(), root.groups.front().end(), 0);
    std::vector<CanonState> frontier{root};
    std::vector<std::vector<long>> best_rows;

    for (int level = 0; level < rows; ++level) {
        std::vector<long> best_line;
        std::vector<CanonState> next;
        std::map<std::pair<unsigned long, std::vector<std::vector<int>>>, bool> seen;
        for (const auto& state : frontier) {
            for (int r = 0; r < rows; ++r) {
                if (state.used & (1UL << r)) continue;
                auto [line, groups] = extend(m, state, r);
                if (!next.empty()) {
                    if (line > best_line) continue;
                    if (line < best_line) {
                        next.clear();
                        seen.clear();
                    }
                }
                CanonState child;
                child.used = state.used | (1UL << r);
                auto key = std::make_pair(child.used, groups);
                if (seen.count(key)) continue;
                seen.emplace(std::move(key), true);
                child.rows = state.rows;
                child.rows.push_back(r);
                child.groups = std::move(groups);
                best_line = std::move(line);
                next.push_back(std::move(child));
            }
        }
        best_rows.push_back(best_line);
        frontier = std::move(next);
    }

    RationalMatrix g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) g(r, c) = Rational(best_rows[r][c]);
    return GeneratorFacet{BellInequality(std::move(g), nf.gamma, ineq.family)};
}

mpz_class GeneratorFacet::class_size() const {
    const IntMatrix m = to_int_matrix(canonical.g);
    const int rows = canonical.n_prime();
    const int cols = canonical.n();
    auto column_multiset = [&](const std::vector<int>& order) {
        std::map<std::vector<long>, int> counts;
        for (int c = 0; c < cols; ++c) {
            std::vector<long> col(rows);
            for (int r = 0; r < rows; ++r) col[r] = m[order[r]][c];
            ++counts[col];
        }
        return counts;
    };
    std::vector<int> order(rows);
    std::iota(order.begin(), order.end(), 0);
    const auto reference = column_multiset(order);
    mpz_class column_stabilizer = 1;
    for (const auto& [col, count] : reference) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(count));
        column_stabilizer *= f;
    }
    mpz_class automorphisms = 0;
    do {
        if (column_multiset(order) == reference) automorphisms += column_stabilizer;
    } while (std::next_permutation(order.begin(), order.end()));
    mpz_class total;
    mpz_class fc;
    mpz_fac_ui(total.get_mpz_t(), static_cast<unsigned long>(rows));
    mpz_fac_ui(fc.get_mpz_t(), static_cast<unsigned long>(cols));
    total *= fc;
    return total / automorphisms;
}

std::string GeneratorFacet::key() const {
    std::ostringstream os;
    os << canonical.n_prime() << 'x' << canonical.n() << ':' << canonical.gamma.to_string() << '|';
    for (const Rational& v : canonical.g.data()) os << v.to_string() << ',';
    return os.str();
}

bool is_nonnegativity(const BellInequality& ineq) {
    const BellInequality nf = normal_form(ineq);
    if (nf.gamma != Rational(1)) return false;
    int nonzero_cols = 0;
    for (int x = 0; x < nf.n(); ++x) {
        int ones = 0;
        int zeros = 0;
        for (int y = 0; y < nf.n_prime(); ++y) {
            const Rational& v = nf.g(y, x);
            if (v.is_zero()) {
                ++zeros;
            } else if (v == Rational(1)) {
                ++ones;
            } else {
                return false;
            }
        }
        if (ones == 0) continue;
        if (zeros != 1) return false;
        ++nonzero_cols;
    }
    return nonzero_cols == 1;
}

Rational score(const BellInequality& ineq, const ClassicalChannel& p) {
    check_dims(ineq, p.n(), p.n_prime());
    Rational total;
    for (int y = 0; y < p.n_prime(); ++y)
        for (int x = 0; x < p.n(); ++x) {
            if (ineq.g(y, x).is_zero() || p.entry(y, x).is_zero()) continue;
            total += ineq.g(y, x) * p.entry(y, x);
        }
    return total;
}

Rational score(const BellInequality& ineq, const DeterministicVertex& v) {
    check_dims(ineq, v.n(), v.n_prime());
    Rational total;
    for (int x = 0; x < v.n(); ++x) total += ineq.g(v.output(x), x);
    return total;
}

BellInequality permute(const BellInequality& ineq, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (static_cast<int>(rows.size()) != ineq.n_prime() || static_cast<int>(cols.size()) != ineq.n()) {
        throw Error(ErrorCode::DimensionMismatch, "permutation size mismatch");
    }
    RationalMatrix g(ineq.n_prime(), ineq.n());
    for (int r = 0; r < ineq.n_prime(); ++r)
        for (int c = 0; c < ineq.n(); ++c) g(r, c) = ineq.g(rows[r], cols[c]);
    return {std::move(g), ineq.gamma, ineq.family};
}

}  // namespace sigpoly
