#include "sigpoly/lp.hpp"

#include "sigpoly/error.hpp"

namespace sigpoly {

FeasibilityResult zero_one_feasibility(int rows, const std::vector<std::vector<int>>& columns,
                                       const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != rows) throw Error(ErrorCode::DimensionMismatch, "right-hand side size mismatch");
    for (const auto& v : b) {
        if (v.sign() < 0) throw Error(ErrorCode::DimensionMismatch, "right-hand side must be non-negative");
    }
    const int n_cols = static_cast<int>(columns.size());
    const int m = rows;

    // Artificial variable i has index n_cols + i and column e_i.
    std::vector<int> basic(m);
    std::vector<std::vector<Rational>> binv(m, std::vector<Rational>(m));
    std::vector<Rational> xb = b;
    for (int i = 0; i < m; ++i) {
        basic[i] = n_cols + i;
        binv[i][i] = 1;
    }
    std::vector<bool> in_basis(n_cols, false);

    FeasibilityResult result;
    std::vector<Rational> y(m);
    std::vector<mpz_class> scaled(m);
    std::vector<Rational> u(m);
    while (true) {
        // Phase-one prices: sum of B^{-1} rows belonging to basic artificials.
        for (int r = 0; r < m; ++r) y[r] = 0;
        for (int i = 0; i < m; ++i) {
            if (basic[i] < n_cols) continue;
            for (int r = 0; r < m; ++r)
                if (!binv[i][r].is_zero()) y[r] += binv[i][r];
        }
        mpz_class lcm = 1;
        for (const auto& v : y) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
        for (int r = 0; r < m; ++r) scaled[r] = (y[r] * Rational(lcm)).numerator();

        int entering = -1;
        mpz_class acc;
        for (int j = 0; j < n_cols && entering < 0; ++j) {
            if (in_basis[j]) continue;
            acc = 0;
            for (int r : columns[j]) acc += scaled[r];
            if (acc > 0) entering = j;
        }
        if (entering < 0) break;

        for (int i = 0; i < m; ++i) {
            u[i] = 0;
            for (int r : columns[entering])
                if (!binv[i][r].is_zero()) u[i] += binv[i][r];
        }
        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (u[i].sign() <= 0) continue;
            const Rational ratio = xb[i] / u[i];
            if (leave < 0 || ratio < best || (ratio == best && basic[i] < basic[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw Error(ErrorCode::DimensionMismatch, "phase-one problem reported unbounded");

        const Rational pivot = u[leave];
        for (int r = 0; r < m; ++r)
            if (!binv[leave][r].is_zero()) binv[leave][r] /= pivot;
        xb[leave] /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave || u[i].is_zero()) continue;
            const Rational f = u[i];
            for (int r = 0; r < m; ++r)
                if (!binv[leave][r].is_zero()) binv[i][r] -= f * binv[leave][r];
            xb[i] -= f * xb[leave];
        }
        if (basic[leave] < n_cols) in_basis[basic[leave]] = false;
        basic[leave] = entering;
        in_basis[entering] = true;
        ++result.iterations;
    }

    Rational infeasibility;
    for (int i = 0; i < m; ++i)
        if (basic[i] >= n_cols) infeasibility += xb[i];
    if (infeasibility.is_zero()) {
        result.feasible = true;
        for (int i = 0; i < m; ++i) {
            if (basic[i] < n_cols && xb[i].sign() > 0) result.solution.emplace_back(basic[i], xb[i]);
        }
    } else {
        result.farkas = y;
    }
    return result;
}

}  // namespace sigpoly
