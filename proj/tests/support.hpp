#pragma once

#include <random>
#include <vector>

#include "sigpoly/channel.hpp"
#include "sigpoly/facets.hpp"
#include "sigpoly/rational.hpp"

namespace testing_support {

using sigpoly::BellInequality;
using sigpoly::ClassicalChannel;
using sigpoly::Rational;
using sigpoly::RationalMatrix;

inline RationalMatrix mat(const std::vector<std::vector<Rational>>& rows) { return RationalMatrix::from_rows(rows); }

inline ClassicalChannel chan(const std::vector<std::vector<Rational>>& rows) { return sigpoly::new_channel(rows); }

inline BellInequality ineq(const std::vector<std::vector<Rational>>& rows, long gamma) {
    return BellInequality(mat(rows), Rational(gamma));
}

inline ClassicalChannel erasure_half() {
    const Rational h(1, 2);
    return chan({{h, 0, 0}, {0, h, 0}, {0, 0, h}, {h, h, h}});
}

/// Mixture of a few random deterministic channels, blended with a random column-stochastic
/// matrix of small denominators. Weights are small integers so the LP stays cheap.
inline ClassicalChannel random_channel(std::mt19937_64& rng, int n, int n_prime) {
    std::uniform_int_distribution<int> terms_dist(1, 4);
    std::uniform_int_distribution<int> out_dist(0, n_prime - 1);
    std::uniform_int_distribution<int> weight_dist(1, 6);
    std::uniform_int_distribution<int> noise_dist(0, 3);
    std::uniform_int_distribution<int> mode_dist(0, 3);

    RationalMatrix m(n_prime, n);
    const int terms = terms_dist(rng);
    Rational total;
    std::vector<std::pair<int, std::vector<int>>> picks;
    for (int t = 0; t < terms; ++t) {
        std::vector<int> assignment(n);
        for (auto& y : assignment) y = out_dist(rng);
        const int w = weight_dist(rng);
        total += Rational(w);
        picks.emplace_back(w, std::move(assignment));
    }
    for (const auto& [w, assignment] : picks)
        for (int x = 0; x < n; ++x) m(assignment[x], x) += Rational(w) / total;

    // Optionally blend with a random full-support stochastic matrix.
    const int mode = mode_dist(rng);
    if (mode > 0) {
        const Rational lambda(mode, 8);
        for (int x = 0; x < n; ++x) {
            std::vector<int> raw(n_prime);
            int sum = 0;
            for (auto& r : raw) sum += (r = noise_dist(rng));
            if (sum == 0) {
                raw[0] = 1;
                sum = 1;
            }
            for (int y = 0; y < n_prime; ++y)
                m(y, x) = (Rational(1) - lambda) * m(y, x) + lambda * Rational(raw[y], sum);
        }
    }
    return sigpoly::new_channel(std::move(m));
}

}  // namespace testing_support
