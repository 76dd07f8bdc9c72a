#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sigpoly/channel.hpp"
#include "sigpoly/rational.hpp"

namespace sigpoly {

/// Linear bound <G, P> <= gamma on n'-by-n channels. G is indexed (y, x).
struct BellInequality {
    RationalMatrix g;
    Rational gamma;
    std::string family;

    BellInequality() = default;
    BellInequality(RationalMatrix g_, Rational gamma_, std::string family_ = {})
        : g(std::move(g_)), gamma(std::move(gamma_)), family(std::move(family_)) {}

    int n() const noexcept { return static_cast<int>(g.cols()); }
    int n_prime() const noexcept { return static_cast<int>(g.rows()); }

    /// Same matrix and bound; the family tag is ignored.
    bool same_as(const BellInequality& other) const { return g == other.g && gamma == other.gamma; }
};

/// Canonical representative of a facet class under row and column permutations.
struct GeneratorFacet {
    BellInequality canonical;

    /// Orbit size n'! n! / |automorphisms|.
    mpz_class class_size() const;
    /// Serialized canonical matrix; used as an identity key.
    std::string key() const;

    friend bool operator==(const GeneratorFacet& a, const GeneratorFacet& b) { return a.canonical.same_as(b.canonical); }
};

/// Guessing rows come first (rows 0..k-1, guessing input guesses[i]); the remaining n'-k rows are ambiguous.
struct AmbiguousGameSpec {
    int n = 0;
    int n_prime = 0;
    int k = 0;
    int d = 1;
    std::vector<int> guesses;
};

BellInequality k_guessing(int n_prime, int k, int d);
BellInequality ml_game(int n_prime, int d);
BellInequality ambiguous_game(int n_prime, int d);
BellInequality general_ambiguous_game(const AmbiguousGameSpec& spec);
BellInequality anti_guessing(int eps, int m_prime, int d);

/// Appends `pad` all-zero columns.
BellInequality lift_input(const BellInequality& ineq, int pad);
/// Row y of the result is row f[y] of the input; f must hit every row.
BellInequality lift_output(const BellInequality& ineq, const std::vector<int>& f);

/// Splits the single nonzero entry of `row` into (old column, new appended column).
BellInequality rescale_ambiguous(const BellInequality& ineq, int row, const std::pair<Rational, Rational>& split);

/// Column minima shifted to zero, then scaled to coprime integers.
BellInequality normal_form(const BellInequality& ineq);

/// Lexicographically smallest row-major form (bound first) of the normal form over all permutations.
GeneratorFacet canonical_class_rep(const BellInequality& ineq);

/// True for the normal form of -P(y|x) <= 0.
bool is_nonnegativity(const BellInequality& ineq);

/// Exact sum of G(y,x) P(y|x). Throws DimensionMismatch.
Rational score(const BellInequality& ineq, const ClassicalChannel& p);
Rational score(const BellInequality& ineq, const DeterministicVertex& v);

/// Applies row permutation rows[i] -> new row i and likewise for columns.
BellInequality permute(const BellInequality& ineq, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace sigpoly
