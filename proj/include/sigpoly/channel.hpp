#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sigpoly/rational.hpp"

namespace sigpoly {

/// Identifies the signaling polytope with n inputs, n' outputs and d messages.
struct PolytopeSpec {
    int n = 1;
    int n_prime = 1;
    int d = 1;

    /// Throws Error(ParameterOutOfRange) unless n, n' >= 1 and 1 <= d <= min{n, n'}.
    void validate() const;

    /// Dimension of the polytope: n(n'-1) for d >= 2, n'-1 for d = 1.
    int dimension() const;

    friend bool operator==(const PolytopeSpec&, const PolytopeSpec&) = default;
};

/// Column-stochastic n'-by-n matrix of exact transition probabilities P(y|x).
/// Indices are zero-based: entry(y, x).
class ClassicalChannel {
public:
    ClassicalChannel() = default;

    int n() const noexcept { return static_cast<int>(matrix_.cols()); }
    int n_prime() const noexcept { return static_cast<int>(matrix_.rows()); }
    const Rational& entry(int y, int x) const { return matrix_(y, x); }
    const RationalMatrix& matrix() const noexcept { return matrix_; }

    friend bool operator==(const ClassicalChannel&, const ClassicalChannel&) = default;

private:
    friend ClassicalChannel new_channel(RationalMatrix entries);
    explicit ClassicalChannel(RationalMatrix m) : matrix_(std::move(m)) {}
    RationalMatrix matrix_;
};

/// Validates a matrix as a channel. Throws NegativeEntry or NonStochastic.
ClassicalChannel new_channel(RationalMatrix entries);
ClassicalChannel new_channel(const std::vector<std::vector<Rational>>& rows);

/// Uniform channel: every entry 1/n'.
ClassicalChannel uniform_channel(int n, int n_prime);
ClassicalChannel identity_channel(int n);

/// Deterministic channel stored as its assignment x -> y.
class DeterministicVertex {
public:
    DeterministicVertex(std::vector<int> assignment, int n_prime);

    int n() const noexcept { return static_cast<int>(assignment_.size()); }
    int n_prime() const noexcept { return n_prime_; }
    const std::vector<int>& assignment() const noexcept { return assignment_; }
    int output(int x) const { return assignment_[x]; }

    /// Sorted list of outputs that receive at least one input.
    std::vector<int> used_outputs() const;
    int rank() const { return static_cast<int>(used_outputs().size()); }

    ClassicalChannel to_channel() const;

    /// Row-major 0/1 flattening of the n'-by-n matrix.
    std::vector<int> flatten() const;

    friend bool operator==(const DeterministicVertex&, const DeterministicVertex&) = default;
    friend auto operator<=>(const DeterministicVertex& a, const DeterministicVertex& b) {
        return a.assignment_ <=> b.assignment_;
    }

private:
    std::vector<int> assignment_;
    int n_prime_;
};

/// One branch of shared randomness: weight, encoder n->d, decoder d->n'.
struct ProtocolTerm {
    Rational weight;
    ClassicalChannel encoder;
    ClassicalChannel decoder;
};

/// Convex combination of deterministic encode/decode strategies.
struct SimulationProtocol {
    std::vector<ProtocolTerm> terms;

    /// Sum of weight * decoder * encoder.
    ClassicalChannel reconstruct() const;
    /// Message count used by the encoders (0 when empty).
    int messages() const;
};

/// All deterministic vertices of C_d in lexicographic assignment order.
std::vector<DeterministicVertex> enumerate_vertices(const PolytopeSpec& spec);

/// Closed-form vertex count via Stirling numbers of the second kind.
mpz_class vertex_count(const PolytopeSpec& spec);

mpz_class stirling2(int n, int k);
mpz_class binomial(int n, int k);

/// post * mid * pre, validated. Throws DimensionMismatch.
ClassicalChannel compose_processing(const ClassicalChannel& post, const ClassicalChannel& mid,
                                    const ClassicalChannel& pre);

/// Splits a vertex into a deterministic encoder onto d messages and a decoder.
/// Throws TooManyOutputsUsed when the vertex needs more than d outputs.
std::pair<ClassicalChannel, ClassicalChannel> vertex_factorize(const DeterministicVertex& v, int d);

}  // namespace sigpoly
