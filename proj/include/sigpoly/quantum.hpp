#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sigpoly/certifier.hpp"
#include "sigpoly/channel.hpp"

namespace sigpoly {

using CMatrix = Eigen::MatrixXcd;

struct QuantumTolerances {
    double hermitian = 1e-12;
    double trace = 1e-12;
    double eigenvalue = -1e-10;
    double identity = 1e-12;
};

/// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
public:
    /// Throws ParameterOutOfRange when the matrix is not a state within tolerance.
    explicit DensityMatrix(CMatrix rho, const QuantumTolerances& tol = {});
    static DensityMatrix basis(int dim, int index);

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const CMatrix& matrix() const noexcept { return rho_; }

private:
    CMatrix rho_;
};

/// Positive operators summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<CMatrix> elements, const QuantumTolerances& tol = {});
    static Povm basis(int dim);

    int dim() const noexcept { return elements_.empty() ? 0 : static_cast<int>(elements_.front().rows()); }
    int outcomes() const noexcept { return static_cast<int>(elements_.size()); }
    const std::vector<CMatrix>& elements() const noexcept { return elements_; }

private:
    std::vector<CMatrix> elements_;
};

/// Trace-preserving map in Kraus form, K_i of shape out_dim x in_dim.
class QuantumChannel {
public:
    explicit QuantumChannel(std::vector<CMatrix> kraus, const QuantumTolerances& tol = {});
    static QuantumChannel identity(int dim);

    int in_dim() const noexcept { return static_cast<int>(kraus_.front().cols()); }
    int out_dim() const noexcept { return static_cast<int>(kraus_.front().rows()); }
    const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }

    CMatrix apply(const CMatrix& rho) const;
    /// Heisenberg-picture action on an output observable.
    CMatrix adjoint(const CMatrix& obs) const;

private:
    std::vector<CMatrix> kraus_;
};

struct QuantumSetup {
    std::vector<DensityMatrix> states;
    Povm povm;
    QuantumChannel channel;
};

struct RationalizeOptions {
    double tolerance = 1e-9;
    std::int64_t max_denominator = 1000000;
};

/// P(y|x) = Tr[Pi_y N(rho_x)], snapped to rationals and renormalised exactly.
/// Throws DimensionMismatch, RationalizationFailed.
ClassicalChannel induced_channel(const QuantumSetup& setup, const RationalizeOptions& options = {});

/// Raw floating-point transition probabilities, n' x n.
Eigen::MatrixXd induced_probabilities(const QuantumSetup& setup);

/// mu X + (1 - mu) Tr[X] sigma. Erasure embeds into d + 1 dimensions. Throws BadSigma.
QuantumChannel make_replacer(const ReplacerSpec& spec);

enum class SetupKind { Erasure, Depolarizing, Identity };

/// Computational basis states through the chosen channel, measured in the computational basis
/// (plus the flag projector for erasure). Throws ParameterOutOfRange for d < 2.
QuantumSetup standard_setup(SetupKind kind, const Rational& mu, int d);

}  // namespace sigpoly
