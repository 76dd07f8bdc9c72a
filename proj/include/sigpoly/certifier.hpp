#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sigpoly/channel.hpp"
#include "sigpoly/facets.hpp"

namespace sigpoly {

/// Sum over outputs of the largest transition probability in that row.
Rational ml_sum(const ClassicalChannel& p);

/// Best ambiguous guessing score with k guessing rows, by the delta sort.
/// Throws ParameterOutOfRange unless 0 <= k <= n' and 1 <= d <= min{n, n'}.
Rational ambiguous_score_max(const ClassicalChannel& p, int k, int d);

/// Row order realising ambiguous_score_max: stable sort by a_i - b_i, non-increasing.
std::vector<int> ambiguous_row_order(const ClassicalChannel& p, int d);

/// Membership in C_d by a closed-form characterisation. Throws RegimeNotCovered outside
/// d >= min{n,n'}, d = 1, d = n'-1, d = n-1 <= n'-1, and (n' = 4, d = 2).
bool membership_complete(const ClassicalChannel& p, int d);

/// Whether membership_complete has a characterisation for (n, n', d).
bool closed_form_applies(int n, int n_prime, int d);

/// A violated inequality from the closed-form tests, or nothing if p passes them.
std::optional<BellInequality> closed_form_violation(const ClassicalChannel& p, int d);

/// The eight generator classes of C_2^{6->4}, as printed (4 x 6, bound included).
std::vector<BellInequality> four_output_generators();

/// Bell inequality orbit used for (n' = 4, d = 2): every placement of each generator's
/// nonzero columns into max(n, 6) inputs, under every row permutation, deduplicated.
const std::vector<BellInequality>& four_output_orbit(int n);

/// First orbit inequality violated by a four-output channel, folded back to n columns.
/// Decides membership in C_2 for any n. Throws DimensionMismatch unless n' = 4.
std::optional<BellInequality> four_output_violation(const ClassicalChannel& p);

struct MethodStep {
    int d = 0;
    /// "member", "non-member" or "unknown".
    std::string verdict;
    std::string method;
};

struct CertificationResult {
    int lower = 1;
    int upper = 1;
    bool exact = false;
    std::optional<BellInequality> violated;
    std::optional<SimulationProtocol> protocol;
    std::vector<MethodStep> trace;
};

struct CertifyOptions {
    /// Vertex-count cap for LP sweeps; larger polytopes are reported as unknown.
    std::size_t max_vertices = 250000;
    /// Keep sweeping after the first member and fail on a non-monotone verdict.
    bool check_monotone = false;
};

/// Verdict at a single message count; member is empty when no method applies within the cap.
struct DimensionVerdict {
    std::optional<bool> member;
    std::optional<BellInequality> certificate;
    std::optional<SimulationProtocol> witness;
    MethodStep step;
};

/// Throws ParameterOutOfRange unless 1 <= d <= min{n, n'}.
DimensionVerdict check_dimension(const ClassicalChannel& p, int d, const CertifyOptions& options = {});

/// Sweeps d upward; lower is one past the largest refuted d, upper the first certified d.
CertificationResult certify_signaling_dimension(const ClassicalChannel& p, const CertifyOptions& options = {});

/// Protocol for d = min{n, n'}: the channel itself as encoder or decoder.
SimulationProtocol trivial_protocol(const ClassicalChannel& p);

enum class ReplacerKind { Erasure, Depolarizing, General };

struct ReplacerSpec {
    Rational mu;
    int d = 2;
    ReplacerKind kind = ReplacerKind::Depolarizing;
    /// Replacement state for the general kind, d x d row-major.
    std::vector<std::complex<double>> sigma;

    /// Throws ParameterOutOfRange unless 0 <= mu <= 1 and d >= 2.
    void validate() const;
};

/// (ceil(mu d + 1 - mu), min{d, ceil(mu d + 1)}).
std::pair<int, int> replacer_bounds(const ReplacerSpec& spec);

/// min{d, ceil(mu d + 1)}.
int erasure_dimension(const Rational& mu, int d);

/// Lower root of r^2 - r(mu d + n') + mu d n' + (1 - mu)(n' - 1): exact, or a rational bracket.
struct RootValue {
    bool exact = false;
    /// The root when exact; otherwise lower < root < upper.
    Rational lower;
    Rational upper;
    /// Ceiling of the root, decided from the bracket.
    mpz_class ceiling;
};

/// Throws NegativeDiscriminant, ParameterOutOfRange (n' < d + 1).
RootValue erasure_ambiguous_root(const Rational& mu, int d, int n_prime);

/// Lower bound on the erasure signaling dimension from the ambiguous games at n', with the
/// edge case kappa = d when ceil(r-) exceeds n' - 2 and mu > (n' - 3)/(n' - 1).
int erasure_root_bound(const Rational& mu, int d, int n_prime);

}  // namespace sigpoly
