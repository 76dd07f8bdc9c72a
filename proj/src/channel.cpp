#include "sigpoly/channel.hpp"

#include <algorithm>
#include <string>

#include "sigpoly/error.hpp"

namespace sigpoly {

void PolytopeSpec::validate() const {
    if (n < 1 || n_prime < 1 || d < 1 || d > std::min(n, n_prime)) {
        throw Error(ErrorCode::ParameterOutOfRange,
                    "invalid polytope spec (n=" + std::to_string(n) + ", n'=" + std::to_string(n_prime) +
                        ", d=" + std::to_string(d) + ")");
    }
}

int PolytopeSpec::dimension() const { return d == 1 ? n_prime - 1 : n * (n_prime - 1); }

ClassicalChannel new_channel(RationalMatrix entries) {
    if (entries.empty()) throw Error(ErrorCode::DimensionMismatch, "empty channel matrix");
    for (std::size_t x = 0; x < entries.cols(); ++x) {
        Rational sum;
        for (std::size_t y = 0; y < entries.rows(); ++y) {
            if (entries(y, x).sign() < 0) {
                throw Error(ErrorCode::NegativeEntry, "negative entry at (" + std::to_string(y) + ", " +
                                                          std::to_string(x) + ")");
            }
            sum += entries(y, x);
        }
        if (sum != Rational(1)) {
            throw Error(ErrorCode::NonStochastic,
                        "column " + std::to_string(x) + " sums to " + sum.to_string());
        }
    }
    return ClassicalChannel(std::move(entries));
}

ClassicalChannel new_channel(const std::vector<std::vector<Rational>>& rows) {
    return new_channel(RationalMatrix::from_rows(rows));
}

ClassicalChannel uniform_channel(int n, int n_prime) {
    RationalMatrix m(n_prime, n);
    for (int y = 0; y < n_prime; ++y)
        for (int x = 0; x < n; ++x) m(y, x) = Rational(1, n_prime);
    return new_channel(std::move(m));
}

ClassicalChannel identity_channel(int n) { return new_channel(RationalMatrix::identity(n)); }

DeterministicVertex::DeterministicVertex(std::vector<int> assignment, int n_prime)
    : assignment_(std::move(assignment)), n_prime_(n_prime) {
    for (int y : assignment_) {
        if (y < 0 || y >= n_prime_) throw Error(ErrorCode::DimensionMismatch, "assignment output out of range");
    }
}

std::vector<int> DeterministicVertex::used_outputs() const {
    std::vector<int> out = assignment_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ClassicalChannel DeterministicVertex::to_channel() const {
    RationalMatrix m(n_prime_, assignment_.size());
    for (std::size_t x = 0; x < assignment_.size(); ++x) m(assignment_[x], x) = 1;
    return new_channel(std::move(m));
}

std::vector<int> DeterministicVertex::flatten() const {
    std::vector<int> out(static_cast<std::size_t>(n_prime_) * assignment_.size(), 0);
    for (std::size_t x = 0; x < assignment_.size(); ++x) out[assignment_[x] * assignment_.size() + x] = 1;
    return out;
}

ClassicalChannel SimulationProtocol::reconstruct() const {
    if (terms.empty()) throw Error(ErrorCode::DimensionMismatch, "empty protocol");
    const auto& first = terms.front();
    RationalMatrix acc(first.decoder.n_prime(), first.encoder.n());
    for (const auto& t : terms) {
        const RationalMatrix prod = t.decoder.matrix() * t.encoder.matrix();
        if (prod.rows() != acc.rows() || prod.cols() != acc.cols()) {
            throw Error(ErrorCode::DimensionMismatch, "protocol terms disagree in shape");
        }
        for (std::size_t r = 0; r < acc.rows(); ++r)
            for (std::size_t c = 0; c < acc.cols(); ++c) acc(r, c) += t.weight * prod(r, c);
    }
    return new_channel(std::move(acc));
}

int SimulationProtocol::messages() const { return terms.empty() ? 0 : terms.front().encoder.n_prime(); }

std::vector<DeterministicVertex> enumerate_vertices(const PolytopeSpec& spec) {
    spec.validate();
    std::vector<DeterministicVertex> out;
    std::vector<int> assignment(spec.n, 0);
    std::vector<int> used(spec.n_prime, 0);
    used[0] = spec.n;
    int distinct = 1;
    while (true) {
        if (distinct <= spec.d) out.emplace_back(assignment, spec.n_prime);
        // Odometer increment, last input fastest.
        int pos = spec.n - 1;
        while (pos >= 0) {
            const int old = assignment[pos];
            if (--used[old] == 0) --distinct;
            if (old + 1 < spec.n_prime) {
                assignment[pos] = old + 1;
                if (used[old + 1]++ == 0) ++distinct;
                break;
            }
            assignment[pos] = 0;
            if (used[0]++ == 0) ++distinct;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

mpz_class stirling2(int n, int k) {
    if (n < 0 || k < 0) return 0;
    std::vector<std::vector<mpz_class>> s(n + 1, std::vector<mpz_class>(k + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    return s[n][k];
}

mpz_class binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

mpz_class vertex_count(const PolytopeSpec& spec) {
    spec.validate();
    mpz_class total = 0;
    mpz_class fact = 1;
    for (int c = 1; c <= spec.d; ++c) {
        fact *= c;
        total += stirling2(spec.n, c) * binomial(spec.n_prime, c) * fact;
    }
    return total;
}

ClassicalChannel compose_processing(const ClassicalChannel& post, const ClassicalChannel& mid,
                                    const ClassicalChannel& pre) {
    if (pre.n_prime() != mid.n() || mid.n_prime() != post.n()) {
        throw Error(ErrorCode::DimensionMismatch, "processing maps do not chain");
    }
    return new_channel(post.matrix() * (mid.matrix() * pre.matrix()));
}

std::pair<ClassicalChannel, ClassicalChannel> vertex_factorize(const DeterministicVertex& v, int d) {
    const std::vector<int> used = v.used_outputs();
    if (d < 1 || static_cast<int>(used.size()) > d) {
        throw Error(ErrorCode::TooManyOutputsUsed,
                    "vertex uses " + std::to_string(used.size()) + " outputs but d=" + std::to_string(d));
    }
    RationalMatrix encoder(d, v.n());
    for (int x = 0; x < v.n(); ++x) {
        const auto it = std::lower_bound(used.begin(), used.end(), v.output(x));
        encoder(it - used.begin(), x) = 1;
    }
    RationalMatrix decoder(v.n_prime(), d);
    for (int m = 0; m < d; ++m) {
        // Spare messages are never sent; route them to the first used output.
        const int y = m < static_cast<int>(used.size()) ? used[m] : used.front();
        decoder(y, m) = 1;
    }
    return {new_channel(std::move(encoder)), new_channel(std::move(decoder))};
}

}  // namespace sigpoly
