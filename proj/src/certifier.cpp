#include "sigpoly/certifier.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sigpoly/error.hpp"
#include "sigpoly/polyhedral.hpp"

namespace sigpoly {

Rational ml_sum(const ClassicalChannel& p) {
    Rational total;
    for (int y = 0; y < p.n_prime(); ++y) {
        Rational best = p.entry(y, 0);
        for (int x = 1; x < p.n(); ++x) best = std::max(best, p.entry(y, x));
        total += best;
    }
    return total;
}

namespace {

void check_d(const ClassicalChannel& p, int d) {
    if (d < 1 || d > std::min(p.n(), p.n_prime())) {
        throw Error(ErrorCode::ParameterOutOfRange, "d must satisfy 1 <= d <= min{n, n'}");
    }
}

struct RowStats {
    std::vector<Rational> a;
    std::vector<Rational> b;
    std::vector<int> argmax;
};

RowStats row_stats(const ClassicalChannel& p, int d) {
    RowStats s;
    const Rational weight(1, p.n() - d + 1);
    for (int y = 0; y < p.n_prime(); ++y) {
        Rational best = p.entry(y, 0);
        Rational sum;
        int arg = 0;
        for (int x = 0; x < p.n(); ++x) {
            sum += p.entry(y, x);
            if (p.entry(y, x) > best) {
                best = p.entry(y, x);
                arg = x;
            }
        }
        s.a.push_back(best);
        s.b.push_back(sum * weight);
        s.argmax.push_back(arg);
    }
    return s;
}

std::vector<int> sorted_rows(const RowStats& s) {
    std::vector<int> order(s.a.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return s.a[i] - s.b[i] > s.a[j] - s.b[j]; });
    return order;
}

Rational sorted_score(const RowStats& s, const std::vector<int>& order, int k) {
    Rational total;
    for (std::size_t i = 0; i < order.size(); ++i) total += static_cast<int>(i) < k ? s.a[order[i]] : s.b[order[i]];
    return total;
}

/// Ambiguous game with the k best rows guessing their argmax, in the channel's own row order.
BellInequality sorted_game(const ClassicalChannel& p, const RowStats& s, const std::vector<int>& order, int k, int d) {
    RationalMatrix g(p.n_prime(), p.n());
    const Rational amb(1, p.n() - d + 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int y = order[i];
        if (static_cast<int>(i) < k) {
            g(y, s.argmax[y]) = 1;
        } else {
            for (int x = 0; x < p.n(); ++x) g(y, x) = amb;
        }
    }
    return {std::move(g), Rational(d), "general-ambiguous"};
}

RationalMatrix scaled_channel(const ClassicalChannel& p, int columns, mpz_class& scale) {
    scale = 1;
    for (const auto& v : p.matrix().data()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.denominator().get_mpz_t());
    RationalMatrix out(p.n_prime(), columns);
    for (int y = 0; y < p.n_prime(); ++y)
        for (int x = 0; x < columns; ++x) out(y, x) = p.entry(y, std::min(x, p.n() - 1)) * Rational(scale);
    return out;
}

}  // namespace

std::optional<BellInequality> four_output_violation(const ClassicalChannel& p) {
    if (p.n_prime() != 4) throw Error(ErrorCode::DimensionMismatch, "the eight-class test needs four outputs");
    const int n = p.n();
    const auto& orbit = four_output_orbit(n);
    const int width = std::max(n, 6);
    mpz_class scale;
    const RationalMatrix scaled = scaled_channel(p, width, scale);
    std::vector<mpz_class> entries(4 * width);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < width; ++x) entries[y * width + x] = scaled(y, x).numerator();
    for (const auto& ineq : orbit) {
        mpz_class acc = 0;
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < width; ++x) {
                const Rational& c = ineq.g(y, x);
                if (!c.is_zero()) acc += c.numerator() * entries[y * width + x];
            }
        if (acc > ineq.gamma.numerator() * scale) {
            // Inputs beyond n duplicate the last column; fold their coefficients back.
            RationalMatrix g(4, n);
            for (int y = 0; y < 4; ++y)
                for (int x = 0; x < width; ++x) g(y, std::min(x, n - 1)) += ineq.g(y, x);
            return BellInequality(std::move(g), ineq.gamma, ineq.family);
        }
    }
    return std::nullopt;
}

Rational ambiguous_score_max(const ClassicalChannel& p, int k, int d) {
    check_d(p, d);
    if (k < 0 || k > p.n_prime()) throw Error(ErrorCode::ParameterOutOfRange, "k must satisfy 0 <= k <= n'");
    const RowStats s = row_stats(p, d);
    return sorted_score(s, sorted_rows(s), k);
}

std::vector<int> ambiguous_row_order(const ClassicalChannel& p, int d) {
    check_d(p, d);
    return sorted_rows(row_stats(p, d));
}

bool closed_form_applies(int n, int n_prime, int d) {
    return d >= std::min(n, n_prime) || d == 1 || d == n_prime - 1 || (d == n - 1 && n_prime >= n) ||
           (n_prime == 4 && d == 2);
}

std::optional<BellInequality> closed_form_violation(const ClassicalChannel& p, int d) {
    if (d < 1) throw Error(ErrorCode::ParameterOutOfRange, "d must be positive");
    const int n = p.n();
    const int n_prime = p.n_prime();
    if (d >= std::min(n, n_prime)) return std::nullopt;
    if (d == 1) {
        for (int x = 1; x < n; ++x)
            for (int y = 0; y < n_prime; ++y) {
                if (p.entry(y, x) == p.entry(y, 0)) continue;
                const int hi = p.entry(y, x) > p.entry(y, 0) ? x : 0;
                const int lo = hi == 0 ? x : 0;
                RationalMatrix g(n_prime, n);
                g(y, hi) = 1;
                g(y, lo) = -1;
                return normal_form(BellInequality(std::move(g), Rational(0), "no-signaling"));
            }
        return std::nullopt;
    }
    if (d == n_prime - 1) {
        const RowStats s = row_stats(p, d);
        const std::vector<int> order = sorted_rows(s);
        if (sorted_score(s, order, n_prime) <= Rational(d)) return std::nullopt;
        BellInequality ml = sorted_game(p, s, order, n_prime, d);
        ml.family = "maximum-likelihood";
        return ml;
    }
    if (d == n - 1 && n_prime >= n) {
        const RowStats s = row_stats(p, d);
        const std::vector<int> order = sorted_rows(s);
        for (int k = n; k <= n_prime; ++k) {
            if (sorted_score(s, order, k) > Rational(d)) return sorted_game(p, s, order, k, d);
        }
        return std::nullopt;
    }
    if (n_prime == 4 && d == 2) return four_output_violation(p);
    throw Error(ErrorCode::RegimeNotCovered, "no closed-form characterisation for n=" + std::to_string(n) +
                                                 ", n'=" + std::to_string(n_prime) + ", d=" + std::to_string(d));
}

bool membership_complete(const ClassicalChannel& p, int d) { return !closed_form_violation(p, d).has_value(); }

std::vector<BellInequality> four_output_generators() {
    auto make = [](std::vector<std::vector<int>> rows, int gamma, const char* family) {
        RationalMatrix g(4, 6);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 6; ++x) g(y, x) = rows[y][x];
        return BellInequality(std::move(g), Rational(gamma), family);
    };
    return {
        make({{1, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}, 2, "maximum-likelihood"),
        make({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}, 2, "maximum-likelihood"),
        make({{1, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}, 3, "anti-guessing"),
        make({{1, 1, 1, 0, 0, 0}, {1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1}}, 5, "k-guessing"),
        make({{2, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0}, {0, 0, 2, 0, 0, 0}, {1, 1, 1, 0, 0, 0}}, 4, "ambiguous"),
        make({{2, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {1, 1, 1, 0, 0, 0}}, 4, "ambiguous-rescaled"),
        make({{2, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0}, {0, 0, 1, 0, 1, 0}, {1, 1, 1, 0, 0, 0}}, 4, "ambiguous-rescaled"),
        make({{1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}, {1, 1, 1, 0, 0, 0}}, 4, "ambiguous-rescaled"),
    };
}

const std::vector<BellInequality>& four_output_orbit(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<BellInequality>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const int width = std::max(n, 6);
    auto it = cache.find(width);
    if (it != cache.end()) return it->second;

    std::vector<BellInequality> orbit;
    std::set<std::string> seen;
    for (const auto& gen : four_output_generators()) {
        std::vector<int> nonzero;
        for (int x = 0; x < 6; ++x) {
            for (int y = 0; y < 4; ++y)
                if (!gen.g(y, x).is_zero()) {
                    nonzero.push_back(x);
                    break;
                }
        }
        const int k = static_cast<int>(nonzero.size());
        // Ordered injections of the nonzero columns: choose a k-subset, then permute it.
        std::vector<bool> pick(width, false);
        std::fill(pick.begin(), pick.begin() + k, true);
        do {
            std::vector<int> targets;
            for (int x = 0; x < width; ++x)
                if (pick[x]) targets.push_back(x);
            do {
                std::vector<int> rows{0, 1, 2, 3};
                do {
                    RationalMatrix g(4, width);
                    std::string key;
                    for (int y = 0; y < 4; ++y)
                        for (int j = 0; j < k; ++j) g(y, targets[j]) = gen.g(rows[y], nonzero[j]);
                    for (const auto& v : g.data()) key += v.to_string() + ",";
                    key += gen.gamma.to_string();
                    if (seen.insert(key).second) orbit.emplace_back(std::move(g), gen.gamma, gen.family);
                } while (std::next_permutation(rows.begin(), rows.end()));
            } while (std::next_permutation(targets.begin(), targets.end()));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return cache.emplace(width, std::move(orbit)).first->second;
}

SimulationProtocol trivial_protocol(const ClassicalChannel& p) {
    SimulationProtocol protocol;
    if (p.n() <= p.n_prime()) {
        protocol.terms.push_back(ProtocolTerm{Rational(1), identity_channel(p.n()), p});
    } else {
        protocol.terms.push_back(ProtocolTerm{Rational(1), p, identity_channel(p.n_prime())});
    }
    return protocol;
}

DimensionVerdict check_dimension(const ClassicalChannel& p, int d, const CertifyOptions& options) {
    const int top = std::min(p.n(), p.n_prime());
    const PolytopeSpec spec{p.n(), p.n_prime(), d};
    spec.validate();
    DimensionVerdict out;
    out.step.d = d;
    const bool lp_allowed = vertex_count(spec) <= mpz_class(static_cast<unsigned long>(options.max_vertices));

    if (d == top) {
        out.member = true;
        out.witness = trivial_protocol(p);
        out.step.method = "trivial bound min{n,n'}";
    } else if (closed_form_applies(p.n(), p.n_prime(), d)) {
        out.certificate = closed_form_violation(p, d);
        out.member = !out.certificate.has_value();
        if (d == 1) out.step.method = "closed form: equal columns";
        else if (d == p.n_prime() - 1) out.step.method = "closed form: ML sum";
        else if (d == p.n() - 1) out.step.method = "closed form: ambiguous games";
        else out.step.method = "closed form: eight-class orbit";
        if (*out.member && lp_allowed) {
            out.witness = hull_membership(p, spec).witness;
            out.step.method += " + LP witness";
        }
    } else if (lp_allowed) {
        MembershipResult lp = hull_membership(p, spec);
        out.member = lp.member;
        out.certificate = std::move(lp.certificate);
        out.witness = std::move(lp.witness);
        out.step.method = "exact LP over vertices";
    } else {
        out.step.method = "vertex cap exceeded";
    }
    out.step.verdict = !out.member ? "unknown" : (*out.member ? "member" : "non-member");
    return out;
}

CertificationResult certify_signaling_dimension(const ClassicalChannel& p, const CertifyOptions& options) {
    CertificationResult result;
    const int top = std::min(p.n(), p.n_prime());
    int largest_non_member = 0;
    int smallest_member = 0;
    for (int d = 1; d <= top; ++d) {
        DimensionVerdict v = check_dimension(p, d, options);
        if (v.member && *v.member) {
            if (smallest_member == 0) {
                smallest_member = d;
                result.protocol = std::move(v.witness);
            }
        } else if (v.member) {
            if (smallest_member != 0) {
                throw std::logic_error("non-monotone membership verdicts at d=" + std::to_string(d));
            }
            largest_non_member = d;
            result.violated = std::move(v.certificate);
        }
        result.trace.push_back(v.step);
        if (smallest_member != 0 && !options.check_monotone) break;
    }
    result.lower = largest_non_member + 1;
    result.upper = smallest_member;
    result.exact = result.lower == result.upper;
    return result;
}

void ReplacerSpec::validate() const {
    if (mu.sign() < 0 || mu > Rational(1) || d < 2) {
        throw Error(ErrorCode::ParameterOutOfRange, "replacer spec requires 0 <= mu <= 1 and d >= 2");
    }
}

namespace {

int ceil_int(const Rational& r) { return static_cast<int>(r.ceil().get_si()); }

}  // namespace

std::pair<int, int> replacer_bounds(const ReplacerSpec& spec) {
    spec.validate();
    const Rational md = spec.mu * Rational(spec.d);
    const int lower = ceil_int(md + Rational(1) - spec.mu);
    const int upper = std::min(spec.d, ceil_int(md + Rational(1)));
    return {lower, upper};
}

int erasure_dimension(const Rational& mu, int d) {
    ReplacerSpec{mu, d, ReplacerKind::Erasure, {}}.validate();
    return std::min(d, ceil_int(mu * Rational(d) + Rational(1)));
}

RootValue erasure_ambiguous_root(const Rational& mu, int d, int n_prime) {
    ReplacerSpec{mu, d, ReplacerKind::Erasure, {}}.validate();
    if (n_prime < d + 1) throw Error(ErrorCode::ParameterOutOfRange, "the root needs n' >= d + 1");
    const Rational md = mu * Rational(d);
    const Rational np(n_prime);
    const Rational gap = np - md;
    const Rational disc = gap * gap - Rational(4) * (Rational(1) - mu) * Rational(n_prime - 1);
    if (disc.sign() < 0) throw Error(ErrorCode::NegativeDiscriminant, "discriminant is negative: " + disc.to_string());
    const Rational centre = (md + np) / Rational(2);

    RootValue out;
    const mpz_class num = disc.numerator();
    const mpz_class den = disc.denominator();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        out.exact = true;
        out.lower = centre - Rational(sn, sd) / Rational(2);
        out.upper = out.lower;
        out.ceiling = out.lower.ceil();
        return out;
    }
    // sqrt(num/den) = sqrt(num*den)/den; bracket it with an integer square root at growing precision.
    for (unsigned bits = 16;; bits *= 2) {
        mpz_class scaled = num * den;
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
        mpz_class denom = den;
        mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
        const Rational s_lo(root, denom);
        const Rational s_hi(root + 1, denom);
        out.lower = centre - s_hi / Rational(2);
        out.upper = centre - s_lo / Rational(2);
        // The root is irrational, so it is never an integer; the floors must agree
        // (or the upper end may sit exactly on the next integer).
        const mpz_class fl = out.lower.floor();
        const mpz_class fu = out.upper.floor();
        if (fl == fu || (out.upper.is_integer() && fu == fl + 1)) {
            out.ceiling = fl + 1;
            return out;
        }
        if (bits > 4096) throw Error(ErrorCode::NegativeDiscriminant, "root bracket failed to separate from integers");
    }
}

int erasure_root_bound(const Rational& mu, int d, int n_prime) {
    const RootValue root = erasure_ambiguous_root(mu, d, n_prime);
    const int r = static_cast<int>(root.ceiling.get_si());
    if (r <= n_prime - 2) return std::max(1, std::min(d, r));
    if (d == n_prime - 1) {
        // Edge case: the game at r = n' - 2 is violated iff 3 - n' + mu (n' - 1) > 0.
        const Rational edge = Rational(3 - n_prime) + mu * Rational(n_prime - 1);
        return edge.sign() > 0 ? d : std::max(1, n_prime - 2);
    }
    // Violation at r = n' - 2 rules out every r below n' - 1.
    return std::min(d, n_prime - 1);
}

}  // namespace sigpoly
