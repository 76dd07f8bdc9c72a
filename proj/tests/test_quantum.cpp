#include <random>

#include "doctest.h"
#include "support.hpp"

#include "sigpoly/certifier.hpp"
#include "sigpoly/error.hpp"
#include "sigpoly/quantum.hpp"

using namespace sigpoly;
using testing_support::chan;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::ParseError;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_cptp(const QuantumChannel& ch) {
    CMatrix sum = CMatrix::Zero(ch.in_dim(), ch.in_dim());
    for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
    CHECK(max_abs(sum - CMatrix::Identity(ch.in_dim(), ch.in_dim())) < 1e-12);
}

}  // namespace

TEST_CASE("state and measurement validation") {
    CHECK_NOTHROW(DensityMatrix::basis(3, 1));
    CMatrix bad = CMatrix::Identity(2, 2);
    CHECK(code_of([&] { DensityMatrix{bad}; }) == ErrorCode::ParameterOutOfRange);
    CMatrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK(code_of([&] { DensityMatrix{neg}; }) == ErrorCode::ParameterOutOfRange);
    CHECK(code_of([] { Povm({CMatrix::Identity(2, 2) * 0.5}); }) == ErrorCode::ParameterOutOfRange);
    CHECK_NOTHROW(Povm::basis(3));
}

TEST_CASE("replacer channels") {
    const CMatrix zero = DensityMatrix::basis(2, 0).matrix();

    const QuantumChannel dep = make_replacer({Rational(1, 2), 2, ReplacerKind::Depolarizing, {}});
    check_cptp(dep);
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.75;
    expect(1, 1) = 0.25;
    CHECK(max_abs(dep.apply(zero) - expect) < 1e-12);

    const QuantumChannel er0 = make_replacer({Rational(0), 2, ReplacerKind::Erasure, {}});
    check_cptp(er0);
    CMatrix flag = CMatrix::Zero(3, 3);
    flag(2, 2) = 1;
    for (int i = 0; i < 2; ++i) CHECK(max_abs(er0.apply(DensityMatrix::basis(2, i).matrix()) - flag) < 1e-12);

    std::vector<std::complex<double>> sigma{{0.5, 0}, {0, 0.5}, {0, -0.5}, {0.5, 0}};
    const QuantumChannel gen = make_replacer({Rational(1), 2, ReplacerKind::General, sigma});
    check_cptp(gen);
    CMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs(gen.apply(plus) - plus) < 1e-12);

    const QuantumChannel gen2 = make_replacer({Rational(1, 3), 2, ReplacerKind::General, sigma});
    check_cptp(gen2);

    CHECK(code_of([] { make_replacer({Rational(1, 2), 2, ReplacerKind::General, {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}); }) ==
          ErrorCode::BadSigma);
    CHECK(code_of([] { make_replacer({Rational(1, 2), 2, ReplacerKind::General, {{1, 0}}}); }) == ErrorCode::BadSigma);
}

TEST_CASE("adjoint is the dual of apply") {
    const QuantumChannel ch = make_replacer({Rational(2, 5), 3, ReplacerKind::Erasure, {}});
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    CMatrix a(3, 3), o(4, 4);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = {g(rng), g(rng)};
    for (int i = 0; i < 16; ++i) o(i / 4, i % 4) = {g(rng), g(rng)};
    const std::complex<double> lhs = (o * ch.apply(a)).trace();
    const std::complex<double> rhs = (ch.adjoint(o) * a).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("induced channels from standard setups") {
    const ClassicalChannel e = induced_channel(standard_setup(SetupKind::Erasure, Rational(1, 2), 3));
    CHECK(e == testing_support::erasure_half());
    CHECK(induced_channel(standard_setup(SetupKind::Identity, Rational(0), 3)) == identity_channel(3));
    CHECK(induced_channel(standard_setup(SetupKind::Depolarizing, Rational(1), 2)) == identity_channel(2));
    CHECK(induced_channel(standard_setup(SetupKind::Depolarizing, Rational(0), 3)) == uniform_channel(3, 3));
    CHECK(code_of([] { standard_setup(SetupKind::Erasure, Rational(1, 2), 1); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("erasure score identity") {
    // Diagonal outcomes contribute d mu; the flag row adds 1 - mu to the ML sum.
    for (int d = 2; d <= 4; ++d)
        for (int i = 0; i <= 10; ++i) {
            const Rational mu(i, 10);
            const ClassicalChannel p = induced_channel(standard_setup(SetupKind::Erasure, mu, d));
            CHECK(ml_sum(p) == mu * Rational(d) + (Rational(1) - mu));
            Rational diag;
            for (int x = 0; x < d; ++x) diag += p.entry(x, x);
            CHECK(diag == mu * Rational(d));
        }
}

TEST_CASE("rationalization") {
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = 1.0 / 3;
    rho(1, 1) = 2.0 / 3;
    QuantumSetup s{{DensityMatrix(rho)}, Povm::basis(2), QuantumChannel::identity(2)};
    const ClassicalChannel p = induced_channel(s);
    CHECK(p.entry(0, 0) == Rational(1, 3));
    CHECK(p.entry(1, 0) == Rational(2, 3));

    CMatrix odd = CMatrix::Zero(2, 2);
    odd(0, 0) = 0.1234567891234;
    odd(1, 1) = 1 - 0.1234567891234;
    QuantumSetup t{{DensityMatrix(odd)}, Povm::basis(2), QuantumChannel::identity(2)};
    CHECK(code_of([&] { induced_channel(t); }) == ErrorCode::RationalizationFailed);
    RationalizeOptions loose;
    loose.tolerance = 1e-6;
    const ClassicalChannel q = induced_channel(t, loose);
    CHECK(q.entry(0, 0) + q.entry(1, 0) == Rational(1));
}
