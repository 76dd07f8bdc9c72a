#include "sigpoly/quantum.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "sigpoly/error.hpp"

namespace sigpoly {

namespace {

bool hermitian(const CMatrix& m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double min_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) throw Error(code, what);
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix rho, const QuantumTolerances& tol) : rho_(std::move(rho)) {
    require(rho_.rows() > 0 && rho_.rows() == rho_.cols(), ErrorCode::DimensionMismatch, "state must be square");
    require(hermitian(rho_, tol.hermitian), ErrorCode::ParameterOutOfRange, "state is not Hermitian");
    require(std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) <= tol.trace, ErrorCode::ParameterOutOfRange,
            "state trace differs from 1");
    require(min_eigenvalue(rho_) >= tol.eigenvalue, ErrorCode::ParameterOutOfRange, "state is not positive");
}

DensityMatrix DensityMatrix::basis(int dim, int index) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

Povm::Povm(std::vector<CMatrix> elements, const QuantumTolerances& tol) : elements_(std::move(elements)) {
    require(!elements_.empty(), ErrorCode::DimensionMismatch, "POVM has no elements");
    const auto dim = elements_.front().rows();
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& e : elements_) {
        require(e.rows() == dim && e.cols() == dim, ErrorCode::DimensionMismatch, "POVM elements differ in shape");
        require(hermitian(e, tol.hermitian), ErrorCode::ParameterOutOfRange, "POVM element is not Hermitian");
        require(min_eigenvalue(e) >= tol.eigenvalue, ErrorCode::ParameterOutOfRange, "POVM element is not positive");
        sum += e;
    }
    require((sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol.identity, ErrorCode::ParameterOutOfRange,
            "POVM elements do not sum to the identity");
}

Povm Povm::basis(int dim) {
    std::vector<CMatrix> elements;
    for (int y = 0; y < dim; ++y) {
        CMatrix e = CMatrix::Zero(dim, dim);
        e(y, y) = 1.0;
        elements.push_back(std::move(e));
    }
    return Povm(std::move(elements));
}

QuantumChannel::QuantumChannel(std::vector<CMatrix> kraus, const QuantumTolerances& tol) : kraus_(std::move(kraus)) {
    require(!kraus_.empty(), ErrorCode::DimensionMismatch, "channel has no Kraus operators");
    const auto rows = kraus_.front().rows();
    const auto cols = kraus_.front().cols();
    CMatrix sum = CMatrix::Zero(cols, cols);
    for (const auto& k : kraus_) {
        require(k.rows() == rows && k.cols() == cols, ErrorCode::DimensionMismatch, "Kraus operators differ in shape");
        sum += k.adjoint() * k;
    }
    require((sum - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() <= tol.identity, ErrorCode::ParameterOutOfRange,
            "Kraus operators are not trace preserving");
}

QuantumChannel QuantumChannel::identity(int dim) { return QuantumChannel({CMatrix::Identity(dim, dim)}); }

CMatrix QuantumChannel::apply(const CMatrix& rho) const {
    require(rho.rows() == in_dim(), ErrorCode::DimensionMismatch, "state dimension differs from channel input");
    CMatrix out = CMatrix::Zero(out_dim(), out_dim());
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

CMatrix QuantumChannel::adjoint(const CMatrix& obs) const {
    require(obs.rows() == out_dim(), ErrorCode::DimensionMismatch, "observable dimension differs from channel output");
    CMatrix out = CMatrix::Zero(in_dim(), in_dim());
    for (const auto& k : kraus_) out += k.adjoint() * obs * k;
    return out;
}

Eigen::MatrixXd induced_probabilities(const QuantumSetup& setup) {
    require(setup.povm.dim() == setup.channel.out_dim(), ErrorCode::DimensionMismatch,
            "POVM dimension differs from channel output");
    const int n = static_cast<int>(setup.states.size());
    require(n > 0, ErrorCode::DimensionMismatch, "setup has no states");
    Eigen::MatrixXd p(setup.povm.outcomes(), n);
    for (int x = 0; x < n; ++x) {
        const CMatrix out = setup.channel.apply(setup.states[x].matrix());
        for (int y = 0; y < setup.povm.outcomes(); ++y) p(y, x) = (setup.povm.elements()[y] * out).trace().real();
    }
    return p;
}

ClassicalChannel induced_channel(const QuantumSetup& setup, const RationalizeOptions& options) {
    const Eigen::MatrixXd raw = induced_probabilities(setup);
    RationalMatrix m(raw.rows(), raw.cols());
    for (Eigen::Index x = 0; x < raw.cols(); ++x) {
        Rational sum;
        Eigen::Index largest = 0;
        for (Eigen::Index y = 0; y < raw.rows(); ++y) {
            const double v = raw(y, x);
            const Rational r = best_rational_approximation(v, options.max_denominator);
            if (std::abs(r.to_double() - v) > options.tolerance) {
                throw Error(ErrorCode::RationalizationFailed,
                            "no rational with denominator <= " + std::to_string(options.max_denominator) +
                                " within tolerance of " + std::to_string(v));
            }
            m(y, x) = r.sign() < 0 ? Rational(0) : r;
            sum += m(y, x);
            if (m(y, x) > m(largest, x)) largest = y;
        }
        const Rational residual = Rational(1) - sum;
        if (std::abs(residual.to_double()) > options.tolerance * static_cast<double>(raw.rows())) {
            throw Error(ErrorCode::RationalizationFailed, "column " + std::to_string(x) + " misses unit sum by " +
                                                              residual.to_string());
        }
        m(largest, x) += residual;
        if (m(largest, x).sign() < 0 || m(largest, x) > Rational(1)) {
            throw Error(ErrorCode::RationalizationFailed, "residual cannot be absorbed in column " + std::to_string(x));
        }
    }
    return new_channel(std::move(m));
}

QuantumChannel make_replacer(const ReplacerSpec& spec) {
    spec.validate();
    const int d = spec.d;
    const double mu = spec.mu.to_double();
    int out = d;
    CMatrix sigma;
    switch (spec.kind) {
        case ReplacerKind::Erasure:
            out = d + 1;
            sigma = CMatrix::Zero(out, out);
            sigma(d, d) = 1.0;
            break;
        case ReplacerKind::Depolarizing:
            sigma = CMatrix::Identity(d, d) / static_cast<double>(d);
            break;
        case ReplacerKind::General: {
            if (spec.sigma.size() != static_cast<std::size_t>(d) * d) {
                throw Error(ErrorCode::BadSigma, "sigma must be a d x d matrix");
            }
            sigma = CMatrix(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) sigma(r, c) = spec.sigma[r * d + c];
            try {
                DensityMatrix check(sigma);
            } catch (const Error& e) {
                throw Error(ErrorCode::BadSigma, std::string("sigma is not a density matrix: ") + e.what());
            }
            break;
        }
    }

    std::vector<CMatrix> kraus;
    CMatrix embed = CMatrix::Zero(out, d);
    embed.topLeftCorner(d, d) = CMatrix::Identity(d, d);
    if (mu > 0) kraus.push_back(std::sqrt(mu) * embed);
    if (mu < 1) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sigma);
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
            const double s = solver.eigenvalues()(k);
            if (s <= 1e-15) continue;
            const Eigen::VectorXcd vec = solver.eigenvectors().col(k);
            for (int i = 0; i < d; ++i) {
                CMatrix op = CMatrix::Zero(out, d);
                op.col(i) = std::sqrt((1 - mu) * s) * vec;
                kraus.push_back(std::move(op));
            }
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumSetup standard_setup(SetupKind kind, const Rational& mu, int d) {
    if (d < 2) throw Error(ErrorCode::ParameterOutOfRange, "standard setups need d >= 2");
    std::vector<DensityMatrix> states;
    for (int x = 0; x < d; ++x) states.push_back(DensityMatrix::basis(d, x));
    switch (kind) {
        case SetupKind::Identity:
            return QuantumSetup{std::move(states), Povm::basis(d), QuantumChannel::identity(d)};
        case SetupKind::Depolarizing:
            return QuantumSetup{std::move(states), Povm::basis(d),
                                make_replacer(ReplacerSpec{mu, d, ReplacerKind::Depolarizing, {}})};
        case SetupKind::Erasure:
            return QuantumSetup{std::move(states), Povm::basis(d + 1),
                                make_replacer(ReplacerSpec{mu, d, ReplacerKind::Erasure, {}})};
    }
    throw Error(ErrorCode::ParameterOutOfRange, "unknown setup kind");
}

}  // namespace sigpoly
