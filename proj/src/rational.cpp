#include "sigpoly/rational.hpp"

#include <cmath>
#include <ostream>

#include "sigpoly/error.hpp"

namespace sigpoly {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonStochastic: return "NonStochastic";
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooManyOutputsUsed: return "TooManyOutputsUsed";
        case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorCode::NotSurjective: return "NotSurjective";
        case ErrorCode::BadSplit: return "BadSplit";
        case ErrorCode::NotAFacet: return "NotAFacet";
        case ErrorCode::NotARidge: return "NotARidge";
        case ErrorCode::SeedNotFacet: return "SeedNotFacet";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::RegimeNotCovered: return "RegimeNotCovered";
        case ErrorCode::ResourceBudget: return "ResourceBudget";
        case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
        case ErrorCode::RationalizationFailed: return "RationalizationFailed";
        case ErrorCode::BadSigma: return "BadSigma";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
    if (text.empty()) return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    mpz_class num;
    mpz_class den = 1;
    bool ok = false;
    if (slash == std::string_view::npos) {
        ok = parse_integer(text, num);
    } else {
        ok = parse_integer(text.substr(0, slash), num) && parse_integer(text.substr(slash + 1), den);
    }
    if (!ok) throw Error(ErrorCode::ParseError, "malformed rational: '" + std::string(text) + "'");
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::ParseError, "non-finite value");
    return Rational(mpq_class(value));
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational best_rational_approximation(double value, std::int64_t max_denominator) {
    if (!std::isfinite(value)) throw Error(ErrorCode::RationalizationFailed, "non-finite value");
    const Rational target = Rational::from_double(value);
    // Continued fraction expansion on the exact binary value.
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpz_class num = target.numerator();
    mpz_class den = target.denominator();
    const mpz_class qmax = max_denominator;
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        const mpz_class q2 = q0 + a * q1;
        if (q2 > qmax) {
            // Largest admissible semiconvergent, compared with the last convergent.
            const mpz_class k = (qmax - q0) / q1;
            const Rational semi(p0 + k * p1, q0 + k * q1);
            const Rational conv(p1, q1);
            return abs(semi - target) < abs(conv - target) ? semi : conv;
        }
        const mpz_class p2 = p0 + a * p1;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const mpz_class rem = num - a * den;
        if (rem == 0) return Rational(p1, q1);
        num = den;
        den = rem;
    }
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorCode::DimensionMismatch, "matrix data size mismatch");
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
    const std::size_t cols = rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<std::vector<Rational>> RationalMatrix::to_rows() const {
    std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
}

RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
    RationalMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            if (lhs(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lhs(i, k) * rhs(k, j);
        }
    return out;
}

}  // namespace sigpoly
