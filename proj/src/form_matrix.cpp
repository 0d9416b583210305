#include "twistor/form_matrix.hpp"

#include <algorithm>

namespace twistor {

CoefficientMatrix zero_matrix(Eigen::Index n) {
    CoefficientMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Coefficient{};
    return m;
}

CoefficientMatrix scaled_identity(Eigen::Index n, const Coefficient& c) {
    CoefficientMatrix m = zero_matrix(n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

bool is_zero(const CoefficientMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

CoefficientMatrix substitute_lambda(const CoefficientMatrix& m, const Rational& value) {
    return m.unaryExpr([&](const Coefficient& c) { return c.substitute_lambda(value); });
}

FormMatrix::FormMatrix(std::vector<std::string> labels, int degree)
    : labels_(std::move(labels)), degree_(degree), entries_(labels_.size() * labels_.size(), Form(degree)) {}

std::size_t FormMatrix::index_of_label(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::out_of_range("unknown frame label " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

FormMatrix FormMatrix::transpose() const {
    FormMatrix out(labels_, degree_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out(i, j) = (*this)(j, i);
    return out;
}

CoefficientMatrix FormMatrix::generator_coefficients(Generator g) const {
    if (degree_ != 1) throw DegreeMismatch("generator_coefficients expects a matrix of 1-forms");
    auto n = static_cast<Eigen::Index>(size());
    CoefficientMatrix out = zero_matrix(n);
    Mask m = static_cast<Mask>(1u << index_of(g));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).coefficient(m);
    return out;
}

bool FormMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Form& f) { return f.is_zero(); });
}

FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
    FormMatrix out = a;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] += b.entries_.at(i);
    return out;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
    FormMatrix out = a;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] -= b.entries_.at(i);
    return out;
}

bool operator==(const FormMatrix& a, const FormMatrix& b) {
    return a.size() == b.size() && a.entries_ == b.entries_;
}

FormMatrix wedge(const FormMatrix& a, const FormMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("form matrix size mismatch");
    FormMatrix out(a.labels(), a.degree() + b.degree());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            Form sum(a.degree() + b.degree());
            for (std::size_t k = 0; k < a.size(); ++k) sum += wedge(a(i, k), b(k, j));
            out(i, j) = std::move(sum);
        }
    return out;
}

FormMatrix exterior_derivative(const FormMatrix& a, const DerivationTable& table) {
    FormMatrix out(a.labels(), a.degree() + 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = exterior_derivative(a(i, j), table);
    return out;
}

FormMatrix curvature_of(const FormMatrix& connection, const DerivationTable& table) {
    return exterior_derivative(connection, table) + wedge(connection, connection);
}

}  // namespace twistor
