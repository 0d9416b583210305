#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "twistor/coefficient.hpp"
#include "twistor/form.hpp"

namespace Eigen {

template <>
struct NumTraits<twistor::Coefficient> : GenericNumTraits<twistor::Coefficient> {
    using Real = twistor::Coefficient;
    using NonInteger = twistor::Coefficient;
    using Literal = twistor::Coefficient;
    using Nested = twistor::Coefficient;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 20,
        MulCost = 40
    };
};

}  // namespace Eigen

namespace twistor {

/// Square matrix of exact coefficients (frame components of tensors).
using CoefficientMatrix = Eigen::Matrix<Coefficient, Eigen::Dynamic, Eigen::Dynamic>;

CoefficientMatrix zero_matrix(Eigen::Index n);
CoefficientMatrix scaled_identity(Eigen::Index n, const Coefficient& c);
bool is_zero(const CoefficientMatrix& m);
CoefficientMatrix substitute_lambda(const CoefficientMatrix& m, const Rational& value);

/// Square matrix of forms, e.g. a connection (1-forms) or curvature (2-forms).
class FormMatrix {
public:
    FormMatrix(std::vector<std::string> labels, int degree);

    std::size_t size() const { return labels_.size(); }
    int degree() const { return degree_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t index_of_label(const std::string& label) const;

    Form& operator()(std::size_t r, std::size_t c) { return entries_.at(r * size() + c); }
    const Form& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * size() + c); }

    FormMatrix transpose() const;
    /// Coefficient matrix of a generator g in a 1-form matrix.
    CoefficientMatrix generator_coefficients(Generator g) const;
    /// Matrix with every entry passed through f.
    template <class F>
    FormMatrix map(F&& f) const {
        FormMatrix out(labels_, degree_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out.entries_[i] = f(entries_[i]);
            if (out.entries_[i].is_zero()) out.entries_[i] = Form(out.degree_);
        }
        if (!entries_.empty() && !out.entries_.front().is_zero()) out.degree_ = out.entries_.front().degree();
        return out;
    }
    bool is_zero() const;

    friend FormMatrix operator+(const FormMatrix& a, const FormMatrix& b);
    friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);
    friend bool operator==(const FormMatrix& a, const FormMatrix& b);

private:
    std::vector<std::string> labels_;
    int degree_;
    std::vector<Form> entries_;
};

/// (A ^ B)_ij = sum_k A_ik ^ B_kj
FormMatrix wedge(const FormMatrix& a, const FormMatrix& b);
/// Entrywise exterior derivative.
FormMatrix exterior_derivative(const FormMatrix& a, const DerivationTable& table);
/// Second structure equation: d(conn) + conn ^ conn.
FormMatrix curvature_of(const FormMatrix& connection, const DerivationTable& table);

}  // namespace twistor
