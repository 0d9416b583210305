#pragma once

// Exact coefficient ring for the exterior kernel:
//   Q(i)[l, l^-1, w11, w12, w13, w22, w23]
// where l is the partial scaling parameter and w_jk are the entries of a
// symmetric traceless 3x3 Weyl block (w33 = -(w11 + w22) is eliminated).

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "twistor/errors.hpp"

namespace twistor {

using Rational = mpq_class;

/// Exact element of Q(i).
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}
    GaussianRational(Rational r) : re(std::move(r)) { re.canonicalize(); }
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    GaussianRational inverse() const;

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::string str() const;
};

/// Number of ring variables: l followed by the five independent Weyl symbols.
inline constexpr int kNumVariables = 6;
inline constexpr int kLambdaVar = 0;

/// Exponent vector (l, w11, w12, w13, w22, w23). Only the l exponent may be negative.
using Exponent = std::array<int, kNumVariables>;

/// Weyl symbol indices are 1-based (j, k in 1..3). w33 is not a variable.
int weyl_variable(int j, int k);

class Coefficient {
public:
    using TermMap = std::map<Exponent, GaussianRational>;

    Coefficient() = default;
    Coefficient(long v) : Coefficient(GaussianRational(v)) {}
    Coefficient(const Rational& v) : Coefficient(GaussianRational(v)) {}
    Coefficient(const GaussianRational& v);

    static Coefficient monomial(const Exponent& e, const GaussianRational& c = 1);
    /// l^k
    static Coefficient lambda(int k = 1);
    /// w_jk for j,k in 1..3 with symmetry and w33 = -(w11 + w22).
    static Coefficient weyl(int j, int k);
    static Coefficient imaginary_unit() { return Coefficient(GaussianRational::i()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term value if is_constant().
    std::optional<GaussianRational> constant_value() const;
    bool has_weyl_terms() const;
    bool is_real() const;

    /// Highest / lowest exponent of l among the stored terms. Empty for zero.
    std::optional<int> max_lambda_degree() const;
    std::optional<int> min_lambda_degree() const;

    Coefficient conj() const;
    /// Multiplicative inverse; only defined for single-term coefficients.
    Coefficient inverse() const;

    /// l -> value. Throws ZeroSubstitution for value == 0.
    Coefficient substitute_lambda(const Rational& value) const;
    /// l^2 -> mu. Requires every l exponent to be even.
    Coefficient substitute_lambda_squared(const Rational& mu) const;
    /// Sets all Weyl symbols to zero.
    Coefficient drop_weyl() const;
    /// Formal partial derivative with respect to the Weyl variable index v (1..5).
    Coefficient diff_weyl(int v) const;

    /// Numeric evaluation of the real part at l = x (Weyl symbols set to zero).
    double evaluate_real(double x) const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient& operator*=(const Coefficient& o);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }

    /// Canonical text, e.g. "2*l^-1*w12", "(1+2*i)*l^2 - w11", "0".
    std::string str() const;
    /// Number of stored terms.
    std::size_t size() const { return terms_.size(); }

private:
    void add_term(const Exponent& e, const GaussianRational& c);

    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Coefficient& c);
std::ostream& operator<<(std::ostream& os, const GaussianRational& c);

/// Parses "p", "p/q" or a finite decimal such as "0.25" or "-1.5e-2" into an exact rational.
Rational parse_rational(const std::string& text);
/// Canonical "p/q" (or "p") rendering.
std::string rational_str(const Rational& r);

}  // namespace twistor
