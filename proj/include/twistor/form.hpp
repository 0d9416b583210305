#pragma once

// Exterior algebra over ten formal 1-form generators with Coefficient entries.
//
// A monomial g_{i1} ^ ... ^ g_{ik} with i1 < ... < ik is stored as a bitmask;
// the generator order below is the canonical sort order.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "twistor/coefficient.hpp"

namespace twistor {

enum class Generator : std::uint8_t { A1, A2, A3, G1, G2, G3, X0, X1, X2, X3 };

inline constexpr int kNumGenerators = 10;
inline constexpr std::array<Generator, kNumGenerators> kAllGenerators = {
    Generator::A1, Generator::A2, Generator::A3, Generator::G1, Generator::G2,
    Generator::G3, Generator::X0, Generator::X1, Generator::X2, Generator::X3};

constexpr int index_of(Generator g) { return static_cast<int>(g); }
const char* name_of(Generator g);

/// alpha_mu (mu = 1..3), Gamma_mu (mu = 1..3), X_A (A = 0..3).
Generator alpha(int mu);
Generator gamma(int mu);
Generator x_gen(int a);

using Mask = std::uint16_t;

class Form {
public:
    /// Strict-weak order on masks matching lexicographic order of the generator tuples.
    struct MaskLess {
        bool operator()(Mask a, Mask b) const;
    };
    using TermMap = std::map<Mask, Coefficient, MaskLess>;

    /// Zero form of the given degree.
    explicit Form(int degree = 0) : degree_(degree) {}

    static Form scalar(const Coefficient& c);
    static Form generator(Generator g, const Coefficient& c = 1);
    /// c * g1 ^ g2 ^ ... in the given (not necessarily sorted) order.
    static Form monomial(std::initializer_list<Generator> gens, const Coefficient& c = 1);

    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coefficient coefficient(Mask m) const;
    bool contains(Generator g) const;
    /// Drops every monomial containing one of the given generators.
    Form without(std::initializer_list<Generator> gens) const;
    /// Part of a degree >= 1 form containing g, written as g ^ rest; returns rest.
    Form factor_out(Generator g) const;

    Form operator-() const;
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Coefficient& c, const Form& f);
    friend Form operator*(const Form& f, const Coefficient& c) { return c * f; }
    friend bool operator==(const Form& a, const Form& b);

    /// Terms sorted lexicographically, e.g. "2*l^-1*w12 * A1^A3 + (w11 - w22) * X0^X1".
    std::string str() const;

    /// Applies f to every coefficient; zero results are dropped.
    template <class F>
    Form map_coefficients(F&& f) const {
        Form out(degree_);
        for (const auto& [m, c] : terms_) out.add_term(m, f(c));
        return out;
    }

    void add_term(Mask m, const Coefficient& c);

private:
    int degree_;
    TermMap terms_;
};

std::vector<Generator> generators_of(Mask m);
int popcount(Mask m);

Form wedge(const Form& a, const Form& b);
Form conjugate(const Form& a);
Form substitute_lambda(const Form& a, const Rational& value);

/// Exterior derivative rules: d of each generator as a 2-form. Coefficient
/// variables (l and the Weyl symbols) are d-constants.
class DerivationTable {
public:
    DerivationTable();
    const Form& operator[](Generator g) const { return rules_[index_of(g)]; }
    void set(Generator g, Form two_form);

private:
    std::array<Form, kNumGenerators> rules_;
};

Form exterior_derivative(const Form& a, const DerivationTable& table);

/// Components of a tangent vector in the basis dual to the generators.
using Vector = std::array<Coefficient, kNumGenerators>;

/// Contraction of a form with a vector in the first slot.
Form interior(const Form& a, const Vector& v);
/// Value of a 2-form on (u, v).
Coefficient evaluate(const Form& two_form, const Vector& u, const Vector& v);

/// An orthonormal coframe given as slot i <-> factor_i * generator_i. The dual
/// frame vector e_i satisfies generator_i(e_i) = 1 / factor_i.
class CoframeSpec {
public:
    struct Slot {
        std::string label;
        Generator generator;
        Coefficient factor;
    };

    CoframeSpec(std::vector<Slot> slots);

    /// {X0, X1, X2, X3}.
    static CoframeSpec base();
    /// {l*A1, l*A3, X0, X1, X2, X3} with slots v1, v2, h0..h3.
    static CoframeSpec twistor();

    std::size_t size() const { return slots_.size(); }
    const Slot& slot(std::size_t i) const { return slots_.at(i); }
    const Vector& frame_vector(std::size_t i) const { return vectors_.at(i); }
    bool is_coframe_generator(Generator g) const;
    /// Multiplies every factor by s (coframe of the metric s^2 g).
    CoframeSpec scaled(const Coefficient& s) const;

private:
    std::vector<Slot> slots_;
    std::vector<Vector> vectors_;
};

/// omega(e_p, e_q) for a 2-form that is basic for the coframe. Throws
/// NonBasicForm when a non-coframe generator survives.
Coefficient evaluate_pair(const Form& two_form, const CoframeSpec& frame, std::size_t p, std::size_t q);

}  // namespace twistor
