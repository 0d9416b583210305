#include "twistor/coefficient.hpp"

#include <cmath>
#include <sstream>

namespace twistor {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    Rational n = re * re + im * im;
    if (sgn(n) == 0) throw NotInvertible("inverse of zero Gaussian rational");
    return {Rational(re / n), Rational(-im / n)};
}

std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    if (sgn(im) == 0) return rational_str(re);
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = rational_str(im) + "*i";
    if (sgn(re) == 0) return imag;
    std::string out = rational_str(re);
    if (imag.front() == '-')
        out += imag;
    else
        out += "+" + imag;
    return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << c.str(); }

int weyl_variable(int j, int k) {
    if (j > k) std::swap(j, k);
    if (j == 1 && k == 1) return 1;
    if (j == 1 && k == 2) return 2;
    if (j == 1 && k == 3) return 3;
    if (j == 2 && k == 2) return 4;
    if (j == 2 && k == 3) return 5;
    throw std::out_of_range("no independent Weyl variable for w" + std::to_string(j) + std::to_string(k));
}

Coefficient::Coefficient(const GaussianRational& v) {
    if (!v.is_zero()) terms_.emplace(Exponent{}, v);
}

Coefficient Coefficient::monomial(const Exponent& e, const GaussianRational& c) {
    for (int v = 1; v < kNumVariables; ++v)
        if (e[v] < 0) throw std::invalid_argument("negative exponent on a Weyl symbol");
    Coefficient out;
    if (!c.is_zero()) out.terms_.emplace(e, c);
    return out;
}

Coefficient Coefficient::lambda(int k) {
    Exponent e{};
    e[kLambdaVar] = k;
    return monomial(e);
}

Coefficient Coefficient::weyl(int j, int k) {
    if (j < 1 || j > 3 || k < 1 || k > 3) throw std::out_of_range("Weyl index out of range");
    if (j == 3 && k == 3) return -(weyl(1, 1) + weyl(2, 2));
    Exponent e{};
    e[weyl_variable(j, k)] = 1;
    return monomial(e);
}

void Coefficient::add_term(const Exponent& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Coefficient::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

std::optional<GaussianRational> Coefficient::constant_value() const {
    if (terms_.empty()) return GaussianRational{};
    if (!is_constant()) return std::nullopt;
    return terms_.begin()->second;
}

bool Coefficient::has_weyl_terms() const {
    for (const auto& [e, c] : terms_)
        for (int v = 1; v < kNumVariables; ++v)
            if (e[v] != 0) return true;
    return false;
}

bool Coefficient::is_real() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

std::optional<int> Coefficient::max_lambda_degree() const {
    std::optional<int> out;
    for (const auto& [e, c] : terms_)
        if (!out || e[kLambdaVar] > *out) out = e[kLambdaVar];
    return out;
}

std::optional<int> Coefficient::min_lambda_degree() const {
    std::optional<int> out;
    for (const auto& [e, c] : terms_)
        if (!out || e[kLambdaVar] < *out) out = e[kLambdaVar];
    return out;
}

Coefficient Coefficient::conj() const {
    Coefficient out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
    return out;
}

Coefficient Coefficient::inverse() const {
    if (terms_.size() != 1) throw NotInvertible("only single-term coefficients are invertible: " + str());
    const auto& [e, c] = *terms_.begin();
    for (int v = 1; v < kNumVariables; ++v)
        if (e[v] != 0) throw NotInvertible("Weyl monomials are not invertible: " + str());
    Exponent inv{};
    inv[kLambdaVar] = -e[kLambdaVar];
    return monomial(inv, c.inverse());
}

namespace {

Rational rational_pow(const Rational& base, int k) {
    Rational out(1);
    Rational b = k >= 0 ? base : Rational(1 / base);
    for (int i = 0, n = std::abs(k); i < n; ++i) out *= b;
    out.canonicalize();
    return out;
}

}  // namespace

Coefficient Coefficient::substitute_lambda(const Rational& value) const {
    if (sgn(value) == 0) throw ZeroSubstitution("cannot substitute l = 0 into a Laurent polynomial");
    Coefficient out;
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[kLambdaVar] = 0;
        out.add_term(f, c * GaussianRational(rational_pow(value, e[kLambdaVar])));
    }
    return out;
}

Coefficient Coefficient::substitute_lambda_squared(const Rational& mu) const {
    if (sgn(mu) == 0) throw ZeroSubstitution("cannot substitute l^2 = 0 into a Laurent polynomial");
    Coefficient out;
    for (const auto& [e, c] : terms_) {
        if (e[kLambdaVar] % 2 != 0)
            throw std::invalid_argument("odd power of l in substitute_lambda_squared: " + str());
        Exponent f = e;
        f[kLambdaVar] = 0;
        out.add_term(f, c * GaussianRational(rational_pow(mu, e[kLambdaVar] / 2)));
    }
    return out;
}

Coefficient Coefficient::drop_weyl() const {
    Coefficient out;
    for (const auto& [e, c] : terms_) {
        bool weyl = false;
        for (int v = 1; v < kNumVariables; ++v) weyl = weyl || e[v] != 0;
        if (!weyl) out.add_term(e, c);
    }
    return out;
}

Coefficient Coefficient::diff_weyl(int v) const {
    if (v < 1 || v >= kNumVariables) throw std::out_of_range("Weyl variable index out of range");
    Coefficient out;
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponent f = e;
        f[v] -= 1;
        out.add_term(f, c * GaussianRational(e[v]));
    }
    return out;
}

double Coefficient::evaluate_real(double x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        bool weyl = false;
        for (int v = 1; v < kNumVariables; ++v) weyl = weyl || e[v] != 0;
        if (weyl) continue;
        sum += c.re.get_d() * std::pow(x, e[kLambdaVar]);
    }
    return sum;
}

Coefficient Coefficient::operator-() const {
    Coefficient out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e;
            for (int v = 0; v < kNumVariables; ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    return out;
}

Coefficient& Coefficient::operator*=(const Coefficient& o) {
    *this = *this * o;
    return *this;
}

namespace {

constexpr std::array<const char*, kNumVariables> kVariableNames = {"l", "w11", "w12", "w13", "w22", "w23"};

std::string monomial_str(const Exponent& e) {
    std::string out;
    for (int v = 0; v < kNumVariables; ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += kVariableNames[v];
        if (e[v] != 1) out += "^" + std::to_string(e[v]);
    }
    return out;
}

}  // namespace

std::string Coefficient::str() const {
    if (terms_.empty()) return "0";
    // Highest l power first, then Weyl monomials in map order.
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono = monomial_str(e);
        std::string num;
        bool negative = false;
        if (c.is_real() || sgn(c.re) == 0) {
            GaussianRational a = c;
            if ((c.is_real() && sgn(c.re) < 0) || (!c.is_real() && sgn(c.im) < 0)) {
                negative = true;
                a = -c;
            }
            num = a.str();
        } else {
            num = "(" + c.str() + ")";
        }
        std::string term;
        if (mono.empty())
            term = num;
        else if (num == "1")
            term = mono;
        else
            term = num + "*" + mono;
        if (first)
            out += negative ? "-" + term : term;
        else
            out += negative ? " - " + term : " + " + term;
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Coefficient& c) { return os << c.str(); }

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num, den;
        if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("malformed rational literal: " + text);
        if (sgn(den) == 0) throw std::invalid_argument("zero denominator: " + text);
        Rational out = num / den;
        out.canonicalize();
        return out;
    }
    // Decimal with optional exponent, parsed exactly.
    std::string mantissa = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        try {
            std::size_t used = 0;
            exp10 = std::stol(text.substr(e + 1), &used);
            if (used != text.size() - e - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent: " + text);
        }
    }
    bool negative = false;
    std::size_t pos = 0;
    if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+')) {
        negative = mantissa[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < mantissa.size(); ++pos) {
        char ch = mantissa[pos];
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            digits += ch;
            if (seen_point) ++frac_digits;
        } else {
            throw std::invalid_argument("malformed decimal literal: " + text);
        }
    }
    if (digits.empty()) throw std::invalid_argument("malformed decimal literal: " + text);
    mpz_class num(digits, 10);
    long shift = exp10 - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
    Rational out = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

std::string rational_str(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str(10);
}

}  // namespace twistor
