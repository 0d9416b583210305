#include "twistor/form.hpp"

#include <algorithm>
#include <bit>

namespace twistor {

namespace {

constexpr std::array<const char*, kNumGenerators> kGeneratorNames = {"A1", "A2", "A3", "G1", "G2",
                                                                      "G3", "X0", "X1", "X2", "X3"};

constexpr Mask bit(int i) { return static_cast<Mask>(1u << i); }

/// Sign of the permutation sorting a ^ b into canonical order; 0 when they share a generator.
int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int j = 0; j < kNumGenerators; ++j) {
        if (!(b & bit(j))) continue;
        Mask above = static_cast<Mask>(a & ~static_cast<Mask>(bit(j + 1) - 1));
        inversions += std::popcount(static_cast<unsigned>(above));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

const char* name_of(Generator g) { return kGeneratorNames[index_of(g)]; }

Generator alpha(int mu) {
    if (mu < 1 || mu > 3) throw std::out_of_range("alpha index must be 1..3");
    return static_cast<Generator>(index_of(Generator::A1) + mu - 1);
}

Generator gamma(int mu) {
    if (mu < 1 || mu > 3) throw std::out_of_range("Gamma index must be 1..3");
    return static_cast<Generator>(index_of(Generator::G1) + mu - 1);
}

Generator x_gen(int a) {
    if (a < 0 || a > 3) throw std::out_of_range("X index must be 0..3");
    return static_cast<Generator>(index_of(Generator::X0) + a);
}

int popcount(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

std::vector<Generator> generators_of(Mask m) {
    std::vector<Generator> out;
    for (int i = 0; i < kNumGenerators; ++i)
        if (m & bit(i)) out.push_back(static_cast<Generator>(i));
    return out;
}

bool Form::MaskLess::operator()(Mask a, Mask b) const {
    while (a && b) {
        int la = std::countr_zero(static_cast<unsigned>(a));
        int lb = std::countr_zero(static_cast<unsigned>(b));
        if (la != lb) return la < lb;
        a = static_cast<Mask>(a & (a - 1));
        b = static_cast<Mask>(b & (b - 1));
    }
    return !a && b;
}

Form Form::scalar(const Coefficient& c) {
    Form out(0);
    out.add_term(0, c);
    return out;
}

Form Form::generator(Generator g, const Coefficient& c) {
    Form out(1);
    out.add_term(bit(index_of(g)), c);
    return out;
}

Form Form::monomial(std::initializer_list<Generator> gens, const Coefficient& c) {
    Form out = scalar(c);
    for (Generator g : gens) out = wedge(out, generator(g));
    if (out.is_zero()) return Form(static_cast<int>(gens.size()));
    return out;
}

void Form::add_term(Mask m, const Coefficient& c) {
    if (popcount(m) != degree_) throw DegreeMismatch("monomial degree does not match form degree");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Coefficient Form::coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coefficient{} : it->second;
}

bool Form::contains(Generator g) const {
    for (const auto& [m, c] : terms_)
        if (m & bit(index_of(g))) return true;
    return false;
}

Form Form::without(std::initializer_list<Generator> gens) const {
    Mask drop = 0;
    for (Generator g : gens) drop |= bit(index_of(g));
    Form out(degree_);
    for (const auto& [m, c] : terms_)
        if (!(m & drop)) out.terms_.emplace(m, c);
    return out;
}

Form Form::factor_out(Generator g) const {
    if (degree_ == 0) throw DegreeMismatch("cannot factor a generator out of a 0-form");
    Mask gb = bit(index_of(g));
    Form out(degree_ - 1);
    for (const auto& [m, c] : terms_) {
        if (!(m & gb)) continue;
        Mask rest = static_cast<Mask>(m & ~gb);
        // g ^ rest = sign * m
        out.add_term(rest, c * Coefficient(wedge_sign(gb, rest)));
    }
    return out;
}

Form Form::operator-() const {
    Form out(degree_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Form& Form::operator+=(const Form& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) degree_ = o.degree_;
    if (degree_ != o.degree_)
        throw DegreeMismatch("adding forms of degree " + std::to_string(degree_) + " and " +
                             std::to_string(o.degree_));
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form operator*(const Coefficient& c, const Form& f) {
    Form out(f.degree_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : f.terms_) out.add_term(m, c * v);
    return out;
}

bool operator==(const Form& a, const Form& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (Generator g : generators_of(m)) {
            if (!mono.empty()) mono += "^";
            mono += name_of(g);
        }
        std::string coeff = c.str();
        if (c.size() > 1) coeff = "(" + coeff + ")";
        std::string term;
        if (mono.empty())
            term = coeff;
        else if (coeff == "1")
            term = mono;
        else if (coeff == "-1")
            term = "-" + mono;
        else
            term = coeff + " * " + mono;
        if (!first) {
            if (term.front() == '-')
                term = "- " + term.substr(1);
            else
                term = "+ " + term;
            out += " ";
        }
        out += term;
        first = false;
    }
    return out;
}

Form wedge(const Form& a, const Form& b) {
    int degree = a.degree() + b.degree();
    if (degree > kNumGenerators) return Form(degree);
    Form out(degree);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            out.add_term(static_cast<Mask>(ma | mb), s > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

Form conjugate(const Form& a) {
    return a.map_coefficients([](const Coefficient& c) { return c.conj(); });
}

Form substitute_lambda(const Form& a, const Rational& value) {
    return a.map_coefficients([&](const Coefficient& c) { return c.substitute_lambda(value); });
}

DerivationTable::DerivationTable() {
    for (auto& r : rules_) r = Form(2);
}

void DerivationTable::set(Generator g, Form two_form) {
    if (!two_form.is_zero() && two_form.degree() != 2)
        throw DegreeMismatch("derivation rules must be 2-forms");
    rules_[index_of(g)] = std::move(two_form);
    if (rules_[index_of(g)].is_zero()) rules_[index_of(g)] = Form(2);
}

Form exterior_derivative(const Form& a, const DerivationTable& table) {
    Form out(a.degree() + 1);
    for (const auto& [m, c] : a.terms()) {
        std::vector<Generator> gens = generators_of(m);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            Mask before = 0, after = 0;
            for (std::size_t i = 0; i < j; ++i) before |= bit(index_of(gens[i]));
            for (std::size_t i = j + 1; i < gens.size(); ++i) after |= bit(index_of(gens[i]));
            Form left(static_cast<int>(j));
            left.add_term(before, j % 2 == 0 ? c : -c);
            Form right(static_cast<int>(gens.size() - j - 1));
            right.add_term(after, 1);
            out += wedge(wedge(left, table[gens[j]]), right);
        }
    }
    return out;
}

Form interior(const Form& a, const Vector& v) {
    if (a.degree() == 0) return Form(0);
    Form out(a.degree() - 1);
    for (const auto& [m, c] : a.terms()) {
        std::vector<Generator> gens = generators_of(m);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            const Coefficient& comp = v[index_of(gens[j])];
            if (comp.is_zero()) continue;
            Mask rest = static_cast<Mask>(m & ~bit(index_of(gens[j])));
            Coefficient term = c * comp;
            out.add_term(rest, j % 2 == 0 ? term : -term);
        }
    }
    return out;
}

Coefficient evaluate(const Form& two_form, const Vector& u, const Vector& v) {
    if (two_form.is_zero()) return {};
    if (two_form.degree() != 2) throw DegreeMismatch("evaluate expects a 2-form");
    return interior(interior(two_form, u), v).coefficient(0);
}

CoframeSpec::CoframeSpec(std::vector<Slot> slots) : slots_(std::move(slots)) {
    for (const Slot& s : slots_) {
        Vector v;
        v[index_of(s.generator)] = s.factor.inverse();
        vectors_.push_back(std::move(v));
    }
}

CoframeSpec CoframeSpec::base() {
    return CoframeSpec({{"h0", Generator::X0, 1},
                        {"h1", Generator::X1, 1},
                        {"h2", Generator::X2, 1},
                        {"h3", Generator::X3, 1}});
}

CoframeSpec CoframeSpec::twistor() {
    return CoframeSpec({{"v1", Generator::A1, Coefficient::lambda()},
                        {"v2", Generator::A3, Coefficient::lambda()},
                        {"h0", Generator::X0, 1},
                        {"h1", Generator::X1, 1},
                        {"h2", Generator::X2, 1},
                        {"h3", Generator::X3, 1}});
}

bool CoframeSpec::is_coframe_generator(Generator g) const {
    return std::any_of(slots_.begin(), slots_.end(), [g](const Slot& s) { return s.generator == g; });
}

CoframeSpec CoframeSpec::scaled(const Coefficient& s) const {
    std::vector<Slot> slots = slots_;
    for (Slot& slot : slots) slot.factor = slot.factor * s;
    return CoframeSpec(std::move(slots));
}

Coefficient evaluate_pair(const Form& two_form, const CoframeSpec& frame, std::size_t p, std::size_t q) {
    for (const auto& [m, c] : two_form.terms())
        for (Generator g : generators_of(m))
            if (!frame.is_coframe_generator(g))
                throw NonBasicForm(std::string("generator ") + name_of(g) +
                                   " is not part of the coframe; reduce to the normal gauge first");
    return evaluate(two_form, frame.frame_vector(p), frame.frame_vector(q));
}

}  // namespace twistor
