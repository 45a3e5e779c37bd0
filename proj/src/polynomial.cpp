#include "superlin/polynomial.hpp"

#include <algorithm>
#include <map>

#include "superlin/errors.hpp"

namespace superlin {

int Monomial::degree() const {
    int d = 0;
    for (auto e : exp)
        d += static_cast<int>(e);
    return d;
}

bool mono_before(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    // same total degree: earlier == lexicographically greater exponent vector
    return std::lexicographical_compare(b.exp.begin(), b.exp.end(), a.exp.begin(), a.exp.end());
}

Polynomial Polynomial::zero(int n_vars) {
    if (n_vars < 0)
        throw dimension_error("negative variable count");
    Polynomial p;
    p.n_vars_ = n_vars;
    return p;
}

Polynomial Polynomial::constant(int n_vars, const Rational& c) {
    Polynomial p = zero(n_vars);
    if (c != 0)
        p.terms_.push_back({Monomial(n_vars), c});
    return p;
}

Polynomial Polynomial::variable(int n_vars, int index) {
    if (index < 0 || index >= n_vars)
        throw dimension_error("variable index " + std::to_string(index) + " out of range for " +
                              std::to_string(n_vars) + " variables");
    Polynomial p = zero(n_vars);
    Monomial m(n_vars);
    m.exp[static_cast<std::size_t>(index)] = 1;
    p.terms_.push_back({std::move(m), Rational(1)});
    return p;
}

Polynomial Polynomial::from_terms(int n_vars, std::vector<Term> terms) {
    Polynomial p = zero(n_vars);
    std::map<Monomial, Rational, MonoBefore> acc;
    for (auto& t : terms) {
        if (static_cast<int>(t.mono.exp.size()) != n_vars)
            throw dimension_error("term exponent width does not match variable count");
        acc[t.mono] += t.coeff;
    }
    for (auto& [m, c] : acc)
        if (c != 0)
            p.terms_.push_back({m, c});
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

int Polynomial::degree() const {
    if (terms_.empty())
        return -1;
    return terms_.back().mono.degree(); // canonical order is degree-ascending
}

int Polynomial::degree_in(int var) const {
    if (var < 0 || var >= n_vars_)
        throw dimension_error("variable index out of range");
    int d = 0;
    for (const auto& t : terms_)
        d = std::max(d, static_cast<int>(t.mono.exp[static_cast<std::size_t>(var)]));
    return d;
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.front().mono.degree() == 0)
        return terms_.front().coeff;
    return Rational(0);
}

Rational Polynomial::coefficient_of(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m)
            return t.coeff;
    return Rational(0);
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty())
        throw validity_error("zero polynomial has no leading term");
    return terms_.back();
}

void Polynomial::require_same_space(const Polynomial& o) const {
    if (n_vars_ != o.n_vars_)
        throw dimension_error("polynomials over different variable counts (" +
                              std::to_string(n_vars_) + " vs " + std::to_string(o.n_vars_) + ")");
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_space(o);
    Polynomial r = zero(n_vars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && mono_before(terms_[i].mono, o.terms_[j].mono))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || mono_before(o.terms_[j].mono, terms_[i].mono)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0)
                r.terms_.push_back({terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_space(o);
    std::map<Monomial, Rational, MonoBefore> acc;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Monomial m(n_vars_);
            for (int v = 0; v < n_vars_; ++v)
                m.exp[static_cast<std::size_t>(v)] =
                    a.mono.exp[static_cast<std::size_t>(v)] + b.mono.exp[static_cast<std::size_t>(v)];
            acc[std::move(m)] += a.coeff * b.coeff;
        }
    }
    Polynomial r = zero(n_vars_);
    for (auto& [m, c] : acc)
        if (c != 0)
            r.terms_.push_back({m, c});
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0)
        return zero(n_vars_);
    Polynomial r = *this;
    for (auto& t : r.terms_)
        t.coeff *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(n_vars_, Rational(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u)
            r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (n_vars_ != o.n_vars_ || terms_.size() != o.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Polynomial Polynomial::partial_derivative(int var) const {
    if (var < 0 || var >= n_vars_)
        throw dimension_error("variable index " + std::to_string(var) + " out of range for " +
                              std::to_string(n_vars_) + " variables");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        auto e = t.mono.exp[static_cast<std::size_t>(var)];
        if (e == 0)
            continue;
        Term d = t;
        d.mono.exp[static_cast<std::size_t>(var)] = e - 1;
        d.coeff *= static_cast<int>(e);
        out.push_back(std::move(d));
    }
    // differentiation preserves the canonical order of the surviving terms
    // only across equal degrees, so renormalize
    return from_terms(n_vars_, std::move(out));
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_vars_)
        throw dimension_error("evaluation point has wrong length");
    Rational acc = 0;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (int i = 0; i < n_vars_; ++i)
            for (std::uint32_t e = 0; e < t.mono.exp[static_cast<std::size_t>(i)]; ++e)
                v *= point[static_cast<std::size_t>(i)];
        acc += v;
    }
    return acc;
}

double Polynomial::evaluate_double(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != n_vars_)
        throw dimension_error("evaluation point has wrong length");
    double acc = 0.0;
    for (const auto& t : terms_) {
        double v = to_double(t.coeff);
        for (int i = 0; i < n_vars_; ++i) {
            double x = point[static_cast<std::size_t>(i)];
            for (std::uint32_t e = 0; e < t.mono.exp[static_cast<std::size_t>(i)]; ++e)
                v *= x;
        }
        acc += v;
    }
    return acc;
}

Polynomial Polynomial::embedded(int n_vars_new) const {
    if (n_vars_new < n_vars_)
        throw dimension_error("cannot embed into fewer variables");
    Polynomial r = zero(n_vars_new);
    r.terms_ = terms_;
    for (auto& t : r.terms_)
        t.mono.exp.resize(static_cast<std::size_t>(n_vars_new), 0);
    return r; // padding preserves the canonical order
}

Polynomial Polynomial::with_remapped_vars(int n_vars_new, const std::vector<int>& var_map) const {
    if (static_cast<int>(var_map.size()) != n_vars_)
        throw dimension_error("variable map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(n_vars_new);
        for (int v = 0; v < n_vars_; ++v) {
            auto e = t.mono.exp[static_cast<std::size_t>(v)];
            if (e == 0)
                continue;
            int w = var_map[static_cast<std::size_t>(v)];
            if (w < 0 || w >= n_vars_new)
                throw dimension_error("variable map target out of range");
            m.exp[static_cast<std::size_t>(w)] += e;
        }
        out.push_back({std::move(m), t.coeff});
    }
    return from_terms(n_vars_new, std::move(out));
}

} // namespace superlin
