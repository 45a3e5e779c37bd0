#include "superlin/polymap.hpp"

#include <algorithm>

#include "superlin/errors.hpp"

namespace superlin {

PolyMap::PolyMap(int n_in, std::vector<Polynomial> components)
    : n_in_(n_in), comps_(std::move(components)) {
    if (n_in < 0)
        throw dimension_error("negative input dimension");
    for (const auto& c : comps_)
        if (c.n_vars() != n_in_)
            throw dimension_error("component over " + std::to_string(c.n_vars()) +
                                  " variables in a map over " + std::to_string(n_in_));
}

const Polynomial& PolyMap::operator[](int i) const {
    if (i < 0 || i >= n_out())
        throw dimension_error("component index out of range");
    return comps_[static_cast<std::size_t>(i)];
}

int PolyMap::degree() const {
    int d = -1;
    for (const auto& c : comps_)
        d = std::max(d, c.degree());
    return d;
}

PolyMap identity_map(int n) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        comps.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(comps));
}

Polynomial substitute(const Polynomial& p, const PolyMap& s) {
    if (p.n_vars() != s.n_out())
        throw dimension_error("substitution arity mismatch: polynomial over " +
                              std::to_string(p.n_vars()) + " variables, map produces " +
                              std::to_string(s.n_out()));
    int n = s.n_in();
    // cache powers of each substituted component as they are needed
    std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(p.n_vars()));
    auto power = [&](int var, std::uint32_t e) -> const Polynomial& {
        auto& cache = powers[static_cast<std::size_t>(var)];
        if (cache.empty())
            cache.push_back(Polynomial::constant(n, Rational(1)));
        while (cache.size() <= e)
            cache.push_back(cache.back() * s[var]);
        return cache[e];
    };
    Polynomial acc = Polynomial::zero(n);
    for (const auto& t : p.terms()) {
        Polynomial term = Polynomial::constant(n, t.coeff);
        for (int v = 0; v < p.n_vars(); ++v) {
            auto e = t.mono.exp[static_cast<std::size_t>(v)];
            if (e > 0)
                term = term * power(v, e);
        }
        acc += term;
    }
    return acc;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(outer.n_out()));
    for (int i = 0; i < outer.n_out(); ++i)
        comps.push_back(substitute(outer[i], inner));
    return PolyMap(inner.n_in(), std::move(comps));
}

PolyMatrix jacobian(const PolyMap& m) {
    PolyMatrix j(static_cast<std::size_t>(m.n_out()));
    for (int i = 0; i < m.n_out(); ++i) {
        j[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(m.n_in()));
        for (int v = 0; v < m.n_in(); ++v)
            j[static_cast<std::size_t>(i)].push_back(m[i].partial_derivative(v));
    }
    return j;
}

VectorField::VectorField(PolyMap m) : map_(std::move(m)) {
    if (map_.n_out() != map_.n_in())
        throw dimension_error("vector field must have as many components as variables (" +
                              std::to_string(map_.n_out()) + " components over " +
                              std::to_string(map_.n_in()) + " variables)");
}

Polynomial lie_derivative_scalar(const VectorField& f, const Polynomial& p) {
    if (p.n_vars() != f.n())
        throw dimension_error("scalar and field live over different variable counts");
    Polynomial acc = Polynomial::zero(f.n());
    for (int v = 0; v < f.n(); ++v) {
        Polynomial d = p.partial_derivative(v);
        if (!d.is_zero())
            acc += d * f[v];
    }
    return acc;
}

VectorField lie_derivative_field(const VectorField& f, const VectorField& g) {
    if (f.n() != g.n())
        throw dimension_error("fields live over different variable counts");
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i)
        comps.push_back(lie_derivative_scalar(f, g[i]));
    return VectorField(f.n(), std::move(comps));
}

} // namespace superlin
