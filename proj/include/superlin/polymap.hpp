#ifndef SUPERLIN_POLYMAP_HPP
#define SUPERLIN_POLYMAP_HPP

#include <vector>

#include "superlin/polynomial.hpp"

namespace superlin {

// Polynomial map R^{n_in} -> R^{n_out}: one polynomial per output component,
// all over the same n_in input variables.
class PolyMap {
public:
    PolyMap() : n_in_(0) {}
    PolyMap(int n_in, std::vector<Polynomial> components);

    int n_in() const { return n_in_; }
    int n_out() const { return static_cast<int>(comps_.size()); }
    const std::vector<Polynomial>& components() const { return comps_; }
    const Polynomial& operator[](int i) const;

    bool operator==(const PolyMap& o) const { return n_in_ == o.n_in_ && comps_ == o.comps_; }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    int degree() const; // max component degree, -1 if all components vanish

private:
    int n_in_;
    std::vector<Polynomial> comps_;
};

PolyMap identity_map(int n);

// p(s_1(x), ..., s_k(x)) where p has k variables and s maps n_in -> k.
Polynomial substitute(const Polynomial& p, const PolyMap& s);

// outer after inner: x |-> outer(inner(x)).
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Entry (i, j) holds the partial derivative of component i by variable j.
PolyMatrix jacobian(const PolyMap& m);

// Autonomous polynomial vector field: a PolyMap with n_out == n_in.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(PolyMap m);
    VectorField(int n, std::vector<Polynomial> components)
        : VectorField(PolyMap(n, std::move(components))) {}

    int n() const { return map_.n_in(); }
    const PolyMap& map() const { return map_; }
    const std::vector<Polynomial>& components() const { return map_.components(); }
    const Polynomial& operator[](int i) const { return map_[i]; }
    int degree() const { return map_.degree(); }

    bool operator==(const VectorField& o) const { return map_ == o.map_; }
    bool operator!=(const VectorField& o) const { return !(*this == o); }

private:
    PolyMap map_;
};

// Directional derivative of a scalar along the flow of f:
// sum_i (dp/dx_i) * f_i.
Polynomial lie_derivative_scalar(const VectorField& f, const Polynomial& p);

// Componentwise directional derivative of a vector field along f.
VectorField lie_derivative_field(const VectorField& f, const VectorField& g);

} // namespace superlin

#endif
