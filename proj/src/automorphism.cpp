#include "superlin/automorphism.hpp"

#include "superlin/errors.hpp"

namespace superlin {

PolyMap AffineGen::forward_map() const {
    int nn = n();
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) {
        Polynomial p = Polynomial::constant(nn, b[static_cast<std::size_t>(i)]);
        for (int j = 0; j < nn; ++j)
            if (a.at(i, j) != 0)
                p += Polynomial::variable(nn, j).scaled(a.at(i, j));
        comps.push_back(std::move(p));
    }
    return PolyMap(nn, std::move(comps));
}

AffineGen AffineGen::inverted() const {
    RatVector nb = a_inv * b;
    for (auto& x : nb)
        x = -x;
    return AffineGen{a_inv, std::move(nb), a};
}

PolyMap ElementaryGen::forward_map() const {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n_vars));
    for (int i = 0; i < n_vars; ++i) {
        Polynomial p = Polynomial::variable(n_vars, i);
        if (i == target)
            p += g;
        comps.push_back(std::move(p));
    }
    return PolyMap(n_vars, std::move(comps));
}

ElementaryGen ElementaryGen::inverted() const {
    return ElementaryGen{n_vars, target, -g};
}

AffineGen make_affine(RatMatrix a, RatVector b) {
    if (a.rows() != a.cols())
        throw dimension_error("affine matrix must be square");
    if (static_cast<int>(b.size()) != a.rows())
        throw dimension_error("affine offset length does not match the matrix");
    RatMatrix inv = a.inverse(); // throws singular_matrix_error when not invertible
    return AffineGen{std::move(a), std::move(b), std::move(inv)};
}

ElementaryGen make_elementary(int n_vars, int target, Polynomial g) {
    if (target < 0 || target >= n_vars)
        throw dimension_error("elementary target index out of range");
    if (g.n_vars() != n_vars)
        throw dimension_error("shear polynomial over wrong variable count");
    if (g.degree_in(target) != 0)
        throw validity_error("shear polynomial must not involve the target variable");
    if (g.degree() < 2)
        throw validity_error("shear polynomial must have degree at least 2");
    return ElementaryGen{n_vars, target, std::move(g)};
}

int generator_dimension(const TameGenerator& g) {
    return std::visit([](const auto& x) { return x.n(); }, g);
}

PolyMap generator_forward(const TameGenerator& g) {
    return std::visit([](const auto& x) { return x.forward_map(); }, g);
}

TameGenerator generator_inverted(const TameGenerator& g) {
    return std::visit([](const auto& x) -> TameGenerator { return x.inverted(); }, g);
}

TameAutomorphism::TameAutomorphism(int n, std::vector<TameGenerator> generators)
    : n_(n), gens_(std::move(generators)) {
    if (n < 0)
        throw dimension_error("negative dimension");
    for (const auto& g : gens_)
        if (generator_dimension(g) != n_)
            throw dimension_error("generator dimension does not match the automorphism");
    forward_ = identity_map(n_);
    inverse_ = identity_map(n_);
    for (const auto& g : gens_) {
        forward_ = compose(generator_forward(g), forward_);
        inverse_ = compose(inverse_, generator_forward(generator_inverted(g)));
    }
    PolyMap id = identity_map(n_);
    if (compose(forward_, inverse_) != id || compose(inverse_, forward_) != id)
        throw validity_error("generator sequence failed the inverse check");
}

TameAutomorphism TameAutomorphism::inverted() const {
    std::vector<TameGenerator> gens;
    gens.reserve(gens_.size());
    for (auto it = gens_.rbegin(); it != gens_.rend(); ++it)
        gens.push_back(generator_inverted(*it));
    return TameAutomorphism(n_, std::move(gens));
}

TameAutomorphism compose(const TameAutomorphism& outer, const TameAutomorphism& inner) {
    if (outer.n() != inner.n())
        throw dimension_error("cannot compose automorphisms of different dimensions");
    std::vector<TameGenerator> gens = inner.generators();
    for (const auto& g : outer.generators())
        gens.push_back(g);
    return TameAutomorphism(outer.n(), std::move(gens));
}

namespace {

// closed form for a single shear: only the target component changes, and it
// picks up the full directional derivative of g
VectorField elementary_pushforward(const VectorField& f, const ElementaryGen& gen) {
    PolyMap inv = gen.inverted().forward_map();
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(f.n()));
    for (int i = 0; i < f.n(); ++i) {
        Polynomial h = (i == gen.target) ? f[i] + lie_derivative_scalar(f, gen.g) : f[i];
        comps.push_back(substitute(h, inv));
    }
    return VectorField(f.n(), std::move(comps));
}

} // namespace

VectorField pushforward_map(const VectorField& f, const PolyMap& forward, const PolyMap& inverse) {
    if (f.n() != forward.n_in() || forward.n_in() != forward.n_out() ||
        inverse.n_in() != forward.n_in() || inverse.n_out() != forward.n_in())
        throw dimension_error("pushforward maps must be square over the field dimension");
    PolyMap id = identity_map(f.n());
    if (compose(forward, inverse) != id || compose(inverse, forward) != id)
        throw premise_error("maps handed to pushforward are not mutually inverse");
    PolyMatrix jac = jacobian(forward);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(f.n()));
    for (int i = 0; i < f.n(); ++i) {
        Polynomial acc = Polynomial::zero(f.n());
        for (int j = 0; j < f.n(); ++j) {
            const Polynomial& e = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!e.is_zero())
                acc += e * f[j];
        }
        comps.push_back(substitute(acc, inverse));
    }
    return VectorField(f.n(), std::move(comps));
}

VectorField pushforward(const VectorField& f, const TameAutomorphism& phi) {
    if (f.n() != phi.n())
        throw dimension_error("field and automorphism dimensions differ");
    VectorField h = pushforward_map(f, phi.forward(), phi.inverse());
    if (phi.generators().size() == 1) {
        if (const auto* e = std::get_if<ElementaryGen>(&phi.generators()[0])) {
            if (h != elementary_pushforward(f, *e))
                throw validity_error("pushforward disagrees with the shear closed form");
        }
    }
    return h;
}

StablyTameWitness make_stably_tame(TameAutomorphism phi, PolyMap stabilizer,
                                   std::optional<PolyMap> psi_inverse) {
    int n = stabilizer.n_in();
    int m = stabilizer.n_out();
    if (m < 1)
        throw dimension_error("stabilizer must add at least one coordinate");
    if (phi.n() != n + m)
        throw dimension_error("automorphism must act on base plus stabilizer coordinates");
    // graph map x |-> (x, y(x))
    std::vector<Polynomial> graph;
    graph.reserve(static_cast<std::size_t>(n + m));
    for (int i = 0; i < n; ++i)
        graph.push_back(Polynomial::variable(n, i));
    for (int j = 0; j < m; ++j)
        graph.push_back(stabilizer[j]);
    PolyMap graph_map(n, std::move(graph));
    std::vector<Polynomial> psi_comps;
    psi_comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        psi_comps.push_back(substitute(phi.forward()[i], graph_map));
    PolyMap psi(n, std::move(psi_comps));
    if (psi_inverse) {
        if (psi_inverse->n_in() != n || psi_inverse->n_out() != n)
            throw dimension_error("psi inverse has the wrong shape");
        PolyMap id = identity_map(n);
        if (compose(psi, *psi_inverse) != id || compose(*psi_inverse, psi) != id)
            throw premise_error("claimed inverse of the induced map fails the identity check");
    }
    StablyTameWitness w;
    w.n = n;
    w.m = m;
    w.phi = std::move(phi);
    w.stabilizer = std::move(stabilizer);
    w.psi = std::move(psi);
    w.psi_inverse = std::move(psi_inverse);
    return w;
}

} // namespace superlin
