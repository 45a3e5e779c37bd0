#ifndef SUPERLIN_AUTOMORPHISM_HPP
#define SUPERLIN_AUTOMORPHISM_HPP

#include <optional>
#include <variant>
#include <vector>

#include "superlin/polymap.hpp"
#include "superlin/ratmat.hpp"

namespace superlin {

// Invertible affine change of coordinates x |-> A x + b.
struct AffineGen {
    RatMatrix a;
    RatVector b;
    RatMatrix a_inv; // cached exact inverse

    int n() const { return a.rows(); }
    PolyMap forward_map() const;
    AffineGen inverted() const;
};

// Shear x_target |-> x_target + g(other variables); g must not involve the
// target variable and must have degree >= 2 (affine shears belong to AffineGen).
struct ElementaryGen {
    int n_vars;
    int target;
    Polynomial g;

    int n() const { return n_vars; }
    PolyMap forward_map() const;
    ElementaryGen inverted() const;
};

AffineGen make_affine(RatMatrix a, RatVector b);
ElementaryGen make_elementary(int n_vars, int target, Polynomial g);

using TameGenerator = std::variant<AffineGen, ElementaryGen>;

int generator_dimension(const TameGenerator& g);
PolyMap generator_forward(const TameGenerator& g);
TameGenerator generator_inverted(const TameGenerator& g);

// Finite composition of affine and elementary generators, applied in
// sequence order (generators[0] acts first). The full forward and inverse
// maps are composed eagerly and checked against the identity symbolically,
// so holding a TameAutomorphism means holding a certified inverse pair.
class TameAutomorphism {
public:
    TameAutomorphism() : n_(0) {}
    TameAutomorphism(int n, std::vector<TameGenerator> generators);

    int n() const { return n_; }
    const std::vector<TameGenerator>& generators() const { return gens_; }
    const PolyMap& forward() const { return forward_; }
    const PolyMap& inverse() const { return inverse_; }

    TameAutomorphism inverted() const;

private:
    int n_;
    std::vector<TameGenerator> gens_;
    PolyMap forward_;
    PolyMap inverse_;
};

// outer after inner: the generator sequence of inner runs first.
TameAutomorphism compose(const TameAutomorphism& outer, const TameAutomorphism& inner);

// Transported field h with h(phi(x)) = Dphi(x) f(x), i.e. solutions map
// through phi. When phi is a single elementary generator the generic
// Jacobian route is cross-checked against the closed form.
VectorField pushforward(const VectorField& f, const TameAutomorphism& phi);

// Same construction from an explicit, symbolically verified inverse pair;
// used where the coordinate change is not presented as tame generators.
VectorField pushforward_map(const VectorField& f, const PolyMap& forward, const PolyMap& inverse);

// Witness that a map psi on the first n coordinates becomes tame after
// adding m auxiliary coordinates pinned to y(x): phi(x, y(x)) projects to
// psi(x). psi_inverse is optional extra data; several consumers can derive
// it, but carrying it keeps non-affine cases usable.
struct StablyTameWitness {
    int n = 0;
    int m = 0;
    TameAutomorphism phi;       // tame on n + m coordinates
    PolyMap stabilizer;         // y: n -> m
    PolyMap psi;                // induced map on the first n coordinates
    std::optional<PolyMap> psi_inverse;
};

StablyTameWitness make_stably_tame(TameAutomorphism phi, PolyMap stabilizer,
                                   std::optional<PolyMap> psi_inverse = std::nullopt);

} // namespace superlin

#endif
