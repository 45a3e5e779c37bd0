#include "superlin/transport.hpp"

#include <deque>
#include <string>
#include <utility>

#include "superlin/errors.hpp"
#include "superlin/span.hpp"

namespace superlin {

namespace {

PolyMap linear_poly_map(const RatMatrix& m) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        Polynomial row = Polynomial::zero(m.cols());
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0)
                row += Polynomial::variable(m.cols(), j).scaled(m.at(i, j));
        comps.push_back(std::move(row));
    }
    return PolyMap(m.cols(), std::move(comps));
}

// P f(P^{-1} z), with the inverse supplied so callers pay for it once.
VectorField conjugated_field(const VectorField& f, const RatMatrix& p,
                             const RatMatrix& p_inv) {
    int n = f.n();
    PolyMap inv_map = linear_poly_map(p_inv);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial acc = Polynomial::zero(n);
        for (int j = 0; j < n; ++j)
            if (p.at(i, j) != 0)
                acc += f[j].scaled(p.at(i, j));
        comps.push_back(substitute(acc, inv_map));
    }
    return VectorField(n, std::move(comps));
}

PolyMap graph_of(int n, const PolyMap& p) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n + p.n_out()));
    for (int i = 0; i < n; ++i)
        comps.push_back(Polynomial::variable(n, i));
    for (int j = 0; j < p.n_out(); ++j)
        comps.push_back(p[j]);
    return PolyMap(n, std::move(comps));
}

void require_valid(const VectorField& f, const Lift& lift, const char* who) {
    if (!check_lift_symbolic(f, lift))
        throw validity_error(std::string(who) + " needs a valid lift of its field");
}

void require_sound(const VectorField& f, const Lift& lift, const char* who) {
    if (!check_lift_symbolic(f, lift))
        throw error(std::string("internal defect: ") + who +
                    " assembled a lift that fails the symbolic check");
}

std::vector<std::string> noted(std::vector<std::string> provenance,
                               std::string note) {
    provenance.push_back(std::move(note));
    return provenance;
}

// The *_impl functions below assume the incoming lift has already been
// checked against its realized field; public entry points verify that once
// and pipelines then chain impls, because every stage exit-checks whatever
// it assembles before handing it on.

Lift project_impl(const ProjectionWitness& w, const Lift& lift_h) {
    if (w.m() == w.n())
        return lift_h;
    int n = w.n();
    PolyMap graph = graph_of(n, w.p());
    std::vector<Polynomial> obs;
    obs.reserve(static_cast<std::size_t>(w.m() - n + lift_h.k));
    for (int j = 0; j + n < w.m(); ++j)
        obs.push_back(w.p()[j]);
    for (int l = 0; l < lift_h.k; ++l)
        obs.push_back(substitute(lift_h.observables[l], graph));
    Lift out = make_lift(n, lift_h.a, PolyMap(n, std::move(obs)),
                         noted(lift_h.provenance, "projected onto an invariant graph"));
    require_sound(w.f(), out, "project_lift");
    return out;
}

Lift extend_impl(const VectorField& f, const Lift& lift_f, const PolyMap& g) {
    int n = lift_f.n;
    if (g.n_in() != n)
        throw dimension_error("integrator map must read the base variables");
    int k = g.n_out();
    int k0 = lift_f.k;
    int base = n + k; // coordinates of the augmented system

    // State layout: x_0..x_{n-1}, the k fresh integrators, the inherited
    // observables, then whatever the chains below discover. Non-integrator
    // states carry an x-space function.
    std::vector<Polynomial> fn_of;
    std::vector<bool> is_fn;
    std::vector<std::vector<Rational>> rows;
    auto push_state = [&](Polynomial q, bool real) {
        fn_of.push_back(std::move(q));
        is_fn.push_back(real);
        rows.emplace_back();
        return static_cast<int>(fn_of.size()) - 1;
    };

    PolySpan span(n, 1);
    std::vector<int> rep; // span generator id -> state position
    auto seed = [&](const Polynomial& q, int pos) {
        PolySpan::AddOutcome got = span.add({q});
        rep.push_back(got.independent ? pos : -1);
    };

    for (int i = 0; i < n; ++i) {
        push_state(Polynomial::variable(n, i), true);
        seed(fn_of.back(), i);
    }
    for (int j = 0; j < k; ++j)
        push_state(Polynomial::zero(n), false);
    for (int l = 0; l < k0; ++l) {
        int pos = push_state(lift_f.generator_functions[static_cast<std::size_t>(n + l)], true);
        seed(fn_of[static_cast<std::size_t>(pos)], pos);
    }

    // rows the input lift already knows, with states renumbered
    auto renumber = [&](int old_state) {
        return old_state < n ? old_state : base + (old_state - n);
    };
    for (int i = 0; i < n + k0; ++i) {
        std::vector<Rational> row(fn_of.size());
        for (int j = 0; j < n + k0; ++j)
            row[static_cast<std::size_t>(renumber(j))] = lift_f.a.at(i, j);
        rows[static_cast<std::size_t>(renumber(i))] = std::move(row);
    }

    std::deque<int> todo;
    for (int j = 0; j < k; ++j)
        todo.push_back(n + j);

    // Writes rhs over the states, growing the basis by the reduced residual
    // when needed. Each fresh state is a polynomial in the input lift's
    // generator values, so differentiating it keeps total degree bounded and
    // the loop terminates.
    auto express = [&](const Polynomial& rhs) {
        PolySpan::Reduction red = span.reduce({rhs});
        std::vector<Rational> row(fn_of.size());
        for (std::size_t id = 0; id < red.coeffs.size(); ++id)
            if (red.coeffs[id] != 0)
                row[static_cast<std::size_t>(rep[id])] = red.coeffs[id];
        if (!polyvec_is_zero(red.residual)) {
            Polynomial fresh = red.residual[0];
            int pos = push_state(std::move(fresh), true);
            span.add_reduced(std::move(red.residual));
            rep.push_back(pos);
            todo.push_back(pos);
            row.resize(fn_of.size());
            row[static_cast<std::size_t>(pos)] = 1;
        }
        return row;
    };

    while (!todo.empty()) {
        int pos = todo.front();
        todo.pop_front();
        Polynomial rhs = !is_fn[static_cast<std::size_t>(pos)]
                             ? g[pos - n]
                             : lie_derivative_scalar(f, fn_of[static_cast<std::size_t>(pos)]);
        rows[static_cast<std::size_t>(pos)] = express(rhs);
    }

    int total = static_cast<int>(fn_of.size());
    RatMatrix a(total, total);
    for (int i = 0; i < total; ++i)
        for (std::size_t j = 0; j < rows[static_cast<std::size_t>(i)].size(); ++j)
            a.at(i, static_cast<int>(j)) = rows[static_cast<std::size_t>(i)][j];

    std::vector<Polynomial> obs;
    obs.reserve(static_cast<std::size_t>(total - base));
    for (int pos = base; pos < total; ++pos)
        obs.push_back(fn_of[static_cast<std::size_t>(pos)].embedded(base));

    std::vector<Polynomial> augmented;
    augmented.reserve(static_cast<std::size_t>(base));
    for (int i = 0; i < n; ++i)
        augmented.push_back(f[i].embedded(base));
    for (int j = 0; j < k; ++j)
        augmented.push_back(g[j].embedded(base));
    VectorField extended(base, std::move(augmented));

    Lift out = make_lift(base, std::move(a), PolyMap(base, std::move(obs)),
                         noted(lift_f.provenance,
                               "extended by " + std::to_string(k) + " integrator state(s)"));
    require_sound(extended, out, "extend_lift");
    return out;
}

Lift conjugate_impl(const VectorField& f, const Lift& lift_f, const RatMatrix& p) {
    int n = lift_f.n;
    if (p.rows() != n || p.cols() != n)
        throw dimension_error("conjugating matrix must be square in the base dimension");
    RatMatrix p_inv = p.inverse();
    RatMatrix big = block_diag(p, RatMatrix::identity(lift_f.k));
    RatMatrix big_inv = block_diag(p_inv, RatMatrix::identity(lift_f.k));
    RatMatrix a = big * lift_f.a * big_inv;
    PolyMap inv_map = linear_poly_map(p_inv);
    std::vector<Polynomial> obs;
    obs.reserve(static_cast<std::size_t>(lift_f.k));
    for (int j = 0; j < lift_f.k; ++j)
        obs.push_back(substitute(lift_f.observables[j], inv_map));
    Lift out = make_lift(n, std::move(a), PolyMap(n, std::move(obs)),
                         noted(lift_f.provenance, "conjugated by a linear coordinate change"));
    require_sound(conjugated_field(f, p, p_inv), out, "conjugate_lift");
    return out;
}

Lift translate_impl(const VectorField& f, const Lift& lift_f, const RatVector& c) {
    int n = lift_f.n;
    if (static_cast<int>(c.size()) != n)
        throw dimension_error("translation vector must match the base dimension");
    int total = lift_f.total_dimension();

    std::vector<Polynomial> shift;
    shift.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        shift.push_back(Polynomial::variable(n, i) +
                        Polynomial::constant(n, c[static_cast<std::size_t>(i)]));
    PolyMap shift_map(n, std::move(shift));

    // generators j < n shift to z_j + c_j, so each row picks up the drift
    // sum_j A[i][j] c_j on the constant generator
    RatVector drift(static_cast<std::size_t>(total));
    bool any_drift = false;
    for (int i = 0; i < total; ++i) {
        Rational d = 0;
        for (int j = 0; j < n; ++j)
            d += lift_f.a.at(i, j) * c[static_cast<std::size_t>(j)];
        any_drift = any_drift || d != 0;
        drift[static_cast<std::size_t>(i)] = std::move(d);
    }

    std::vector<Polynomial> obs;
    obs.reserve(static_cast<std::size_t>(lift_f.k) + 1);
    for (int j = 0; j < lift_f.k; ++j)
        obs.push_back(substitute(lift_f.observables[j], shift_map));

    RatMatrix a = lift_f.a;
    if (any_drift) {
        int constant_at = -1;
        for (int j = 0; j < lift_f.k; ++j)
            if (obs[static_cast<std::size_t>(j)].is_constant() &&
                !obs[static_cast<std::size_t>(j)].is_zero()) {
                constant_at = n + j;
                break;
            }
        if (constant_at >= 0) {
            Rational value = obs[static_cast<std::size_t>(constant_at - n)].constant_term();
            for (int i = 0; i < total; ++i)
                a.at(i, constant_at) += drift[static_cast<std::size_t>(i)] / value;
        } else {
            RatMatrix grown(total + 1, total + 1);
            for (int i = 0; i < total; ++i) {
                for (int j = 0; j < total; ++j)
                    grown.at(i, j) = a.at(i, j);
                grown.at(i, total) = drift[static_cast<std::size_t>(i)];
            }
            a = std::move(grown);
            obs.push_back(Polynomial::constant(n, 1));
        }
    }

    std::vector<Polynomial> shifted;
    shifted.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        shifted.push_back(substitute(f[i], shift_map));
    VectorField h(n, std::move(shifted));

    Lift out = make_lift(n, std::move(a), PolyMap(n, std::move(obs)),
                         noted(lift_f.provenance, "translated start point"));
    require_sound(h, out, "translate_lift");
    return out;
}

Lift elementary_impl(const VectorField& f, const Lift& lift_f, const ElementaryGen& gen) {
    int n = lift_f.n;
    if (gen.n_vars != n)
        throw dimension_error("shear dimension must match the lift");
    if (gen.target != n - 1)
        throw validity_error("elementary transport expects the shear target in the "
                             "last slot; conjugate with a transposition to retarget");

    // time derivative of the sheared coordinate x_n + g(x_1..x_{n-1})
    Polynomial gdot = f[n - 1];
    for (int i = 0; i < n; ++i) {
        Polynomial gi = gen.g.partial_derivative(i);
        if (!gi.is_zero())
            gdot += gi * f[i];
    }
    Lift ext = extend_impl(f, lift_f, PolyMap(n, {std::move(gdot)}));

    // swap the fresh integrator into the target slot
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    std::swap(perm[static_cast<std::size_t>(n - 1)], perm[static_cast<std::size_t>(n)]);
    Lift moved = conjugate_impl(realized_field(ext), ext, RatMatrix::permutation(perm));

    // the old target coordinate is recovered as y_n - g(y_1..y_{n-1})
    VectorField pushed = pushforward(f, TameAutomorphism(n, {TameGenerator(gen)}));
    Polynomial recover = Polynomial::variable(n, n - 1) - gen.g;
    ProjectionWitness w(realized_field(moved), pushed, PolyMap(n, {std::move(recover)}));
    return project_impl(w, moved);
}

Lift tame_impl(const VectorField& f, const Lift& lift_f, const TameAutomorphism& phi) {
    int n = lift_f.n;
    if (phi.n() != n)
        throw dimension_error("automorphism dimension must match the lift");

    Lift cur = lift_f;
    VectorField cur_f = f;
    for (const TameGenerator& gen : phi.generators()) {
        if (const auto* aff = std::get_if<AffineGen>(&gen)) {
            cur = conjugate_impl(cur_f, cur, aff->a);
            bool shifted = false;
            RatVector c(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                c[static_cast<std::size_t>(i)] = -aff->b[static_cast<std::size_t>(i)];
                shifted = shifted || aff->b[static_cast<std::size_t>(i)] != 0;
            }
            if (shifted)
                cur = translate_impl(realized_field(cur), cur, c);
        } else {
            const auto& elem = std::get<ElementaryGen>(gen);
            if (elem.target == n - 1) {
                cur = elementary_impl(cur_f, cur, elem);
            } else {
                std::vector<int> swap_map(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i)
                    swap_map[static_cast<std::size_t>(i)] = i;
                std::swap(swap_map[static_cast<std::size_t>(elem.target)],
                          swap_map[static_cast<std::size_t>(n - 1)]);
                RatMatrix s = RatMatrix::permutation(swap_map);
                cur = conjugate_impl(cur_f, cur, s);
                ElementaryGen retargeted = make_elementary(
                    n, n - 1, elem.g.with_remapped_vars(n, swap_map));
                cur = elementary_impl(realized_field(cur), cur, retargeted);
                cur = conjugate_impl(realized_field(cur), cur, s);
            }
        }
        cur_f = realized_field(cur);
    }

    if (cur_f != pushforward(f, phi))
        throw error("internal defect: tame transport drifted away from the "
                    "pushforward field");
    return cur;
}

} // namespace

VectorField realized_field(const Lift& lift) {
    int total = lift.total_dimension();
    if (static_cast<int>(lift.generator_functions.size()) != total ||
        lift.a.rows() != total || lift.a.cols() != total)
        throw dimension_error("lift pieces have inconsistent shapes");
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(lift.n));
    for (int i = 0; i < lift.n; ++i) {
        Polynomial acc = Polynomial::zero(lift.n);
        for (int j = 0; j < total; ++j) {
            const Rational& c = lift.a.at(i, j);
            if (c != 0)
                acc += lift.generator_functions[static_cast<std::size_t>(j)].scaled(c);
        }
        comps.push_back(std::move(acc));
    }
    return VectorField(lift.n, std::move(comps));
}

ProjectionWitness::ProjectionWitness(VectorField h, VectorField f, PolyMap p)
    : h_(std::move(h)), f_(std::move(f)), p_(std::move(p)) {
    int mm = h_.n();
    int nn = f_.n();
    if (mm < nn)
        throw dimension_error("ambient dimension cannot be below the base dimension");
    if (p_.n_in() != nn || p_.n_out() != mm - nn)
        throw dimension_error("graph map must send the base space to the extra coordinates");
    PolyMap graph = graph_of(nn, p_);
    for (int i = 0; i < nn; ++i)
        if (substitute(h_[i], graph) != f_[i])
            throw premise_error("ambient field does not restrict to the base field "
                                "on the graph");
    for (int j = 0; j + nn < mm; ++j)
        if (substitute(h_[nn + j], graph) != lie_derivative_scalar(f_, p_[j]))
            throw premise_error("graph of the witness map is not invariant under "
                                "the ambient flow");
}

Lift project_lift(const ProjectionWitness& w, const Lift& lift_h) {
    require_valid(w.h(), lift_h, "project_lift");
    return project_impl(w, lift_h);
}

Lift extend_lift(const Lift& lift_f, const PolyMap& g) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "extend_lift");
    return extend_impl(f, lift_f, g);
}

Lift conjugate_lift(const Lift& lift_f, const RatMatrix& p) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "conjugate_lift");
    return conjugate_impl(f, lift_f, p);
}

Lift translate_lift(const Lift& lift_f, const RatVector& c) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "translate_lift");
    return translate_impl(f, lift_f, c);
}

Lift elementary_transport(const Lift& lift_f, const ElementaryGen& gen) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "elementary_transport");
    return elementary_impl(f, lift_f, gen);
}

Lift tame_transport(const Lift& lift_f, const TameAutomorphism& phi) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "tame_transport");
    return tame_impl(f, lift_f, phi);
}

namespace {

PolyMap resolve_psi_inverse(const StablyTameWitness& w) {
    int n = w.n;
    PolyMap id = identity_map(n);
    auto checks_out = [&](const PolyMap& cand) {
        return cand.n_in() == n && cand.n_out() == n &&
               compose(w.psi, cand) == id && compose(cand, w.psi) == id;
    };
    if (w.psi_inverse) {
        if (!checks_out(*w.psi_inverse))
            throw premise_error("claimed inverse of the induced map fails the "
                                "identity check");
        return *w.psi_inverse;
    }
    if (w.psi.degree() <= 1) {
        RatMatrix m(n, n);
        RatVector b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            b[static_cast<std::size_t>(i)] = w.psi[i].constant_term();
            for (int j = 0; j < n; ++j) {
                Monomial mono(n);
                mono.exp[static_cast<std::size_t>(j)] = 1;
                m.at(i, j) = w.psi[i].coefficient_of(mono);
            }
        }
        RatMatrix m_inv;
        try {
            m_inv = m.inverse();
        } catch (const singular_matrix_error&) {
            throw premise_error("induced map is affine but not invertible");
        }
        std::vector<Polynomial> comps;
        for (int i = 0; i < n; ++i) {
            Polynomial acc = Polynomial::zero(n);
            for (int j = 0; j < n; ++j) {
                if (m_inv.at(i, j) == 0)
                    continue;
                acc += (Polynomial::variable(n, j) -
                        Polynomial::constant(n, b[static_cast<std::size_t>(j)]))
                           .scaled(m_inv.at(i, j));
            }
            comps.push_back(std::move(acc));
        }
        PolyMap cand(n, std::move(comps));
        if (checks_out(cand))
            return cand;
    }
    // the inverse upstairs may simply never read the auxiliary coordinates
    int big = w.phi.n();
    bool clean = true;
    for (int i = 0; i < n && clean; ++i)
        for (int v = n; v < big; ++v)
            if (w.phi.inverse()[i].degree_in(v) > 0) {
                clean = false;
                break;
            }
    if (clean) {
        std::vector<int> down(static_cast<std::size_t>(big));
        for (int v = 0; v < big; ++v)
            down[static_cast<std::size_t>(v)] = v < n ? v : 0;
        std::vector<Polynomial> comps;
        for (int i = 0; i < n; ++i)
            comps.push_back(w.phi.inverse()[i].with_remapped_vars(n, down));
        PolyMap cand(n, std::move(comps));
        if (checks_out(cand))
            return cand;
    }
    throw premise_error("cannot derive the inverse of the induced map; supply "
                        "psi_inverse in the witness");
}

} // namespace

Lift stably_tame_transport(const Lift& lift_f, const StablyTameWitness& w) {
    VectorField f = realized_field(lift_f);
    require_valid(f, lift_f, "stably_tame_transport");
    int n = lift_f.n;
    if (w.n != n)
        throw dimension_error("witness base dimension must match the lift");
    if (w.stabilizer.n_in() != n || w.stabilizer.n_out() != w.m ||
        w.phi.n() != n + w.m)
        throw dimension_error("witness pieces have inconsistent shapes");

    // recompute the induced map; a hand-assembled witness could disagree
    PolyMap graph = graph_of(n, w.stabilizer);
    std::vector<Polynomial> induced;
    std::vector<Polynomial> riding;
    for (int i = 0; i < n; ++i)
        induced.push_back(substitute(w.phi.forward()[i], graph));
    for (int j = 0; j < w.m; ++j)
        riding.push_back(substitute(w.phi.forward()[n + j], graph));
    if (PolyMap(n, std::move(induced)) != w.psi)
        throw premise_error("witness psi disagrees with the automorphism "
                            "restricted to the stabilizer graph");

    PolyMap psi_inv = resolve_psi_inverse(w);

    // ride the stabilizer graph: the fresh states integrate its time
    // derivative, so starting them at g(x0) keeps them equal to g(x(t))
    std::vector<Polynomial> gdot;
    gdot.reserve(static_cast<std::size_t>(w.m));
    for (int j = 0; j < w.m; ++j)
        gdot.push_back(lie_derivative_scalar(f, w.stabilizer[j]));
    Lift ext = extend_impl(f, lift_f, PolyMap(n, std::move(gdot)));
    Lift up = tame_impl(realized_field(ext), ext, w.phi);

    // downstairs the ridden graph becomes y -> (phi of the stabilizer graph)
    // re-expressed through psi^{-1}
    PolyMap p = compose(PolyMap(n, std::move(riding)), psi_inv);
    VectorField target = pushforward_map(f, w.psi, psi_inv);
    ProjectionWitness wit(realized_field(up), target, std::move(p));
    return project_impl(wit, up);
}

bool lie_conjugation_identity(const VectorField& f, const RatMatrix& p, int kmax) {
    int n = f.n();
    if (p.rows() != n || p.cols() != n)
        throw dimension_error("conjugating matrix must match the field dimension");
    RatMatrix p_inv = p.inverse();
    VectorField conj = conjugated_field(f, p, p_inv);
    std::vector<VectorField> down = vector_closure_sequence(f, kmax);
    std::vector<VectorField> up = vector_closure_sequence(conj, kmax);
    for (std::size_t k = 0; k < down.size(); ++k)
        if (conjugated_field(down[k], p, p_inv) != up[k])
            return false;
    return true;
}

} // namespace superlin
