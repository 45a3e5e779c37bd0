#ifndef SUPERLIN_SPAN_HPP
#define SUPERLIN_SPAN_HPP

#include <map>
#include <vector>

#include "superlin/polynomial.hpp"

namespace superlin {

// Tuple of polynomials treated as one vector over the monomial basis of
// each slot; scalars are the one-slot case.
using PolyVec = std::vector<Polynomial>;

bool polyvec_is_zero(const PolyVec& v);

// Exact incremental row echelon basis for a growing family of polynomial
// tuples ("generators"), with full bookkeeping: every reduction reports the
// exact coordinates of the input over the generators added so far.
//
// Rows are kept fully reduced against each other (reduced echelon form) with
// monic pivots. The pivot of a row is its greatest (monomial, slot) pair,
// ordered by the canonical monomial order first and the slot index second.
class PolySpan {
public:
    PolySpan(int n_vars, int n_slots);

    struct Reduction {
        std::vector<Rational> coeffs; // v = sum coeffs[id] * generator[id] + residual
        PolyVec residual;             // fully reduced; zero iff v was in the span
    };

    Reduction reduce(const PolyVec& v) const;

    struct AddOutcome {
        int id;           // generator id handed to this add (insertion order)
        bool independent; // false when v already lay in the span
        Reduction red;    // reduction against the generators preceding v
    };

    // Registers v as the next generator and, when independent, grows the basis.
    AddOutcome add(const PolyVec& v);

    // Registers an already fully reduced nonzero residual (as returned by
    // reduce) as the next generator. Cheaper than add: no second reduction.
    int add_reduced(PolyVec residual);

    int generator_count() const { return next_id_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    bool contains(const PolyVec& v) const { return polyvec_is_zero(reduce(v).residual); }

private:
    struct Key {
        Monomial mono;
        int slot;
    };
    struct KeyBefore {
        bool operator()(const Key& a, const Key& b) const;
    };
    struct Row {
        PolyVec elem;                 // monic at its pivot key
        std::vector<Rational> combo;  // elem = sum combo[id] * generator[id]
        Key pivot;
    };

    int n_vars_;
    int n_slots_;
    int next_id_ = 0;
    std::map<Key, Row, KeyBefore> rows_; // keyed by pivot, descending

    void check_shape(const PolyVec& v) const;
    bool find_largest_pivot_key(const PolyVec& v, Key& out) const;
    bool greatest_key(const PolyVec& v, Key& out) const;
    Row make_row(const PolyVec& residual, std::vector<Rational> combo_unscaled, int id) const;
    void insert_row(Row row);
};

} // namespace superlin

#endif
