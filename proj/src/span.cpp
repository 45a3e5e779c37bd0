#include "superlin/span.hpp"

#include "superlin/errors.hpp"

namespace superlin {

bool polyvec_is_zero(const PolyVec& v) {
    for (const auto& p : v)
        if (!p.is_zero())
            return false;
    return true;
}

bool PolySpan::KeyBefore::operator()(const Key& a, const Key& b) const {
    if (a.mono != b.mono)
        return mono_before(a.mono, b.mono);
    return a.slot < b.slot;
}

PolySpan::PolySpan(int n_vars, int n_slots) : n_vars_(n_vars), n_slots_(n_slots) {
    if (n_vars < 0 || n_slots <= 0)
        throw dimension_error("bad span shape");
}

void PolySpan::check_shape(const PolyVec& v) const {
    if (static_cast<int>(v.size()) != n_slots_)
        throw dimension_error("tuple has " + std::to_string(v.size()) + " slots, span expects " +
                              std::to_string(n_slots_));
    for (const auto& p : v)
        if (p.n_vars() != n_vars_)
            throw dimension_error("tuple component over wrong variable count");
}

bool PolySpan::find_largest_pivot_key(const PolyVec& v, Key& out) const {
    KeyBefore before;
    bool found = false;
    for (int s = 0; s < n_slots_; ++s) {
        for (const auto& t : v[static_cast<std::size_t>(s)].terms()) {
            Key k{t.mono, s};
            if (!rows_.count(k))
                continue;
            if (!found || before(out, k)) {
                out = k;
                found = true;
            }
        }
    }
    return found;
}

namespace {

// dst += c * src over generator-id coordinates, growing dst as needed
void axpy_combo(std::vector<Rational>& dst, const Rational& c, const std::vector<Rational>& src) {
    if (dst.size() < src.size())
        dst.resize(src.size(), Rational(0));
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i] != 0)
            dst[i] += c * src[i];
}

} // namespace

PolySpan::Reduction PolySpan::reduce(const PolyVec& v) const {
    check_shape(v);
    Reduction red;
    red.coeffs.assign(static_cast<std::size_t>(next_id_), Rational(0));
    red.residual = v;
    Key key;
    while (find_largest_pivot_key(red.residual, key)) {
        const Row& row = rows_.at(key);
        Rational c = red.residual[static_cast<std::size_t>(key.slot)].coefficient_of(key.mono);
        for (int s = 0; s < n_slots_; ++s) {
            const auto& re = row.elem[static_cast<std::size_t>(s)];
            if (!re.is_zero())
                red.residual[static_cast<std::size_t>(s)] -= re.scaled(c);
        }
        axpy_combo(red.coeffs, c, row.combo);
    }
    if (red.coeffs.size() < static_cast<std::size_t>(next_id_))
        red.coeffs.resize(static_cast<std::size_t>(next_id_), Rational(0));
    return red;
}

bool PolySpan::greatest_key(const PolyVec& v, Key& out) const {
    KeyBefore before;
    bool have = false;
    for (int s = 0; s < n_slots_; ++s)
        for (const auto& t : v[static_cast<std::size_t>(s)].terms()) {
            Key k{t.mono, s};
            if (!have || before(out, k)) {
                out = k;
                have = true;
            }
        }
    return have;
}

PolySpan::Row PolySpan::make_row(const PolyVec& residual, std::vector<Rational> combo_unscaled, int id) const {
    Row row;
    if (!greatest_key(residual, row.pivot))
        throw validity_error("cannot register a zero residual as a generator");
    Rational lead = residual[static_cast<std::size_t>(row.pivot.slot)].coefficient_of(row.pivot.mono);
    row.elem.reserve(static_cast<std::size_t>(n_slots_));
    for (int s = 0; s < n_slots_; ++s)
        row.elem.push_back(residual[static_cast<std::size_t>(s)].scaled(Rational(1) / lead));
    combo_unscaled.resize(static_cast<std::size_t>(id) + 1, Rational(0));
    row.combo.assign(static_cast<std::size_t>(id) + 1, Rational(0));
    for (std::size_t j = 0; j < combo_unscaled.size(); ++j)
        if (combo_unscaled[j] != 0)
            row.combo[j] = combo_unscaled[j] / lead;
    return row;
}

PolySpan::AddOutcome PolySpan::add(const PolyVec& v) {
    AddOutcome out;
    out.red = reduce(v);
    out.id = next_id_++;
    out.independent = !polyvec_is_zero(out.red.residual);
    if (out.independent) {
        // v = sum coeffs * gens + residual, so the monic residual expressed
        // over the generators is (e_id - coeffs) / lead
        std::vector<Rational> combo(static_cast<std::size_t>(out.id) + 1, Rational(0));
        for (std::size_t j = 0; j < out.red.coeffs.size(); ++j)
            combo[j] = -out.red.coeffs[j];
        combo[static_cast<std::size_t>(out.id)] = Rational(1);
        insert_row(make_row(out.red.residual, std::move(combo), out.id));
    }
    return out;
}

int PolySpan::add_reduced(PolyVec residual) {
    check_shape(residual);
    if (polyvec_is_zero(residual))
        throw validity_error("cannot register a zero residual as a generator");
    Key probe;
    if (find_largest_pivot_key(residual, probe))
        throw validity_error("residual is not fully reduced against the basis");
    int id = next_id_++;
    std::vector<Rational> combo(static_cast<std::size_t>(id) + 1, Rational(0));
    combo[static_cast<std::size_t>(id)] = Rational(1);
    insert_row(make_row(residual, std::move(combo), id));
    return id;
}

void PolySpan::insert_row(Row row) {
    // keep reduced echelon form: clear the new pivot from every older row
    for (auto& [key, other] : rows_) {
        Rational c = other.elem[static_cast<std::size_t>(row.pivot.slot)].coefficient_of(row.pivot.mono);
        if (c == 0)
            continue;
        for (int s = 0; s < n_slots_; ++s) {
            const auto& re = row.elem[static_cast<std::size_t>(s)];
            if (!re.is_zero())
                other.elem[static_cast<std::size_t>(s)] -= re.scaled(c);
        }
        axpy_combo(other.combo, -c, row.combo);
    }
    rows_.emplace(row.pivot, std::move(row));
}

} // namespace superlin
