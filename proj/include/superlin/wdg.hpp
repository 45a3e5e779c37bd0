#ifndef SUPERLIN_WDG_HPP
#define SUPERLIN_WDG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "superlin/automorphism.hpp"
#include "superlin/polymap.hpp"
#include "superlin/ratmat.hpp"

namespace superlin {

// Dependency graph of a vector field: an edge from j to i labelled with the
// partial derivative of component i by variable j (kept only when nonzero),
// so an edge means "variable j drives variable i".
struct DepEdge {
    int from = 0;
    int to = 0;
    Polynomial weight;
};

struct DepGraph {
    int n = 0;
    std::vector<DepEdge> edges; // sorted by (from, to); at most one per pair
};

DepGraph build_graph(const VectorField& f);

// Directed simple cycle, rotated so the smallest node comes first; the edge
// sequence is nodes[0] -> nodes[1] -> ... -> nodes[0]. product multiplies
// the edge weights along that sequence.
struct Cycle {
    std::vector<int> nodes;
    Polynomial product;
};

// All simple cycles (self-loops included) via Johnson's algorithm, returned
// sorted by length and then by node sequence. Throws budget_error beyond
// max_cycles.
std::vector<Cycle> enumerate_simple_cycles(const DepGraph& g, std::size_t max_cycles = 1000000);

struct WdgReport {
    DepGraph graph;
    std::vector<Cycle> cycles;
    bool satisfied = false;            // every cycle product is constant
    std::optional<Cycle> offending;    // first non-constant product, if any
};

WdgReport check_wdg(const VectorField& f, std::size_t max_cycles = 1000000);

// Result of repairing a shear of a linear system with one extra observable.
struct StabilizedSystem {
    Polynomial observable; // over the n transformed variables
    VectorField lifted;    // n + 1 states; see wdg_stabilize for the layout
    WdgReport report;      // WDG verdict for the lifted field
};

// For the linear field x' = a x pushed through a shear at the last slot,
// builds the one-dimension-larger linear-triangularizable system whose
// dependency graph always satisfies the constant-cycle condition. State
// layout: the first n-1 transformed coordinates, then the observable
// (last transformed coordinate minus the shear), then the last transformed
// coordinate itself.
StabilizedSystem wdg_stabilize(const RatMatrix& a, const ElementaryGen& gen);

// True when no other variable is driven by the last one (the last column of
// a is zero off the diagonal); then a shear at the last slot keeps the
// pushforward's cycle products constant without any added observable.
bool elementary_preserves_wdg(const RatMatrix& a);

// Graphviz rendering; cycles, when given, are appended as comment lines.
std::string dot_export(const DepGraph& g, const std::vector<std::string>& names,
                       const std::vector<Cycle>* cycles = nullptr);

} // namespace superlin

#endif
