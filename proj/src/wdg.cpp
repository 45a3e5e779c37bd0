#include "superlin/wdg.hpp"

#include <algorithm>
#include <map>

#include "superlin/errors.hpp"
#include "superlin/render.hpp"

namespace superlin {

DepGraph build_graph(const VectorField& f) {
    DepGraph g;
    g.n = f.n();
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            Polynomial w = f[i].partial_derivative(j);
            if (!w.is_zero())
                g.edges.push_back({j, i, std::move(w)});
        }
    return g;
}

namespace {

// Tarjan strongly connected components over an adjacency list restricted to
// the vertices marked alive. Returns component ids (or -1 for dead vertices).
struct Tarjan {
    const std::vector<std::vector<int>>& adj;
    const std::vector<bool>& alive;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0, comps = 0;

    Tarjan(const std::vector<std::vector<int>>& a, const std::vector<bool>& al)
        : adj(a), alive(al), index(a.size(), -1), low(a.size(), 0), comp(a.size(), -1),
          on_stack(a.size(), false) {
        for (std::size_t v = 0; v < a.size(); ++v)
            if (alive[v] && index[v] < 0)
                visit(static_cast<int>(v));
    }

    void visit(int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!alive[static_cast<std::size_t>(w)])
                continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[static_cast<std::size_t>(w)]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            for (;;) {
                int w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = false;
                comp[static_cast<std::size_t>(w)] = comps;
                if (w == v)
                    break;
            }
            ++comps;
        }
    }
};

// Johnson's elementary-circuit search within one strongly connected
// component; vertices outside `in_comp` are ignored.
struct CircuitSearch {
    const std::vector<std::vector<int>>& adj;
    const std::vector<bool>& in_comp;
    int start;
    std::size_t cap;
    std::vector<std::vector<int>>& out;

    std::vector<bool> blocked;
    std::vector<std::vector<int>> block_list;
    std::vector<int> path;

    CircuitSearch(const std::vector<std::vector<int>>& a, const std::vector<bool>& ic, int s,
                  std::size_t cap_, std::vector<std::vector<int>>& o)
        : adj(a), in_comp(ic), start(s), cap(cap_), out(o), blocked(a.size(), false),
          block_list(a.size()) {}

    void unblock(int v) {
        blocked[static_cast<std::size_t>(v)] = false;
        for (int w : block_list[static_cast<std::size_t>(v)])
            if (blocked[static_cast<std::size_t>(w)])
                unblock(w);
        block_list[static_cast<std::size_t>(v)].clear();
    }

    bool circuit(int v) {
        bool found = false;
        path.push_back(v);
        blocked[static_cast<std::size_t>(v)] = true;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!in_comp[static_cast<std::size_t>(w)])
                continue;
            if (w == start) {
                if (out.size() >= cap)
                    throw budget_error("cycle enumeration exceeded the cap of " +
                                       std::to_string(cap) + " cycles");
                out.push_back(path);
                found = true;
            } else if (!blocked[static_cast<std::size_t>(w)]) {
                if (circuit(w))
                    found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (!in_comp[static_cast<std::size_t>(w)])
                    continue;
                auto& bl = block_list[static_cast<std::size_t>(w)];
                if (std::find(bl.begin(), bl.end(), v) == bl.end())
                    bl.push_back(v);
            }
        }
        path.pop_back();
        return found;
    }
};

} // namespace

std::vector<Cycle> enumerate_simple_cycles(const DepGraph& g, std::size_t max_cycles) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    std::vector<std::vector<int>> node_lists;
    std::map<std::pair<int, int>, const Polynomial*> weight;
    for (const auto& e : g.edges) {
        weight[{e.from, e.to}] = &e.weight;
        if (e.from == e.to) {
            if (node_lists.size() >= max_cycles)
                throw budget_error("cycle enumeration exceeded the cap of " +
                                   std::to_string(max_cycles) + " cycles");
            node_lists.push_back({e.from}); // self-loop
        } else {
            adj[static_cast<std::size_t>(e.from)].push_back(e.to);
        }
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    // Johnson's outer loop: repeatedly take the smallest vertex living in a
    // nontrivial strongly connected component of the remaining subgraph.
    int s = 0;
    while (s < g.n) {
        std::vector<bool> alive(static_cast<std::size_t>(g.n), false);
        for (int v = s; v < g.n; ++v)
            alive[static_cast<std::size_t>(v)] = true;
        Tarjan scc(adj, alive);
        int best = -1;
        for (int v = s; v < g.n; ++v) {
            if (best >= 0)
                break;
            int c = scc.comp[static_cast<std::size_t>(v)];
            // nontrivial iff some other vertex shares the component
            for (int w = v + 1; w < g.n; ++w)
                if (scc.comp[static_cast<std::size_t>(w)] == c) {
                    best = v;
                    break;
                }
        }
        if (best < 0)
            break;
        std::vector<bool> in_comp(static_cast<std::size_t>(g.n), false);
        int cid = scc.comp[static_cast<std::size_t>(best)];
        for (int v = best; v < g.n; ++v)
            in_comp[static_cast<std::size_t>(v)] = scc.comp[static_cast<std::size_t>(v)] == cid;
        CircuitSearch search(adj, in_comp, best, max_cycles, node_lists);
        search.circuit(best);
        s = best + 1;
    }

    std::sort(node_lists.begin(), node_lists.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size())
                      return a.size() < b.size();
                  return a < b;
              });

    std::vector<Cycle> cycles;
    cycles.reserve(node_lists.size());
    for (auto& nodes : node_lists) {
        Polynomial prod = Polynomial::constant(g.n, Rational(1));
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            int from = nodes[i];
            int to = nodes[(i + 1) % nodes.size()];
            prod = prod * *weight.at({from, to});
        }
        cycles.push_back({std::move(nodes), std::move(prod)});
    }
    return cycles;
}

WdgReport check_wdg(const VectorField& f, std::size_t max_cycles) {
    WdgReport r;
    r.graph = build_graph(f);
    r.cycles = enumerate_simple_cycles(r.graph, max_cycles);
    r.satisfied = true;
    for (const auto& c : r.cycles) {
        if (!c.product.is_constant()) {
            r.satisfied = false;
            r.offending = c;
            break;
        }
    }
    return r;
}

StabilizedSystem wdg_stabilize(const RatMatrix& a, const ElementaryGen& gen) {
    int n = a.rows();
    if (a.cols() != n)
        throw dimension_error("linear part must be square");
    if (gen.n() != n)
        throw dimension_error("shear dimension does not match the linear system");
    if (gen.target != n - 1)
        throw validity_error("stabilization expects the shear at the last slot");

    StabilizedSystem out;
    out.observable = Polynomial::variable(n, n - 1) - gen.g;

    // State layout (see header): coordinates 0..n-2 are the transformed ones,
    // coordinate n-1 is the observable, coordinate n is the transformed last
    // coordinate. The first n states follow the original linear dynamics.
    int nn = n + 1;
    std::vector<Polynomial> linear_rows;
    linear_rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial row = Polynomial::zero(nn);
        for (int j = 0; j < n; ++j)
            if (a.at(i, j) != 0)
                row += Polynomial::variable(nn, j).scaled(a.at(i, j));
        linear_rows.push_back(std::move(row));
    }
    std::vector<Polynomial> comps = linear_rows;
    Polynomial last = linear_rows[static_cast<std::size_t>(n - 1)];
    for (int i = 0; i < n - 1; ++i) {
        Polynomial dg = gen.g.partial_derivative(i).embedded(nn);
        if (!dg.is_zero())
            last += dg * linear_rows[static_cast<std::size_t>(i)];
    }
    comps.push_back(std::move(last));
    out.lifted = VectorField(nn, std::move(comps));
    out.report = check_wdg(out.lifted);
    return out;
}

bool elementary_preserves_wdg(const RatMatrix& a) {
    if (a.rows() != a.cols())
        throw dimension_error("linear part must be square");
    int n = a.rows();
    for (int i = 0; i + 1 < n; ++i)
        if (a.at(i, n - 1) != 0)
            return false;
    return true;
}

std::string dot_export(const DepGraph& g, const std::vector<std::string>& names,
                       const std::vector<Cycle>* cycles) {
    std::vector<std::string> nm = names.empty() ? default_names(g.n) : names;
    if (static_cast<int>(nm.size()) != g.n)
        throw dimension_error("name list does not match the graph");
    std::string out = "digraph wdg {\n";
    for (const auto& e : g.edges)
        out += "  " + nm[static_cast<std::size_t>(e.from)] + " -> " +
               nm[static_cast<std::size_t>(e.to)] + " [label=\"" +
               render_polynomial(e.weight, nm) + "\"];\n";
    if (cycles) {
        for (const auto& c : *cycles) {
            out += "  // cycle:";
            for (int v : c.nodes)
                out += " " + nm[static_cast<std::size_t>(v)];
            out += "  product " + render_polynomial(c.product, nm);
            out += c.product.is_constant() ? " (constant)\n" : " (non-constant)\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace superlin
