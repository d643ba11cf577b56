#include "pamed/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>
#include <sstream>

#include "pamed/errors.hpp"

namespace pamed {

int LatticeGraph::num_layer1_sites() const {
    return static_cast<int>(std::count(layer.begin(), layer.end(), 1));
}

bool LatticeGraph::is_doubled() const {
    return std::find(layer.begin(), layer.end(), 2) != layer.end();
}

namespace {

LatticeGraph make_layer1(int num_sites, std::vector<Bond> bonds) {
    LatticeGraph g;
    g.num_sites = num_sites;
    g.bonds = std::move(bonds);
    g.layer.assign(num_sites, 1);
    g.partner.assign(num_sites, -1);
    g.sublattice = two_color(g);
    return g;
}

void check_wrap(int extent, const char* direction) {
    if (extent % 2 == 1)
        throw NonBipartite(std::string("periodic ") + direction + " extent " +
                           std::to_string(extent) + " is an odd cycle");
    if (extent == 2)
        throw DegenerateBond(std::string("periodic ") + direction +
                             " extent 2 duplicates a bond");
}

}  // namespace

LatticeGraph build_chain(int length, Boundary boundary) {
    if (length < 1) throw ConfigError("chain length must be >= 1");
    std::vector<Bond> bonds;
    for (int i = 0; i + 1 < length; ++i) bonds.push_back({i, i + 1, 1.0});
    if (boundary == Boundary::periodic) {
        check_wrap(length, "chain");
        bonds.push_back({length - 1, 0, 1.0});
    }
    return make_layer1(length, std::move(bonds));
}

LatticeGraph build_square(int lx, int ly, Boundary boundary) {
    if (lx < 1 || ly < 1) throw ConfigError("square extents must be >= 1");
    const bool periodic = boundary == Boundary::periodic;
    // Extent-1 directions carry no bonds, so wrapping them is a no-op.
    if (periodic && lx > 1) check_wrap(lx, "x");
    if (periodic && ly > 1) check_wrap(ly, "y");

    auto site = [lx](int x, int y) { return y * lx + x; };
    std::vector<Bond> bonds;
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            if (x + 1 < lx) bonds.push_back({site(x, y), site(x + 1, y), 1.0});
            else if (periodic && lx > 1) bonds.push_back({site(x, y), site(0, y), 1.0});
            if (y + 1 < ly) bonds.push_back({site(x, y), site(x, y + 1), 1.0});
            else if (periodic && ly > 1) bonds.push_back({site(x, y), site(x, 0), 1.0});
        }
    }
    return make_layer1(lx * ly, std::move(bonds));
}

LatticeGraph layer_double(const LatticeGraph& layer1, double t, double hybridization) {
    if (layer1.is_doubled()) throw ConfigError("layer_double input is already doubled");
    if (t < 0.0) throw ConfigError("hopping t must be >= 0");
    if (hybridization < 0.0) throw ConfigError("hybridization V must be >= 0");

    const int n = layer1.num_sites;
    LatticeGraph g;
    g.num_sites = 2 * n;
    g.layer.assign(2 * n, 1);
    g.partner.assign(2 * n, -1);
    for (int i = 0; i < n; ++i) {
        g.layer[n + i] = 2;
        g.partner[i] = n + i;
        g.partner[n + i] = i;
    }
    for (const Bond& b : layer1.bonds) g.bonds.push_back({b.r, b.h, +t});
    for (int i = 0; i < n; ++i) g.bonds.push_back({i, n + i, -hybridization});
    g.sublattice = two_color(g);
    return g;
}

std::vector<Sublattice> two_color(const LatticeGraph& graph) {
    const int n = graph.num_sites;
    std::vector<std::vector<int>> adj(n);
    for (const Bond& b : graph.bonds) {
        adj[b.r].push_back(b.h);
        adj[b.h].push_back(b.r);
    }

    std::vector<int> color(n, 0);   // 0 unvisited, +1 A, -1 B
    std::vector<int> parent(n, -1);
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        color[start] = +1;  // gauge: first site of each component is A
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (color[v] == 0) {
                    color[v] = -color[u];
                    parent[v] = u;
                    q.push(v);
                } else if (color[v] == color[u] && v != u) {
                    // Walk both endpoints up to their BFS roots to report the cycle.
                    std::ostringstream cyc;
                    cyc << "odd cycle through bond (" << u << "," << v << "); path ";
                    for (int w = u; w != -1; w = parent[w]) cyc << w << " ";
                    cyc << "| ";
                    for (int w = v; w != -1; w = parent[w]) cyc << w << " ";
                    throw NonBipartite(cyc.str());
                } else if (v == u) {
                    throw NonBipartite("self-loop at site " + std::to_string(u));
                }
            }
        }
    }

    std::vector<Sublattice> out(n);
    for (int i = 0; i < n; ++i) out[i] = color[i] > 0 ? Sublattice::A : Sublattice::B;
    return out;
}

void write_edge_list(const LatticeGraph& graph, std::ostream& out) {
    char buf[64];
    for (const Bond& b : graph.bonds) {
        std::snprintf(buf, sizeof buf, "%.17g", b.amplitude);
        out << b.r << ' ' << b.h << ' ' << buf << '\n';
    }
}

}  // namespace pamed
