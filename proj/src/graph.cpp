#include "zhat/graph.hpp"
#include "zhat/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace zhat {

int PlumbingGraph::index_of(int id) const
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id)
            return static_cast<int>(i);
    throw Error(ErrorKind::invalid_graph, "no vertex with id " + std::to_string(id));
}

int PlumbingGraph::max_id() const
{
    int m = -1;
    for (const auto& v : vertices)
        m = std::max(m, v.id);
    return m;
}

std::vector<int> PlumbingGraph::degrees() const
{
    std::vector<int> deg(vertices.size(), 0);
    for (const auto& [a, b] : edges) {
        ++deg[index_of(a)];
        ++deg[index_of(b)];
    }
    return deg;
}

std::vector<std::vector<int>> PlumbingGraph::neighbors() const
{
    std::vector<std::vector<int>> nb(vertices.size());
    for (const auto& [a, b] : edges) {
        int ia = index_of(a), ib = index_of(b);
        nb[ia].push_back(ib);
        nb[ib].push_back(ia);
    }
    return nb;
}

void validate(const PlumbingGraph& g)
{
    if (g.vertices.empty())
        throw Error(ErrorKind::invalid_graph, "graph has no vertices");
    std::set<int> ids;
    for (const auto& v : g.vertices)
        if (!ids.insert(v.id).second)
            throw Error(ErrorKind::invalid_graph, "duplicate vertex id " + std::to_string(v.id));
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : g.edges) {
        if (!ids.count(a) || !ids.count(b))
            throw Error(ErrorKind::invalid_graph,
                        "edge (" + std::to_string(a) + "," + std::to_string(b) + ") references a missing vertex");
        if (a == b)
            throw Error(ErrorKind::invalid_graph, "self-loop at vertex " + std::to_string(a));
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw Error(ErrorKind::invalid_graph,
                        "multi-edge between " + std::to_string(a) + " and " + std::to_string(b));
    }
    // connected + |E| = |V| - 1  <=>  tree
    auto nb = g.neighbors();
    std::vector<bool> reached(g.size(), false);
    std::vector<int> stack{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : nb[v])
            if (!reached[w]) {
                reached[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != g.size())
        throw Error(ErrorKind::invalid_graph, "graph is disconnected");
    if (g.edges.size() != g.size() - 1)
        throw Error(ErrorKind::invalid_graph, "graph contains a cycle");
}

MatrixZ adjacency(const PlumbingGraph& g)
{
    validate(g);
    const auto L = static_cast<Eigen::Index>(g.size());
    MatrixZ B = MatrixZ::Zero(L, L);
    for (Eigen::Index i = 0; i < L; ++i)
        B(i, i) = g.vertices[i].weight;
    for (const auto& [a, b] : g.edges) {
        int ia = g.index_of(a), ib = g.index_of(b);
        B(ia, ib) = 1;
        B(ib, ia) = 1;
    }
    return B;
}

namespace {

using Code = std::vector<std::int64_t>;
constexpr std::int64_t kOpen = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kClose = kOpen + 1;

Code encode(const PlumbingGraph& g, const std::vector<std::vector<int>>& nb, int v, int parent)
{
    std::vector<Code> kids;
    for (int w : nb[v])
        if (w != parent)
            kids.push_back(encode(g, nb, w, v));
    std::sort(kids.begin(), kids.end());
    Code c{kOpen, g.vertices[v].weight};
    for (const auto& k : kids)
        c.insert(c.end(), k.begin(), k.end());
    c.push_back(kClose);
    return c;
}

std::vector<int> tree_centers(const std::vector<std::vector<int>>& nb)
{
    const std::size_t n = nb.size();
    std::vector<int> deg(n);
    std::vector<int> layer;
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = static_cast<int>(nb[i].size());
        if (deg[i] <= 1)
            layer.push_back(static_cast<int>(i));
    }
    std::size_t remaining = n;
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<int> next;
        for (int v : layer)
            for (int w : nb[v])
                if (--deg[w] == 1)
                    next.push_back(w);
        layer = next;
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

} // namespace

PlumbingGraph canonicalize(const PlumbingGraph& g)
{
    validate(g);
    auto nb = g.neighbors();
    int root = -1;
    Code best;
    for (int c : tree_centers(nb)) {
        Code code = encode(g, nb, c, -1);
        if (root < 0 || code < best) {
            best = code;
            root = c;
        }
    }
    // BFS with children ordered by subtree code
    std::vector<int> order;
    std::vector<int> parent(g.size(), -1);
    std::queue<int> q;
    q.push(root);
    parent[root] = root;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        std::vector<std::pair<Code, int>> kids;
        for (int w : nb[v])
            if (parent[w] < 0) {
                parent[w] = v;
                kids.push_back({encode(g, nb, w, v), w});
            }
        std::stable_sort(kids.begin(), kids.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& k : kids)
            q.push(k.second);
    }
    std::vector<int> new_id(g.size());
    PlumbingGraph out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        new_id[order[k]] = static_cast<int>(k);
        out.vertices.push_back({static_cast<int>(k), g.vertices[order[k]].weight});
    }
    for (const auto& [a, b] : g.edges) {
        int x = new_id[g.index_of(a)], y = new_id[g.index_of(b)];
        out.edges.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

bool isomorphic(const PlumbingGraph& a, const PlumbingGraph& b)
{
    return canonicalize(a) == canonicalize(b);
}

PlumbingGraph star(std::int64_t center, const std::vector<std::int64_t>& legs)
{
    PlumbingGraph g;
    g.vertices.push_back({0, center});
    for (std::size_t i = 0; i < legs.size(); ++i) {
        g.vertices.push_back({static_cast<int>(i + 1), legs[i]});
        g.edges.push_back({0, static_cast<int>(i + 1)});
    }
    return g;
}

int label_vertex(const PlumbingGraph& g)
{
    auto deg = g.degrees();
    int best = -1;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (deg[i] == 1 && (best < 0 || g.vertices[i].weight >= g.vertices[best].weight))
            best = static_cast<int>(i);
    return best < 0 ? static_cast<int>(g.size()) - 1 : best;
}

GenericityReport is_generic(const PlumbingGraph& g, const MatrixQ& Binv)
{
    GenericityReport rep;
    auto deg = g.degrees();
    std::vector<int> high;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (deg[i] > 2)
            high.push_back(static_cast<int>(i));
    if (high.empty()) {
        rep.is_generic = false;
        rep.failed_condition = GenericityFailure::no_high_degree_vertex;
        return rep;
    }
    // Any vanishing entry between two high-degree vertices I, J gives the
    // splitting U = {I}, W = rest.
    for (std::size_t a = 0; a < high.size(); ++a)
        for (std::size_t b = a + 1; b < high.size(); ++b)
            if (Binv(high[a], high[b]) == 0) {
                rep.is_generic = false;
                rep.failed_condition = GenericityFailure::splittable_high_degree_set;
                rep.witness = {g.vertices[high[a]].id, g.vertices[high[b]].id};
                return rep;
            }
    return rep;
}

const char* to_string(MoveKind kind)
{
    switch (kind) {
    case MoveKind::blow_down: return "blow-down";
    case MoveKind::blow_up: return "blow-up";
    case MoveKind::absorb: return "absorb";
    case MoveKind::insert: return "insert";
    }
    return "?";
}

MoveKind parse_move_kind(const std::string& name)
{
    for (auto k : {MoveKind::blow_down, MoveKind::blow_up, MoveKind::absorb, MoveKind::insert})
        if (name == to_string(k))
            return k;
    throw Error(ErrorKind::parse, "unknown move '" + name + "'");
}

namespace {

[[noreturn]] void inapplicable(const MoveSpec& m, const std::string& why)
{
    throw Error(ErrorKind::inapplicable_move,
                std::string(to_string(m.kind)) + " at vertex " + std::to_string(m.site) + ": " + why);
}

} // namespace

PlumbingGraph apply_move(const PlumbingGraph& g, const MoveSpec& move)
{
    validate(g);
    auto has = [&](int id) {
        return std::any_of(g.vertices.begin(), g.vertices.end(), [&](const Vertex& v) { return v.id == id; });
    };
    if (!has(move.site))
        inapplicable(move, "no such vertex");
    const int s = g.index_of(move.site);
    auto deg = g.degrees();
    auto nb = g.neighbors();
    PlumbingGraph out;

    switch (move.kind) {
    case MoveKind::blow_down: {
        if (g.vertices[s].weight != 1)
            inapplicable(move, "vertex weight is not +1");
        if (deg[s] != 1)
            inapplicable(move, "vertex is not a leaf");
        int other = g.vertices[nb[s][0]].id;
        for (const auto& v : g.vertices)
            if (v.id != move.site)
                out.vertices.push_back({v.id, v.id == other ? v.weight - 1 : v.weight});
        for (const auto& e : g.edges)
            if (e.first != move.site && e.second != move.site)
                out.edges.push_back(e);
        break;
    }
    case MoveKind::blow_up: {
        out = g;
        out.vertices[s].weight += 1;
        int leaf = g.max_id() + 1;
        out.vertices.push_back({leaf, 1});
        out.edges.push_back({move.site, leaf});
        break;
    }
    case MoveKind::absorb: {
        if (g.vertices[s].weight != 0)
            inapplicable(move, "vertex weight is not 0");
        if (deg[s] != 2)
            inapplicable(move, "vertex does not have degree 2");
        int u = g.vertices[nb[s][0]].id, w = g.vertices[nb[s][1]].id;
        int keep = std::min(u, w), gone = std::max(u, w);
        std::int64_t merged = g.vertices[g.index_of(u)].weight + g.vertices[g.index_of(w)].weight;
        for (const auto& v : g.vertices) {
            if (v.id == move.site || v.id == gone)
                continue;
            out.vertices.push_back({v.id, v.id == keep ? merged : v.weight});
        }
        for (auto [a, b] : g.edges) {
            if (a == move.site || b == move.site)
                continue;
            if (a == gone)
                a = keep;
            if (b == gone)
                b = keep;
            out.edges.push_back({a, b});
        }
        break;
    }
    case MoveKind::insert: {
        std::set<int> site_nb;
        for (int w : nb[s])
            site_nb.insert(g.vertices[w].id);
        std::set<int> moved(move.moved_neighbors.begin(), move.moved_neighbors.end());
        if (moved.size() != move.moved_neighbors.size())
            inapplicable(move, "repeated neighbor in split");
        for (int m : moved)
            if (!site_nb.count(m))
                inapplicable(move, "vertex " + std::to_string(m) + " is not a neighbor");
        int zero = g.max_id() + 1, split = g.max_id() + 2;
        out.vertices = g.vertices;
        out.vertices[s].weight -= move.split_weight;
        out.vertices.push_back({zero, 0});
        out.vertices.push_back({split, move.split_weight});
        for (auto [a, b] : g.edges) {
            if (a == move.site && moved.count(b))
                a = split;
            else if (b == move.site && moved.count(a))
                b = split;
            out.edges.push_back({a, b});
        }
        out.edges.push_back({move.site, zero});
        out.edges.push_back({zero, split});
        break;
    }
    }
    validate(out);
    return out;
}

MoveSpec inverse_move(const PlumbingGraph& g, const MoveSpec& move)
{
    const int s = g.index_of(move.site);
    auto nb = g.neighbors();
    switch (move.kind) {
    case MoveKind::blow_down:
        return MoveSpec{MoveKind::blow_up, g.vertices[nb[s][0]].id};
    case MoveKind::blow_up:
        return MoveSpec{MoveKind::blow_down, g.max_id() + 1};
    case MoveKind::absorb: {
        int u = g.vertices[nb[s][0]].id, w = g.vertices[nb[s][1]].id;
        int keep = std::min(u, w), gone = std::max(u, w);
        MoveSpec inv{MoveKind::insert, keep};
        inv.split_weight = g.vertices[g.index_of(gone)].weight;
        for (int x : nb[g.index_of(gone)])
            if (g.vertices[x].id != move.site)
                inv.moved_neighbors.push_back(g.vertices[x].id);
        return inv;
    }
    case MoveKind::insert:
        return MoveSpec{MoveKind::absorb, g.max_id() + 1};
    }
    throw Error(ErrorKind::inapplicable_move, "unknown move");
}

} // namespace zhat
