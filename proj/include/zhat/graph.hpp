#ifndef ZHAT_GRAPH_HPP
#define ZHAT_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhat/numeric.hpp"

namespace zhat {

struct Vertex {
    int id;
    std::int64_t weight;
    bool operator==(const Vertex&) const = default;
};

// Weighted plumbing tree. Vertex order is the coordinate order of B.
struct PlumbingGraph {
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;

    std::size_t size() const { return vertices.size(); }
    int index_of(int id) const;
    int max_id() const;
    std::vector<int> degrees() const;
    std::vector<std::vector<int>> neighbors() const; // by index
    bool operator==(const PlumbingGraph&) const = default;
};

// Throws ErrorKind::invalid_graph on duplicate ids, dangling edges,
// self-loops, multi-edges, cycles or disconnection.
void validate(const PlumbingGraph& g);

MatrixZ adjacency(const PlumbingGraph& g);

// Relabel to ids 0..L-1 in BFS order from the tree center, children ordered
// by their weighted subtree encoding. Isomorphic trees map to equal graphs.
PlumbingGraph canonicalize(const PlumbingGraph& g);

bool isomorphic(const PlumbingGraph& a, const PlumbingGraph& b);

// Star with the given center weight and one leaf per entry of legs.
PlumbingGraph star(std::int64_t center, const std::vector<std::int64_t>& legs);

// Index of the degree-1 vertex of largest weight (last one on ties).
int label_vertex(const PlumbingGraph& g);

enum class GenericityFailure { no_high_degree_vertex, splittable_high_degree_set };

struct GenericityReport {
    bool is_generic = true;
    std::optional<GenericityFailure> failed_condition;
    std::optional<std::pair<int, int>> witness; // vertex ids
};

GenericityReport is_generic(const PlumbingGraph& g, const MatrixQ& Binv);

enum class MoveKind {
    blow_down, // remove a weight +1 leaf at site, neighbor weight -1
    blow_up,   // attach a weight +1 leaf to site, site weight +1
    absorb,    // delete weight 0 degree 2 vertex site, merge its neighbors
    insert,    // split site into two vertices joined through a new 0-vertex
};

struct MoveSpec {
    MoveKind kind;
    int site;
    // insert only: weight of the split-off vertex and the neighbor ids it takes
    std::int64_t split_weight = 0;
    std::vector<int> moved_neighbors;
};

PlumbingGraph apply_move(const PlumbingGraph& g, const MoveSpec& move);

// The move that undoes `move` when applied to apply_move(g, move).
MoveSpec inverse_move(const PlumbingGraph& g, const MoveSpec& move);

const char* to_string(MoveKind kind);
MoveKind parse_move_kind(const std::string& name);

} // namespace zhat

#endif
