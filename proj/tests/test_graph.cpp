#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "support.hpp"
#include "zhat/homology.hpp"

using namespace zhat;
using testing::graph;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::domain;
}

PlumbingGraph shuffled(const PlumbingGraph& g, std::mt19937_64& rng)
{
    std::vector<int> ids(g.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        ids[i] = 100 + static_cast<int>(i) * 3;
    std::shuffle(ids.begin(), ids.end(), rng);
    auto remap = [&](int id) { return ids[g.index_of(id)]; };
    PlumbingGraph h;
    for (const auto& v : g.vertices)
        h.vertices.push_back({remap(v.id), v.weight});
    std::shuffle(h.vertices.begin(), h.vertices.end(), rng);
    for (auto [a, b] : g.edges)
        h.edges.push_back(rng() % 2 ? std::pair{remap(a), remap(b)} : std::pair{remap(b), remap(a)});
    std::shuffle(h.edges.begin(), h.edges.end(), rng);
    return h;
}

} // namespace

TEST_CASE("adjacency matrix of the S^3 star")
{
    MatrixZ B = adjacency(graph("s3"));
    CHECK(equal(B, testing::matrix({{4, 1, 1, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}})));
    CHECK((graph("s3").degrees() == std::vector<int>{3, 1, 1, 1}));
}

TEST_CASE("validation rejects malformed graphs")
{
    PlumbingGraph dup{{{0, 1}, {0, 2}}, {}};
    CHECK(kind_of([&] { validate(dup); }) == ErrorKind::invalid_graph);
    PlumbingGraph dangling{{{0, 1}}, {{0, 1}}};
    CHECK(kind_of([&] { validate(dangling); }) == ErrorKind::invalid_graph);
    PlumbingGraph loop{{{0, 1}}, {{0, 0}}};
    CHECK(kind_of([&] { validate(loop); }) == ErrorKind::invalid_graph);
    PlumbingGraph multi{{{0, 1}, {1, 1}}, {{0, 1}, {1, 0}}};
    CHECK(kind_of([&] { validate(multi); }) == ErrorKind::invalid_graph);
    PlumbingGraph cycle{{{0, 1}, {1, 1}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}}};
    CHECK(kind_of([&] { validate(cycle); }) == ErrorKind::invalid_graph);
    CHECK(kind_of([&] { testing::graph("disconnected"); }) == ErrorKind::invalid_graph);
}

TEST_CASE("canonical form is invariant under relabeling")
{
    std::mt19937_64 rng(5);
    for (const char* name : {"s3", "fig1_3", "fig1_5", "fig2_2", "fig2_9", "fig4_7"}) {
        PlumbingGraph g = graph(name);
        for (int t = 0; t < 5; ++t) {
            PlumbingGraph h = shuffled(g, rng);
            CHECK((canonicalize(h) == canonicalize(g)));
            CHECK(isomorphic(g, h));
            // determinant is a relabeling invariant
            CHECK(determinant(adjacency(h)) == determinant(adjacency(g)));
        }
    }
    CHECK_FALSE(isomorphic(graph("fig2_3"), graph("fig2_4")));
    CHECK_FALSE(isomorphic(graph("det2"), graph("det3")));
}

TEST_CASE("genericity")
{
    auto check = [](const char* name) {
        PlumbingGraph g = graph(name);
        return is_generic(g, exact_inverse(adjacency(g)));
    };
    CHECK(check("s3").is_generic);
    CHECK(check("fig2_9").is_generic);
    auto chain = check("chain");
    CHECK_FALSE(chain.is_generic);
    CHECK(chain.failed_condition == GenericityFailure::no_high_degree_vertex);

    // a 0-leaf on one trivalent vertex kills the inverse entry to the other
    PlumbingGraph h{{{0, 0}, {1, 0}, {2, 1}, {3, 0}, {4, 0}, {5, 1}, {6, 1}},
                    {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}, {4, 6}}};
    MatrixQ inv = exact_inverse(adjacency(h));
    REQUIRE(inv(0, 4) == 0);
    auto rep = is_generic(h, inv);
    CHECK_FALSE(rep.is_generic);
    CHECK((rep.failed_condition == GenericityFailure::splittable_high_degree_set));
    CHECK(rep.witness == std::pair{0, 4});
}

TEST_CASE("blow-down of a +1 leaf")
{
    PlumbingGraph g = graph("fig1_2");
    PlumbingGraph h = apply_move(g, {MoveKind::blow_down, 4});
    CHECK(isomorphic(h, graph("fig1_1")));
    CHECK(kind_of([&] { apply_move(graph("sigma237"), {MoveKind::blow_down, 1}); }) == ErrorKind::inapplicable_move);
    CHECK(kind_of([&] { apply_move(g, {MoveKind::blow_down, 0}); }) == ErrorKind::inapplicable_move);
    CHECK(kind_of([&] { apply_move(g, {MoveKind::blow_down, 42}); }) == ErrorKind::inapplicable_move);
}

TEST_CASE("absorbing the 0-vertex of the chain presentation")
{
    PlumbingGraph h = apply_move(graph("fig1_5"), {MoveKind::absorb, 2});
    CHECK(isomorphic(h, graph("fig1_1")));
    CHECK(kind_of([&] { apply_move(graph("fig1_5"), {MoveKind::absorb, 1}); }) == ErrorKind::inapplicable_move);
    PlumbingGraph k = apply_move(graph("fig2_9"), {MoveKind::absorb, 2});
    CHECK(isomorphic(k, graph("fig2_1")));
}

TEST_CASE("Figure 1 and 2 presentations are reachable by the moves")
{
    CHECK(isomorphic(apply_move(graph("fig1_1"), {MoveKind::blow_up, 0}), graph("fig1_2")));
    CHECK(isomorphic(apply_move(graph("fig1_1"), {MoveKind::blow_up, 1}), graph("fig1_3")));
    CHECK(isomorphic(apply_move(graph("fig2_1"), {MoveKind::blow_up, 0}), graph("fig2_2")));
    CHECK(isomorphic(apply_move(graph("fig2_1"), {MoveKind::blow_up, 1}), graph("fig2_3")));
    CHECK(isomorphic(apply_move(graph("fig2_1"), {MoveKind::blow_up, 3}), graph("fig2_5")));
    // the drawn fourth S^3 graph is not a blow-up of any other member
    bool reached = false;
    for (const char* name : {"fig1_1", "fig1_2", "fig1_3"}) {
        PlumbingGraph g = graph(name);
        for (const auto& v : g.vertices)
            reached = reached || isomorphic(apply_move(g, {MoveKind::blow_up, v.id}), graph("fig1_4"));
    }
    CHECK_FALSE(reached);
}

TEST_CASE("moves round-trip through their inverses")
{
    std::vector<std::pair<const char*, MoveSpec>> cases = {
        {"s3", {MoveKind::blow_up, 0}},
        {"s3", {MoveKind::blow_up, 2}},
        {"fig1_2", {MoveKind::blow_down, 3}},
        {"fig1_5", {MoveKind::absorb, 2}},
        {"fig2_9", {MoveKind::absorb, 2}},
        {"s3", {MoveKind::insert, 0, 1, {2, 3}}},
    };
    for (auto& [name, mv] : cases) {
        PlumbingGraph g = graph(name);
        PlumbingGraph h = apply_move(g, mv);
        PlumbingGraph back = apply_move(h, inverse_move(g, mv));
        CHECK(isomorphic(back, g));
        // |det B| is unchanged by every move
        CHECK(abs(determinant(adjacency(h))) == abs(determinant(adjacency(g))));
    }
}

TEST_CASE("move names")
{
    for (auto k : {MoveKind::blow_down, MoveKind::blow_up, MoveKind::absorb, MoveKind::insert})
        CHECK(parse_move_kind(to_string(k)) == k);
    CHECK(kind_of([] { parse_move_kind("twist"); }) == ErrorKind::parse);
}

TEST_CASE("label vertex is the heaviest leaf")
{
    CHECK(label_vertex(graph("det3")) == 3);
    CHECK(label_vertex(graph("s3")) == 3);
}

TEST_CASE("graph files: JSON and star shorthand")
{
    CHECK((parse_graph("1: 2 3 9") == graph("det3")));
    CHECK((graph_from_json(graph_to_json(graph("fig2_9"))) == graph("fig2_9")));
    CHECK(kind_of([] { parse_graph("{\"vertices\": 3}"); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_graph("1 2 3"); }) == ErrorKind::parse);
    CHECK(kind_of([] { load_graph("/nonexistent.json"); }) == ErrorKind::parse);
}
