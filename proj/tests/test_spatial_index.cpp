#include "mobnet/spatial_index.hpp"
#include "support/oracles.hpp"
#include "support/property_checks.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mobnet;

namespace {

Positions layout(std::initializer_list<Position> pts) {
    Positions p;
    for (const auto& q : pts) {
        p.x.push_back(q.x);
        p.y.push_back(q.y);
    }
    return p;
}

} // namespace

TEST_SUITE("spatial_index") {

TEST_CASE("empty layout") {
    NeighborIndex index(10, 1, Metric::torus);
    index.rebuild(Positions{}, 0);
    CHECK(index.agent_count() == 0);
    std::size_t total = 0;
    for (std::size_t c = 0; c < index.cells_per_side() * index.cells_per_side(); ++c) {
        total += index.bucket_size(c);
    }
    CHECK(total == 0);
}

TEST_CASE("all agents at one point share a bucket") {
    Positions p;
    p.x.assign(40, 3.3);
    p.y.assign(40, 7.7);
    NeighborIndex index(10, 1, Metric::torus);
    index.rebuild(p, 0);
    CHECK(index.bucket_size(index.bucket_of(0)) == 40);
    CHECK(index.neighbors_of(5, 0).size() == 39);
}

TEST_CASE("bucket counts sum to N") {
    Rng rng(4);
    Positions p;
    for (int i = 0; i < 300; ++i) {
        p.x.push_back(rng.uniform01() * 10);
        p.y.push_back(rng.uniform01() * 10);
    }
    NeighborIndex index(10, 1, Metric::torus);
    index.rebuild(p, 0);
    std::size_t total = 0;
    for (std::size_t c = 0; c < index.cells_per_side() * index.cells_per_side(); ++c) {
        total += index.bucket_size(c);
        for (AgentId i : index.bucket(c)) {
            CHECK(index.bucket_of(i) == c);
        }
    }
    CHECK(total == 300);
}

TEST_CASE("strict radius") {
    NeighborIndex index(10, 1, Metric::torus);
    SUBCASE("distance r/2 is a neighbor both ways") {
        index.rebuild(layout({{2, 2}, {2.5, 2}}), 0);
        CHECK(index.neighbors_of(0, 0) == std::vector<AgentId>{1});
        CHECK(index.neighbors_of(1, 0) == std::vector<AgentId>{0});
    }
    SUBCASE("distance exactly r is not") {
        index.rebuild(layout({{2, 2}, {3, 2}}), 0);
        CHECK(index.neighbors_of(0, 0).empty());
        CHECK(index.neighbors_of(1, 0).empty());
    }
    SUBCASE("neighbors across the wrap") {
        index.rebuild(layout({{0.1, 5}, {9.8, 5}, {5, 9.9}, {5, 0.2}}), 0);
        CHECK(index.neighbors_of(0, 0) == std::vector<AgentId>{1});
        CHECK(index.neighbors_of(2, 0) == std::vector<AgentId>{3});
    }
}

TEST_CASE("euclidean metric does not wrap") {
    NeighborIndex index(10, 1, Metric::euclidean);
    index.rebuild(layout({{0.1, 5}, {9.8, 5}}), 0);
    CHECK(index.neighbors_of(0, 0).empty());
}

TEST_CASE("radius too large for a 3x3 block uses one cell") {
    NeighborIndex index(10, 4, Metric::torus);
    CHECK(index.cells_per_side() == 1);
    index.rebuild(layout({{0.5, 0.5}, {8, 8}, {5, 5}}), 0);
    CHECK(index.neighbors_of(0, 0) == std::vector<AgentId>{1});
}

TEST_CASE("50 random agents agree with the brute-force scan") {
    Rng rng(50);
    Positions p;
    for (int i = 0; i < 50; ++i) {
        p.x.push_back(rng.uniform01() * 10);
        p.y.push_back(rng.uniform01() * 10);
    }
    for (double r : {0.5, 1.0, 2.0, 3.3}) {
        NeighborIndex index(10, r, Metric::torus);
        index.rebuild(p, 3);
        for (AgentId i = 0; i < 50; ++i) {
            CHECK(index.neighbors_of(i, 3) == oracle::neighbors(p, i, r, 10, Metric::torus));
        }
    }
}

TEST_CASE("neighborhoods are symmetric and never include self") {
    Rng rng(77);
    Positions p;
    for (int i = 0; i < 400; ++i) {
        p.x.push_back(rng.uniform01() * 10);
        p.y.push_back(rng.uniform01() * 10);
    }
    NeighborIndex index(10, 1, Metric::torus);
    index.rebuild(p, 0);
    for (AgentId i = 0; i < 400; ++i) {
        const auto nbrs = index.neighbors_of(i, 0);
        CHECK(std::find(nbrs.begin(), nbrs.end(), i) == nbrs.end());
        for (AgentId j : nbrs) {
            const auto back = index.neighbors_of(j, 0);
            CHECK(std::binary_search(back.begin(), back.end(), i));
        }
    }
}

TEST_CASE("gather carries matching coordinates") {
    Rng rng(9);
    Positions p;
    for (int i = 0; i < 200; ++i) {
        p.x.push_back(rng.uniform01() * 10);
        p.y.push_back(rng.uniform01() * 10);
    }
    NeighborIndex index(10, 1.5, Metric::torus);
    index.rebuild(p, 1);
    NeighborSet set;
    index.gather(17, 1, set);
    for (std::size_t k = 0; k < set.size(); ++k) {
        CHECK(set.x()[k] == p.x[set.ids()[k]]);
        CHECK(set.y()[k] == p.y[set.ids()[k]]);
    }
}

TEST_CASE("index agrees with the oracle on many random configurations") {
    const auto v = checks::index_matches_oracle(200, 100, 12345);
    INFO(v.detail);
    CHECK(v.ok);
}

}
