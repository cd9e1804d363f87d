#include "mobnet/rng.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace mobnet;

TEST_SUITE("rng") {

TEST_CASE("same seed, same stream") {
    Rng a(42, Substream::routing);
    Rng b(42, Substream::routing);
    for (int k = 0; k < 100; ++k) {
        CHECK(a() == b());
    }
}

TEST_CASE("substreams and seeds are distinct") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed : {1, 2, 3}) {
        for (auto s : {Substream::placement, Substream::mobility, Substream::generation, Substream::routing,
                       Substream::epidemic}) {
            Rng r(seed, s);
            firsts.insert(r());
        }
    }
    CHECK(firsts.size() == 15);
}

TEST_CASE("uniform01 stays in [0, 1)") {
    Rng r(7);
    double lo = 1, hi = 0, sum = 0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double u = r.uniform01();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(std::fabs(sum / n - 0.5) < 3 * std::sqrt(1.0 / 12 / n));
}

TEST_CASE("uniform_index covers the range evenly") {
    Rng r(11);
    std::vector<std::uint64_t> counts(7, 0);
    const std::uint64_t n = 70000;
    for (std::uint64_t k = 0; k < n; ++k) {
        ++counts[r.uniform_index(7)];
    }
    for (auto c : counts) {
        CHECK(oracle::binomial_within(c, n, 1.0 / 7, 4.0));
    }
    CHECK(r.uniform_index(1) == 0);
}

TEST_CASE("bernoulli edge probabilities consume no draws") {
    Rng a(5);
    Rng b(5);
    CHECK(a.bernoulli(1.0));
    CHECK_FALSE(a.bernoulli(0.0));
    CHECK(a() == b());
}

}
