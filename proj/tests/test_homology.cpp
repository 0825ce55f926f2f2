#include <doctest.h>

#include <cmath>
#include <random>

#include "critsamp/errors.hpp"
#include "critsamp/filtration.hpp"
#include "critsamp/homology.hpp"
#include "test_util.hpp"

using namespace critsamp;

namespace {

PointCloud hexagon() {
    std::vector<double> coords;
    for (int k = 0; k < 6; ++k) {
        coords.push_back(std::cos(k * std::numbers::pi / 3.0));
        coords.push_back(std::sin(k * std::numbers::pi / 3.0));
    }
    return PointCloud(2, std::move(coords));
}

int component_count(const PointCloud& cloud, double cap) {
    const int n = static_cast<int>(cloud.size());
    testutil::UnionFind uf(n);
    int components = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cloud.distance(i, j) <= cap && uf.merge(i, j)) --components;
    return components;
}

}  // namespace

TEST_SUITE_BEGIN("homology");

TEST_CASE("single point") {
    PointCloud one(1, {0.0});
    auto diagrams = compute_persistence(rips_filtration(one, 2, 1.0), 2);
    REQUIRE(diagrams.size() == 3);
    REQUIRE(diagrams[0].points.size() == 1);
    CHECK(diagrams[0].points[0].birth == 0.0);
    CHECK(std::isinf(diagrams[0].points[0].death));
    CHECK(diagrams[1].points.empty());
    CHECK(diagrams[2].points.empty());
}

TEST_CASE("two points merge at their distance") {
    PointCloud two(1, {0.0, 0.75});
    auto diagrams = compute_persistence(rips_filtration(two, 2, 1.0), 1);
    REQUIRE(diagrams[0].points.size() == 2);
    CHECK(diagrams[0].points[0].birth == 0.0);
    CHECK(diagrams[0].points[0].death == 0.75);
    CHECK(std::isinf(diagrams[0].points[1].death));
}

TEST_CASE("hexagon cycle lives from the side to the chord") {
    Filtration filt = rips_filtration(hexagon(), 2, 2.0);
    auto diagrams = compute_persistence(filt, 2);
    REQUIRE(diagrams[1].points.size() == 1);
    CHECK(std::abs(diagrams[1].points[0].birth - 1.0) < 1e-12);
    CHECK(std::abs(diagrams[1].points[0].death - std::sqrt(3.0)) < 1e-12);
    // The oracle confirms the whole diagram set.
    CHECK(testutil::diagrams_equal(diagrams, oracle_persistence(filt, 2)));
}

TEST_CASE("betti numbers of the hollow square") {
    // Hand-built filtration: 4 vertices, 4 boundary edges.
    Filtration filt;
    for (int i = 0; i < 4; ++i)
        filt.simplices.push_back(Simplex::make({i}, 0.0));
    filt.simplices.push_back(Simplex::make({0, 1}, 1.0));
    filt.simplices.push_back(Simplex::make({1, 2}, 1.0));
    filt.simplices.push_back(Simplex::make({2, 3}, 1.0));
    filt.simplices.push_back(Simplex::make({0, 3}, 1.0));
    filt.cap = 1.0;

    CHECK(betti_numbers_at(filt, 0.5) == std::array<int, 3>{4, 0, 0});
    CHECK(betti_numbers_at(filt, 1.0) == std::array<int, 3>{1, 1, 0});
}

TEST_CASE("betti numbers agree with diagram counting") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 10; ++round) {
        PointCloud cloud = testutil::random_cloud(rng, 7, 2);
        Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
        auto diagrams = compute_persistence(filt, 2);
        std::uniform_real_distribution<double> pick(0.0, filt.cap);
        for (int probe = 0; probe < 5; ++probe) {
            double t = pick(rng);
            auto betti = betti_numbers_at(filt, t);
            for (int p = 0; p <= 2; ++p) {
                int alive = 0;
                for (const auto& pt : diagrams[p].points)
                    if (pt.birth <= t && t < pt.death) ++alive;
                CHECK(betti[p] == alive);
            }
        }
    }
}

TEST_CASE("reduction equals the rank oracle on random clouds") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        PointCloud cloud = testutil::random_cloud(rng, 6, 2);
        Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
        CHECK(testutil::diagrams_equal(compute_persistence(filt, 2),
                                       oracle_persistence(filt, 2)));
    }
}

TEST_CASE("witness filtrations reduce like any other filtration") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 20; ++round) {
        PointCloud cloud = testutil::random_cloud(rng, 8, 2);
        LandmarkSet lm;
        for (int i = 0; i < 8; ++i)
            (i < 5 ? lm.landmark_indices : lm.witness_indices).push_back(i);
        int nu = static_cast<int>(rng() % 3);
        Filtration filt =
            lazy_witness_filtration(cloud, lm, nu, 3, cloud.diameter());
        CHECK(testutil::diagrams_equal(compute_persistence(filt, 2),
                                       oracle_persistence(filt, 2)));
    }
}

TEST_CASE("empty filtration yields empty diagrams") {
    Filtration empty;
    auto a = compute_persistence(empty, 2);
    auto b = oracle_persistence(empty, 2);
    for (const auto& d : a) CHECK(d.points.empty());
    CHECK(testutil::diagrams_equal(a, b));
}

TEST_CASE("oracle rejects oversized instances") {
    std::mt19937_64 rng(11);
    PointCloud cloud = testutil::random_cloud(rng, 14, 2);
    Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
    CHECK(filt.simplices.size() > 320);
    CHECK_THROWS_AS(oracle_persistence(filt, 2), ValidationError);
}

TEST_CASE("finite 0-dim deaths equal the MST edge weights") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + static_cast<int>(rng() % 30);
        PointCloud cloud = testutil::random_cloud(rng, n, 2);
        Filtration filt = rips_filtration(cloud, 1, cloud.diameter());
        auto diagrams = compute_persistence(filt, 0);
        std::vector<double> deaths;
        for (const auto& pt : diagrams[0].points)
            if (!std::isinf(pt.death)) deaths.push_back(pt.death);
        std::sort(deaths.begin(), deaths.end());
        CHECK(deaths == testutil::mst_edge_weights(cloud));
    }
}

TEST_CASE("one essential class per component at the cap") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 10; ++round) {
        PointCloud cloud = testutil::random_cloud(rng, 12, 2);
        double cap = 0.35 * cloud.diameter();
        Filtration filt = rips_filtration(cloud, 1, cap);
        auto diagrams = compute_persistence(filt, 0);
        int essentials = 0;
        for (const auto& pt : diagrams[0].points)
            if (std::isinf(pt.death)) ++essentials;
        CHECK(essentials == component_count(cloud, cap));
    }
}

TEST_CASE("same filtration bytes give same diagram bytes") {
    std::mt19937_64 rng(19);
    PointCloud cloud = testutil::random_cloud(rng, 8, 2);
    Filtration filt = rips_filtration(cloud, 2, cloud.diameter());
    CHECK(diagrams_to_json(compute_persistence(filt, 2)) ==
          diagrams_to_json(compute_persistence(filt, 2)));
}

TEST_CASE("filtration property violations are detected") {
    Filtration bad;
    bad.simplices.push_back(Simplex::make({0}, 0.0));
    bad.simplices.push_back(Simplex::make({0, 1}, 1.0));  // vertex 1 missing
    bad.cap = 1.0;
    CHECK_THROWS_AS(compute_persistence(bad, 1), ValidationError);

    Filtration decreasing;
    decreasing.simplices.push_back(Simplex::make({0}, 1.0));
    decreasing.simplices.push_back(Simplex::make({1}, 0.5));
    decreasing.cap = 1.0;
    CHECK_THROWS_AS(compute_persistence(decreasing, 1), ValidationError);
}

TEST_CASE("diagram json uses 17 significant digits and null deaths") {
    PersistenceDiagram d;
    d.dim = 1;
    d.cap = 2.0;
    d.points = {{0.5, testutil::kInf}, {1.0, std::sqrt(3.0)}};
    std::string json = diagrams_to_json({d});
    CHECK(json ==
          "[\n"
          "  {\"dim\":1,\"birth\":0.5,\"death\":null},\n"
          "  {\"dim\":1,\"birth\":1,\"death\":1.7320508075688772}\n"
          "]\n");
}

TEST_SUITE_END();
