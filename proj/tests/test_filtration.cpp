#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "critsamp/errors.hpp"
#include "critsamp/field.hpp"
#include "critsamp/filtration.hpp"
#include "critsamp/landmarks.hpp"
#include "critsamp/morse.hpp"
#include "test_util.hpp"

using namespace critsamp;

namespace {

long long choose(int n, int k) {
    long long c = 1;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

std::vector<int> simplex_key(const Simplex& s) {
    return {s.verts().begin(), s.verts().end()};
}

}  // namespace

TEST_SUITE_BEGIN("filtration");

TEST_CASE("rips on the unit square") {
    PointCloud square(2, {0, 0, 1, 0, 0, 1, 1, 1});
    Filtration filt = rips_filtration(square, 2, 2.0);

    std::map<int, int> count_by_dim;
    int edges_at_1 = 0, edges_at_diag = 0, triangles_at_diag = 0;
    const double diag = std::sqrt(2.0);
    for (const Simplex& s : filt.simplices) {
        ++count_by_dim[s.dim];
        if (s.dim == 0) CHECK(s.value == 0.0);
        if (s.dim == 1 && s.value == doctest::Approx(1.0)) ++edges_at_1;
        if (s.dim == 1 && s.value == doctest::Approx(diag)) ++edges_at_diag;
        if (s.dim == 2) {
            CHECK(s.value == doctest::Approx(diag));
            ++triangles_at_diag;
        }
    }
    CHECK(count_by_dim[0] == 4);
    CHECK(count_by_dim[1] == 6);
    CHECK(count_by_dim[2] == 4);
    CHECK(edges_at_1 == 4);
    CHECK(edges_at_diag == 2);
    CHECK(triangles_at_diag == 4);
}

TEST_CASE("edges over the cap are dropped") {
    PointCloud two(1, {0.0, 5.0});
    Filtration filt = rips_filtration(two, 2, 2.0);
    REQUIRE(filt.simplices.size() == 2);
    CHECK(filt.simplices[0].dim == 0);
    CHECK(filt.simplices[1].dim == 0);
}

TEST_CASE("simplex values equal the diameter of their vertex set") {
    std::mt19937_64 rng(3);
    PointCloud cloud = testutil::random_cloud(rng, 8, 3);
    Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
    for (const Simplex& s : filt.simplices) {
        double want = 0.0;
        auto vs = s.verts();
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                want = std::max(want, cloud.distance(vs[a], vs[b]));
        CHECK(s.value == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("every face appears earlier with a value no larger") {
    std::mt19937_64 rng(5);
    PointCloud cloud = testutil::random_cloud(rng, 9, 2);
    Filtration filt = rips_filtration(cloud, 3, 0.8 * cloud.diameter());

    std::map<std::vector<int>, std::pair<std::size_t, double>> position;
    for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
        const Simplex& s = filt.simplices[i];
        auto vs = simplex_key(s);
        for (std::size_t drop = 0; drop < vs.size() && vs.size() > 1; ++drop) {
            std::vector<int> face;
            for (std::size_t t = 0; t < vs.size(); ++t)
                if (t != drop) face.push_back(vs[t]);
            REQUIRE(position.count(face));
            CHECK(position[face].first < i);
            CHECK(position[face].second <= s.value);
        }
        position[vs] = {i, s.value};
        if (i > 0) CHECK(filt.simplices[i - 1].value <= s.value);
    }
}

TEST_CASE("growing the cap only appends simplices") {
    std::mt19937_64 rng(7);
    PointCloud cloud = testutil::random_cloud(rng, 10, 2);
    double d = cloud.diameter();
    Filtration small = rips_filtration(cloud, 2, 0.5 * d);
    Filtration large = rips_filtration(cloud, 2, d);

    std::map<std::vector<int>, double> in_large;
    for (const Simplex& s : large.simplices) in_large[simplex_key(s)] = s.value;
    for (const Simplex& s : small.simplices) {
        REQUIRE(in_large.count(simplex_key(s)));
        CHECK(in_large[simplex_key(s)] == s.value);
    }
    CHECK(large.simplices.size() >= small.simplices.size());
}

TEST_CASE("full rips has binomial simplex counts") {
    std::mt19937_64 rng(11);
    PointCloud cloud = testutil::random_cloud(rng, 7, 2);
    Filtration filt = rips_filtration(cloud, 3, cloud.diameter());
    std::map<int, long long> count;
    for (const Simplex& s : filt.simplices) ++count[s.dim];
    for (int k = 0; k <= 3; ++k) CHECK(count[k] == choose(7, k + 1));
}

TEST_CASE("rips input validation") {
    PointCloud empty;
    CHECK_THROWS_AS(rips_filtration(empty, 2, 1.0), ValidationError);
    PointCloud one(1, {0.0});
    CHECK_THROWS_AS(rips_filtration(one, 4, 1.0), ValidationError);
    CHECK_THROWS_AS(rips_filtration(one, 2, 0.0), ValidationError);
}

TEST_CASE("witness complex with a single landmark") {
    PointCloud cloud(1, {0.0, 1.0, 2.0});
    LandmarkSet lm{{0}, {1, 2}};
    Filtration filt = lazy_witness_filtration(cloud, lm, 1, 2, 10.0);
    REQUIRE(filt.simplices.size() == 1);
    CHECK(filt.simplices[0].dim == 0);
    CHECK(filt.simplices[0].value == 0.0);
}

TEST_CASE("witness edge values follow the nu relaxation") {
    // Landmarks at 0 and 3, witness at 1: d(a,w)=1, d(b,w)=2.
    PointCloud cloud(1, {0.0, 3.0, 1.0});
    LandmarkSet lm{{0, 1}, {2}};

    Filtration nu0 = lazy_witness_filtration(cloud, lm, 0, 1, 10.0);
    REQUIRE(nu0.simplices.size() == 3);
    CHECK(nu0.simplices[2].dim == 1);
    CHECK(nu0.simplices[2].value == doctest::Approx(2.0));

    Filtration nu1 = lazy_witness_filtration(cloud, lm, 1, 1, 10.0);
    CHECK(nu1.simplices[2].value == doctest::Approx(1.0));
}

TEST_CASE("no witnesses means vertices only") {
    PointCloud cloud(1, {0.0, 1.0});
    LandmarkSet lm{{0, 1}, {}};
    Filtration filt = lazy_witness_filtration(cloud, lm, 1, 2, 10.0);
    CHECK(filt.simplices.size() == 2);
    CHECK_THROWS_AS(lazy_witness_filtration(cloud, lm, 3, 2, 10.0),
                    ValidationError);
    LandmarkSet none{{}, {0, 1}};
    CHECK_THROWS_AS(lazy_witness_filtration(cloud, none, 1, 2, 10.0),
                    ValidationError);
}

TEST_CASE("self-witnessed nu=2 edges enter no later than rips") {
    std::mt19937_64 rng(13);
    PointCloud cloud = testutil::random_cloud(rng, 12, 2);
    const int n = static_cast<int>(cloud.size());
    LandmarkSet lm;
    for (int i = 0; i < n; ++i) {
        lm.landmark_indices.push_back(i);
        lm.witness_indices.push_back(i);
    }
    double cap = cloud.diameter();
    Filtration witness = lazy_witness_filtration(cloud, lm, 2, 1, cap);
    for (const Simplex& s : witness.simplices) {
        if (s.dim != 1) continue;
        double rips_value = cloud.distance(s.vertices[0], s.vertices[1]);
        CHECK(s.value <= rips_value + 1e-12);
    }
}

TEST_CASE("landmark selection strategies") {
    ScalarField f = field_from_function(12, 10, [](int u, int v) {
        double d1 = (u - 3.0) * (u - 3.0) + (v - 5.0) * (v - 5.0);
        double d2 = (u - 9.0) * (u - 9.0) + (v - 5.0) * (v - 5.0);
        return 0.95 * std::exp(-d1 / 3.0) + 0.5 * std::exp(-d2 / 3.0);
    });
    GridPointCloud cloud = to_point_cloud(f, 1.0, 0.0);

    LandmarkParams all_params;
    all_params.strategy = LandmarkStrategy::All;
    LandmarkSet all = select_landmarks(cloud, all_params);
    CHECK(all.landmark_indices.size() == cloud.size());
    CHECK(all.witness_indices.empty());

    LandmarkParams fps_params;
    fps_params.strategy = LandmarkStrategy::Fps;
    fps_params.fps_count = 3;
    LandmarkSet by_fps = select_landmarks(cloud, fps_params);
    CHECK(by_fps.landmark_indices.size() == 3);
    CHECK(by_fps.witness_indices.size() == cloud.size() - 3);

    LandmarkParams ms_params;
    ms_params.strategy = LandmarkStrategy::MsCritical;
    ms_params.field = &f;
    ms_params.r = 0.2;
    LandmarkSet by_ms = select_landmarks(cloud, ms_params);
    CHECK(by_ms.landmark_indices.size() == ms_sample(f, 0.2).size());

    std::set<int> lm_set(by_ms.landmark_indices.begin(),
                         by_ms.landmark_indices.end());
    for (int w : by_ms.witness_indices) CHECK(lm_set.count(w) == 0);
    CHECK(by_ms.landmark_indices.size() + by_ms.witness_indices.size() ==
          cloud.size());
}

TEST_CASE("fps landmarks on the collinear example") {
    ScalarField f(11, 1, {0.0, 0.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0});
    GridPointCloud cloud = to_point_cloud(f, 0.4, 0.0);  // keeps u = 0,1,10
    REQUIRE(cloud.size() == 3);
    LandmarkParams params;
    params.strategy = LandmarkStrategy::Fps;
    params.fps_count = 3;
    LandmarkSet lm = select_landmarks(cloud, params);
    CHECK(std::set<int>(lm.landmark_indices.begin(),
                        lm.landmark_indices.end()) == std::set<int>{0, 1, 2});
}

TEST_CASE("empty landmark strategies are rejected") {
    std::mt19937_64 rng(17);
    ScalarField f = testutil::random_smooth_field(rng, 10, 8, 3);
    GridPointCloud cloud = to_point_cloud(f, 1.0, 0.0);
    LandmarkParams params;
    params.strategy = LandmarkStrategy::MsCritical;
    params.field = &f;
    params.r = 1.0;
    params.morse_options = {true, false};  // drop essential classes too
    CHECK_THROWS_AS(select_landmarks(cloud, params), ValidationError);
}

TEST_CASE("filtration text serialization is byte-stable") {
    PointCloud cloud(1, {0.0, 1.0});
    Filtration filt = rips_filtration(cloud, 1, 2.0);
    std::string text = filtration_to_text(filt);
    CHECK(text == "0 0\n0 1\n1 0 1\n");
    CHECK(filtration_to_text(filt) == text);
}

TEST_SUITE_END();
