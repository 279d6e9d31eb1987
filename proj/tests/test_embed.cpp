#include <catch2/catch_amalgamated.hpp>

#include <unimetric/embed.hpp>

using namespace unimetric;

namespace {

const Rational kTol = make_rational(1, 1000000000);

FiniteMetricSpace two_points(const Rational& d) {
    return validate({"a", "b"}, {{0, d}, {d, 0}});
}

FiniteMetricSpace equilateral3(const Rational& d) {
    return validate({"a", "b", "c"}, {{0, d, d}, {d, 0, d}, {d, d, 0}});
}

} // namespace

TEST_CASE("distance-to-landmarks rows are exact sup-metric copies") {
    FiniteMetricSpace X = two_points(1);
    std::vector<CubePoint> t = kuratowski(X, 2);
    REQUIRE(t.size() == 2);
    CHECK(t[0].coords == std::vector<Rational>{0, 1});
    CHECK(t[1].coords == std::vector<Rational>{1, 0});
    CHECK(sup_dist(t[0], t[1]) == 1);

    FiniteMetricSpace E = equilateral3(1);
    std::vector<CubePoint> te = kuratowski(E, 3);
    CHECK(te[0].coords == std::vector<Rational>{0, 1, 1});
    CHECK(te[2].coords == std::vector<Rational>{1, 1, 0});
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            CHECK(sup_dist(te[i], te[j]) == E.dist[i][j]);

    CHECK_THROWS_AS(kuratowski(E, 2), Error);                       // too few coordinates
    CHECK_THROWS_AS(kuratowski(two_points(Rational(3)), 2), Error); // diameter does not fit
}

TEST_CASE("sup-metric copies are isometric on generated spaces") {
    for (SpaceKind kind : {SpaceKind::uniform, SpaceKind::random_euclidean, SpaceKind::random_shortest_path}) {
        FiniteMetricSpace X = generate(kind, 5, 77);
        int n = static_cast<int>(params(X).n);
        std::vector<CubePoint> t = kuratowski(X, n);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j)
                CHECK(sup_dist(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]) ==
                      X.dist[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            CHECK(in_cube(t[static_cast<size_t>(i)]));
        }
    }
}

TEST_CASE("minimal and default depths honor their bounds") {
    EmbeddingParams pr = params(two_points(1)); // n = 2, eps = 1
    int kmin = minimal_depth(pr);
    CHECK(kmin == 4); // 4*2*2^-3 = 1 is not < 1; 4*2*2^-4 = 1/2 < 1
    CHECK(make_rational(4 * 2, pow2(static_cast<unsigned>(kmin))) < pr.eps);
    CHECK(make_rational(4 * 2, pow2(static_cast<unsigned>(kmin - 1))) >= pr.eps);

    int kdef = default_depth(pr);
    CHECK(kdef >= kmin);
    CHECK(make_rational(4 * 2, pow2(static_cast<unsigned>(kdef))) <= make_rational(1, 1000000));
}

TEST_CASE("a two-point space embeds with a certified deviation") {
    FiniteMetricSpace X = two_points(1);
    EmbeddingResult res = embed_space(X, 10);
    CHECK(res.params.n == 2);
    CHECK(res.depth == 10);
    CHECK(res.delta == make_rational(2, 1024));
    REQUIRE(res.points.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        Rational t = value(res.points[i]);
        CHECK(Rational(1) <= t);
        CHECK(t <= Rational(2));
        CHECK(sup_dist(res.cube_images[i], res.targets[i]) <= res.delta);
    }
    CHECK_FALSE(res.points[0] == res.points[1]);

    CertificationReport cert = certify(X, res, kTol);
    CHECK(cert.pass);
    CHECK(cert.bound == 4 * res.delta);
    CHECK(cert.worst_deviation <= cert.bound + kTol);
    REQUIRE(cert.pairs.size() == 1);
    CHECK(cert.pairs[0].ok);
    CHECK(cert.pairs[0].expected == 1);
}

TEST_CASE("an equilateral space embeds into the three-dimensional curve") {
    FiniteMetricSpace X = equilateral3(1);
    EmbeddingResult res = embed_space(X, 12);
    CHECK(res.params.n == 3);
    CHECK(res.delta == make_rational(3, 4096));
    CertificationReport cert = certify(X, res, kTol);
    CHECK(cert.pass);
    CHECK(cert.worst_i >= 0);
}

TEST_CASE("insufficient depth is rejected with the minimal sufficient depth") {
    FiniteMetricSpace X = two_points(1);
    try {
        embed_space(X, 0);
        FAIL("expected a depth error");
    } catch (const DepthError& e) {
        CHECK(e.minimal_k() == 4);
        CHECK(std::string(e.what()).find("minimal depth: 4") != std::string::npos);
        CHECK(e.code() == "depth");
    }
    CHECK_THROWS_AS(embed_space(X, 3), DepthError);
    CHECK_NOTHROW(embed_space(X, 4));

    // finer spaces need more depth: eps = 2/5, n = 3 -> 4*3*2^-k < 2/5 needs k = 5
    try {
        embed_space(two_points(make_rational(2, 5)), 2);
        FAIL("expected a depth error");
    } catch (const DepthError& e) {
        CHECK(e.minimal_k() == 5);
    }
}

TEST_CASE("deeper refinement never loosens the certified bound") {
    FiniteMetricSpace X = equilateral3(1);
    Rational prev_bound;
    bool first = true;
    for (int k = 12; k <= 14; ++k) {
        EmbeddingResult res = embed_space(X, k);
        CertificationReport cert = certify(X, res, kTol);
        CHECK(cert.pass);
        if (!first) CHECK(cert.bound < prev_bound);
        prev_bound = cert.bound;
        first = false;
    }
}

TEST_CASE("certification re-derives failures from hand-built results") {
    FiniteMetricSpace X = two_points(make_rational(1, 3));
    // A fake result claiming both points embed at the same parameter.
    EmbeddingResult fake;
    fake.params = params(X);
    fake.depth = 2;
    fake.delta = make_rational(3, 4);
    fake.targets = kuratowski(X, 3);
    fake.points = {Dyadic{2, 0}, Dyadic{2, 0}};
    fake.cube_images = {curve_point_exact(3, Dyadic{2, 0}), curve_point_exact(3, Dyadic{2, 0})};

    CertificationReport cert = certify(X, fake, kTol);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.pairs.size() == 1);
    CHECK_FALSE(cert.pairs[0].ok);
    CHECK(cert.pairs[0].note == "parameters coincide");
    // coinciding parameters give distance 0 against expected 1/3
    CHECK(cert.pairs[0].deviation == make_rational(1, 3));

    // a wrong stored image is reported as a residual issue
    EmbeddingResult off = embed_space(X, 6);
    off.cube_images[0] = kuratowski(X, 3)[1]; // distance 1/3 from the true image's target
    CertificationReport cert2 = certify(X, off, kTol);
    CHECK_FALSE(cert2.pass);
    CHECK_FALSE(cert2.issues.empty());

    EmbeddingResult wrong_shape = embed_space(X, 6);
    wrong_shape.points.pop_back();
    CHECK_THROWS_AS(certify(X, wrong_shape, kTol), Error);
    CHECK_THROWS_AS(certify(X, embed_space(X, 6), Rational(0)), Error);
}

TEST_CASE("certified deviations stay within the guarantee on generated spaces") {
    for (SpaceKind kind : {SpaceKind::uniform, SpaceKind::random_euclidean, SpaceKind::random_shortest_path}) {
        for (std::uint64_t seed : {3ull, 4ull}) {
            FiniteMetricSpace X = generate(kind, 4, seed);
            EmbeddingParams pr = params(X);
            EmbeddingResult res = embed_space(X, default_depth(pr));
            CertificationReport cert = certify(X, res, kTol);
            CHECK(cert.pass);
            CHECK(cert.bound <= make_rational(1, 1000000));
        }
    }
}
