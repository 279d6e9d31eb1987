#include <catch2/catch_amalgamated.hpp>

#include <unimetric/rng.hpp>
#include <unimetric/universal.hpp>

using namespace unimetric;

namespace {

const Rational kTol = make_rational(1, 1000000000);

Rational sample_in(SplitMix64& rng, int lo_num, int hi_num, int den) {
    // value in [lo_num/den, hi_num/den]
    BigInt num = BigInt(lo_num) + BigInt(rng.below(static_cast<std::uint64_t>(hi_num - lo_num) + 1));
    return make_rational(num, den);
}

} // namespace

TEST_CASE("the gluing step is an exact max-min") {
    CHECK(d_eps_combine(make_rational(3, 10), make_rational(1, 2), make_rational(7, 10)) == make_rational(7, 10));
    CHECK(d_eps_combine(make_rational(3, 10), make_rational(1, 2), make_rational(1, 10)) == make_rational(3, 10));
    CHECK(d_eps_combine(Rational(0), make_rational(1, 2), Rational(0)) == 0);
    CHECK(d_eps_combine(Rational(2), make_rational(1, 2), Rational(1)) == 1);
    CHECK_THROWS_AS(d_eps_combine(1, 0, 1), Error);
    CHECK_THROWS_AS(d_eps_combine(-1, 1, 0), Error);
}

TEST_CASE("per-interval distances are exact on dyadic parameters") {
    CHECK(interval_metric(1, make_rational(1, 4), make_rational(3, 4), kTol) == exact_interval(make_rational(1, 2)));
    CHECK(interval_metric(2, Rational(1), Rational(2), kTol) == exact_interval(Rational(2)));
    CHECK(interval_metric(2, Rational(1), make_rational(5, 4), kTol) == exact_interval(Rational(1)));
    CHECK(interval_metric(2, make_rational(3, 2), make_rational(3, 2), kTol) == exact_interval(Rational(0)));
    CHECK(interval_metric(3, make_rational(7, 3), make_rational(7, 3), kTol) == exact_interval(Rational(0)));
}

TEST_CASE("per-interval distances enclose non-dyadic parameters tightly") {
    DistInterval d = interval_metric(1, make_rational(1, 4), make_rational(1, 3), kTol);
    CHECK(d.lo == make_rational(1, 12)); // the identity walk pins the lower bound
    CHECK(width(d) <= kTol);
    CHECK(contains(d, make_rational(1, 12)));

    SplitMix64 rng(83);
    for (int n : {1, 2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            Rational x = Rational(n - 1) + make_rational(BigInt(rng.below(998)), 997);
            Rational y = Rational(n - 1) + make_rational(BigInt(rng.below(998)), 997);
            DistInterval iv = interval_metric(n, x, y, kTol);
            CHECK(width(iv) <= kTol);
            CHECK(iv.lo >= 0);
            if (x == y) CHECK(is_exact(iv));
            else CHECK(iv.lo >= std::min(Rational(abs(x - y)), make_rational(1, n)));
        }
    }
    CHECK_THROWS_AS(interval_metric(2, make_rational(1, 2), make_rational(3, 2), kTol), Error);
    CHECK_THROWS_AS(interval_metric(1, 0, 1, Rational(0)), Error);
}

TEST_CASE("fixed-depth enclosures contain the adaptive value") {
    SplitMix64 rng(97);
    for (int n : {1, 2, 3}) {
        for (int trial = 0; trial < 15; ++trial) {
            Rational x = Rational(n - 1) + make_rational(BigInt(rng.below(998)), 997);
            Rational y = Rational(n - 1) + make_rational(BigInt(rng.below(998)), 997);
            for (int k : {2, 4, 6}) {
                DistInterval coarse = interval_metric_at_depth(n, x, y, k);
                DistInterval fine = interval_metric(n, x, y, kTol);
                CHECK(coarse.lo <= fine.lo);
                CHECK(fine.hi <= coarse.hi);
                CHECK(width(coarse) <= make_rational(2 * n, pow2(static_cast<unsigned>(k))));
            }
        }
    }
    CHECK(interval_metric_at_depth(2, make_rational(4, 3), make_rational(4, 3), 3) == exact_interval(Rational(0)));
}

TEST_CASE("bridge costs equal the interval span") {
    for (int k : {1, 2, 3, 4, 5, 6}) CHECK(bridge_cost(k) == Rational(k));
}

TEST_CASE("routing through either interval at a shared integer point agrees") {
    SplitMix64 rng(103);
    for (int m : {1, 2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            Rational y = Rational(m) + make_rational(BigInt(rng.below(2 * 997)), 997);
            DistInterval via_m = dist_routed(m, Rational(m), y, kTol);
            DistInterval via_next = dist_routed(m + 1, Rational(m), y, kTol);
            CHECK(via_m == via_next);
        }
    }
}

TEST_CASE("chain evaluation reallocates an unused exactness budget") {
    // left endpoint term d_1(1, 1) is exact, so the right term may use the
    // whole tolerance; the result must still be within tol.
    DistInterval d = dist_routed(1, Rational(1), Rational(2) + make_rational(1, 3), kTol);
    CHECK(width(d) <= kTol);
    CHECK(d.lo >= Rational(1)); // bridge cost through the middle interval alone
}

TEST_CASE("universal distances reproduce the pinned chain values") {
    CHECK(universal_dist(make_rational(1, 4), make_rational(3, 4), kTol) == exact_interval(make_rational(1, 2)));
    CHECK(universal_dist(make_rational(1, 2), Rational(2), kTol) == exact_interval(make_rational(5, 2)));
    CHECK(universal_dist(Rational(-1), make_rational(1, 2), kTol) == exact_interval(make_rational(3, 2)));
    CHECK(universal_dist(Rational(-3), Rational(-1), kTol) == exact_interval(Rational(2)));
    CHECK(universal_dist(Rational(1), make_rational(5, 4), kTol) == exact_interval(Rational(1)));
    CHECK(universal_dist(Rational(0), Rational(0), kTol) == exact_interval(Rational(0)));
    CHECK(universal_dist(make_rational(7, 3), make_rational(7, 3), kTol) == exact_interval(Rational(0)));
}

TEST_CASE("universal distances are symmetric, positive, and tol-bounded") {
    SplitMix64 rng(107);
    for (int trial = 0; trial < 60; ++trial) {
        Rational x = sample_in(rng, -2 * 97, 5 * 97, 97);
        Rational y = sample_in(rng, -2 * 97, 5 * 97, 97);
        DistInterval xy = universal_dist(x, y, kTol);
        DistInterval yx = universal_dist(y, x, kTol);
        CHECK(xy == yx);
        CHECK(width(xy) <= kTol);
        CHECK(xy.lo >= 0);
        if (x != y) CHECK(xy.lo > 0);
        else CHECK(xy == exact_interval(Rational(0)));
    }
    CHECK_THROWS_AS(universal_dist(0, 1, Rational(-1)), Error);
}

TEST_CASE("interval-sound triangle inequality holds across routing") {
    SplitMix64 rng(109);
    for (int trial = 0; trial < 40; ++trial) {
        Rational x = sample_in(rng, -97, 4 * 97, 97);
        Rational y = sample_in(rng, -97, 4 * 97, 97);
        Rational z = sample_in(rng, -97, 4 * 97, 97);
        DistInterval xz = universal_dist(x, z, kTol);
        DistInterval xy = universal_dist(x, y, kTol);
        DistInterval yz = universal_dist(y, z, kTol);
        CHECK(xz.lo <= xy.hi + yz.hi);
    }
}

TEST_CASE("points far out on the half line are rejected, not mangled") {
    try {
        universal_dist(Rational(0), Rational(kMaxDimension) + Rational(2), Rational(1));
        FAIL("expected a scale error");
    } catch (const Error& e) {
        CHECK(e.code() == "scale");
    }
}
