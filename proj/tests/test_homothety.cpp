#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "flowlab/homothety.hpp"
#include "flowlab/sampling.hpp"

using namespace flowlab;

TEST_CASE("signed cube root") {
    CHECK(signed_cuberoot(8.0) == 2.0);
    CHECK(signed_cuberoot(-8.0) == -2.0);
    CHECK(signed_cuberoot(0.0) == 0.0);
    for (std::uint64_t i = 0; i < 200; ++i) {
        SampleRng rng(41, i);
        const double x = rng.uniform(-100.0, 100.0);
        CHECK(signed_cuberoot(-x) == -signed_cuberoot(x));
        const double c = signed_cuberoot(x);
        CHECK(std::abs(c * c * c - x) <= 1e-14 * (1.0 + std::abs(x)));
    }
}

TEST_CASE("circle map values") {
    const Homothety h = Homothety::circle();
    const Point p = h.apply(Point::finite({1.0, 1.0}));
    CHECK(p.coords()[0] == 2.0);
    CHECK(p.coords()[1] == 2.0);
    const Point q = h.apply_inverse(Point::finite({2.0, 2.0}));
    CHECK(q.coords()[0] == 1.0);
    CHECK(q.coords()[1] == 1.0);
    // axis convention
    CHECK(h.apply(Point::finite({1.0, 0.0})).is_infinity());
    CHECK(h.apply(Point::finite({0.0, -2.0})).is_infinity());
}

TEST_CASE("astroid map values") {
    const Homothety h = Homothety::astroid();
    const Point p = h.apply(Point::finite({1.0, 1.0}));
    CHECK(p.coords()[0] == 0.5);
    CHECK(p.coords()[1] == 0.5);
    const Point q = h.apply_inverse(Point::finite({0.5, 0.5}));
    CHECK(std::abs(q.coords()[0] - 1.0) < 1e-15);
    CHECK(std::abs(q.coords()[1] - 1.0) < 1e-15);
}

TEST_CASE("scalar homothety") {
    const Homothety h = Homothety::scalar(2.0);
    const Point p = h.apply(Point::finite({1.0, -1.0}));
    CHECK(p.coords()[0] == 2.0);
    CHECK(p.coords()[1] == -2.0);
    CHECK(h.apply_inverse(p) == Point::finite({1.0, -1.0}));
}

TEST_CASE("linear homothety inverts exactly") {
    Mat m(2, 2);
    m << 2.0, 1.0, 0.0, 3.0;
    const Homothety h = Homothety::linear(m);
    for (std::uint64_t i = 0; i < 100; ++i) {
        SampleRng rng(43, i);
        const Vec x = rng.uniform_vec(Vec::Constant(2, -5.0), Vec::Constant(2, 5.0));
        const Point round = h.apply_inverse(h.apply(Point::finite(x)));
        CHECK((round.coords() - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }
    CHECK_THROWS_AS(Homothety::linear(Mat::Zero(2, 2)), SingularMatrix);
    Mat rank1(2, 2);
    rank1 << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(Homothety::linear(rank1), SingularMatrix);
}

TEST_CASE("all variants fix the origin and infinity") {
    Mat m(2, 2);
    m << 1.0, 2.0, -1.0, 1.0;
    const std::vector<Homothety> hs = {
        Homothety::linear(m), Homothety::scalar(-3.0), Homothety::circle(), Homothety::astroid(),
        Homothety::inverse(Homothety::astroid()),
        Homothety::compose({Homothety::scalar(2.0), Homothety::astroid()})};
    for (const auto& h : hs) {
        CHECK(h.apply(Point::zero(2)).is_zero());
        CHECK(h.apply(Point::infinity(2)).is_infinity());
        CHECK(h.apply_inverse(Point::zero(2)).is_zero());
        CHECK(h.apply_inverse(Point::infinity(2)).is_infinity());
    }
}

TEST_CASE("homogeneity residuals") {
    CHECK(check_homogeneity(Homothety::scalar(3.0), 500, 1) <= 1e-14);
    CHECK(check_homogeneity(Homothety::circle(), 500, 2) <= 1e-10);
    CHECK(check_homogeneity(Homothety::astroid(), 500, 3) <= 1e-10);
    Mat m(2, 2);
    m << 0.5, 1.5, -2.0, 1.0;
    CHECK(check_homogeneity(Homothety::linear(m), 500, 4) <= 1e-10);
}

TEST_CASE("round trips hold off the excluded sets") {
    constexpr double kDelta = 1e-3;
    const std::vector<Homothety> hs = {Homothety::circle(), Homothety::astroid(),
                                       Homothety::scalar(0.25)};
    for (const auto& h : hs) {
        for (std::uint64_t i = 0; i < 300; ++i) {
            SampleRng rng(47, i);
            const Vec x = rng.uniform_vec(Vec::Constant(2, -3.0), Vec::Constant(2, 3.0));
            const Point p = Point::finite(x);
            if (h.domain_clearance(p) < kDelta) continue;
            const Point fwd = h.apply(p);
            if (fwd.is_infinity() || h.inverse_domain_clearance(fwd) < kDelta) continue;
            CHECK(chordal_distance(h.apply_inverse(fwd), p) <= 1e-9);
            const Point bwd = h.apply_inverse(p);
            if (bwd.is_infinity() || h.domain_clearance(bwd) < kDelta) continue;
            CHECK(chordal_distance(h.apply(bwd), p) <= 1e-9);
        }
    }
}

TEST_CASE("composition applies right-to-left and is associative") {
    const Homothety s2 = Homothety::scalar(2.0);
    const Homothety ast = Homothety::astroid();
    const Homothety c1 = Homothety::compose({s2, ast});  // s2 ∘ ast
    const Point p = Point::finite({1.0, 1.0});
    // ast first: (0.5, 0.5), then doubled
    CHECK(c1.apply(p) == Point::finite({1.0, 1.0}));
    const Homothety single = Homothety::compose({ast});
    CHECK(single.apply(p) == ast.apply(p));

    const Homothety left = Homothety::compose({Homothety::compose({s2, ast}), s2});
    const Homothety right = Homothety::compose({s2, Homothety::compose({ast, s2})});
    for (std::uint64_t i = 0; i < 100; ++i) {
        SampleRng rng(53, i);
        const Point x = Point::finite(rng.uniform_vec(Vec::Constant(2, -2.0), Vec::Constant(2, 2.0)));
        CHECK(chordal_distance(left.apply(x), right.apply(x)) <= 1e-12);
    }
}

TEST_CASE("inverse variant swaps apply and apply_inverse") {
    const Homothety inv = Homothety::inverse(Homothety::circle());
    const Point p = Point::finite({2.0, 2.0});
    CHECK(inv.apply(p) == Homothety::circle().apply_inverse(p));
    CHECK(inv.apply_inverse(p) == Homothety::circle().apply(p));
    CHECK_FALSE(inv.bijective());
    CHECK(Homothety::inverse(Homothety::astroid()).bijective());
}

TEST_CASE("circle and astroid require k = 2") {
    CHECK_THROWS_AS(Homothety::circle().apply(Point::zero(3)), UnsupportedDimension);
    CHECK_THROWS_AS(Homothety::astroid().apply(Point::finite({1.0, 2.0, 3.0})),
                    UnsupportedDimension);
}
