#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bwangle/corners.hpp"
#include "bwangle/csb.hpp"
#include "bwangle/rho.hpp"

using namespace bwangle;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

const CornerWitness* corner_near(const std::vector<CornerWitness>& cs, double x, double y) {
    for (const CornerWitness& c : cs)
        if ((c.y_hat - Vector2(x, y)).norm() < 1e-6) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("the sum-norm square has four convex corners on the axes") {
    const auto corners = find_corners(SpaceDescriptor::hoelder(1.0));
    REQUIRE(corners.size() == 4);
    for (const auto& [x, y] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}) {
        const CornerWitness* c = corner_near(corners, x, y);
        REQUIRE(c != nullptr);
        CHECK(c->kind == CornerKind::Convex);
        CHECK(c->m_minus == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(c->m_plus == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(c->delta_max == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(verify_corner(SpaceDescriptor::hoelder(1.0), *c));
    }
}

TEST_CASE("the max-norm square has four convex corners at (+-1,+-1)") {
    const auto corners =
        find_corners(SpaceDescriptor::hoelder(std::numeric_limits<double>::infinity()));
    REQUIRE(corners.size() == 4);
    CHECK(corner_near(corners, 1.0, 1.0) != nullptr);
    CHECK(corner_near(corners, -1.0, -1.0) != nullptr);
    for (const CornerWitness& c : corners) CHECK(c.kind == CornerKind::Convex);
}

TEST_CASE("hexagon(2) has a concave corner at the top vertex") {
    const SpaceDescriptor hex = SpaceDescriptor::hexagon(2.0);
    const auto corners = find_corners(hex);
    CHECK(corners.size() == 6);  // concave at (0,+-1), convex at (+-1,+-2)
    const CornerWitness* top = corner_near(corners, 0.0, 1.0);
    REQUIRE(top != nullptr);
    CHECK(top->kind == CornerKind::Concave);
    CHECK(top->x_bar.x() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(top->x_bar.y()) <= 1e-9);
    CHECK(top->m_minus == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(top->m_plus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(top->delta_max == doctest::Approx(1.0));
    CHECK(verify_corner(hex, *top, 10, 1e-9));
    const CornerWitness* v = corner_near(corners, 1.0, 2.0);
    REQUIRE(v != nullptr);
    CHECK(v->kind == CornerKind::Convex);
}

TEST_CASE("hexagon(r) corners follow the slope formula m = +-(r-1)") {
    for (const double r : {3.0, 5.0}) {
        const auto corners = find_corners(SpaceDescriptor::hexagon(r));
        const CornerWitness* top = corner_near(corners, 0.0, 1.0);
        REQUIRE(top != nullptr);
        CHECK(top->kind == CornerKind::Concave);
        CHECK(top->m_minus == doctest::Approx(1.0 - r).epsilon(1e-9));
        CHECK(top->m_plus == doctest::Approx(r - 1.0).epsilon(1e-9));
    }
}

TEST_CASE("perturbed slopes fail verification") {
    const SpaceDescriptor hex = SpaceDescriptor::hexagon(2.0);
    const auto corners = find_corners(hex);
    const CornerWitness* top = corner_near(corners, 0.0, 1.0);
    REQUIRE(top != nullptr);
    CornerWitness broken = *top;
    broken.m_plus += 0.05;
    CHECK_FALSE(verify_corner(hex, broken));
}

TEST_CASE("corner pair products match the closed form") {
    for (const SpaceDescriptor& s : {SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0)}) {
        const auto corners = find_corners(s);
        REQUIRE(!corners.empty());
        for (const CornerWitness& c : corners)
            for (int i = 1; i <= 10; ++i) {
                const double delta = 0.1 * i * c.delta_max;
                for (const double rho : {0.0, -1.5, 1.0}) {
                    const CornerProductPair p = corner_pair_product(s, c, delta, rho);
                    CHECK(std::abs(p.numeric - p.analytic) <= 1e-9);
                }
            }
    }
}

TEST_CASE("hexagon(2) corner pair product is exactly three at delta 1") {
    const SpaceDescriptor hex = SpaceDescriptor::hexagon(2.0);
    const auto corners = find_corners(hex);
    const CornerWitness* top = corner_near(corners, 0.0, 1.0);
    REQUIRE(top != nullptr);
    const CornerProductPair p = corner_pair_product(hex, *top, 1.0, 0.0);
    CHECK(std::abs(p.numeric - 3.0) <= 1e-12);
    CHECK(std::abs(p.analytic - 3.0) <= 1e-12);
    // delta = 0 collapses both vectors to the corner itself
    const CornerProductPair unit = corner_pair_product(hex, *top, 0.0, 0.7);
    CHECK(unit.numeric == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.analytic == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a convex corner yields products above one below rho = -1") {
    const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
    const auto corners = find_corners(l1);
    const CornerWitness* c = corner_near(corners, 0.0, 1.0);
    REQUIRE(c != nullptr);
    const CornerProductPair p = corner_pair_product(l1, *c, 0.05, -1.5);
    CHECK(p.numeric > 1.0);
    CHECK(p.analytic > 1.0);
}

TEST_CASE("curvature classification of the power-mean family") {
    const CurvatureReport half = curvature_report(SpaceDescriptor::hoelder(0.5));
    CHECK(half.strictly_curved);
    CHECK_FALSE(half.strictly_convex);

    const CurvatureReport one = curvature_report(SpaceDescriptor::hoelder(1.0));
    CHECK_FALSE(one.strictly_curved);
    CHECK_FALSE(one.strictly_convex);
    CHECK(one.flat_segments.size() == 4);

    const CurvatureReport three = curvature_report(SpaceDescriptor::hoelder(3.0));
    CHECK(three.strictly_curved);
    CHECK(three.strictly_convex);
    CHECK(three.flat_segments.empty());
    CHECK(three.corners.empty());
}

TEST_CASE("corners imply a non strictly curved sphere") {
    for (const SpaceDescriptor& s :
         {SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0),
          SpaceDescriptor::hoelder(std::numeric_limits<double>::infinity())}) {
        const CurvatureReport rep = curvature_report(s);
        CHECK(!rep.corners.empty());
        CHECK_FALSE(rep.strictly_curved);
        CHECK_FALSE(rep.strictly_convex);  // strictly convex would imply strictly curved
    }
}

TEST_CASE("flat segment value and threshold") {
    CHECK(flat_segment_value(0.0, 3.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat_segment_value(0.5, 2.0) == doctest::Approx(1.171875).epsilon(1e-15));
    CHECK(std::abs(flat_segment_threshold(1e-3) - 1.0) <= 1e-5);
    CHECK(flat_segment_threshold(0.0) == 1.0);
    // threshold decreases the violating exponent toward 1 as t shrinks
    CHECK(flat_segment_threshold(0.5) > flat_segment_threshold(0.1));
    CHECK_THROWS_AS(flat_segment_value(1.0, 0.0), DescriptorError);
    CHECK_THROWS_AS(flat_segment_threshold(-0.1), DescriptorError);
}

TEST_CASE("segment pairs realize the flat-segment value") {
    const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
    const CurvatureReport rep = curvature_report(l1);
    REQUIRE(!rep.flat_segments.empty());
    const double rho = 1.1;
    const SegmentPair pair = segment_pair(l1, rep.flat_segments.front(), rho);
    const double f = csb_value(l1, pair.x, pair.y, rho);
    CHECK(std::abs(f - flat_segment_value(pair.t, rho)) <= 1e-9);
    CHECK(f > 1.0);
}

TEST_CASE("E map endpoints and special values") {
    const SpaceDescriptor l2 = SpaceDescriptor::hoelder(2.0);
    const Vector v = vec2(1, 0), w = vec2(0, 1);
    const PairGeometry g = pair_geometry(l2, v, w);
    CHECK(e_map(l2, v, w, 0.0) == doctest::Approx(g.Delta / 4.0).epsilon(1e-12));
    CHECK(e_map(l2, v, w, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(e_map(l2, v, w, 1e6) - 1.0) <= 1e-6);
    CHECK(std::abs(e_map(l2, v, w, -1e6) + 1.0) <= 1e-6);
}

TEST_CASE("E map is monotone on inner product instances") {
    for (const double p : {2.0, 4.0}) {
        const SpaceDescriptor s = SpaceDescriptor::hoelder(p);
        const Vector v = normalize(s, vec2(1, 0.2));
        const Vector w = normalize(s, vec2(-0.3, 1));
        double prev = -2.0;
        for (double t = -1000.0; t <= 1000.0; t += 40.0) {
            const double e = e_map(s, v, w, t);
            CHECK(e > -1.0);
            CHECK(e < 1.0);
            if (p == 2.0) CHECK(e > prev);
            prev = e;
        }
    }
}
