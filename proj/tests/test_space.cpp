#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bwangle/space.hpp"
#include "bwangle/space_json.hpp"

using namespace bwangle;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("power-mean weights match hand-computed values") {
    CHECK(eval_weight(SpaceDescriptor::hoelder(1.0), vec2(3, -4)) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(eval_weight(SpaceDescriptor::hoelder(2.0), vec2(3, -4)) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(eval_weight(SpaceDescriptor::hoelder(kInf), vec2(3, -4)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(eval_weight(SpaceDescriptor::hoelder(-kInf), vec2(3, -4)) == doctest::Approx(3.0).epsilon(1e-14));
    // p = 0.5: (sqrt(1) + sqrt(4))^2 = 9
    CHECK(eval_weight(SpaceDescriptor::hoelder(0.5), vec2(1, 4)) == doctest::Approx(9.0).epsilon(1e-14));
    // p = -2: (1 + 1)^(-1/2)
    CHECK(eval_weight(SpaceDescriptor::hoelder(-2.0), vec2(1, 1)) ==
          doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    // negative exponent vanishes on the axes
    CHECK(eval_weight(SpaceDescriptor::hoelder(-2.0), vec2(1, 0)) == 0.0);
    CHECK(eval_weight(SpaceDescriptor::hoelder(0.0), vec2(5, 5)) == 0.0);
}

TEST_CASE("positive definiteness flags follow the exponent") {
    CHECK(SpaceDescriptor::hoelder(1.0).positive_definite);
    CHECK(SpaceDescriptor::hoelder(0.5).positive_definite);
    CHECK(SpaceDescriptor::hoelder(kInf).positive_definite);
    CHECK_FALSE(SpaceDescriptor::hoelder(-kInf).positive_definite);
    CHECK_FALSE(SpaceDescriptor::hoelder(0.0).positive_definite);
    CHECK_FALSE(SpaceDescriptor::hoelder(-2.0).positive_definite);
    CHECK_FALSE(SpaceDescriptor::pathological_a().positive_definite);
    CHECK(SpaceDescriptor::pathological_b().positive_definite);
}

TEST_CASE("polygon weight is exact on vertices and axes") {
    const SpaceDescriptor hex = SpaceDescriptor::hexagon(2.0);
    CHECK(eval_weight(hex, vec2(1, 2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_weight(hex, vec2(-1, 2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_weight(hex, vec2(0, 4)) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(eval_weight(hex, vec2(2, 0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval_weight(hex, vec2(0, 0)) == 0.0);

    const SpaceDescriptor diamond =
        SpaceDescriptor::polygon({Vector2(1, 0), Vector2(0, 1), Vector2(-1, 0), Vector2(0, -1)});
    const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
    for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * M_PI * k / 64;
        const Vector d = vec2(std::cos(th), std::sin(th));
        CHECK(eval_weight(diamond, d) == doctest::Approx(eval_weight(l1, d)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate hexagons coincide with the p=1 and p=inf weights") {
    const SpaceDescriptor h0 = SpaceDescriptor::hexagon(0.0);
    const SpaceDescriptor h1 = SpaceDescriptor::hexagon(1.0);
    const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
    const SpaceDescriptor li = SpaceDescriptor::hoelder(kInf);
    for (int k = 0; k < 256; ++k) {
        const double th = 2.0 * M_PI * k / 256;
        const Vector d = vec2(std::cos(th), std::sin(th));
        CHECK(std::abs(eval_weight(h0, d) - eval_weight(l1, d)) <= 1e-12);
        CHECK(std::abs(eval_weight(h1, d) - eval_weight(li, d)) <= 1e-12);
    }
}

TEST_CASE("weights are balanced: ||r x|| = |r| ||x||") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), scale(-5.0, 5.0);
    const std::vector<SpaceDescriptor> spaces = {
        SpaceDescriptor::hoelder(0.5),  SpaceDescriptor::hoelder(1.0),
        SpaceDescriptor::hoelder(3.0),  SpaceDescriptor::hoelder(kInf),
        SpaceDescriptor::hexagon(2.0),  SpaceDescriptor::pathological_a(),
        SpaceDescriptor::pathological_b(),
        SpaceDescriptor::radial_table({{0.0, 1.0}, {1.0, 2.0}, {-2.0, 0.5}})};
    for (const SpaceDescriptor& s : spaces) {
        for (int k = 0; k < 200; ++k) {
            const Vector x = vec2(coord(rng), coord(rng));
            const double r = scale(rng);
            const double lhs = eval_weight(s, Vector(r * x));
            const double rhs = std::abs(r) * eval_weight(s, x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("product weight combines the factor weights") {
    const SpaceDescriptor line = SpaceDescriptor::hoelder(2.0, 1);
    const SpaceDescriptor prod = SpaceDescriptor::product(line, line, 3.0);
    CHECK(prod.dimension == 2);
    const double expect = std::pow(std::pow(2.0, 3.0) + std::pow(5.0, 3.0), 1.0 / 3.0);
    CHECK(eval_weight(prod, vec2(-2, 5)) == doctest::Approx(expect).epsilon(1e-14));
    const SpaceDescriptor prod1 = SpaceDescriptor::product(line, line, 1.0);
    CHECK(eval_weight(prod1, vec2(-2, 5)) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("radial table interpolates and honors exact overrides") {
    const SpaceDescriptor circle = SpaceDescriptor::radial_table(
        {{0.0, 1.0}, {M_PI / 2, 1.0}, {M_PI, 1.0}, {-M_PI / 2, 1.0}});
    CHECK(eval_weight(circle, vec2(0.3, -0.7)) ==
          doctest::Approx(std::hypot(0.3, 0.7)).epsilon(1e-9));

    const SpaceDescriptor b = SpaceDescriptor::pathological_b();
    CHECK(eval_weight(b, vec2(1, 0)) == doctest::Approx(0.5).epsilon(1e-14));   // radius 2
    CHECK(eval_weight(b, vec2(-1, 0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eval_weight(b, vec2(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
    const SpaceDescriptor c = SpaceDescriptor::pathological_c();
    CHECK(eval_weight(c, vec2(1, 0)) == doctest::Approx(2.0).epsilon(1e-14));  // radius 1/2
}

TEST_CASE("normalize and input validation") {
    const SpaceDescriptor l2 = SpaceDescriptor::hoelder(2.0);
    const Vector u = normalize(l2, vec2(3, 4));
    CHECK(eval_weight(l2, u) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(normalize(l2, vec2(0, 0)), ZeroWeightError);
    Vector wrong(3);
    wrong << 1, 2, 3;
    CHECK_THROWS_AS(eval_weight(l2, wrong), DimensionError);
    CHECK_THROWS_AS(SpaceDescriptor::hoelder(2.0, 0), DescriptorError);
    CHECK_THROWS_AS(SpaceDescriptor::polygon({Vector2(1, 0), Vector2(0, 1), Vector2(-1, 0)}),
                    DescriptorError);
    CHECK_THROWS_AS(SpaceDescriptor::polygon({Vector2(1, 0), Vector2(0, 1), Vector2(-1, 0),
                                              Vector2(0, -1), Vector2(0.5, 0.5)}),
                    DescriptorError);  // not centrally symmetric
}

TEST_CASE("unit sphere sampling returns weight-one points") {
    for (const SpaceDescriptor& s : {SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(3.0),
                                     SpaceDescriptor::hoelder(0.5)}) {
        const SphereSample sample = sample_unit_sphere(s, 512);
        CHECK(sample.points.size() == 512);
        for (const Vector& p : sample.points)
            CHECK(std::abs(eval_weight(s, p) - 1.0) <= 1e-12);
    }
    // weight sqrt(|x*y|) vanishes on the four axis directions only: those
    // grid points are skipped and flagged, everything else is unit
    const SphereSample odd = sample_unit_sphere(SpaceDescriptor::pathological_a(), 512);
    CHECK(odd.skipped_theta.size() >= 1);
    CHECK(odd.points.size() + odd.skipped_theta.size() == 512);
    // the constant-zero weight trips the 1% threshold
    CHECK_THROWS_AS(sample_unit_sphere(SpaceDescriptor::hoelder(0.0), 512),
                    NotPositiveDefiniteError);
}

TEST_CASE("structure report classifies the reference spaces") {
    const StructureReport euclid = structure_report(SpaceDescriptor::hoelder(2.0));
    CHECK(euclid.is_positive_definite);
    CHECK(euclid.triangle_inequality_holds);
    CHECK(euclid.parallelogram_identity_holds);
    CHECK(euclid.ip_space_candidate());

    const StructureReport l1 = structure_report(SpaceDescriptor::hoelder(1.0));
    CHECK(l1.triangle_inequality_holds);
    CHECK_FALSE(l1.parallelogram_identity_holds);
    REQUIRE(l1.parallelogram_witness.has_value());
    // the witness re-evaluates to the reported discrepancy
    {
        const SpaceDescriptor s = SpaceDescriptor::hoelder(1.0);
        const WitnessPair& w = *l1.parallelogram_witness;
        const double ws = eval_weight(s, Vector(w.x + w.y));
        const double wd = eval_weight(s, Vector(w.x - w.y));
        const double wx = eval_weight(s, w.x), wy = eval_weight(s, w.y);
        const double par = ws * ws + wd * wd - 2.0 * (wx * wx + wy * wy);
        CHECK(par == doctest::Approx(w.discrepancy).epsilon(1e-12));
    }

    const StructureReport half = structure_report(SpaceDescriptor::hoelder(0.5));
    CHECK(half.is_positive_definite);
    CHECK_FALSE(half.triangle_inequality_holds);
    REQUIRE(half.triangle_witness.has_value());

    const StructureReport patho = structure_report(SpaceDescriptor::pathological_a());
    CHECK_FALSE(patho.is_positive_definite);
}

TEST_CASE("descriptors round-trip through JSON") {
    const std::vector<SpaceDescriptor> spaces = {
        SpaceDescriptor::hoelder(1.5), SpaceDescriptor::hoelder(kInf),
        SpaceDescriptor::hexagon(2.0),
        SpaceDescriptor::polygon({Vector2(1, 0), Vector2(0, 1), Vector2(-1, 0), Vector2(0, -1)}),
        SpaceDescriptor::radial_table({{0.0, 1.0}, {1.0, 2.0}}, {{0.5, 3.0}}),
        SpaceDescriptor::product(SpaceDescriptor::hoelder(2.0, 1), SpaceDescriptor::hoelder(2.0, 1),
                                 1.0),
        SpaceDescriptor::pathological_b()};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (const SpaceDescriptor& s : spaces) {
        const SpaceDescriptor back = space_from_json(space_to_json(s));
        CHECK(back.label() == s.label());
        CHECK(back.dimension == s.dimension);
        CHECK(back.positive_definite == s.positive_definite);
        for (int k = 0; k < 50; ++k) {
            Vector x(s.dimension);
            for (int i = 0; i < s.dimension; ++i) x[i] = coord(rng);
            CHECK(eval_weight(back, x) == doctest::Approx(eval_weight(s, x)).epsilon(1e-14));
        }
    }
    // extended reals spelled as strings
    CHECK(space_from_json(nlohmann::json::parse(R"({"family":"hoelder","p":"inf"})")).p == kInf);
    CHECK_THROWS_AS(space_from_json(nlohmann::json::parse(R"({"family":"nope"})")),
                    DescriptorError);
}
