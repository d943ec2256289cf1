#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypbound/errors.hpp"
#include "hypbound/models.hpp"
#include "support.hpp"

using namespace hypbound;
using hypbound::test::rel_close;

namespace {

// Reference values computed with mpmath at 30 digits.
constexpr double kLn3 = 1.09861228866810969139524523692;
constexpr double kLn2 = 0.693147180559945309417232121458;

}  // namespace

TEST_CASE("ModelPoint validates model invariants") {
  CHECK_NOTHROW(disc_point(0.5));
  CHECK_THROWS_AS(disc_point(1.0), ValidationError);
  CHECK_THROWS_AS(disc_point(1.0 - 1e-15), ValidationError);
  CHECK_THROWS_AS(upper_point({1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(upper_point({1.0, 1e-15}), ValidationError);
  CHECK_THROWS_AS(right_point(-0.1), ValidationError);
  CHECK_THROWS_AS(punctured_point(0.0), ValidationError);
  CHECK_THROWS_AS(punctured_point(1.2), ValidationError);
  CHECK_NOTHROW(punctured_point(1e-200));
}

TEST_CASE("dist closed values") {
  CHECK(std::abs(dist(right_point(1.0), right_point(2.0)) - kLn2) <= 1e-12);
  CHECK(dist(disc_point({0.2, 0.3}), disc_point({0.2, 0.3})) == 0.0);
  CHECK(dist(disc_point(0.0), disc_point(0.5)) == doctest::Approx(kLn3).epsilon(1e-14));
  CHECK(dist(upper_point({0, 1}), upper_point({0, 2})) == doctest::Approx(kLn2).epsilon(1e-14));

  // mpmath: 2 atanh|(u-v)/(1-u conj v)| and acosh(1 + |u-v|^2 / (2 Im u Im v))
  CHECK(dist(disc_point({0.3, 0.2}), disc_point({-0.4, 0.5})) ==
        doctest::Approx(1.85043799453639403786027431409).epsilon(1e-13));
  CHECK(dist(upper_point({1, 1}), upper_point({3, 0.5})) ==
        doctest::Approx(2.34217900880836474718960439585).epsilon(1e-13));
}

TEST_CASE("dist rejects mixed models") {
  CHECK_THROWS_AS(dist(disc_point(0.1), upper_point({0, 1})), DomainError);
}

TEST_CASE("half_sinh_cosh examples") {
  const HalfDistancePair p = half_sinh_cosh(disc_point(0.5), disc_point(0.0));
  CHECK(p.s == doctest::Approx(0.577350269189625764509148780502).epsilon(1e-14));
  CHECK(p.c == doctest::Approx(1.154700538379251529018297561).epsilon(1e-14));

  const HalfDistancePair same = half_sinh_cosh(disc_point({0.1, 0.7}), disc_point({0.1, 0.7}));
  CHECK(same.s == 0.0);
  CHECK(same.c == doctest::Approx(1.0).epsilon(1e-15));

  const HalfDistancePair opposite = half_sinh_cosh(disc_point(0.5), disc_point(-0.5));
  CHECK(opposite.s == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(opposite.c == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(half_sinh_cosh(upper_point({0, 1}), disc_point(0.0)), ValidationError);
}

TEST_CASE("density_punctured") {
  CHECK(density_punctured(punctured_point(std::exp(-1.0))) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(density_punctured(punctured_point(std::exp(-2.0 * std::numbers::pi))) ==
        doctest::Approx(85.2261439612287522124365309885).epsilon(1e-13));
  const double at_09 = density_punctured(punctured_point(0.9));
  CHECK(at_09 == doctest::Approx(10.5458017566998944603855237625).epsilon(1e-13));
  CHECK(at_09 >= std::numbers::e);
  CHECK_THROWS_AS(density_punctured(disc_point(0.5)), ValidationError);
}

TEST_CASE("convert examples") {
  const ModelPoint centre = convert(upper_point({0, 1}), Model::Disc);
  CHECK(std::abs(centre.value()) <= 1e-16);

  const ModelPoint third = convert(upper_point({0, 2}), Model::Disc);
  CHECK(std::abs(third.value() - 1.0 / 3.0) <= 1e-15);
  CHECK(rel_close(dist(upper_point({0, 1}), upper_point({0, 2})), dist(disc_point(0.0), third), 1e-12));

  const ModelPoint rotated = convert(right_point(1.0), Model::UpperHalfPlane);
  CHECK(std::abs(rotated.value() - Complex(0, 1)) <= 1e-16);

  CHECK_THROWS_AS(convert(disc_point(0.1), Model::PuncturedDisc), DomainError);
}

TEST_CASE("dist_oracle reproduces quadrature values") {
  CHECK(std::abs(dist_oracle(disc_point(0.0), disc_point(0.5)) - kLn3) <= 1e-6);
  CHECK(std::abs(dist_oracle(upper_point({0, 1}), upper_point({0, 2})) - kLn2) <= 1e-6);
  CHECK(dist_oracle(disc_point({0.3, -0.1}), disc_point({0.3, -0.1})) == 0.0);
  CHECK_THROWS_AS(dist_oracle(punctured_point(0.5), punctured_point(0.25)), DomainError);
}

TEST_CASE("metric properties on random points") {
  Rng rng(7);
  for (Model model : {Model::Disc, Model::UpperHalfPlane, Model::RightHalfPlane}) {
    CAPTURE(model_name(model));
    for (int k = 0; k < 300; ++k) {
      const ModelPoint u = test::random_point(rng, model);
      const ModelPoint v = test::random_point(rng, model);
      const ModelPoint w = test::random_point(rng, model);
      const double uv = dist(u, v);
      REQUIRE(uv >= 0.0);
      CHECK(rel_close(uv, dist(v, u), 1e-12));
      CHECK(dist(u, w) <= uv + dist(v, w) + 1e-9);
      CHECK(rel_close(uv, dist_oracle(u, v), 1e-6));
    }
  }
}

TEST_CASE("half-distance identities") {
  Rng rng(11);
  const ModelPoint origin = disc_point(0.0);
  for (int k = 0; k < 2000; ++k) {
    const ModelPoint u = disc_point(test::random_disc(rng));
    const ModelPoint v = disc_point(test::random_disc(rng));
    const auto uv = half_sinh_cosh(u, v);
    const auto u0 = half_sinh_cosh(u, origin);
    const auto v0 = half_sinh_cosh(v, origin);

    CHECK(std::abs(uv.c * uv.c - uv.s * uv.s - 1.0) <= 1e-12 * uv.c * uv.c);
    CHECK(rel_close(uv.s, std::sinh(dist(u, v) / 2.0), 1e-9));

    const double r = std::abs(u.value());
    CHECK(rel_close(u0.s, r / std::sqrt(1.0 - r * r), 1e-12));
    CHECK(rel_close(u0.c, 1.0 / std::sqrt(1.0 - r * r), 1e-12));

    const double gap = std::abs(u.value() - v.value());
    CHECK(rel_close(gap, uv.s / (u0.c * v0.c), 1e-10));
    CHECK(rel_close(gap / r, uv.s / (u0.s * v0.c), 1e-10));
  }
}

TEST_CASE("convert preserves distance") {
  Rng rng(3);
  const Model models[] = {Model::Disc, Model::UpperHalfPlane, Model::RightHalfPlane};
  for (int k = 0; k < 500; ++k) {
    const ModelPoint u = disc_point(test::random_disc(rng, 5.0));
    const ModelPoint v = disc_point(test::random_disc(rng, 5.0));
    const Model from = models[k % 3];
    const Model to = models[(k + 1) % 3];
    const ModelPoint a = convert(convert(u, from), to);
    const ModelPoint b = convert(convert(v, from), to);
    CHECK(rel_close(dist(u, v), dist(a, b), 1e-12, 1e-13));
  }
}

TEST_CASE("parse_model") {
  CHECK(parse_model("disc") == Model::Disc);
  CHECK(parse_model("uhp") == Model::UpperHalfPlane);
  CHECK(parse_model("rhp") == Model::RightHalfPlane);
  CHECK(parse_model("punctured") == Model::PuncturedDisc);
  CHECK_THROWS_AS(parse_model("sphere"), UsageError);
}
