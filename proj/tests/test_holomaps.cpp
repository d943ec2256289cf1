#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypbound/errors.hpp"
#include "hypbound/holomaps.hpp"
#include "support.hpp"

using namespace hypbound;
using hypbound::test::rel_close;

namespace {

Complex central_difference(const HoloMap& f, Complex z) {
  const double h = 1e-6;
  return (eval_raw(f, z + h) - eval_raw(f, z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("constructors validate parameters") {
  CHECK_THROWS_AS(HoloMap::blaschke(0.0, {Complex(1.2, 0.0)}), ValidationError);
  CHECK_THROWS_AS(HoloMap::translate(-0.1), ValidationError);
  CHECK_THROWS_AS(HoloMap::power(0.0, 0), ValidationError);
  CHECK_THROWS_AS(HoloMap::exp(0.0, 2, -1.0), ValidationError);
  CHECK_THROWS_AS(HoloMap::compose({}), ValidationError);
  CHECK_THROWS_AS(HoloMap::compose({HoloMap::power(0.0, 2), HoloMap::blaschke(0.0, {})}), DomainError);
  CHECK_THROWS_AS(HoloMap::dilation(1.5), ValidationError);
  CHECK_THROWS_AS(HoloMap::mobius(Mobius::identity(Model::PuncturedDisc)), DomainError);
}

TEST_CASE("closed evaluations") {
  // mpmath: 0.5^2 * exp(0.5 - 1)
  CHECK(eval_raw(HoloMap::exp(0.0, 2, 1.0), 0.5).real() ==
        doctest::Approx(0.151632664928158355751684600225).epsilon(1e-14));
  CHECK(std::abs(eval_raw(HoloMap::power(std::numbers::pi, 3), 0.5) - Complex(-0.125, 0.0)) <= 1e-15);
  CHECK(std::abs(eval_raw(HoloMap::blaschke(0.0, {Complex(0.5, 0.0)}), 0.5)) == 0.0);
  CHECK(std::abs(eval_raw(HoloMap::translate(0.25), 1.0) - 1.25) == 0.0);
  CHECK(eval_raw(HoloMap::real_part(), Complex(0.3, 0.4)) == Complex(0.3, 0.0));
  const HoloMap square_then_cube = HoloMap::compose({HoloMap::power(0.0, 3), HoloMap::power(0.0, 2)});
  CHECK(std::abs(eval_raw(square_then_cube, 0.5) - std::pow(0.5, 6)) <= 1e-16);
}

TEST_CASE("eval checks models") {
  CHECK_THROWS_AS(eval(HoloMap::power(0.0, 2), disc_point(0.5)), DomainError);
  const ModelPoint image = eval(HoloMap::exp(0.3, 2, 1.0), punctured_point({0.2, 0.4}));
  CHECK(image.model() == Model::PuncturedDisc);
}

TEST_CASE("derivatives agree with finite differences") {
  Rng rng(21);
  const FamilySpec mixed = parse_family("mixed:max_degree=5");
  for (int k = 0; k < 200; ++k) {
    const HoloMap f = sample_map(mixed, rng);
    const Complex z = test::random_disc(rng, 3.0);
    const Complex exact = derivative(f, z);
    CHECK(std::abs(exact - central_difference(f, z)) <= 1e-5 * std::max(1.0, std::abs(exact)));
  }
  const FamilySpec punctured = parse_family("punctured_exp:max_m=4,max_c=2");
  for (int k = 0; k < 200; ++k) {
    const HoloMap f = sample_map(punctured, rng);
    const Complex z = test::random_punctured(rng, 0.05, 0.9);
    const Complex lhs = log_derivative(f, z);
    const Complex rhs = derivative(f, z) / eval_raw(f, z);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
  }
  CHECK_THROWS_AS(derivative(HoloMap::real_part(), 0.1), DomainError);
}

TEST_CASE("sampled maps are self-maps") {
  Rng rng(23);
  for (const char* family : {"blaschke:max_degree=5", "automorphism", "mixed:max_degree=5",
                             "near_identity:eps=1e-3", "punctured_exp:max_m=4,max_c=2"}) {
    CAPTURE(family);
    const FamilySpec spec = parse_family(family);
    for (int k = 0; k < 100; ++k) {
      const HoloMap f = sample_map(spec, rng);
      CHECK(f.model() == spec.model());
      const Complex z = spec.model() == Model::PuncturedDisc ? test::random_punctured(rng)
                                                             : test::random_disc(rng, 5.0);
      CHECK_NOTHROW(eval(f, ModelPoint(z, spec.model())));
    }
  }
}

TEST_CASE("holomorphic maps do not expand the metric") {
  Rng rng(29);
  const FamilySpec mixed = parse_family("mixed:max_degree=5");
  for (int k = 0; k < 500; ++k) {
    const HoloMap f = sample_map(mixed, rng);
    const ModelPoint u = disc_point(test::random_disc(rng, 4.0));
    const ModelPoint v = disc_point(test::random_disc(rng, 4.0));
    CHECK(dist(eval(f, u), eval(f, v)) <= dist(u, v) * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("near-identity maps move points a little") {
  Rng rng(31);
  const FamilySpec near = parse_family("near_identity:eps=1e-3");
  for (int k = 0; k < 200; ++k) {
    const HoloMap f = sample_map(near, rng);
    const ModelPoint z = disc_point(0.0);
    CHECK(dist(eval(f, z), z) <= 1e-3);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const FamilySpec mixed = parse_family("mixed:max_degree=5");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(to_json(sample_map(mixed, seed)) == to_json(sample_map(mixed, seed)));
  }
  CHECK(to_json(sample_map(mixed, 1)) != to_json(sample_map(mixed, 2)));
}

TEST_CASE("schwarz quotient") {
  const HoloMap b = HoloMap::blaschke(0.4, {Complex(0.0, 0.0), Complex(0.3, 0.2)});
  const HoloMap g = schwarz_quotient(b);
  const Complex w(0.2, -0.5);
  CHECK(std::abs(eval_raw(g, w) - eval_raw(b, w) / w) <= 1e-14);
  CHECK(std::abs(eval_raw(g, 0.0) - derivative(b, 0.0)) <= 1e-14);

  CHECK(std::holds_alternative<maps::Constant>(schwarz_quotient(HoloMap::identity(Model::Disc)).variant()));
  CHECK(std::holds_alternative<maps::Constant>(schwarz_quotient(HoloMap::dilation(0.5)).variant()));

  const HoloMap wrapped = schwarz_quotient(HoloMap::compose({b, HoloMap::blaschke(0.0, {Complex(0.0, 0.0)})}));
  CHECK(std::abs(eval_raw(wrapped, 0.0) - derivative(b, 0.0) * 1.0) <= 1e-6);

  CHECK_THROWS_AS(schwarz_quotient(HoloMap::blaschke(0.0, {Complex(0.5, 0.0)})), PreconditionError);
  CHECK_THROWS_AS(schwarz_quotient(HoloMap::real_part()), PreconditionError);
  CHECK_THROWS_AS(schwarz_quotient(HoloMap::power(0.0, 2)), PreconditionError);
}

TEST_CASE("schwarz quotients of disc maps fixing 0 stay in the closed disc") {
  Rng rng(37);
  for (int k = 0; k < 200; ++k) {
    const HoloMap fixing = HoloMap::blaschke(rng.uniform(0.0, 6.0), {Complex(0.0, 0.0), test::random_disc(rng, 3.0)});
    const HoloMap g = schwarz_quotient(fixing);
    const Complex w = test::random_disc(rng, 4.0);
    CHECK(std::abs(eval_raw(g, w)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("declared degree") {
  CHECK(declared_degree(HoloMap::power(0.0, 3)) == 3);
  CHECK(declared_degree(HoloMap::exp(0.0, 2, 0.5)) == 2);
  CHECK(declared_degree(HoloMap::identity(Model::PuncturedDisc)) == 1);
  CHECK(declared_degree(HoloMap::compose({HoloMap::power(0.0, 3), HoloMap::exp(0.0, 2, 1.0)})) == 6);
  CHECK_FALSE(declared_degree(HoloMap::blaschke(0.0, {})).has_value());
}

TEST_CASE("family parsing") {
  const FamilySpec b = parse_family("blaschke:max_degree=3");
  CHECK(b.kind == FamilySpec::Kind::Blaschke);
  CHECK(b.max_degree == 3);
  const FamilySpec p = parse_family("punctured_exp:max_m=4,max_c=2");
  CHECK(p.kind == FamilySpec::Kind::PuncturedExp);
  CHECK(p.max_m == 4);
  CHECK(p.model() == Model::PuncturedDisc);
  CHECK(parse_family(to_string(p)).max_c == p.max_c);
  CHECK(parse_family("near_identity:eps=1e-4").epsilon == 1e-4);
  CHECK_THROWS_AS(parse_family("spiral"), UsageError);
  CHECK_THROWS_AS(parse_family("blaschke:max_degree=x"), UsageError);
  CHECK_THROWS_AS(parse_family("blaschke:max_degree=-1"), UsageError);
}

TEST_CASE("JSON and shorthand round trips") {
  Rng rng(41);
  for (const char* family : {"mixed:max_degree=5", "punctured_exp:max_m=4,max_c=2"}) {
    const FamilySpec spec = parse_family(family);
    for (int k = 0; k < 50; ++k) {
      const HoloMap f = sample_map(spec, rng);
      const nlohmann::json j = to_json(f);
      CHECK(to_json(holomap_from_json(j)) == j);
      CHECK(to_json(parse_map_spec(j.dump())) == j);
    }
  }
  const HoloMap e = parse_map_spec("exp:m=2,c=0.5");
  CHECK(std::abs(eval_raw(e, 0.5) - eval_raw(HoloMap::exp(0.0, 2, 0.5), 0.5)) == 0.0);
  CHECK(declared_degree(parse_map_spec("compose:power:m=2|power:m=3")) == 6);
  CHECK(parse_map_spec("identity").model() == Model::PuncturedDisc);
  CHECK(parse_map_spec("blaschke:zeros=0.5;0.2+0.1i").model() == Model::Disc);
  CHECK_THROWS_AS(parse_map_spec("spiral:m=2"), UsageError);
  CHECK_THROWS_AS(parse_map_spec("{\"type\":"), UsageError);
  CHECK_THROWS_AS(holomap_from_json(nlohmann::json{{"type", "power"}}), UsageError);
}

TEST_CASE("eval examples") {
  CHECK(eval(HoloMap::identity(Model::Disc), disc_point({0.1, 0.2})).value() == Complex(0.1, 0.2));
  CHECK(std::abs(eval(HoloMap::translate(0.01), right_point(0.1)).value() - 0.11) <= 1e-16);
}

TEST_CASE("schwarz quotient examples") {
  const HoloMap square = HoloMap::blaschke(0.0, {Complex(0.0, 0.0), Complex(0.0, 0.0)});
  const HoloMap g_square = schwarz_quotient(square);
  CHECK(std::abs(eval_raw(g_square, Complex(0.3, 0.4)) - Complex(0.3, 0.4)) <= 1e-16);

  const HoloMap factor = HoloMap::blaschke(0.0, {Complex(0.0, 0.0), Complex(0.5, 0.0)});
  const HoloMap g_factor = schwarz_quotient(factor);
  CHECK(std::abs(eval_raw(g_factor, 0.0) + 0.5) <= 1e-16);
  const Complex w(0.2, 0.3);
  CHECK(std::abs(eval_raw(g_factor, w) - (w - 0.5) / (1.0 - 0.5 * w)) <= 1e-15);

  const HoloMap g_linear = schwarz_quotient(HoloMap::dilation(0.3));
  CHECK(eval_raw(g_linear, 0.0) == Complex(0.3, 0.0));
  CHECK(eval_raw(g_linear, Complex(0.7, -0.1)) == Complex(0.3, 0.0));
}

TEST_CASE("schwarz quotients are bounded by 1 on 10^3 points") {
  Rng rng(43);
  const FamilySpec blaschke = parse_family("blaschke:max_degree=4");
  int points = 0;
  while (points < 1000) {
    const HoloMap base = sample_map(blaschke, rng);
    const HoloMap f = HoloMap::compose({HoloMap::blaschke(0.0, {Complex(0.0, 0.0)}),
                                        HoloMap::mobius(build_disc_automorphism(
                                            disc_point(eval_raw(base, 0.0)), 0.0)),
                                        base});
    const HoloMap g = schwarz_quotient(f);
    for (int j = 0; j < 10; ++j, ++points) {
      CHECK(std::abs(eval_raw(g, test::random_disc(rng, 5.0))) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("strict Schwarz inequality for products with an extra zero") {
  Rng rng(47);
  for (int k = 0; k < 500; ++k) {
    Complex extra;
    do {
      extra = test::random_disc(rng, 3.0);
    } while (std::abs(extra) < 1e-3);
    const HoloMap f = HoloMap::blaschke(rng.uniform(0.0, 6.0), {Complex(0.0, 0.0), extra});
    Complex w;
    do {
      w = test::random_disc(rng, 4.0);
    } while (std::abs(w) < 1e-6);
    CHECK(std::abs(eval_raw(f, w)) < std::abs(w));
  }
}

TEST_CASE("Re(w) contracts but is flagged") {
  const HoloMap re = HoloMap::real_part();
  CHECK(re.contraction_only());
  CHECK_FALSE(re.holomorphic());
  CHECK(HoloMap::compose({HoloMap::blaschke(0.0, {}), re}).contraction_only());
  CHECK_FALSE(HoloMap::blaschke(0.0, {Complex(0.3, 0.0)}).contraction_only());
  Rng rng(53);
  for (int k = 0; k < 500; ++k) {
    const ModelPoint u = disc_point(test::random_disc(rng, 5.0));
    const ModelPoint v = disc_point(test::random_disc(rng, 5.0));
    CHECK(dist(eval(re, u), eval(re, v)) <= dist(u, v) + 1e-9);
  }
}

TEST_CASE("punctured exponential maps are zero-free self-maps") {
  Rng rng(59);
  const FamilySpec family = parse_family("punctured_exp:max_m=5,max_c=2");
  for (int k = 0; k < 300; ++k) {
    const HoloMap f = sample_map(family, rng);
    const auto& p = std::get<maps::PuncturedExp>(f.variant());
    const Complex z = test::random_punctured(rng);
    const double expected = std::pow(std::abs(z), p.m) * std::exp(p.c * (z.real() - 1.0));
    CHECK(rel_close(std::abs(eval_raw(f, z)), expected, 1e-13));
    CHECK(expected > 0.0);
    CHECK(expected < 1.0);
  }
}

TEST_CASE("sampling examples") {
  const FamilySpec b3 = parse_family("blaschke:max_degree=3");
  CHECK(to_json(sample_map(b3, 42)) == to_json(sample_map(b3, 42)));
  const HoloMap e = sample_map(parse_family("punctured_exp:max_m=5,max_c=2.0"), 7);
  const auto& p = std::get<maps::PuncturedExp>(e.variant());
  CHECK(p.m >= 1);
  CHECK(p.m <= 5);
  CHECK(p.c >= 0.0);
  CHECK(p.c <= 2.0);
}
