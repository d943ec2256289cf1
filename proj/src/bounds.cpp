#include "hypbound/bounds.hpp"

#include <cmath>

#include "hypbound/covering.hpp"
#include "hypbound/errors.hpp"

namespace hypbound {

namespace {

constexpr double kMinSeparation = 1e-9;
constexpr double kFixedPointTolerance = 1e-10;

void require_disc(std::initializer_list<const ModelPoint*> points, const char* what) {
  for (const ModelPoint* p : points) {
    if (p->model() != Model::Disc) throw DomainError(std::string(what) + ": points must lie in the disc");
  }
}

double separation(const ModelPoint& a, const ModelPoint& b, const char* what) {
  const double d = dist(a, b);
  if (d < kMinSeparation) throw PreconditionError(std::string(what) + ": a and b must be distinct");
  return d;
}

nlohmann::json point_witnesses(const ModelPoint& a, const ModelPoint& b, const ModelPoint& z) {
  return {{"a", format_complex(a.value())}, {"b", format_complex(b.value())}, {"z", format_complex(z.value())}};
}

}  // namespace

double constant_two_point(const ModelPoint& z, const ModelPoint& a, const ModelPoint& b, bool sharp) {
  require_disc({&z, &a, &b}, "constant_two_point");
  const double ab = separation(a, b, "constant_two_point");
  const double numerator = std::exp(dist(z, a) + ab + dist(b, z));
  return numerator / (sharp ? 2.0 * std::sinh(ab / 2.0) : ab);
}

BoundReport check_two_point(const HoloMap& f, const ModelPoint& a, const ModelPoint& b, const ModelPoint& z,
                            const std::optional<Mobius>& h, bool sharp, double tolerance) {
  if (f.model() != Model::Disc) throw DomainError("check_two_point: f must be a self-map of the disc");
  if (h && h->domain_model() != Model::Disc) throw PreconditionError("check_two_point: h must be a disc automorphism");
  const double constant = constant_two_point(z, a, b, sharp);

  auto reference = [&h](const ModelPoint& p) { return h ? apply(*h, p) : p; };
  const double lhs = dist(eval(f, z), reference(z));
  const double rhs = constant * (dist(eval(f, a), reference(a)) + dist(eval(f, b), reference(b)));

  nlohmann::json witnesses = point_witnesses(a, b, z);
  witnesses["f"] = to_json(f);
  if (h) witnesses["h"] = to_json(*h);
  const Theorem theorem = h ? Theorem::Xjb : (sharp ? Theorem::TwoPointSharp : Theorem::TwoPoint);
  return make_report(theorem, lhs, rhs, constant, std::move(witnesses), tolerance);
}

double constant_keu(const ModelPoint& a, const ModelPoint& b) {
  require_disc({&a, &b}, "constant_keu");
  const double ab = separation(a, b, "constant_keu");
  return std::exp(2.0 * ab) / ab;
}

double constant_fixed_point(const ModelPoint& z, const ModelPoint& a, const ModelPoint& b) {
  require_disc({&z, &a, &b}, "constant_fixed_point");
  const double ab = separation(a, b, "constant_fixed_point");
  return std::exp(dist(a, z) + dist(z, b)) / (4.0 * std::sinh(ab / 2.0));
}

BoundReport check_fixed_point(const HoloMap& f, const ModelPoint& a, const ModelPoint& b, const ModelPoint& z,
                              double tolerance) {
  if (f.model() != Model::Disc) throw DomainError("check_fixed_point: f must be a self-map of the disc");
  const double constant = constant_fixed_point(z, a, b);
  if (dist(eval(f, b), b) > kFixedPointTolerance) throw PreconditionError("check_fixed_point: f does not fix b");

  const double lhs = dist(eval(f, z), z);
  const double rhs = constant * dist(eval(f, a), a);
  nlohmann::json witnesses = point_witnesses(a, b, z);
  witnesses["f"] = to_json(f);
  return make_report(Theorem::FixedPoint, lhs, rhs, constant, std::move(witnesses), tolerance);
}

double constant_punctured(const ModelPoint& z, const ModelPoint& a) {
  return 8.0 * density_punctured(a) * std::exp(punctured_dist(z, a));
}

BoundReport check_punctured(const HoloMap& f, const HoloMap& h, const ModelPoint& a, const ModelPoint& z,
                            double tolerance) {
  if (f.model() != Model::PuncturedDisc || h.model() != Model::PuncturedDisc) {
    throw PreconditionError("check_punctured: f and h must be self-maps of the punctured disc");
  }
  const std::optional<int> f_degree = declared_degree(f);
  const std::optional<int> h_degree = declared_degree(h);
  if (!f_degree || !h_degree || *f_degree < 1 || *f_degree != *h_degree) {
    throw PreconditionError("check_punctured: need deg f = deg h >= 1");
  }
  const bool covering = std::holds_alternative<maps::PuncturedPower>(h.variant()) ||
                        std::holds_alternative<maps::Identity>(h.variant());
  if (!covering) throw PreconditionError("check_punctured: h must be a self-covering e^{i theta} z^m");

  const double big_l = constant_punctured(z, a);
  const double constant = big_l * big_l * big_l;
  const double lhs = dist(eval(f, z), eval(h, z));
  const double rhs = constant * dist(eval(f, a), eval(h, a));

  nlohmann::json witnesses = {{"a", format_complex(a.value())},
                              {"z", format_complex(z.value())},
                              {"f", to_json(f)},
                              {"h", to_json(h)},
                              {"L", format_real(big_l)}};
  return make_report(Theorem::Punctured, lhs, rhs, constant, std::move(witnesses), tolerance);
}

}  // namespace hypbound
