#include "hypbound/mobius.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "hypbound/errors.hpp"

namespace hypbound {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTraceBand = 1e-9;
constexpr double kAxisTolerance = 1e-9;

Matrix2c make_matrix(Complex a, Complex b, Complex c, Complex d) {
  Matrix2c m;
  m << a, b, c, d;
  return m;
}

Matrix2c adjugate(const Matrix2c& m) {
  return make_matrix(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0));
}

Complex act(const Matrix2c& m, Complex w) {
  return (m(0, 0) * w + m(0, 1)) / (m(1, 0) * w + m(1, 1));
}

ExtendedPoint act(const Matrix2c& m, ExtendedPoint w) {
  if (w.infinite) {
    if (m(1, 0) == Complex{}) return ExtendedPoint::infinity();
    return {m(0, 0) / m(1, 0), false};
  }
  const Complex den = m(1, 0) * w.value + m(1, 1);
  if (std::abs(den) <= 1e-300) return ExtendedPoint::infinity();
  return {(m(0, 0) * w.value + m(0, 1)) / den, false};
}

// Distance from s to the imaginary axis in the upper (or, for an orientation
// reversing normaliser, lower) half-plane.
double distance_to_imaginary_axis(Complex s) {
  return std::asinh(std::abs(s.real()) / std::abs(s.imag()));
}

}  // namespace

Mobius::Mobius(const Matrix2c& matrix, Model domain) : matrix_(matrix), domain_(domain) {
  const Complex det = matrix_.determinant();
  const double scale = matrix_.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale) || std::abs(det) <= 1e-12 * scale * scale) {
    throw ValidationError("Mobius: matrix is singular");
  }
  // Already normalised matrices are kept bit for bit so serialised maps round-trip.
  if (std::abs(det - 1.0) > 1e-14) matrix_ /= std::sqrt(det);
}

Mobius::Mobius(Complex a, Complex b, Complex c, Complex d, Model domain)
    : Mobius(make_matrix(a, b, c, d), domain) {}

Mobius Mobius::identity(Model domain) { return Mobius(Matrix2c::Identity(), domain); }

Mobius Mobius::inverse() const { return Mobius(adjugate(matrix_), domain_); }

Complex Mobius::apply_raw(Complex w) const {
  const Complex den = c() * w + d();
  if (std::abs(den) <= 1e-15 * (std::abs(c() * w) + std::abs(d()))) {
    throw DomainError("Mobius: point is a pole");
  }
  return (a() * w + b()) / den;
}

ExtendedPoint Mobius::apply(ExtendedPoint w) const { return act(matrix_, w); }

bool Mobius::preserves_model() const {
  if (domain_ == Model::PuncturedDisc) return false;
  for (int k = 0; k < 50; ++k) {
    const double radius = 3.0 * static_cast<double>(k % 5 + 1) / 5.0;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / 50.0;
    const ModelPoint sample =
        convert(disc_point(std::polar(std::tanh(radius / 2.0), angle)), domain_);
    if (!in_model(apply_raw(sample.value()), domain_)) return false;
  }
  return true;
}

Mobius operator*(const Mobius& m1, const Mobius& m2) {
  if (m1.domain_model() != m2.domain_model()) {
    throw DomainError("Mobius composition across different models");
  }
  return Mobius(m1.matrix() * m2.matrix(), m1.domain_model());
}

Mobius compose(const Mobius& m1, const Mobius& m2) { return m1 * m2; }

ModelPoint apply(const Mobius& m, const ModelPoint& z) {
  if (z.model() != m.domain_model()) throw DomainError("apply: point is not in the map's model");
  const Complex image = m.apply_raw(z.value());
  if (!in_model(image, m.domain_model())) {
    throw IntegrityError("apply: image left the model");
  }
  return {image, m.domain_model()};
}

std::string_view kind_name(MobiusKind kind) {
  switch (kind) {
    case MobiusKind::Identity:
      return "identity";
    case MobiusKind::Elliptic:
      return "elliptic";
    case MobiusKind::Parabolic:
      return "parabolic";
    case MobiusKind::Hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

MobiusClass classify(const Mobius& m) {
  const Matrix2c& mat = m.matrix();
  MobiusClass result;
  if ((mat - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= 1e-12 ||
      (mat + Matrix2c::Identity()).cwiseAbs().maxCoeff() <= 1e-12) {
    result.kind = MobiusKind::Identity;
    return result;
  }

  const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const Complex trace = a + d;
  const Complex trace2 = trace * trace;
  if (std::abs(trace2.imag()) > kTraceBand || trace2.real() > 4.0 + kTraceBand) {
    result.kind = MobiusKind::Hyperbolic;
  } else if (trace2.real() >= 4.0 - kTraceBand) {
    result.kind = MobiusKind::Parabolic;
  } else {
    result.kind = MobiusKind::Elliptic;
  }

  // c z^2 + (d - a) z - b = 0
  std::vector<ExtendedPoint> roots;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(d)});
  if (std::abs(c) <= 1e-14 * scale) {
    roots.push_back(ExtendedPoint::infinity());
    if (result.kind != MobiusKind::Parabolic) roots.push_back({b / (d - a), false});
  } else if (result.kind == MobiusKind::Parabolic) {
    roots.push_back({(a - d) / (2.0 * c), false});
  } else {
    const Complex root = std::sqrt(trace2 - 4.0);
    roots.push_back({(a - d + root) / (2.0 * c), false});
    roots.push_back({(a - d - root) / (2.0 * c), false});
  }

  switch (result.kind) {
    case MobiusKind::Hyperbolic:
      result.fixed_points = roots;
      result.axis = std::array<ExtendedPoint, 2>{roots[0], roots[1]};
      result.translation_length = 2.0 * std::asinh(std::abs(std::sqrt(trace2 - 4.0)) / 2.0);
      break;
    case MobiusKind::Elliptic:
      for (const ExtendedPoint& p : roots) {
        if (!p.infinite && in_model(p.value, m.domain_model())) result.fixed_points.push_back(p);
      }
      if (result.fixed_points.empty()) result.fixed_points = roots;
      break;
    default:
      result.fixed_points = roots;
      break;
  }
  return result;
}

Mobius build_disc_automorphism(const ModelPoint& a, double theta) {
  if (a.model() != Model::Disc) throw ValidationError("disc automorphism centre must be a disc point");
  const Complex rot = std::polar(1.0, theta);
  return Mobius(rot, -rot * a.value(), -std::conj(a.value()), 1.0, Model::Disc);
}

Matrix2c model_to_upper(Model model) {
  switch (model) {
    case Model::Disc:
      return make_matrix(kI, kI, -1.0, 1.0);
    case Model::UpperHalfPlane:
      return Matrix2c::Identity();
    case Model::RightHalfPlane:
      return make_matrix(kI, 0.0, 0.0, 1.0);
    case Model::PuncturedDisc:
      break;
  }
  throw DomainError("the punctured disc has no Mobius model of the upper half-plane");
}

Mobius hyperbolic_pull(const ModelPoint& p, const ModelPoint& q) {
  if (p.model() != q.model()) throw DomainError("hyperbolic_pull: points in different models");
  const Model model = p.model();
  if (p == q) return Mobius::identity(model);

  const Matrix2c to_upper = model_to_upper(model);
  const Complex p_up = act(to_upper, p.value());
  const Complex q_up = act(to_upper, q.value());
  const double length = dist(p, q);

  // T sends q to i and p to e^{length} i on the imaginary axis.
  const Matrix2c shift = make_matrix(1.0, -q_up.real(), 0.0, q_up.imag());
  const Matrix2c cayley = make_matrix(1.0, -kI, 1.0, kI);
  const Complex w = act(cayley * shift, p_up);
  const Complex half_turn = std::polar(1.0, -std::arg(w) / 2.0);
  const Matrix2c rotation = make_matrix(half_turn, 0.0, 0.0, std::conj(half_turn));
  const Matrix2c normaliser = adjugate(cayley) * rotation * cayley * shift;

  const Matrix2c dilation = make_matrix(std::exp(length / 2.0), 0.0, 0.0, std::exp(-length / 2.0));
  const Matrix2c conj_to_model = adjugate(normaliser * to_upper);
  return Mobius(conj_to_model * dilation * normaliser * to_upper, model);
}

double distance_to_axis(const ModelPoint& w, const std::array<ExtendedPoint, 2>& axis) {
  const Matrix2c to_upper = model_to_upper(w.model());
  const Complex point = act(to_upper, w.value());
  // An endpoint at the pole of the Cayley map lands at a huge finite value
  // through rounding; past 1e12 times the point's scale it is infinity.
  const double far = 1e12 * (1.0 + std::abs(point));
  auto endpoint = [&](const ExtendedPoint& e) {
    const ExtendedPoint mapped = act(to_upper, e);
    return (!mapped.infinite && std::abs(mapped.value) > far) ? ExtendedPoint::infinity() : mapped;
  };
  const ExtendedPoint e1 = endpoint(axis[0]);
  const ExtendedPoint e2 = endpoint(axis[1]);
  if (e1.infinite && e2.infinite) throw DomainError("distance_to_axis: degenerate axis");

  Complex s;
  if (e2.infinite) {
    s = point - e1.value.real();
  } else if (e1.infinite) {
    s = point - e2.value.real();
  } else {
    s = (point - e1.value.real()) / (point - e2.value.real());
  }
  return distance_to_imaginary_axis(s);
}

BoundReport qlo_bound(const ModelPoint& w, const ModelPoint& c, const Mobius& h, double tolerance) {
  if (w.model() != h.domain_model() || c.model() != h.domain_model()) {
    throw DomainError("qlo_bound: points and map must share a model");
  }
  const MobiusClass cls = classify(h);
  if (cls.kind != MobiusKind::Hyperbolic) throw DomainError("qlo_bound: h is not hyperbolic");
  if (distance_to_axis(c, *cls.axis) > kAxisTolerance) {
    throw PreconditionError("qlo_bound: c does not lie on the axis of h");
  }

  const double displacement_w = dist(w, apply(h, w));
  const double displacement_c = dist(c, apply(h, c));
  const double rhs = std::exp(dist(w, c)) * displacement_c;

  const double identity_lhs = std::sinh(displacement_w / 2.0);
  const double identity_rhs = std::cosh(distance_to_axis(w, *cls.axis)) * std::sinh(displacement_c / 2.0);
  const double scale = std::max(std::abs(identity_lhs), std::abs(identity_rhs));
  const double residual = scale > 0.0 ? std::abs(identity_lhs - identity_rhs) / scale : 0.0;

  nlohmann::json witnesses = {
      {"w", format_complex(w.value())},
      {"c", format_complex(c.value())},
      {"h", to_json(h)},
      {"sinh_half_displacement", format_real(identity_lhs)},
      {"cosh_axis_distance_times_sinh_half_translation", format_real(identity_rhs)},
      {"identity_relative_residual", format_real(residual)},
  };
  return make_report(Theorem::Qlo, displacement_w, rhs, std::exp(dist(w, c)), std::move(witnesses),
                     tolerance);
}

nlohmann::json to_json(const Mobius& m) {
  return {
      {"model", model_name(m.domain_model())},
      {"a", format_complex(m.a())},
      {"b", format_complex(m.b())},
      {"c", format_complex(m.c())},
      {"d", format_complex(m.d())},
  };
}

Mobius mobius_from_json(const nlohmann::json& j) {
  try {
    return Mobius(parse_complex(j.at("a").get<std::string>()), parse_complex(j.at("b").get<std::string>()),
                  parse_complex(j.at("c").get<std::string>()), parse_complex(j.at("d").get<std::string>()),
                  parse_model(j.at("model").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed Mobius JSON: ") + e.what());
  }
}

}  // namespace hypbound
