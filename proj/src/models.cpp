#include "hypbound/models.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "hypbound/covering.hpp"
#include "hypbound/errors.hpp"

namespace hypbound {

namespace {

constexpr Complex kI{0.0, 1.0};

double one_minus_abs2(Complex w) {
  const double r = std::abs(w);
  return (1.0 - r) * (1.0 + r);
}

std::string describe(Complex w) {
  return "(" + std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")";
}

Complex to_upper(Complex w, Model from) {
  switch (from) {
    case Model::Disc:
      return kI * (1.0 + w) / (1.0 - w);
    case Model::UpperHalfPlane:
      return w;
    case Model::RightHalfPlane:
      return kI * w;
    case Model::PuncturedDisc:
      break;
  }
  throw DomainError("no global isometry from the punctured disc");
}

Complex from_upper(Complex zeta, Model to) {
  switch (to) {
    case Model::Disc:
      return (zeta - kI) / (zeta + kI);
    case Model::UpperHalfPlane:
      return zeta;
    case Model::RightHalfPlane:
      return -kI * zeta;
    case Model::PuncturedDisc:
      break;
  }
  throw DomainError("no global isometry onto the punctured disc");
}

// Composite Simpson on [0, 1], doubling the panel count until two successive
// estimates agree to 1e-9 absolute.
double integrate_unit_interval(const std::function<double(double)>& g) {
  constexpr double kTolerance = 1e-9;
  constexpr std::size_t kMaxPanels = std::size_t{1} << 20;

  auto simpson = [&g](std::size_t panels) {
    const double h = 1.0 / static_cast<double>(panels);
    double sum = g(0.0) + g(1.0);
    for (std::size_t k = 1; k < panels; ++k) {
      sum += g(static_cast<double>(k) * h) * ((k % 2 == 1) ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
  };

  std::size_t panels = 8;
  double previous = simpson(panels);
  while (panels < kMaxPanels) {
    panels *= 2;
    const double current = simpson(panels);
    if (std::abs(current - previous) < kTolerance) return current;
    previous = current;
  }
  throw NumericalError("dist_oracle quadrature did not converge");
}

// Integral of a density along a parametrised path p: [0,1] -> C. The
// substitution t = (1 - cos(pi s)) / 2 clusters nodes at both ends, where the
// density peaks for points near the boundary.
double path_length(const std::function<double(Complex)>& density,
                   const std::function<Complex(double)>& path,
                   const std::function<double(double)>& speed) {
  return integrate_unit_interval([&](double s) {
    const double t = 0.5 * (1.0 - std::cos(std::numbers::pi * s));
    const double jacobian = 0.5 * std::numbers::pi * std::sin(std::numbers::pi * s);
    return density(path(t)) * speed(t) * jacobian;
  });
}

double disc_oracle(Complex u, Complex v) {
  auto density = [](Complex p) { return 2.0 / one_minus_abs2(p); };

  // Geodesic circle: centre C with Re(u conj C) = (1 + |u|^2)/2, same for v.
  const double det = u.real() * v.imag() - u.imag() * v.real();
  bool straight = std::abs(det) <= 1e-14;
  Complex centre;
  if (!straight) {
    const double ru = 0.5 * (1.0 + std::norm(u));
    const double rv = 0.5 * (1.0 + std::norm(v));
    centre = Complex((ru * v.imag() - rv * u.imag()) / det, (u.real() * rv - v.real() * ru) / det);
    straight = std::abs(centre) > 1e4;
  }
  if (straight) {
    const Complex delta = v - u;
    return path_length(
        density, [&](double t) { return u + t * delta; },
        [&](double) { return std::abs(delta); });
  }
  const double radius = std::sqrt(std::norm(centre) - 1.0);
  const double phi_u = std::arg(u - centre);
  const double sweep = std::remainder(std::arg(v - centre) - phi_u, 2.0 * std::numbers::pi);
  return path_length(
      density, [&](double t) { return centre + std::polar(radius, phi_u + t * sweep); },
      [&](double) { return radius * std::abs(sweep); });
}

// Upper half-plane oracle; `rotate` maps UHP coordinates back to the caller's
// model so the density is evaluated there.
double upper_oracle(Complex u, Complex v, const std::function<double(Complex)>& density,
                    const std::function<Complex(Complex)>& rotate) {
  const double dx = u.real() - v.real();
  const double scale = std::max(u.imag(), v.imag());
  bool vertical = std::abs(dx) <= 1e-14 * scale;
  double x0 = 0.0;
  double radius = 0.0;
  if (!vertical) {
    x0 = (std::norm(u) - std::norm(v)) / (2.0 * dx);
    radius = std::abs(u - x0);
    vertical = radius > 1e4 * scale;
  }
  if (vertical) {
    const Complex delta = v - u;
    return path_length(
        density, [&](double t) { return rotate(u + t * delta); },
        [&](double) { return std::abs(delta); });
  }
  const double theta_u = std::arg(u - x0);
  const double sweep = std::arg(v - x0) - theta_u;
  return path_length(
      density, [&](double t) { return rotate(x0 + std::polar(radius, theta_u + t * sweep)); },
      [&](double) { return radius * std::abs(sweep); });
}

}  // namespace

std::string_view model_name(Model model) {
  switch (model) {
    case Model::Disc:
      return "disc";
    case Model::UpperHalfPlane:
      return "uhp";
    case Model::RightHalfPlane:
      return "rhp";
    case Model::PuncturedDisc:
      return "punctured";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "disc" || name == "D") return Model::Disc;
  if (name == "uhp" || name == "upper" || name == "H") return Model::UpperHalfPlane;
  if (name == "rhp" || name == "right" || name == "K") return Model::RightHalfPlane;
  if (name == "punctured" || name == "D*") return Model::PuncturedDisc;
  throw UsageError("unknown model '" + std::string(name) + "'");
}

bool in_model(Complex value, Model model) noexcept {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) return false;
  switch (model) {
    case Model::Disc:
      return std::abs(value) < 1.0 - kBoundaryMargin;
    case Model::UpperHalfPlane:
      return value.imag() > kBoundaryMargin;
    case Model::RightHalfPlane:
      return value.real() > kBoundaryMargin;
    case Model::PuncturedDisc: {
      const double r = std::abs(value);
      return r >= std::numeric_limits<double>::min() && r < 1.0 - kBoundaryMargin;
    }
  }
  return false;
}

ModelPoint::ModelPoint(Complex value, Model model) : value_(value), model_(model) {
  if (!in_model(value, model)) {
    throw ValidationError("point " + describe(value) + " is not in model " +
                          std::string(model_name(model)));
  }
}

double disc_dist(Complex u, Complex v) {
  if (u == v) return 0.0;
  const double q = std::abs(u - v) / std::abs(1.0 - u * std::conj(v));
  return 2.0 * std::atanh(std::min(q, std::nextafter(1.0, 0.0)));
}

double upper_half_plane_dist(Complex u, Complex v) {
  if (u == v) return 0.0;
  return 2.0 * std::asinh(std::abs(u - v) / (2.0 * std::sqrt(u.imag() * v.imag())));
}

double dist(const ModelPoint& u, const ModelPoint& v) {
  if (u.model() != v.model()) throw DomainError("dist: points belong to different models");
  switch (u.model()) {
    case Model::Disc:
      return disc_dist(u.value(), v.value());
    case Model::UpperHalfPlane:
      return upper_half_plane_dist(u.value(), v.value());
    case Model::RightHalfPlane:
      return upper_half_plane_dist(to_upper(u.value(), Model::RightHalfPlane),
                                   to_upper(v.value(), Model::RightHalfPlane));
    case Model::PuncturedDisc:
      return punctured_dist(u, v);
  }
  return 0.0;
}

HalfDistancePair half_sinh_cosh(const ModelPoint& u, const ModelPoint& v) {
  if (u.model() != Model::Disc || v.model() != Model::Disc) {
    throw ValidationError("half_sinh_cosh: both points must lie in the disc model");
  }
  const Complex a = u.value();
  const Complex b = v.value();
  const double denom = std::sqrt(one_minus_abs2(a) * one_minus_abs2(b));
  return {std::abs(a - b) / denom, std::abs(1.0 - a * std::conj(b)) / denom};
}

double density_punctured(const ModelPoint& z) {
  if (z.model() != Model::PuncturedDisc) {
    throw ValidationError("density_punctured: point is not in the punctured disc");
  }
  const double r = std::abs(z.value());
  return -1.0 / (r * std::log(r));
}

ModelPoint convert(const ModelPoint& p, Model target) {
  if (target == Model::PuncturedDisc || p.model() == Model::PuncturedDisc) {
    throw DomainError("convert: the punctured disc has no global isometry to the other models");
  }
  if (target == p.model()) return p;
  return {from_upper(to_upper(p.value(), p.model()), target), target};
}

double dist_oracle(const ModelPoint& u, const ModelPoint& v) {
  if (u.model() != v.model()) throw DomainError("dist_oracle: points belong to different models");
  if (u == v) return 0.0;
  switch (u.model()) {
    case Model::Disc:
      return disc_oracle(u.value(), v.value());
    case Model::UpperHalfPlane:
      return upper_oracle(
          u.value(), v.value(), [](Complex p) { return 1.0 / p.imag(); },
          [](Complex p) { return p; });
    case Model::RightHalfPlane:
      // i*w carries the right half-plane onto the upper one; walk the geodesic
      // there and evaluate the density 1/Re back in the right half-plane.
      return upper_oracle(
          kI * u.value(), kI * v.value(), [](Complex p) { return 1.0 / p.real(); },
          [](Complex p) { return -kI * p; });
    case Model::PuncturedDisc:
      break;
  }
  throw DomainError("dist_oracle: the punctured disc is not supported");
}

}  // namespace hypbound
