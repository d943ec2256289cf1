#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hypbound/models.hpp"
#include "hypbound/report.hpp"

namespace hypbound {

using Matrix2c = Eigen::Matrix<Complex, 2, 2>;

/// A point of the extended plane; fixed points at infinity are tagged rather
/// than stored as a huge number.
struct ExtendedPoint {
  Complex value{};
  bool infinite = false;

  static ExtendedPoint infinity() { return {Complex{}, true}; }
  friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;
};

/// w -> (a w + b) / (c w + d), normalised to det = 1, tagged with the model it
/// preserves.
class Mobius {
 public:
  /// Throws ValidationError for a (numerically) singular matrix.
  Mobius(const Matrix2c& matrix, Model domain);
  Mobius(Complex a, Complex b, Complex c, Complex d, Model domain);

  static Mobius identity(Model domain);

  const Matrix2c& matrix() const noexcept { return matrix_; }
  Model domain_model() const noexcept { return domain_; }
  Complex a() const { return matrix_(0, 0); }
  Complex b() const { return matrix_(0, 1); }
  Complex c() const { return matrix_(1, 0); }
  Complex d() const { return matrix_(1, 1); }

  Mobius inverse() const;

  /// Raw action; throws DomainError at a pole.
  Complex apply_raw(Complex w) const;
  ExtendedPoint apply(ExtendedPoint w) const;

  /// Checks that 50 sample points of the domain model are mapped into it.
  bool preserves_model() const;

 private:
  Matrix2c matrix_;
  Model domain_;
};

/// (m1 * m2)(w) = m1(m2(w)). Models must agree.
Mobius operator*(const Mobius& m1, const Mobius& m2);
Mobius compose(const Mobius& m1, const Mobius& m2);

/// Throws DomainError on model mismatch or a pole, IntegrityError if the
/// image leaves the model.
ModelPoint apply(const Mobius& m, const ModelPoint& z);

enum class MobiusKind { Identity, Elliptic, Parabolic, Hyperbolic };

std::string_view kind_name(MobiusKind kind);

struct MobiusClass {
  MobiusKind kind = MobiusKind::Identity;
  std::vector<ExtendedPoint> fixed_points;
  /// Endpoints of the invariant geodesic (hyperbolic maps only).
  std::optional<std::array<ExtendedPoint, 2>> axis;
  double translation_length = 0.0;
};

/// Trace criterion on the normalised matrix with a 1e-9 band around
/// trace^2 = 4. Translations shorter than about 3e-5 read as parabolic.
MobiusClass classify(const Mobius& m);

/// w -> e^{i theta} (w - a) / (1 - conj(a) w).
Mobius build_disc_automorphism(const ModelPoint& a, double theta);

/// Hyperbolic automorphism with axis through p and q sending q to p, with
/// translation length dist(p, q); the identity when p == q.
Mobius hyperbolic_pull(const ModelPoint& p, const ModelPoint& q);

/// Hyperbolic distance from `w` to the geodesic with the given ideal
/// endpoints (boundary points of w's model).
double distance_to_axis(const ModelPoint& w, const std::array<ExtendedPoint, 2>& axis);

/// Displacement bound rho(w, h w) <= e^{rho(w, c)} rho(c, h c) for c on the
/// axis of h. The witnesses carry both sides of the exact identity
/// sinh(rho(w,hw)/2) = cosh(rho(w, axis)) sinh(rho(c,hc)/2) and its relative
/// residual.
BoundReport qlo_bound(const ModelPoint& w, const ModelPoint& c, const Mobius& h,
                      double tolerance = kDefaultTolerance);

/// Matrix of the standard isometry from `model` onto the upper half-plane.
Matrix2c model_to_upper(Model model);

nlohmann::json to_json(const Mobius& m);
Mobius mobius_from_json(const nlohmann::json& j);

}  // namespace hypbound
