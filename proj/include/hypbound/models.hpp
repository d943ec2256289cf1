#pragma once

#include <complex>
#include <string_view>

namespace hypbound {

using Complex = std::complex<double>;

/// The four models of the hyperbolic plane handled by the library.
enum class Model {
  Disc,            // |w| < 1
  UpperHalfPlane,  // Im w > 0
  RightHalfPlane,  // Re w > 0
  PuncturedDisc,   // 0 < |w| < 1 (not simply connected; metric via the covering)
};

std::string_view model_name(Model model);

/// Accepts "disc", "uhp"/"upper", "rhp"/"right", "punctured".
Model parse_model(std::string_view name);

/// Points closer than this to a model's boundary are rejected.
inline constexpr double kBoundaryMargin = 1e-14;

bool in_model(Complex value, Model model) noexcept;

/// A complex number tagged with the model it lives in. Always valid.
class ModelPoint {
 public:
  /// Throws ValidationError when `value` violates the model invariant.
  ModelPoint(Complex value, Model model);

  Complex value() const noexcept { return value_; }
  Model model() const noexcept { return model_; }

  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;

 private:
  Complex value_;
  Model model_;
};

inline ModelPoint disc_point(Complex w) { return {w, Model::Disc}; }
inline ModelPoint upper_point(Complex w) { return {w, Model::UpperHalfPlane}; }
inline ModelPoint right_point(Complex w) { return {w, Model::RightHalfPlane}; }
inline ModelPoint punctured_point(Complex w) { return {w, Model::PuncturedDisc}; }

/// sinh and cosh of half the hyperbolic distance between two disc points.
struct HalfDistancePair {
  double s = 0.0;
  double c = 1.0;
};

/// Hyperbolic distance. Both points must share a model.
double dist(const ModelPoint& u, const ModelPoint& v);

/// Unchecked closed forms on raw coordinates.
double disc_dist(Complex u, Complex v);
double upper_half_plane_dist(Complex u, Complex v);

/// s = |u-v| / sqrt((1-|u|^2)(1-|v|^2)), c = |1-u conj(v)| / sqrt(...).
HalfDistancePair half_sinh_cosh(const ModelPoint& u, const ModelPoint& v);

/// lambda*(z) = -1 / (|z| log|z|), the density of the punctured-disc metric.
double density_punctured(const ModelPoint& z);

/// Image under the standard isometry between simply connected models:
/// Cayley map (w - i)/(w + i) from UHP to Disc, rotation w -> i w from
/// RightHalfPlane to UHP, and their inverses/compositions.
ModelPoint convert(const ModelPoint& p, Model target);

/// Distance by numerical integration of the model density along the
/// geodesic (a segment for radial/axial pairs, a circular arc otherwise).
/// Shares no code with dist(); used as its oracle.
double dist_oracle(const ModelPoint& u, const ModelPoint& v);

}  // namespace hypbound
