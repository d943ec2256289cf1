#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hypbound/mobius.hpp"
#include "hypbound/models.hpp"
#include "hypbound/random.hpp"

namespace hypbound {

class HoloMap;

namespace maps {

struct Identity {
  Model model = Model::Disc;
};

struct MobiusAut {
  Mobius map;
};

/// e^{i theta} prod (w - z_k) / (1 - conj(z_k) w); degree 0 is a rotation constant.
struct Blaschke {
  double theta = 0.0;
  std::vector<Complex> zeros;
};

/// w -> w + t on the right half-plane.
struct HalfPlaneTranslate {
  double t = 0.0;
};

/// z -> e^{i theta} z^m, a self-covering of the punctured disc.
struct PuncturedPower {
  double theta = 0.0;
  int m = 1;
};

/// z -> e^{i theta} z^m e^{c (z - 1)}, c >= 0; zero-free on the punctured disc.
struct PuncturedExp {
  double theta = 0.0;
  int m = 1;
  double c = 0.0;
};

/// parts[0] o parts[1] o ... o parts[n-1]; the last part acts first.
struct Composition {
  std::vector<HoloMap> parts;
};

/// w -> Re w. Contracts the disc metric but is not holomorphic.
struct RealPart {};

/// w -> k w with |k| <= 1.
struct Dilation {
  Complex k{1.0, 0.0};
};

/// Constant map of the disc; |value| may equal 1 (boundary-valued quotients).
struct Constant {
  Complex value{};
};

/// g(w) = f(w) / w, g(0) = f'(0), for a disc self-map f fixing 0.
struct SchwarzQuotient {
  std::shared_ptr<const HoloMap> base;
};

}  // namespace maps

/// Tagged union of the self-map families. Immutable after construction.
class HoloMap {
 public:
  using Variant = std::variant<maps::Identity, maps::MobiusAut, maps::Blaschke, maps::HalfPlaneTranslate,
                               maps::PuncturedPower, maps::PuncturedExp, maps::Composition, maps::RealPart,
                               maps::Dilation, maps::Constant, maps::SchwarzQuotient>;

  /// Validates parameters; throws ValidationError / DomainError.
  HoloMap(Variant v);

  static HoloMap identity(Model model);
  static HoloMap mobius(Mobius m);
  static HoloMap blaschke(double theta, std::vector<Complex> zeros);
  static HoloMap translate(double t);
  static HoloMap power(double theta, int m);
  static HoloMap exp(double theta, int m, double c);
  /// Outermost first.
  static HoloMap compose(std::vector<HoloMap> parts);
  static HoloMap real_part();
  static HoloMap dilation(Complex k);
  static HoloMap constant(Complex value);

  const Variant& variant() const noexcept { return v_; }
  Model model() const;
  /// True only for RealPart (or compositions containing it).
  bool contraction_only() const;
  bool holomorphic() const { return !contraction_only(); }

 private:
  Variant v_;
};

/// f(z) on raw coordinates, no model check on the result.
Complex eval_raw(const HoloMap& f, Complex z);

/// Throws DomainError on model mismatch, IntegrityError if f(z) leaves the model.
ModelPoint eval(const HoloMap& f, const ModelPoint& z);

/// Complex derivative in closed form (chain rule for compositions).
/// Throws DomainError for RealPart.
Complex derivative(const HoloMap& f, Complex z);

/// Logarithmic derivative f'/f, closed form for the punctured families.
Complex log_derivative(const HoloMap& f, Complex z);

/// g(w) = f(w)/w with g(0) = f'(0). Reduces exactly where the family allows
/// (Blaschke zero at 0, dilations, rotations) and wraps otherwise.
/// Throws PreconditionError unless f is a holomorphic disc self-map with |f(0)| <= 1e-12.
HoloMap schwarz_quotient(const HoloMap& f);

/// m for the punctured families, 1 for the identity on the punctured disc,
/// products for compositions; nullopt otherwise.
std::optional<int> declared_degree(const HoloMap& f);

/// Sampling families.
struct FamilySpec {
  enum class Kind { Blaschke, DiscAutomorphism, PuncturedExp, NearIdentity, MixedDisc, RealPart };
  Kind kind = Kind::Blaschke;
  int max_degree = 5;    // Blaschke, MixedDisc
  int max_m = 5;         // PuncturedExp
  double max_c = 2.0;    // PuncturedExp
  double epsilon = 1e-3; // NearIdentity

  Model model() const;
};

/// `blaschke:max_degree=5`, `automorphism`, `punctured_exp:max_m=4,max_c=2`,
/// `near_identity:eps=1e-3`, `mixed:max_degree=5`, `real_part`.
FamilySpec parse_family(std::string_view text);
std::string to_string(const FamilySpec& family);

/// Deterministic in the seed. Blaschke zeros are uniform in the Euclidean
/// disc of radius 0.95, rotations uniform in [0, 2 pi).
HoloMap sample_map(const FamilySpec& family, std::uint64_t seed);
HoloMap sample_map(const FamilySpec& family, Rng& rng);

nlohmann::json to_json(const HoloMap& f);
HoloMap holomap_from_json(const nlohmann::json& j);

/// JSON serialisation or shorthand: `identity[:model=punctured]`,
/// `power:m=3[,theta=0.1]`, `exp:m=2,c=0.5[,theta=0]`, `blaschke:zeros=0.5;0.2+0.1i[,theta=..]`,
/// `translate:t=0.01`, `real_part`, `compose:<spec>|<spec>|...` (outermost first).
HoloMap parse_map_spec(std::string_view text);

}  // namespace hypbound
