#include "hypbound/covering.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hypbound/errors.hpp"

namespace hypbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex pi_raw(Complex zeta) { return std::exp(kTwoPi * kI * zeta); }

void require_punctured(const ModelPoint& p, const char* what) {
  if (p.model() != Model::PuncturedDisc) {
    throw ValidationError(std::string(what) + ": point is not in the punctured disc");
  }
}

int covering_degree(const HoloMap& h) {
  if (const auto* p = std::get_if<maps::PuncturedPower>(&h.variant())) return p->m;
  if (const auto* id = std::get_if<maps::Identity>(&h.variant()); id && id->model == Model::PuncturedDisc) return 1;
  throw PreconditionError("h must be a self-covering z -> e^{i theta} z^m of the punctured disc");
}

}  // namespace

ModelPoint cover_pi(const ModelPoint& zeta) {
  if (zeta.model() != Model::UpperHalfPlane) {
    throw ValidationError("cover_pi: argument must lie in the upper half-plane");
  }
  return punctured_point(pi_raw(zeta.value()));
}

Complex principal_lift(Complex z) { return {std::arg(z) / kTwoPi, -std::log(std::abs(z)) / kTwoPi}; }

ModelPoint principal_lift(const ModelPoint& z) {
  require_punctured(z, "principal_lift");
  return upper_point(principal_lift(z.value()));
}

DeckMinimum nearest_deck_translate(Complex lifted, Complex target) {
  for (long window = 8; window < (1L << 40); window *= 2) {
    DeckMinimum best{std::numeric_limits<double>::infinity(), 0};
    for (long k = -window; k <= window; ++k) {
      const double d = upper_half_plane_dist(lifted + static_cast<double>(k), target);
      if (d < best.distance) best = {d, k};
    }
    if (std::abs(best.k) < window) return best;
  }
  throw NumericalError("deck translation search did not localise a minimum");
}

double punctured_dist(const ModelPoint& z, const ModelPoint& a) {
  require_punctured(z, "punctured_dist");
  require_punctured(a, "punctured_dist");
  if (z == a) return 0.0;
  return nearest_deck_translate(principal_lift(z.value()), principal_lift(a.value())).distance;
}

DegreeResult degree_contour(const HoloMap& f) {
  if (f.model() != Model::PuncturedDisc) {
    throw DomainError("degree_contour: f must be a self-map of the punctured disc");
  }
  constexpr int kFirstPanels = 64;
  constexpr int kMaxPanels = 1 << 18;

  // With z = e^{2 pi i t}/2, (1/2 pi i) f'/f dz = (f'/f)(z) z dt.
  auto integrand = [&f](double t) {
    const Complex z = 0.5 * std::polar(1.0, kTwoPi * t);
    if (std::abs(eval_raw(f, z)) < 1e-12) throw DomainError("degree_contour: f vanishes on the contour");
    return log_derivative(f, z) * z;
  };

  int panels = kFirstPanels;
  Complex sum{};
  for (int k = 0; k < panels; ++k) sum += integrand(static_cast<double>(k) / panels);
  Complex estimate = sum / static_cast<double>(panels);
  for (;;) {
    if (panels >= kMaxPanels) throw NumericalError("degree_contour: quadrature did not converge");
    for (int k = 0; k < panels; ++k) sum += integrand((static_cast<double>(k) + 0.5) / panels);
    panels *= 2;
    const Complex refined = sum / static_cast<double>(panels);
    const bool converged = std::abs(refined - estimate) < 1e-8;
    estimate = refined;
    if (converged) break;
  }

  DegreeResult result;
  result.value = static_cast<int>(std::lround(estimate.real()));
  result.residual = std::abs(estimate - static_cast<double>(result.value));
  result.panels = panels;
  if (result.residual >= 1e-6) throw NumericalError("degree_contour: integral is not near an integer");
  if (result.value < 0) throw DomainError("degree_contour: negative winding number");
  return result;
}

LiftedMap make_lift(const HoloMap& f, const ModelPoint& anchor, long deck_offset) {
  if (f.model() != Model::PuncturedDisc) throw DomainError("make_lift: f must act on the punctured disc");
  if (anchor.model() != Model::UpperHalfPlane) throw ValidationError("make_lift: anchor must lie in UHP");
  const std::optional<int> declared = declared_degree(f);
  const int degree = declared ? *declared : degree_contour(f).value;
  const Complex value = principal_lift(eval_raw(f, pi_raw(anchor.value()))) + static_cast<double>(deck_offset);
  return LiftedMap{f, anchor, value, deck_offset, degree};
}

ModelPoint lift_map_eval(const LiftedMap& lift, const ModelPoint& zeta) {
  if (zeta.model() != Model::UpperHalfPlane) throw ValidationError("lift_map_eval: argument must lie in UHP");
  const Complex start = lift.anchor.value();
  const Complex delta = zeta.value() - start;
  const HoloMap& f = lift.base_map;

  // Rate of change of arg f(pi(.)) along the path is bounded by |2 pi z f'/f|.
  double rate = 0.0;
  for (int k = 0; k <= 64; ++k) {
    const Complex z = pi_raw(start + delta * (static_cast<double>(k) / 64.0));
    rate = std::max(rate, std::abs(kTwoPi * z * log_derivative(f, z)));
  }
  const double length = std::abs(delta);
  long steps = std::max(16L, static_cast<long>(std::ceil(length * rate / (std::numbers::pi / 8.0))));

  constexpr long kMaxSteps = 1L << 22;
  for (; steps <= kMaxSteps; steps *= 2) {
    Complex previous = eval_raw(f, pi_raw(start));
    double turned = 0.0;
    bool ok = true;
    for (long j = 1; j <= steps; ++j) {
      const Complex current = eval_raw(f, pi_raw(start + delta * (static_cast<double>(j) / steps)));
      const double increment = std::arg(current / previous);
      if (std::abs(increment) >= std::numbers::pi / 2.0) {
        ok = false;
        break;
      }
      turned += increment;
      previous = current;
    }
    if (!ok) continue;
    const Complex value(lift.anchor_value.real() + turned / kTwoPi, -std::log(std::abs(previous)) / kTwoPi);
    if (!in_model(value, Model::UpperHalfPlane)) throw IntegrityError("lift_map_eval: lift left UHP");
    return upper_point(value);
  }
  throw NumericalError("lift_map_eval: branch tracking failed");
}

Complex covering_lift(const HoloMap& h, Complex zeta) {
  const int m = covering_degree(h);
  const auto* p = std::get_if<maps::PuncturedPower>(&h.variant());
  const double theta = p ? p->theta : 0.0;
  return static_cast<double>(m) * zeta + theta / kTwoPi;
}

NormalizedLift normalized_lift(const HoloMap& f, const HoloMap& h, const ModelPoint& anchor) {
  const int h_degree = covering_degree(h);
  const std::optional<int> f_degree = declared_degree(f);
  if (!f_degree || *f_degree < 1) throw PreconditionError("normalized_lift: f needs positive degree");
  if (*f_degree != h_degree) throw PreconditionError("normalized_lift: degrees of f and h differ");

  LiftedMap lift = make_lift(f, anchor, 0);
  const DeckMinimum best = nearest_deck_translate(lift.anchor_value, covering_lift(h, anchor.value()));
  lift.deck_offset = best.k;
  lift.anchor_value += static_cast<double>(best.k);
  return {std::move(lift), best.distance};
}

}  // namespace hypbound
