#pragma once

#include "hypbound/holomaps.hpp"
#include "hypbound/models.hpp"

namespace hypbound {

/// pi(zeta) = e^{2 pi i zeta}, the universal covering UHP -> punctured disc.
ModelPoint cover_pi(const ModelPoint& zeta);

/// Arg(z)/(2 pi) + i (-log|z|)/(2 pi), Arg in (-pi, pi].
Complex principal_lift(Complex z);
ModelPoint principal_lift(const ModelPoint& z);

struct DeckMinimum {
  double distance = 0.0;
  long k = 0;
};

/// min over integers k of rho_H(lifted + k, target). Searches k in [-K, K]
/// from K = 8, doubling while the minimum sits on the window edge.
DeckMinimum nearest_deck_translate(Complex lifted, Complex target);

/// Punctured-disc distance: deck-orbit minimum over the principal lifts.
double punctured_dist(const ModelPoint& z, const ModelPoint& a);

struct DegreeResult {
  int value = 0;
  double residual = 0.0;  // |contour integral - value|
  int panels = 0;
};

/// (1 / 2 pi i) times the contour integral of f'/f over |z| = 1/2, by the
/// periodic trapezoid rule doubled from 64 panels until successive estimates
/// agree to 1e-8 (at most 2^18 panels).
DegreeResult degree_contour(const HoloMap& f);

/// A lift f~ of a punctured-disc self-map to the upper half-plane, pinned by
/// its value at an anchor point.
struct LiftedMap {
  HoloMap base_map;
  ModelPoint anchor;
  Complex anchor_value;  // f~(anchor), deck offset included
  long deck_offset = 0;
  int degree = 0;
};

/// Lift whose anchor value is the principal lift of f(pi(anchor)) plus
/// `deck_offset`.
LiftedMap make_lift(const HoloMap& f, const ModelPoint& anchor, long deck_offset = 0);

/// f~(zeta) by tracking the argument of f(pi(.)) along the segment from the
/// anchor; each step's increment stays below pi/2. Throws NumericalError if
/// tracking fails.
ModelPoint lift_map_eval(const LiftedMap& lift, const ModelPoint& zeta);

/// Lift of a self-covering e^{i theta} z^m: zeta -> m zeta + theta / (2 pi).
Complex covering_lift(const HoloMap& h, Complex zeta);

struct NormalizedLift {
  LiftedMap lift;
  double displacement = 0.0;  // rho_H(f~(anchor), h~(anchor)) = rho*(f(a), h(a))
};

/// Chooses the deck offset minimising rho_H(f~(anchor) + k, h~(anchor)).
/// h must be a self-covering (power map or identity) of the same degree as f.
NormalizedLift normalized_lift(const HoloMap& f, const HoloMap& h, const ModelPoint& anchor);

}  // namespace hypbound
