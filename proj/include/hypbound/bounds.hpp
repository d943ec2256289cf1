#pragma once

#include <optional>

#include "hypbound/holomaps.hpp"
#include "hypbound/mobius.hpp"
#include "hypbound/models.hpp"
#include "hypbound/report.hpp"

namespace hypbound {

/// Two-point constant K = e^{rho(z,a)+rho(a,b)+rho(b,z)} / rho(a,b), or with
/// `sharp` the denominator 2 sinh(rho(a,b)/2). Throws PreconditionError when
/// rho(a,b) < 1e-9.
double constant_two_point(const ModelPoint& z, const ModelPoint& a, const ModelPoint& b, bool sharp = false);

/// rho(f(z), h(z)) <= K (rho(f(a), h(a)) + rho(f(b), h(b))), h = identity when absent.
/// RealPart maps are accepted so the counterexample shares this path.
BoundReport check_two_point(const HoloMap& f, const ModelPoint& a, const ModelPoint& b, const ModelPoint& z,
                            const std::optional<Mobius>& h = std::nullopt, bool sharp = false,
                            double tolerance = kDefaultTolerance);

/// k = e^{2 rho(a,b)} / rho(a,b), so that K <= k e^{2 rho(z,a)}.
double constant_keu(const ModelPoint& a, const ModelPoint& b);

/// M = e^{rho(a,z)+rho(z,b)} / (4 sinh(rho(a,b)/2)).
double constant_fixed_point(const ModelPoint& z, const ModelPoint& a, const ModelPoint& b);

/// rho(f(z), z) <= M rho(f(a), a) for f fixing b (checked to 1e-10).
BoundReport check_fixed_point(const HoloMap& f, const ModelPoint& a, const ModelPoint& b, const ModelPoint& z,
                              double tolerance = kDefaultTolerance);

/// L = 8 lambda*(a) e^{rho*(z,a)}.
double constant_punctured(const ModelPoint& z, const ModelPoint& a);

/// rho*(f(z), h(z)) <= L^3 rho*(f(a), h(a)) for deg f = deg h = m >= 1,
/// h a self-covering.
BoundReport check_punctured(const HoloMap& f, const HoloMap& h, const ModelPoint& a, const ModelPoint& z,
                            double tolerance = kDefaultTolerance);

}  // namespace hypbound
