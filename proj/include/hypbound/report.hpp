#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hypbound/models.hpp"

namespace hypbound {

/// Absolute margin below which a checked inequality counts as violated.
inline constexpr double kDefaultTolerance = 1e-9;

enum class Theorem { TwoPoint, TwoPointSharp, Xjb, FixedPoint, Punctured, Qlo };

std::string_view theorem_name(Theorem theorem);
Theorem parse_theorem(std::string_view name);

/// One evaluated inequality `lhs <= rhs`.
struct BoundReport {
  Theorem theorem = Theorem::TwoPoint;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  // K, M or L^3 depending on the theorem
  double margin = 0.0;    // rhs - lhs
  nlohmann::json witnesses = nlohmann::json::object();
  bool violated = false;  // margin < -tolerance
};

BoundReport make_report(Theorem theorem, double lhs, double rhs, double constant,
                        nlohmann::json witnesses, double tolerance = kDefaultTolerance);

/// Reals are written with 17 significant digits so reports round-trip exactly.
std::string format_real(double x);

/// `re+imi` with 17 significant digits on both parts, e.g. `0.3+0.5i`.
std::string format_complex(Complex w);

/// Parses `re+imi`, `re-imi`, `re`, `imi`, `i`, `-i` (exponents allowed).
Complex parse_complex(std::string_view text);

nlohmann::json to_json(const BoundReport& report);

}  // namespace hypbound
