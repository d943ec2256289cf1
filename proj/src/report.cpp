#include "hypbound/report.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "hypbound/errors.hpp"

namespace hypbound {

std::string_view theorem_name(Theorem theorem) {
  switch (theorem) {
    case Theorem::TwoPoint:
      return "two_point";
    case Theorem::TwoPointSharp:
      return "two_point_sharp";
    case Theorem::Xjb:
      return "xjb";
    case Theorem::FixedPoint:
      return "fixed_point";
    case Theorem::Punctured:
      return "punctured";
    case Theorem::Qlo:
      return "qlo";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : {Theorem::TwoPoint, Theorem::TwoPointSharp, Theorem::Xjb, Theorem::FixedPoint,
                    Theorem::Punctured, Theorem::Qlo}) {
    if (theorem_name(t) == name) return t;
  }
  throw UsageError("unknown theorem '" + std::string(name) + "'");
}

BoundReport make_report(Theorem theorem, double lhs, double rhs, double constant,
                        nlohmann::json witnesses, double tolerance) {
  BoundReport report;
  report.theorem = theorem;
  report.lhs = lhs;
  report.rhs = rhs;
  report.constant = constant;
  report.margin = rhs - lhs;
  report.witnesses = std::move(witnesses);
  report.violated = report.margin < -tolerance;
  return report;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex w) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", w.real(), w.imag());
  return buf;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&]() -> Complex {
    throw UsageError("cannot parse complex number '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  if (s.back() != 'i' && s.back() != 'j') {
    char* end = nullptr;
    const double re = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return fail();
    return {re, 0.0};
  }
  s.pop_back();

  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto parse_imag = [&](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    char* end = nullptr;
    const double value = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size()) fail();
    return value;
  };
  if (split == std::string::npos) return {0.0, parse_imag(s)};

  const std::string re_part = s.substr(0, split);
  char* end = nullptr;
  const double re = std::strtod(re_part.c_str(), &end);
  if (re_part.empty() || end != re_part.c_str() + re_part.size()) return fail();
  return {re, parse_imag(s.substr(split))};
}

nlohmann::json to_json(const BoundReport& report) {
  return {
      {"theorem", theorem_name(report.theorem)},
      {"lhs", format_real(report.lhs)},
      {"rhs", format_real(report.rhs)},
      {"constant", format_real(report.constant)},
      {"margin", format_real(report.margin)},
      {"violated", report.violated},
      {"witnesses", report.witnesses},
  };
}

}  // namespace hypbound
