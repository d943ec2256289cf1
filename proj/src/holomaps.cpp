#include "hypbound/holomaps.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "hypbound/errors.hpp"

namespace hypbound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex int_power(Complex z, int m) {
  Complex result{1.0, 0.0};
  for (int k = 0; k < m; ++k) result *= z;
  return result;
}

Complex blaschke_factor(Complex w, Complex zero) { return (w - zero) / (1.0 - std::conj(zero) * w); }

Complex sample_zero(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, rng.uniform(0.0, kTwoPi));
}

double json_real(const nlohmann::json& j) {
  if (j.is_string()) return std::stod(j.get<std::string>());
  return j.get<double>();
}

Complex json_complex(const nlohmann::json& j) {
  if (j.is_string()) return parse_complex(j.get<std::string>());
  return {j.get<double>(), 0.0};
}

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> params;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("expected key=value in '" + std::string(text) + "'");
    }
    params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    pos = end + 1;
  }
  return params;
}

double param_real(const std::map<std::string, std::string>& params, const std::string& key,
                  double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw UsageError("parameter '" + key + "' is not a number: " + it->second);
  }
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key, int fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const int value = std::stoi(it->second, &used);
    if (used != it->second.size()) throw UsageError("");
    return value;
  } catch (const std::exception&) {
    throw UsageError("parameter '" + key + "' is not an integer: " + it->second);
  }
}

}  // namespace

HoloMap::HoloMap(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const maps::MobiusAut& m) {
                   if (m.map.domain_model() == Model::PuncturedDisc) {
                     throw DomainError("Mobius maps act on simply connected models only");
                   }
                 },
                 [](const maps::Blaschke& b) {
                   for (Complex z : b.zeros) {
                     if (!in_model(z, Model::Disc)) throw ValidationError("Blaschke zero outside the disc");
                   }
                 },
                 [](const maps::HalfPlaneTranslate& t) {
                   if (!(t.t >= 0.0) || !std::isfinite(t.t)) {
                     throw ValidationError("half-plane translation needs t >= 0");
                   }
                 },
                 [](const maps::PuncturedPower& p) {
                   if (p.m < 1) throw ValidationError("punctured power needs m >= 1");
                 },
                 [](const maps::PuncturedExp& p) {
                   if (p.m < 1) throw ValidationError("punctured exp map needs m >= 1");
                   if (!(p.c >= 0.0) || !std::isfinite(p.c)) {
                     throw ValidationError("punctured exp map needs real c >= 0");
                   }
                 },
                 [](const maps::Composition& c) {
                   if (c.parts.empty()) throw ValidationError("empty composition");
                   for (const HoloMap& part : c.parts) {
                     if (part.model() != c.parts.front().model()) {
                       throw DomainError("composition mixes models");
                     }
                   }
                 },
                 [](const maps::Dilation& d) {
                   if (!(std::abs(d.k) <= 1.0)) throw ValidationError("dilation needs |k| <= 1");
                 },
                 [](const maps::Constant& c) {
                   if (!(std::abs(c.value) <= 1.0)) throw ValidationError("constant map needs |value| <= 1");
                 },
                 [](const maps::SchwarzQuotient& q) {
                   if (!q.base) throw ValidationError("Schwarz quotient without a base map");
                 },
                 [](const auto&) {},
             },
             v_);
}

HoloMap HoloMap::identity(Model model) { return HoloMap(maps::Identity{model}); }
HoloMap HoloMap::mobius(Mobius m) { return HoloMap(maps::MobiusAut{std::move(m)}); }
HoloMap HoloMap::blaschke(double theta, std::vector<Complex> zeros) {
  return HoloMap(maps::Blaschke{theta, std::move(zeros)});
}
HoloMap HoloMap::translate(double t) { return HoloMap(maps::HalfPlaneTranslate{t}); }
HoloMap HoloMap::power(double theta, int m) { return HoloMap(maps::PuncturedPower{theta, m}); }
HoloMap HoloMap::exp(double theta, int m, double c) { return HoloMap(maps::PuncturedExp{theta, m, c}); }
HoloMap HoloMap::compose(std::vector<HoloMap> parts) { return HoloMap(maps::Composition{std::move(parts)}); }
HoloMap HoloMap::real_part() { return HoloMap(maps::RealPart{}); }
HoloMap HoloMap::dilation(Complex k) { return HoloMap(maps::Dilation{k}); }
HoloMap HoloMap::constant(Complex value) { return HoloMap(maps::Constant{value}); }

Model HoloMap::model() const {
  return std::visit(overloaded{
                        [](const maps::Identity& m) { return m.model; },
                        [](const maps::MobiusAut& m) { return m.map.domain_model(); },
                        [](const maps::HalfPlaneTranslate&) { return Model::RightHalfPlane; },
                        [](const maps::PuncturedPower&) { return Model::PuncturedDisc; },
                        [](const maps::PuncturedExp&) { return Model::PuncturedDisc; },
                        [](const maps::Composition& c) { return c.parts.front().model(); },
                        [](const auto&) { return Model::Disc; },
                    },
                    v_);
}

bool HoloMap::contraction_only() const {
  return std::visit(overloaded{
                        [](const maps::RealPart&) { return true; },
                        [](const maps::Composition& c) {
                          for (const HoloMap& part : c.parts) {
                            if (part.contraction_only()) return true;
                          }
                          return false;
                        },
                        [](const maps::SchwarzQuotient& q) { return q.base->contraction_only(); },
                        [](const auto&) { return false; },
                    },
                    v_);
}

Complex eval_raw(const HoloMap& f, Complex z) {
  return std::visit(overloaded{
                        [&](const maps::Identity&) { return z; },
                        [&](const maps::MobiusAut& m) { return m.map.apply_raw(z); },
                        [&](const maps::Blaschke& b) {
                          Complex value = std::polar(1.0, b.theta);
                          for (Complex zero : b.zeros) value *= blaschke_factor(z, zero);
                          return value;
                        },
                        [&](const maps::HalfPlaneTranslate& t) { return z + t.t; },
                        [&](const maps::PuncturedPower& p) { return std::polar(1.0, p.theta) * int_power(z, p.m); },
                        [&](const maps::PuncturedExp& p) {
                          return std::polar(1.0, p.theta) * int_power(z, p.m) * std::exp(p.c * (z - 1.0));
                        },
                        [&](const maps::Composition& c) {
                          Complex w = z;
                          for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) w = eval_raw(*it, w);
                          return w;
                        },
                        [&](const maps::RealPart&) { return Complex(z.real(), 0.0); },
                        [&](const maps::Dilation& d) { return d.k * z; },
                        [&](const maps::Constant& c) { return c.value; },
                        [&](const maps::SchwarzQuotient& q) {
                          if (z == Complex{}) return derivative(*q.base, z);
                          return eval_raw(*q.base, z) / z;
                        },
                    },
                    f.variant());
}

ModelPoint eval(const HoloMap& f, const ModelPoint& z) {
  if (z.model() != f.model()) throw DomainError("eval: point is not in the map's model");
  const Complex image = eval_raw(f, z.value());
  if (!in_model(image, f.model())) throw IntegrityError("eval: image left the model");
  return {image, f.model()};
}

Complex derivative(const HoloMap& f, Complex z) {
  return std::visit(
      overloaded{
          [&](const maps::Identity&) { return Complex(1.0, 0.0); },
          [&](const maps::MobiusAut& m) {
            const Complex den = m.map.c() * z + m.map.d();
            return 1.0 / (den * den);
          },
          [&](const maps::Blaschke& b) {
            Complex total{};
            for (std::size_t k = 0; k < b.zeros.size(); ++k) {
              const Complex zk = b.zeros[k];
              const Complex den = 1.0 - std::conj(zk) * z;
              Complex term = (1.0 - std::norm(zk)) / (den * den);
              for (std::size_t j = 0; j < b.zeros.size(); ++j) {
                if (j != k) term *= blaschke_factor(z, b.zeros[j]);
              }
              total += term;
            }
            return std::polar(1.0, b.theta) * total;
          },
          [&](const maps::HalfPlaneTranslate&) { return Complex(1.0, 0.0); },
          [&](const maps::PuncturedPower& p) {
            return std::polar(1.0, p.theta) * static_cast<double>(p.m) * int_power(z, p.m - 1);
          },
          [&](const maps::PuncturedExp& p) {
            return std::polar(1.0, p.theta) * std::exp(p.c * (z - 1.0)) *
                   (static_cast<double>(p.m) * int_power(z, p.m - 1) + p.c * int_power(z, p.m));
          },
          [&](const maps::Composition& c) {
            Complex w = z;
            Complex chain{1.0, 0.0};
            for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
              chain *= derivative(*it, w);
              w = eval_raw(*it, w);
            }
            return chain;
          },
          [&](const maps::RealPart&) -> Complex {
            throw DomainError("Re(w) is not complex differentiable");
          },
          [&](const maps::Dilation& d) { return d.k; },
          [&](const maps::Constant&) { return Complex{}; },
          [&](const maps::SchwarzQuotient& q) {
            // Central difference near the removable singularity.
            if (std::abs(z) < 1e-3) {
              constexpr double h = 1e-6;
              return (eval_raw(f, z + h) - eval_raw(f, z - h)) / (2.0 * h);
            }
            return (derivative(*q.base, z) * z - eval_raw(*q.base, z)) / (z * z);
          },
      },
      f.variant());
}

Complex log_derivative(const HoloMap& f, Complex z) {
  return std::visit(overloaded{
                        [&](const maps::Identity&) { return 1.0 / z; },
                        [&](const maps::PuncturedPower& p) { return static_cast<double>(p.m) / z; },
                        [&](const maps::PuncturedExp& p) { return static_cast<double>(p.m) / z + p.c; },
                        [&](const maps::Composition& c) {
                          Complex w = z;
                          Complex chain{1.0, 0.0};
                          for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
                            if (std::next(it) == c.parts.rend()) return chain * log_derivative(*it, w);
                            chain *= derivative(*it, w);
                            w = eval_raw(*it, w);
                          }
                          return chain;
                        },
                        [&](const auto&) { return derivative(f, z) / eval_raw(f, z); },
                    },
                    f.variant());
}

HoloMap schwarz_quotient(const HoloMap& f) {
  if (f.model() != Model::Disc || f.contraction_only()) {
    throw PreconditionError("schwarz_quotient: f must be a holomorphic self-map of the disc");
  }
  if (std::abs(eval_raw(f, Complex{})) > 1e-12) {
    throw PreconditionError("schwarz_quotient: f does not fix 0");
  }
  using R = std::optional<HoloMap>;
  R reduced = std::visit(overloaded{
                             [](const maps::Identity&) -> R { return HoloMap::constant(1.0); },
                             [](const maps::Dilation& d) -> R { return HoloMap::constant(d.k); },
                             [](const maps::MobiusAut& m) -> R {
                               if (std::abs(m.map.c()) > 1e-14) return std::nullopt;
                               return HoloMap::constant(m.map.a() / m.map.d());
                             },
                             [](const maps::Blaschke& b) -> R {
                               for (std::size_t k = 0; k < b.zeros.size(); ++k) {
                                 if (std::abs(b.zeros[k]) > 1e-12) continue;
                                 std::vector<Complex> rest = b.zeros;
                                 rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
                                 if (rest.empty()) return HoloMap::constant(std::polar(1.0, b.theta));
                                 return HoloMap::blaschke(b.theta, std::move(rest));
                               }
                               return std::nullopt;
                             },
                             [](const auto&) -> R { return std::nullopt; },
                         },
                         f.variant());
  if (reduced) return *reduced;
  return HoloMap(maps::SchwarzQuotient{std::make_shared<const HoloMap>(f)});
}

std::optional<int> declared_degree(const HoloMap& f) {
  using R = std::optional<int>;
  return std::visit(overloaded{
                        [](const maps::Identity& m) -> R {
                          if (m.model == Model::PuncturedDisc) return 1;
                          return std::nullopt;
                        },
                        [](const maps::PuncturedPower& p) -> R { return p.m; },
                        [](const maps::PuncturedExp& p) -> R { return p.m; },
                        [](const maps::Composition& c) -> R {
                          int product = 1;
                          for (const HoloMap& part : c.parts) {
                            const R d = declared_degree(part);
                            if (!d) return std::nullopt;
                            product *= *d;
                          }
                          return product;
                        },
                        [](const auto&) -> R { return std::nullopt; },
                    },
                    f.variant());
}

Model FamilySpec::model() const {
  return kind == Kind::PuncturedExp ? Model::PuncturedDisc : Model::Disc;
}

FamilySpec parse_family(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const auto params =
      colon == std::string_view::npos ? std::map<std::string, std::string>{} : parse_params(text.substr(colon + 1));

  FamilySpec family;
  if (name == "blaschke") {
    family.kind = FamilySpec::Kind::Blaschke;
  } else if (name == "automorphism" || name == "disc_automorphism") {
    family.kind = FamilySpec::Kind::DiscAutomorphism;
  } else if (name == "punctured_exp") {
    family.kind = FamilySpec::Kind::PuncturedExp;
  } else if (name == "near_identity") {
    family.kind = FamilySpec::Kind::NearIdentity;
  } else if (name == "mixed") {
    family.kind = FamilySpec::Kind::MixedDisc;
  } else if (name == "real_part") {
    family.kind = FamilySpec::Kind::RealPart;
  } else {
    throw UsageError("unknown family '" + name + "'");
  }
  family.max_degree = param_int(params, "max_degree", family.max_degree);
  family.max_m = param_int(params, "max_m", family.max_m);
  family.max_c = param_real(params, "max_c", family.max_c);
  family.epsilon = param_real(params, "eps", family.epsilon);
  if (family.max_degree < 1 || family.max_m < 1 || !(family.max_c >= 0.0) || !(family.epsilon > 0.0)) {
    throw UsageError("family parameters out of range in '" + std::string(text) + "'");
  }
  return family;
}

std::string to_string(const FamilySpec& family) {
  switch (family.kind) {
    case FamilySpec::Kind::Blaschke:
      return "blaschke:max_degree=" + std::to_string(family.max_degree);
    case FamilySpec::Kind::DiscAutomorphism:
      return "automorphism";
    case FamilySpec::Kind::PuncturedExp:
      return "punctured_exp:max_m=" + std::to_string(family.max_m) + ",max_c=" + format_real(family.max_c);
    case FamilySpec::Kind::NearIdentity:
      return "near_identity:eps=" + format_real(family.epsilon);
    case FamilySpec::Kind::MixedDisc:
      return "mixed:max_degree=" + std::to_string(family.max_degree);
    case FamilySpec::Kind::RealPart:
      return "real_part";
  }
  return "unknown";
}

HoloMap sample_map(const FamilySpec& family, std::uint64_t seed) {
  Rng rng(seed);
  return sample_map(family, rng);
}

HoloMap sample_map(const FamilySpec& family, Rng& rng) {
  constexpr double kZeroRadius = 0.95;
  auto blaschke = [&] {
    const int degree = rng.uniform_int(1, family.max_degree);
    std::vector<Complex> zeros;
    for (int k = 0; k < degree; ++k) zeros.push_back(sample_zero(rng, kZeroRadius));
    return HoloMap::blaschke(rng.uniform(0.0, kTwoPi), std::move(zeros));
  };
  auto automorphism = [&] {
    const Complex a = sample_zero(rng, kZeroRadius);
    return HoloMap::mobius(build_disc_automorphism(disc_point(a), rng.uniform(0.0, kTwoPi)));
  };

  switch (family.kind) {
    case FamilySpec::Kind::Blaschke:
      return blaschke();
    case FamilySpec::Kind::DiscAutomorphism:
      return automorphism();
    case FamilySpec::Kind::PuncturedExp: {
      const int m = rng.uniform_int(1, family.max_m);
      const double c = rng.uniform(0.0, family.max_c);
      return HoloMap::exp(rng.uniform(0.0, kTwoPi), m, c);
    }
    case FamilySpec::Kind::NearIdentity: {
      // rho(f(0), 0) = 2 atanh|a| < eps / 2.
      const double radius = std::tanh(family.epsilon / 4.0) * rng.uniform();
      const Complex a = std::polar(radius, rng.uniform(0.0, kTwoPi));
      const double theta = rng.uniform(-0.25, 0.25) * family.epsilon;
      return HoloMap::mobius(build_disc_automorphism(disc_point(a), theta));
    }
    case FamilySpec::Kind::MixedDisc:
      switch (rng.uniform_int(0, 2)) {
        case 0:
          return blaschke();
        case 1:
          return automorphism();
        default: {
          std::vector<HoloMap> parts;
          const int count = rng.uniform_int(2, 3);
          for (int k = 0; k < count; ++k) parts.push_back(rng.uniform_int(0, 1) == 0 ? blaschke() : automorphism());
          return HoloMap::compose(std::move(parts));
        }
      }
    case FamilySpec::Kind::RealPart:
      return HoloMap::real_part();
  }
  throw UsageError("unknown family");
}

nlohmann::json to_json(const HoloMap& f) {
  using nlohmann::json;
  return std::visit(overloaded{
                        [](const maps::Identity& m) {
                          return json{{"type", "identity"}, {"model", model_name(m.model)}};
                        },
                        [](const maps::MobiusAut& m) { return json{{"type", "mobius"}, {"map", to_json(m.map)}}; },
                        [](const maps::Blaschke& b) {
                          json zeros = json::array();
                          for (Complex z : b.zeros) zeros.push_back(format_complex(z));
                          return json{{"type", "blaschke"}, {"theta", format_real(b.theta)}, {"zeros", zeros}};
                        },
                        [](const maps::HalfPlaneTranslate& t) {
                          return json{{"type", "translate"}, {"t", format_real(t.t)}};
                        },
                        [](const maps::PuncturedPower& p) {
                          return json{{"type", "power"}, {"theta", format_real(p.theta)}, {"m", p.m}};
                        },
                        [](const maps::PuncturedExp& p) {
                          return json{
                              {"type", "exp"}, {"theta", format_real(p.theta)}, {"m", p.m}, {"c", format_real(p.c)}};
                        },
                        [](const maps::Composition& c) {
                          json parts = json::array();
                          for (const HoloMap& part : c.parts) parts.push_back(to_json(part));
                          return json{{"type", "composition"}, {"parts", parts}};
                        },
                        [](const maps::RealPart&) { return json{{"type", "real_part"}}; },
                        [](const maps::Dilation& d) { return json{{"type", "dilation"}, {"k", format_complex(d.k)}}; },
                        [](const maps::Constant& c) {
                          return json{{"type", "constant"}, {"value", format_complex(c.value)}};
                        },
                        [](const maps::SchwarzQuotient& q) {
                          return json{{"type", "schwarz_quotient"}, {"base", to_json(*q.base)}};
                        },
                    },
                    f.variant());
}

HoloMap holomap_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "identity") {
      return HoloMap::identity(j.contains("model") ? parse_model(j.at("model").get<std::string>()) : Model::Disc);
    }
    if (type == "mobius") return HoloMap::mobius(mobius_from_json(j.at("map")));
    if (type == "blaschke") {
      std::vector<Complex> zeros;
      for (const auto& z : j.at("zeros")) zeros.push_back(json_complex(z));
      return HoloMap::blaschke(j.contains("theta") ? json_real(j.at("theta")) : 0.0, std::move(zeros));
    }
    if (type == "translate") return HoloMap::translate(json_real(j.at("t")));
    if (type == "power") {
      return HoloMap::power(j.contains("theta") ? json_real(j.at("theta")) : 0.0, j.at("m").get<int>());
    }
    if (type == "exp") {
      return HoloMap::exp(j.contains("theta") ? json_real(j.at("theta")) : 0.0, j.at("m").get<int>(),
                          json_real(j.at("c")));
    }
    if (type == "composition") {
      std::vector<HoloMap> parts;
      for (const auto& part : j.at("parts")) parts.push_back(holomap_from_json(part));
      return HoloMap::compose(std::move(parts));
    }
    if (type == "real_part") return HoloMap::real_part();
    if (type == "dilation") return HoloMap::dilation(json_complex(j.at("k")));
    if (type == "constant") return HoloMap::constant(json_complex(j.at("value")));
    if (type == "schwarz_quotient") {
      return HoloMap(maps::SchwarzQuotient{std::make_shared<const HoloMap>(holomap_from_json(j.at("base")))});
    }
    throw UsageError("unknown map type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed map JSON: ") + e.what());
  }
}

HoloMap parse_map_spec(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\n");
  if (first == std::string_view::npos) throw UsageError("empty map spec");
  if (text[first] == '{') {
    try {
      return holomap_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("map spec is not valid JSON: ") + e.what());
    }
  }

  const std::size_t colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (name == "compose") {
    std::vector<HoloMap> parts;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t end = rest.find('|', pos);
      if (end == std::string_view::npos) end = rest.size();
      parts.push_back(parse_map_spec(rest.substr(pos, end - pos)));
      pos = end + 1;
    }
    return HoloMap::compose(std::move(parts));
  }

  const auto params = parse_params(rest);
  const double theta = param_real(params, "theta", 0.0);
  if (name == "identity") {
    const auto it = params.find("model");
    return HoloMap::identity(it == params.end() ? Model::PuncturedDisc : parse_model(it->second));
  }
  if (name == "power") return HoloMap::power(theta, param_int(params, "m", 1));
  if (name == "exp") return HoloMap::exp(theta, param_int(params, "m", 1), param_real(params, "c", 0.0));
  if (name == "translate") return HoloMap::translate(param_real(params, "t", 0.0));
  if (name == "real_part") return HoloMap::real_part();
  if (name == "blaschke") {
    std::vector<Complex> zeros;
    const auto it = params.find("zeros");
    if (it != params.end()) {
      std::string_view list = it->second;
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t end = list.find(';', pos);
        if (end == std::string_view::npos) end = list.size();
        zeros.push_back(parse_complex(list.substr(pos, end - pos)));
        pos = end + 1;
      }
    }
    return HoloMap::blaschke(theta, std::move(zeros));
  }
  throw UsageError("unknown map shorthand '" + name + "'");
}

}  // namespace hypbound
