#include "hypbound/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "hypbound/bounds.hpp"
#include "hypbound/covering.hpp"
#include "hypbound/errors.hpp"
#include "hypbound/mobius.hpp"

namespace hypbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxAttempts = 10000;
constexpr double kMaxPuncturedDensity = 1e3;

ModelPoint sample_disc_point(Rng& rng, double radius) {
  const double r = rng.uniform(0.0, radius);
  return disc_point(std::polar(std::tanh(r / 2.0), rng.uniform(0.0, kTwoPi)));
}

ModelPoint sample_real_disc_point(Rng& rng, double radius) {
  const double r = rng.uniform(-radius, radius);
  return disc_point(std::tanh(r / 2.0));
}

// a, b with rho(a, b) >= min_sep inside the hyperbolic ball of the given radius.
std::pair<ModelPoint, ModelPoint> sample_separated_pair(Rng& rng, double radius, double min_sep, bool real) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const ModelPoint a = real ? sample_real_disc_point(rng, radius) : sample_disc_point(rng, radius);
    const ModelPoint b = real ? sample_real_disc_point(rng, radius) : sample_disc_point(rng, radius);
    if (dist(a, b) >= min_sep) return {a, b};
  }
  throw UsageError("could not sample a separated pair; lower --min-sep or raise --max-radius");
}

// A map fixing b: sigma^{-1} o (w B(w)) o sigma with sigma(b) = 0.
HoloMap sample_map_fixing(const FamilySpec& family, Rng& rng, const ModelPoint& b) {
  std::vector<Complex> zeros{Complex{}};
  const int extra = rng.uniform_int(0, family.max_degree - 1);
  for (int k = 0; k < extra; ++k) {
    zeros.push_back(std::polar(0.95 * std::sqrt(rng.uniform()), rng.uniform(0.0, kTwoPi)));
  }
  const HoloMap inner = HoloMap::blaschke(rng.uniform(0.0, kTwoPi), std::move(zeros));
  const Mobius sigma = build_disc_automorphism(b, rng.uniform(0.0, kTwoPi));
  return HoloMap::compose({HoloMap::mobius(sigma.inverse()), inner, HoloMap::mobius(sigma)});
}

SampleCase sample_punctured(const CampaignConfig& config, SampleCase sample, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      const HoloMap f = sample_map(config.family, rng);
      const int m = *declared_degree(f);
      const HoloMap h = HoloMap::power(rng.uniform(0.0, kTwoPi), m);

      const double depth = std::exp(rng.uniform(std::log(2e-3), std::log(9.0)));
      const ModelPoint a = punctured_point(std::polar(std::exp(-depth), rng.uniform(0.0, kTwoPi)));
      if (density_punctured(a) > kMaxPuncturedDensity) continue;

      // z = pi(zeta) with zeta at hyperbolic distance <= max_radius from a lift of a.
      const Complex lift_a = principal_lift(a.value());
      const Complex w = std::polar(std::tanh(rng.uniform(0.0, config.max_radius) / 2.0), rng.uniform(0.0, kTwoPi));
      const Complex zeta = lift_a.real() + lift_a.imag() * Complex(0.0, 1.0) * (1.0 + w) / (1.0 - w);
      const ModelPoint z = cover_pi(upper_point(zeta));

      for (const ModelPoint& p : {a, z}) {
        (void)eval(f, p);
        (void)eval(h, p);
      }
      sample.f = f;
      sample.h = h;
      sample.a = a;
      sample.z = z;
      return sample;
    } catch (const ValidationError&) {
    } catch (const IntegrityError&) {
    }
  }
  throw NumericalError("could not sample a punctured-disc case");
}

std::string csv_real(double x) { return format_real(x); }

}  // namespace

void validate(const CampaignConfig& config) {
  if (config.samples < 1) throw UsageError("samples must be >= 1");
  if (!(config.min_sep > 0.0)) throw UsageError("min_sep must be > 0");
  if (!(config.tolerance > 0.0)) throw UsageError("tolerance must be > 0");
  if (!(config.max_radius > 0.0)) throw UsageError("max_radius must be > 0");
  if (config.min_sep >= config.max_radius) throw UsageError("min_sep must be below max_radius");

  using Kind = FamilySpec::Kind;
  const Kind kind = config.family.kind;
  switch (config.theorem) {
    case Theorem::TwoPoint:
    case Theorem::TwoPointSharp:
    case Theorem::Xjb:
      if (kind == Kind::PuncturedExp) throw UsageError("the two-point theorem needs a disc family");
      break;
    case Theorem::FixedPoint:
      if (kind != Kind::Blaschke) throw UsageError("the fixed-point theorem samples w*B(w); use a blaschke family");
      break;
    case Theorem::Punctured:
      if (kind != Kind::PuncturedExp) throw UsageError("the punctured theorem needs the punctured_exp family");
      break;
    case Theorem::Qlo:
      throw UsageError("qlo is checked by the acceptance suite, not by campaigns");
  }
}

SampleCase make_sample(const CampaignConfig& config, std::size_t index) {
  SampleCase sample;
  sample.index = index;
  sample.seed = derive_seed(config.seed, index);
  Rng rng(sample.seed);
  const double radius = config.max_radius / 2.0;

  switch (config.theorem) {
    case Theorem::TwoPoint:
    case Theorem::TwoPointSharp:
    case Theorem::Xjb: {
      sample.f = sample_map(config.family, rng);
      if (config.theorem == Theorem::Xjb) {
        sample.h = sample_map(FamilySpec{FamilySpec::Kind::DiscAutomorphism}, rng);
      }
      const bool real = config.family.kind == FamilySpec::Kind::RealPart;
      const auto [a, b] = sample_separated_pair(rng, radius, config.min_sep, real);
      sample.a = a;
      sample.b = b;
      sample.z = sample_disc_point(rng, radius);
      return sample;
    }
    case Theorem::FixedPoint: {
      const auto [a, b] = sample_separated_pair(rng, radius, config.min_sep, false);
      sample.a = a;
      sample.b = b;
      sample.z = sample_disc_point(rng, radius);
      sample.f = sample_map_fixing(config.family, rng, b);
      return sample;
    }
    case Theorem::Punctured:
      return sample_punctured(config, std::move(sample), rng);
    case Theorem::Qlo:
      break;
  }
  throw UsageError("unsupported campaign theorem");
}

BoundReport evaluate_sample(const CampaignConfig& config, const SampleCase& sample) {
  BoundReport report;
  switch (config.theorem) {
    case Theorem::TwoPoint:
    case Theorem::TwoPointSharp:
      report = check_two_point(sample.f, *sample.a, *sample.b, *sample.z, std::nullopt,
                               config.theorem == Theorem::TwoPointSharp, config.tolerance);
      break;
    case Theorem::Xjb: {
      const auto& aut = std::get<maps::MobiusAut>(sample.h->variant());
      report = check_two_point(sample.f, *sample.a, *sample.b, *sample.z, aut.map, false, config.tolerance);
      break;
    }
    case Theorem::FixedPoint:
      report = check_fixed_point(sample.f, *sample.a, *sample.b, *sample.z, config.tolerance);
      break;
    case Theorem::Punctured:
      report = check_punctured(sample.f, *sample.h, *sample.a, *sample.z, config.tolerance);
      break;
    case Theorem::Qlo:
      throw UsageError("unsupported campaign theorem");
  }
  report.witnesses["sample_index"] = sample.index;
  report.witnesses["sample_seed"] = std::to_string(sample.seed);
  return report;
}

MarginStats margin_stats(std::vector<double> margins) {
  MarginStats stats;
  if (margins.empty()) return stats;
  std::sort(margins.begin(), margins.end());
  const std::size_t n = margins.size();
  stats.min = margins.front();
  stats.max = margins.back();
  stats.median = n % 2 == 1 ? margins[n / 2] : 0.5 * (margins[n / 2 - 1] + margins[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n)));
  stats.p99 = margins[std::max<std::size_t>(rank, 1) - 1];
  return stats;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  const std::size_t n = config.samples;
  std::vector<double> margins(n);
  std::vector<std::optional<BoundReport>> violations(n);
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(n)));
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < n; i += threads) {
        BoundReport report = evaluate_sample(config, make_sample(config, i));
        margins[i] = report.margin;
        if (report.violated) violations[i] = std::move(report);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  CampaignReport report;
  report.config = config;
  report.samples_evaluated = n;
  for (auto& v : violations) {
    if (v) report.violations.push_back(std::move(*v));
  }
  report.margins = margin_stats(std::move(margins));
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

nlohmann::json to_json(const CampaignReport& report, bool include_timing) {
  const CampaignConfig& config = report.config;
  nlohmann::json violations = nlohmann::json::array();
  for (const BoundReport& v : report.violations) violations.push_back(to_json(v));

  nlohmann::json j = {
      {"schema_version", kReportSchemaVersion},
      {"config",
       {{"theorem", theorem_name(config.theorem)},
        {"family", to_string(config.family)},
        {"samples", config.samples},
        {"seed", std::to_string(config.seed)},
        {"seed_rule", "splitmix64(splitmix64(seed) ^ index) feeds mt19937_64"},
        {"min_sep", format_real(config.min_sep)},
        {"max_radius", format_real(config.max_radius)},
        {"tolerance", format_real(config.tolerance)}}},
      {"samples_evaluated", report.samples_evaluated},
      {"violation_count", report.violations.size()},
      {"violations", violations},
      {"margin_stats",
       {{"min", format_real(report.margins.min)},
        {"median", format_real(report.margins.median)},
        {"p99", format_real(report.margins.p99)},
        {"max", format_real(report.margins.max)}}},
      {"findings", report.findings},
  };
  if (include_timing) j["wall_time_seconds"] = report.wall_time_seconds;
  return j;
}

std::string campaign_csv(const CampaignReport& report) {
  std::ostringstream out;
  out << "sample_index,sample_seed,theorem,lhs,rhs,constant,margin\n";
  for (const BoundReport& v : report.violations) {
    out << v.witnesses.value("sample_index", std::size_t{0}) << ','
        << v.witnesses.value("sample_seed", std::string{}) << ',' << theorem_name(v.theorem) << ','
        << csv_real(v.lhs) << ',' << csv_real(v.rhs) << ',' << csv_real(v.constant) << ',' << csv_real(v.margin)
        << '\n';
  }
  return out.str();
}

OutputFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? OutputFormat::Csv : OutputFormat::Json;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void write_campaign(const CampaignReport& report, const std::filesystem::path& path) {
  if (format_for_path(path) == OutputFormat::Csv) {
    write_text(path, campaign_csv(report));
  } else {
    write_text(path, to_json(report).dump(2) + "\n");
  }
}

namespace {

// On the positive real axis of the right half-plane rho(x, x + t) = log(1 + t/x).
// Using log1p on the step avoids forming 1 + 1/n^2, which loses about
// eight digits at n = 10^4.
double real_axis_displacement(double x, double t) { return std::log1p(t / x); }

}  // namespace

std::vector<HalfplaneRow> halfplane_growth(const std::vector<int>& n_values) {
  const ModelPoint a = right_point(1.0);
  std::vector<HalfplaneRow> rows;
  for (int n : n_values) {
    if (n < 2) throw UsageError("halfplane_growth needs n >= 2");
    const double nd = static_cast<double>(n);
    const double step = 1.0 / (nd * nd);
    const ModelPoint z = right_point(1.0 / nd);

    HalfplaneRow row;
    row.n = n;
    row.displacement_z = real_axis_displacement(z.value().real(), step);
    row.displacement_a = real_axis_displacement(a.value().real(), step);
    row.ratio = row.displacement_z / row.displacement_a;
    row.exp_dist = std::exp(dist(z, a));
    row.within_bound = std::abs(row.ratio / nd - 1.0) <= 2.0 / nd;
    rows.push_back(row);
  }
  return rows;
}

std::string halfplane_csv(const std::vector<HalfplaneRow>& rows) {
  std::ostringstream out;
  out << "n,displacement_z,displacement_a,ratio,exp_dist_z_a,ratio_over_exp_dist,within_bound\n";
  for (const HalfplaneRow& r : rows) {
    out << r.n << ',' << csv_real(r.displacement_z) << ',' << csv_real(r.displacement_a) << ','
        << csv_real(r.ratio) << ',' << csv_real(r.exp_dist) << ',' << csv_real(r.ratio / r.exp_dist) << ','
        << (r.within_bound ? "true" : "false") << '\n';
  }
  return out.str();
}

CampaignReport counterexample_demo() {
  const HoloMap f = HoloMap::real_part();

  constexpr int kPairs = 1000;
  Rng rng(derive_seed(0x5eed, 0));
  int failures = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kPairs; ++k) {
    const ModelPoint u = sample_disc_point(rng, 6.0);
    const ModelPoint v = sample_disc_point(rng, 6.0);
    const double excess = dist(eval(f, u), eval(f, v)) - dist(u, v);
    worst_excess = std::max(worst_excess, excess);
    if (excess > kDefaultTolerance) ++failures;
  }

  const BoundReport check = check_two_point(f, disc_point(0.3), disc_point(-0.3), disc_point({0.0, 0.5}));

  CampaignReport report;
  report.config.theorem = Theorem::TwoPoint;
  report.config.family = FamilySpec{FamilySpec::Kind::RealPart};
  report.config.samples = 1;
  report.config.seed = 0;
  report.samples_evaluated = 1;
  report.margins = margin_stats({check.margin});
  if (check.violated) report.violations.push_back(check);
  report.findings = {
      {"contraction_pairs", kPairs},
      {"contraction_failures", failures},
      {"contraction_holds", failures == 0},
      {"contraction_worst_excess", format_real(worst_excess)},
      {"two_point_violated", check.violated},
      {"two_point_lhs", format_real(check.lhs)},
      {"two_point_rhs", format_real(check.rhs)},
  };
  return report;
}

double BudgetSpec::term(int n) const {
  const double nd = static_cast<double>(n);
  switch (kind) {
    case Kind::InvSquare:
      return 1.0 / (nd * nd);
    case Kind::InvCube:
      return 1.0 / (nd * nd * nd);
    case Kind::Geometric:
      return std::pow(ratio, nd);
    case Kind::Harmonic:
      return 1.0 / nd;
  }
  return 0.0;
}

double BudgetSpec::total() const {
  switch (kind) {
    case Kind::InvSquare:
      return std::numbers::pi * std::numbers::pi / 6.0;
    case Kind::InvCube:
      return 1.2020569031595942;  // Apery's constant
    case Kind::Geometric:
      return ratio / (1.0 - ratio);
    case Kind::Harmonic:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

BudgetSpec parse_budget(std::string_view text) {
  BudgetSpec spec;
  if (text == "inv_square") {
    spec.kind = BudgetSpec::Kind::InvSquare;
  } else if (text == "inv_cube") {
    spec.kind = BudgetSpec::Kind::InvCube;
  } else if (text == "inv" || text == "harmonic") {
    spec.kind = BudgetSpec::Kind::Harmonic;
  } else if (text.starts_with("geometric:r=")) {
    spec.kind = BudgetSpec::Kind::Geometric;
    try {
      spec.ratio = std::stod(std::string(text.substr(12)));
    } catch (const std::exception&) {
      throw UsageError("bad geometric ratio in '" + std::string(text) + "'");
    }
    if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) throw UsageError("geometric ratio must lie in (0, 1)");
  } else {
    throw UsageError("unknown budget '" + std::string(text) + "'");
  }
  return spec;
}

std::vector<ConvergenceRow> convergence_demo(const BudgetSpec& budget, const ModelPoint& z, const ModelPoint& a,
                                             const ModelPoint& b, int n_max) {
  if (!budget.summable()) throw UsageError("budget is not summable; the transferred bound would diverge");
  if (n_max < 1) throw UsageError("n_max must be >= 1");
  const double constant = constant_two_point(z, a, b);

  // sigma(a) = 0 and sigma(b) > 0, so the geodesic through a and b is sigma^{-1}([0, 1)).
  const Complex b0 = build_disc_automorphism(a, 0.0).apply_raw(b.value());
  const Mobius sigma_inv = build_disc_automorphism(a, -std::arg(b0)).inverse();

  std::vector<ConvergenceRow> rows;
  double bound_sum = 0.0;
  double displacement_sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double term = budget.term(n);
    const ModelPoint toward_b = disc_point(sigma_inv.apply_raw(std::tanh(term / 4.0)));
    const Mobius f = hyperbolic_pull(toward_b, a);

    ConvergenceRow row;
    row.n = n;
    row.budget = term;
    row.two_point_displacement = dist(apply(f, a), a) + dist(apply(f, b), b);
    row.displacement_z = dist(apply(f, z), z);
    row.bound = constant * term;
    bound_sum += row.bound;
    displacement_sum += row.displacement_z;
    row.bound_partial_sum = bound_sum;
    row.displacement_partial_sum = displacement_sum;
    row.bound_limit = constant * budget.total();
    row.within_bound = row.displacement_z <= row.bound + kDefaultTolerance;
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "n,budget,two_point_displacement,displacement_z,bound,bound_partial_sum,displacement_partial_sum,"
         "bound_limit,within_bound\n";
  for (const ConvergenceRow& r : rows) {
    out << r.n << ',' << csv_real(r.budget) << ',' << csv_real(r.two_point_displacement) << ','
        << csv_real(r.displacement_z) << ',' << csv_real(r.bound) << ',' << csv_real(r.bound_partial_sum) << ','
        << csv_real(r.displacement_partial_sum) << ',' << csv_real(r.bound_limit) << ','
        << (r.within_bound ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace hypbound
