#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypbound/holomaps.hpp"
#include "hypbound/models.hpp"
#include "hypbound/report.hpp"

namespace hypbound {

inline constexpr int kReportSchemaVersion = 1;

struct CampaignConfig {
  Theorem theorem = Theorem::TwoPoint;
  FamilySpec family;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double min_sep = 0.1;     // minimum rho(a, b)
  double max_radius = 6.0;  // bound on pairwise hyperbolic distances of sampled points
  double tolerance = kDefaultTolerance;
  unsigned threads = 1;     // does not affect results
};

/// Throws UsageError for out-of-range fields or a family that does not fit the theorem.
void validate(const CampaignConfig& config);

/// Everything needed to re-run one check; rebuilt from (seed, index) alone.
struct SampleCase {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  HoloMap f = HoloMap::identity(Model::Disc);
  std::optional<HoloMap> h;      // covering map (punctured) or automorphism (xjb)
  std::optional<ModelPoint> a;
  std::optional<ModelPoint> b;   // absent for the punctured theorem
  std::optional<ModelPoint> z;
};

/// Disc points are drawn within hyperbolic radius max_radius / 2 of the
/// origin; for the punctured theorem a has lambda*(a) <= 1e3 and z lies within
/// max_radius of a. Real-part families use real a and b.
SampleCase make_sample(const CampaignConfig& config, std::size_t index);

/// Runs the configured check; witnesses gain `sample_index` and `sample_seed`.
BoundReport evaluate_sample(const CampaignConfig& config, const SampleCase& sample);

struct MarginStats {
  double min = 0.0;
  double median = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

MarginStats margin_stats(std::vector<double> margins);

struct CampaignReport {
  CampaignConfig config;
  std::size_t samples_evaluated = 0;
  std::vector<BoundReport> violations;  // in sample-index order
  MarginStats margins;
  double wall_time_seconds = 0.0;
  nlohmann::json findings = nlohmann::json::object();
};

/// Deterministic for a fixed config at any thread count.
CampaignReport run_campaign(const CampaignConfig& config);

/// Timing is omitted when include_timing is false.
nlohmann::json to_json(const CampaignReport& report, bool include_timing = true);
std::string campaign_csv(const CampaignReport& report);

enum class OutputFormat { Json, Csv };
OutputFormat format_for_path(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_campaign(const CampaignReport& report, const std::filesystem::path& path);

/// Half-plane translation w -> w + 1/n^2 on the right half-plane with a = 1,
/// z_n = 1/n.
struct HalfplaneRow {
  int n = 0;
  double displacement_z = 0.0;  // rho(f_n(z_n), z_n)
  double displacement_a = 0.0;  // rho(f_n(a), a)
  double ratio = 0.0;
  double exp_dist = 0.0;        // e^{rho(z_n, a)}
  bool within_bound = false;    // |ratio / n - 1| <= 2 / n
};

/// Throws UsageError for n < 2.
std::vector<HalfplaneRow> halfplane_growth(const std::vector<int>& n_values);
std::string halfplane_csv(const std::vector<HalfplaneRow>& rows);

/// Contraction check of Re(w) on 1e3 sampled pairs plus the two-point check
/// at a = 0.3, b = -0.3, z = 0.5i, which is expected to be violated.
CampaignReport counterexample_demo();

struct BudgetSpec {
  enum class Kind { InvSquare, InvCube, Geometric, Harmonic };
  Kind kind = Kind::InvSquare;
  double ratio = 0.5;  // Geometric

  double term(int n) const;
  bool summable() const { return kind != Kind::Harmonic; }
  /// Sum over n >= 1.
  double total() const;
};

/// `inv_square`, `inv_cube`, `geometric:r=0.5`, `inv` (accepted, then refused as non-summable).
BudgetSpec parse_budget(std::string_view text);

struct ConvergenceRow {
  int n = 0;
  double budget = 0.0;
  double two_point_displacement = 0.0;  // rho(f_n(a), a) + rho(f_n(b), b)
  double displacement_z = 0.0;          // rho(f_n(z), z)
  double bound = 0.0;                   // K * budget(n)
  double bound_partial_sum = 0.0;
  double displacement_partial_sum = 0.0;
  double bound_limit = 0.0;             // K * sum of the budget
  bool within_bound = false;
};

/// f_n is the hyperbolic automorphism along the geodesic through a and b with
/// translation length budget(n)/2, so both two-point displacements equal it.
std::vector<ConvergenceRow> convergence_demo(const BudgetSpec& budget, const ModelPoint& z, const ModelPoint& a,
                                             const ModelPoint& b, int n_max);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace hypbound
