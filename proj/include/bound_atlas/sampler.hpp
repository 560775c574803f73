#pragma once

#include "bound_atlas/magic_simplex.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bound_atlas {

/// Additive-recurrence quasi-random sequence. Component j (1-based) of point
/// n is frac(alpha0 + (n+1)/phi^j), where phi is the unique real root > 1 of
/// x^{dim+1} = x + 1. Points are a pure function of the index, so disjoint
/// index ranges can be generated independently.
struct RobertsConfig {
  int dim = 1;
  double alpha0 = 0.5;
  std::uint64_t start_index = 0;
};

/// Root > 1 of x^{dim+1} = x + 1 (dim=1 gives the golden ratio).
double roberts_root(int dim);

/// Fill out[0..dim) with point number n (offset by cfg.start_index).
void roberts_point(const RobertsConfig& cfg, std::uint64_t n,
                   std::span<double> out);

/// Sorted-spacings map: uniform on [0,1)^k -> uniform on {x >= 0, sum x <= 1}.
void cube_to_simplex(std::span<const double> u, std::span<double> out);

/// Quasi-random point uniform (w.r.t. the flat measure) on the d=3 / d=4
/// family polytope; the standard simplex is scaled per coordinate, so every
/// output lies inside the density region.
QPoint sample_hl_Q(int d, const RobertsConfig& cfg, std::uint64_t n);

/// Quasi-random weight grid uniform on the full (d^2-1)-simplex.
SimplexWeights sample_full_c(int d, const RobertsConfig& cfg, std::uint64_t n);

enum class Family { HL3, HL4, Full3, Full4, HorodeckiLine };

const char* family_name(Family f);
Family family_from_name(const std::string& name);
int family_sample_dim(Family f);  // Roberts dimension: 3, 4, 8, 15, 1
int family_qudit_d(Family f);     // 3, 4, 3, 4, 3

/// One sampled state, with lazy construction of the heavier views.
class SamplePoint {
public:
  Family family;
  int d = 3;
  QPoint Q;           // HL families and the embedded line
  double lambda = 0;  // HorodeckiLine only
  SimplexWeights weights;  // Full families (HL: filled on demand)
  bool has_weights = false;

  const SimplexWeights& weight_grid() const;
  const Matrix& density() const;      // cached
  bool spectral_ppt() const;          // cached; min eigenvalue of the PT
  bool ccnr() const;                  // cached; realignment criterion

private:
  mutable std::optional<Matrix> rho_;
  mutable std::optional<bool> ppt_;
  mutable std::optional<bool> ccnr_;
  mutable std::optional<SimplexWeights> weights_cache_;
};

SamplePoint make_sample(Family f, const RobertsConfig& cfg, std::uint64_t n);

struct SampleTest {
  std::string name;
  std::function<bool(const SamplePoint&)> eval;
};

struct EstimateRow {
  std::string name;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double estimate = 0.0;
};

struct EstimateTable {
  Family family = Family::HL3;
  double alpha0 = 0.5;
  std::uint64_t start_index = 0;
  std::uint64_t n_samples = 0;
  std::vector<EstimateRow> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

struct ProgressEntry {
  std::uint64_t done = 0;
  std::vector<std::uint64_t> hits;  // aligned with the test list
};

struct EstimateOptions {
  int workers = 0;  // 0 = default_worker_count()
  std::uint64_t progress_stride = 0;  // 0 = no progress reporting
  std::function<void(const ProgressEntry&)> on_progress;
};

/// Count hits for every test over n quasi-random states. Deterministic for a
/// fixed (family, cfg, n): the sample stream depends only on the index, and
/// partition of the index range over workers does not change the counts.
EstimateTable estimate(Family f, const std::vector<SampleTest>& tests,
                       const RobertsConfig& cfg, std::uint64_t n,
                       const EstimateOptions& opt = {});

/// Merge two tables over disjoint index ranges of one configuration.
EstimateTable merge(const EstimateTable& a, const EstimateTable& b);

/// BOUND_ATLAS_THREADS if set, else hardware concurrency.
int default_worker_count();

}  // namespace bound_atlas
