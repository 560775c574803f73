#include "bound_atlas/sampler.hpp"

#include "bound_atlas/linalg.hpp"
#include "bound_atlas/witnesses.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace bound_atlas {

double roberts_root(int dim) {
  if (dim < 1 || dim > 32)
    throw std::invalid_argument("roberts_root: dim must lie in 1..32");
  // fixed point of x -> (1+x)^(1/(dim+1)), converges for every dim >= 1
  double x = 2.0;
  for (int i = 0; i < 128; ++i) x = std::pow(1.0 + x, 1.0 / (dim + 1));
  return x;
}

namespace {
// generator components 1/phi^j, j = 1..dim; all dims precomputed once
const std::vector<double>& generator(int dim) {
  static const std::vector<std::vector<double>> cache = [] {
    std::vector<std::vector<double>> all(33);
    for (int d = 1; d <= 32; ++d) {
      double phi = roberts_root(d);
      auto& g = all[static_cast<std::size_t>(d)];
      g.resize(static_cast<std::size_t>(d));
      double p = 1.0;
      for (int j = 0; j < d; ++j) {
        p /= phi;
        g[static_cast<std::size_t>(j)] = p;
      }
    }
    return all;
  }();
  return cache[static_cast<std::size_t>(dim)];
}

inline double frac(double x) { return x - std::floor(x); }
}  // namespace

void roberts_point(const RobertsConfig& cfg, std::uint64_t n,
                   std::span<double> out) {
  if (cfg.dim < 1 || cfg.dim > 32)
    throw std::invalid_argument("roberts_point: dim must lie in 1..32");
  const auto& g = generator(cfg.dim);
  const double idx = static_cast<double>(cfg.start_index + n + 1);
  for (int j = 0; j < cfg.dim; ++j)
    out[static_cast<std::size_t>(j)] =
        frac(cfg.alpha0 + idx * g[static_cast<std::size_t>(j)]);
}

void cube_to_simplex(std::span<const double> u, std::span<double> out) {
  const std::size_t k = u.size();
  if (k > 32) throw std::invalid_argument("cube_to_simplex: at most 32 dims");
  double s[32];
  std::copy(u.begin(), u.end(), s);
  std::sort(s, s + k);
  double prev = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = s[i] - prev;
    prev = s[i];
  }
}

QPoint sample_hl_Q(int d, const RobertsConfig& cfg, std::uint64_t n) {
  if (d != 3 && d != 4)
    throw std::invalid_argument("sample_hl_Q: d must be 3 or 4");
  RobertsConfig c = cfg;
  c.dim = d;  // 3 or 4 coordinates
  double u[4], v[4];
  roberts_point(c, n, std::span<double>(u, static_cast<std::size_t>(d)));
  cube_to_simplex(std::span<const double>(u, static_cast<std::size_t>(d)),
                  std::span<double>(v, static_cast<std::size_t>(d)));
  if (d == 3) return make_q3(v[0], v[1] / 3.0, v[2] / 2.0);
  return make_q4(v[0], v[1] / 4.0, v[2] / 4.0, v[3] / 3.0);
}

SimplexWeights sample_full_c(int d, const RobertsConfig& cfg, std::uint64_t n) {
  if (d != 3 && d != 4)
    throw std::invalid_argument("sample_full_c: d must be 3 or 4");
  const int k = d * d - 1;
  RobertsConfig c = cfg;
  c.dim = k;
  double u[32], v[32];
  roberts_point(c, n, std::span<double>(u, static_cast<std::size_t>(k)));
  cube_to_simplex(std::span<const double>(u, static_cast<std::size_t>(k)),
                  std::span<double>(v, static_cast<std::size_t>(k)));
  SimplexWeights w;
  w.d = d;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    w.c[static_cast<std::size_t>(i)] = v[i];
    sum += v[i];
  }
  w.c[static_cast<std::size_t>(k)] = 1.0 - sum;
  return w;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::HL3: return "hl3";
    case Family::HL4: return "hl4";
    case Family::Full3: return "full3";
    case Family::Full4: return "full4";
    case Family::HorodeckiLine: return "horodecki";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "hl3") return Family::HL3;
  if (name == "hl4") return Family::HL4;
  if (name == "full3") return Family::Full3;
  if (name == "full4") return Family::Full4;
  if (name == "horodecki") return Family::HorodeckiLine;
  throw std::invalid_argument("unknown family '" + name + "'");
}

int family_sample_dim(Family f) {
  switch (f) {
    case Family::HL3: return 3;
    case Family::HL4: return 4;
    case Family::Full3: return 8;
    case Family::Full4: return 15;
    case Family::HorodeckiLine: return 1;
  }
  return 0;
}

int family_qudit_d(Family f) {
  switch (f) {
    case Family::HL3:
    case Family::Full3:
    case Family::HorodeckiLine: return 3;
    case Family::HL4:
    case Family::Full4: return 4;
  }
  return 0;
}

const SimplexWeights& SamplePoint::weight_grid() const {
  if (has_weights) return weights;
  if (!weights_cache_) weights_cache_ = hl_weights(Q);
  return *weights_cache_;
}

const Matrix& SamplePoint::density() const {
  if (!rho_) rho_ = bell_mixture(weight_grid());
  return *rho_;
}

bool SamplePoint::spectral_ppt() const {
  if (!ppt_) {
    Matrix pt = partial_transpose(density(), d, d);
    ppt_ = (min_eigenvalue(pt) >= -kPsdTol);
  }
  return *ppt_;
}

bool SamplePoint::ccnr() const {
  if (!ccnr_) ccnr_ = ccnr_flag(density(), d, d);
  return *ccnr_;
}

SamplePoint make_sample(Family f, const RobertsConfig& cfg, std::uint64_t n) {
  SamplePoint sp;
  sp.family = f;
  sp.d = family_qudit_d(f);
  switch (f) {
    case Family::HL3:
      sp.Q = sample_hl_Q(3, cfg, n);
      break;
    case Family::HL4:
      sp.Q = sample_hl_Q(4, cfg, n);
      break;
    case Family::Full3:
      sp.weights = sample_full_c(3, cfg, n);
      sp.has_weights = true;
      break;
    case Family::Full4:
      sp.weights = sample_full_c(4, cfg, n);
      sp.has_weights = true;
      break;
    case Family::HorodeckiLine: {
      RobertsConfig c = cfg;
      c.dim = 1;
      double u;
      roberts_point(c, n, std::span<double>(&u, 1));
      sp.lambda = 5.0 * u;
      sp.Q = horodecki_Q(sp.lambda);
      break;
    }
  }
  return sp;
}

int default_worker_count() {
  if (const char* env = std::getenv("BOUND_ATLAS_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {
constexpr std::uint64_t kChunk = 1 << 16;
}

EstimateTable estimate(Family f, const std::vector<SampleTest>& tests,
                       const RobertsConfig& cfg, std::uint64_t n,
                       const EstimateOptions& opt) {
  if (n == 0) throw std::invalid_argument("estimate: n must be >= 1");
  if (tests.empty()) throw std::invalid_argument("estimate: no tests given");

  const std::size_t m = tests.size();
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> chunk_hits(
      static_cast<std::size_t>(n_chunks));

  int workers = opt.workers > 0 ? opt.workers : default_worker_count();
  workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_chunks));

  std::atomic<std::uint64_t> next_chunk{0};
  auto run = [&]() {
    for (;;) {
      const std::uint64_t ci = next_chunk.fetch_add(1);
      if (ci >= n_chunks) return;
      const std::uint64_t lo = ci * kChunk;
      const std::uint64_t hi = std::min(n, lo + kChunk);
      std::vector<std::uint64_t> local(m, 0);
      for (std::uint64_t i = lo; i < hi; ++i) {
        SamplePoint sp = make_sample(f, cfg, i);
        for (std::size_t t = 0; t < m; ++t)
          if (tests[t].eval(sp)) ++local[t];
      }
      chunk_hits[static_cast<std::size_t>(ci)] = std::move(local);
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  // fold in chunk order; emit progress at stride boundaries
  std::vector<std::uint64_t> totals(m, 0);
  std::uint64_t done = 0, next_report = opt.progress_stride;
  for (std::uint64_t ci = 0; ci < n_chunks; ++ci) {
    const auto& local = chunk_hits[static_cast<std::size_t>(ci)];
    for (std::size_t t = 0; t < m; ++t) totals[t] += local[t];
    done = std::min(n, (ci + 1) * kChunk);
    if (opt.on_progress && opt.progress_stride > 0 && done >= next_report) {
      opt.on_progress(ProgressEntry{done, totals});
      while (next_report <= done) next_report += opt.progress_stride;
    }
  }

  EstimateTable table;
  table.family = f;
  table.alpha0 = cfg.alpha0;
  table.start_index = cfg.start_index;
  table.n_samples = n;
  table.rows.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    EstimateRow row;
    row.name = tests[t].name;
    row.hits = totals[t];
    row.total = n;
    row.estimate = static_cast<double>(totals[t]) / static_cast<double>(n);
    table.rows.push_back(std::move(row));
  }
  return table;
}

EstimateTable merge(const EstimateTable& a, const EstimateTable& b) {
  if (a.family != b.family || a.alpha0 != b.alpha0 ||
      a.rows.size() != b.rows.size())
    throw std::invalid_argument("merge: incompatible estimate tables");
  EstimateTable out = a;
  out.n_samples = a.n_samples + b.n_samples;
  out.start_index = std::min(a.start_index, b.start_index);
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (a.rows[i].name != b.rows[i].name)
      throw std::invalid_argument("merge: row name mismatch");
    out.rows[i].hits = a.rows[i].hits + b.rows[i].hits;
    out.rows[i].total = a.rows[i].total + b.rows[i].total;
    out.rows[i].estimate = static_cast<double>(out.rows[i].hits) /
                           static_cast<double>(out.rows[i].total);
  }
  return out;
}

std::string EstimateTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "# family=" << family_name(family) << " alpha0=" << alpha0
     << " start=" << start_index << " n=" << n_samples << "\n";
  os << "region,hits,total,estimate\n";
  for (const auto& r : rows)
    os << r.name << "," << r.hits << "," << r.total << "," << r.estimate
       << "\n";
  return os.str();
}

std::string EstimateTable::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\n  \"family\": \"" << family_name(family) << "\",\n"
     << "  \"alpha0\": " << alpha0 << ",\n"
     << "  \"start_index\": " << start_index << ",\n"
     << "  \"n_samples\": " << n_samples << ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << "    {\"region\": \"" << r.name << "\", \"hits\": " << r.hits
       << ", \"total\": " << r.total << ", \"estimate\": " << r.estimate << "}"
       << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace bound_atlas
