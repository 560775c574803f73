// bound-atlas: quasi-random probability estimates and closed-form reference
// values for magic-simplex state families.

#include "bound_atlas/formulas.hpp"
#include "bound_atlas/regions.hpp"
#include "bound_atlas/repro.hpp"
#include "bound_atlas/sampler.hpp"
#include "bound_atlas/witnesses.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bound_atlas;
using nlohmann::json;

namespace {

struct Row {
  SampleTest test;
  std::optional<double> exact;
};

std::uint64_t parse_count(const std::string& s) {
  double v = std::stod(s);
  if (v < 1 || v > 4e18) throw CLI::ValidationError("--n out of range");
  return static_cast<std::uint64_t>(std::llround(v));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// predicate lookup for user expressions, with per-family atom names
std::function<bool(const SamplePoint&, const std::string&)> atom_eval(
    Family fam) {
  switch (fam) {
    case Family::HL3:
    case Family::HorodeckiLine:
      return [](const SamplePoint& sp, const std::string& a) {
        if (a == "density") return density_region(sp.Q);
        if (a == "ppt") return ppt_region(sp.Q);
        if (a == "mub") return mub_predicate_hl3(sp.Q);
        if (a == "choi") return choi_predicate_hl3(sp.Q);
        throw std::invalid_argument("unknown predicate '" + a + "' for d=3");
      };
    case Family::HL4:
      return [](const SamplePoint& sp, const std::string& a) {
        if (a == "density") return density_region(sp.Q);
        if (a == "ppt") return ppt_region(sp.Q);
        if (a == "chrusc1") return chrusc_predicate(1, sp.Q);
        if (a == "chrusc2") return chrusc_predicate(2, sp.Q);
        throw std::invalid_argument("unknown predicate '" + a + "' for d=4");
      };
    case Family::Full3:
      return [](const SamplePoint& sp, const std::string& a) {
        if (a == "ppt") return sp.spectral_ppt();
        if (a == "mub") return mub_I4_full(sp.weight_grid()) > 2.0;
        if (a == "ccnr") return sp.ccnr();
        throw std::invalid_argument("unknown predicate '" + a +
                                    "' for the full d=3 simplex");
      };
    case Family::Full4:
      return [](const SamplePoint& sp, const std::string& a) {
        if (a == "ppt") return sp.spectral_ppt();
        if (a == "ccnr") return sp.ccnr();
        throw std::invalid_argument("unknown predicate '" + a +
                                    "' for the full d=4 simplex");
      };
  }
  throw std::logic_error("unreachable");
}

Row expr_row(Family fam, const std::string& name, const std::string& text) {
  RegionExpr expr = RegionExpr::parse(text);
  auto atoms = atom_eval(fam);
  Row row;
  row.test.name = name;
  row.test.eval = [expr, atoms](const SamplePoint& sp) {
    return expr.eval([&](const std::string& a) { return atoms(sp, a); });
  };
  const auto* entry = FormulaCatalog::instance().find(name);
  if (entry && entry->arity == 0) row.exact = entry->value;
  return row;
}

struct WitnessRows {
  std::string label;
  std::vector<Row> rows;
};

WitnessRows witness_rows(Family fam, const std::string& spec_text) {
  // "name" or "name:a=0.5" / "name:alpha=0.3"
  std::string name = spec_text;
  double param = 0.0;
  bool has_param = false;
  if (auto colon = spec_text.find(':'); colon != std::string::npos) {
    name = spec_text.substr(0, colon);
    auto eq = spec_text.find('=', colon);
    if (eq == std::string::npos)
      throw std::invalid_argument("bad witness spec '" + spec_text + "'");
    param = std::stod(spec_text.substr(eq + 1));
    has_param = true;
  }
  const int d = family_qudit_d(fam);

  WitnessSpec w;
  std::optional<double> exact_ent, exact_bound;
  const auto& cat = FormulaCatalog::instance();
  if (name == "choi") {
    if (!has_param) param = 1.0;
    w = choi_witness(param);
    exact_ent = cat.eval("d3.choi.ent", param);
    exact_bound = cat.eval("d3.choi.bound", param);
  } else if (name == "jba3w" || name == "jba3wp") {
    if (!has_param) throw std::invalid_argument(name + " needs :alpha=");
    w = name == "jba3w" ? jba3_witness(param) : jba3_witness_prime(param);
    exact_ent = cat.eval("d3.jba.ent", param, true);
    exact_bound = cat.eval("d3.jba.bound", param, true);
  } else if (name == "jba4w" || name == "jba4wp") {
    if (!has_param) throw std::invalid_argument(name + " needs :alpha=");
    w = name == "jba4w" ? jba4_witness(param) : jba4_witness_prime(param);
    exact_ent = cat.eval("d4.jba.ent", param, true);
    exact_bound = cat.eval("d4.jba.bound", param, true);
  } else if (name == "chrusc1" || name == "chrusc2") {
    w = chrusc_witness(name == "chrusc1" ? 1 : 2);
    exact_ent = cat.eval("d4." + name + ".ent");
    exact_bound = cat.eval("d4." + name + ".bound");
  } else if (name == "wabcd1" || name == "wabcd2") {
    if (!has_param) throw std::invalid_argument(name + " needs :a=");
    w = name == "wabcd1" ? wabcd_class1(param) : wabcd_class2(param);
  } else if (name == "mubtorus") {
    WitnessRows out;
    out.label = name;
    Row row;
    row.test.name = name + ".vertex_min";
    // constant row: vertex minimum is nonnegative, so the witness flags
    // nothing on this family
    double vmin = witness_min_over_vertices(mub_torus_instance());
    row.test.eval = [vmin](const SamplePoint&) { return vmin < 0; };
    out.rows.push_back(std::move(row));
    return out;
  } else {
    throw std::invalid_argument("unknown witness '" + name + "'");
  }
  if (w.d != d)
    throw std::invalid_argument("witness '" + name +
                                "' does not match the family dimension");

  std::string label = has_param ? name + "[" + std::to_string(param) + "]"
                                : name;
  WitnessRows out;
  out.label = label;
  Row ent;
  ent.test.name = label + ".ent";
  ent.test.eval = [w](const SamplePoint& sp) { return w.flags(sp.Q); };
  ent.exact = exact_ent;
  out.rows.push_back(std::move(ent));
  Row bound;
  bound.test.name = label + ".bound";
  bound.test.eval = [w](const SamplePoint& sp) {
    return ppt_region(sp.Q) && w.flags(sp.Q);
  };
  bound.exact = exact_bound;
  out.rows.push_back(std::move(bound));
  return out;
}

std::string table_csv(const std::string& args_line, const EstimateTable& t,
                      const std::vector<Row>& rows) {
  std::ostringstream os;
  os << "# bound-atlas estimate v1\n# args: " << args_line << "\n";
  os << "region,hits,total,estimate,exact,abs_error\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    os << r.name << "," << r.hits << "," << r.total << "," << fmt17(r.estimate);
    if (rows[i].exact)
      os << "," << fmt17(*rows[i].exact) << ","
         << fmt17(std::abs(r.estimate - *rows[i].exact));
    else
      os << ",,";
    os << "\n";
  }
  return os.str();
}

std::string table_json(const std::string& args_line, const EstimateTable& t,
                       const std::vector<Row>& rows) {
  json doc;
  doc["tool"] = "bound-atlas estimate v1";
  doc["args"] = args_line;
  doc["family"] = family_name(t.family);
  doc["alpha0"] = t.alpha0;
  doc["start_index"] = t.start_index;
  doc["n_samples"] = t.n_samples;
  doc["rows"] = json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    json jr = {{"region", r.name},
               {"hits", r.hits},
               {"total", r.total},
               {"estimate", r.estimate}};
    if (rows[i].exact) {
      jr["exact"] = *rows[i].exact;
      jr["abs_error"] = std::abs(r.estimate - *rows[i].exact);
    }
    doc["rows"].push_back(jr);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-random probability atlas for magic-simplex state "
               "families"};
  app.require_subcommand(1);

  // ---------- estimate ----------
  auto* est = app.add_subcommand("estimate",
                                 "sample a family and count region hits");
  std::string family_s = "hl3";
  std::vector<std::string> region_specs;
  std::vector<std::string> witness_specs;
  bool table1 = false, ccnr = false, slow = false, check = false;
  std::string n_text, out_path, format = "csv";
  double alpha0 = 0.5, tol = 5e-3;
  std::uint64_t start = 0;
  int workers = 0;
  std::uint64_t progress = 0;
  est->add_option("--family", family_s, "hl3|hl4|full3|full4|horodecki");
  est->add_option("--regions", region_specs,
                  "region expressions over the family's predicates")
      ->delimiter(',');
  est->add_option("--witness", witness_specs,
                  "witness spec, e.g. choi:a=0.5 or chrusc1");
  est->add_flag("--table1", table1, "all named d=3 probability-table rows");
  est->add_flag("--ccnr", ccnr, "add realignment rows (slow lane)");
  est->add_option("--n", n_text, "sample count (scientific notation ok)");
  est->add_option("--alpha0", alpha0, "sequence offset");
  est->add_option("--start", start, "sequence start index");
  est->add_option("--workers", workers, "worker threads (default: env/cores)");
  est->add_option("--out", out_path, "output path ('-' = stdout)");
  est->add_option("--format", format, "csv|json");
  est->add_flag("--slow", slow, "slow-lane defaults (matrix checks)");
  est->add_flag("--check", check, "nonzero exit if |estimate-exact| > tol");
  est->add_option("--tol", tol, "tolerance for --check");
  est->add_option("--progress", progress,
                  "emit running estimates to stderr every K samples");

  // ---------- exact ----------
  auto* exact_cmd = app.add_subcommand("exact", "print a catalog value");
  std::string exact_id;
  double exact_a = 0.0, exact_alpha = 0.0;
  bool has_a = false, has_alpha = false, extrapolated = false;
  exact_cmd->add_option("id", exact_id, "catalog id")->required();
  exact_cmd->add_option("--a", exact_a, "parameter a")
      ->each([&](const std::string&) { has_a = true; });
  exact_cmd->add_option("--alpha", exact_alpha, "parameter alpha")
      ->each([&](const std::string&) { has_alpha = true; });
  exact_cmd->add_flag("--extrapolated", extrapolated,
                      "allow evaluation outside the documented interval");

  // ---------- list ----------
  auto* list_cmd = app.add_subcommand("list", "dump catalogs as JSON");
  std::string list_what = "formulas";
  std::string list_out;
  list_cmd->add_option("what", list_what, "formulas|regions|witnesses");
  list_cmd->add_option("--out", list_out, "output path");

  // ---------- scan ----------
  auto* scan_cmd = app.add_subcommand("scan", "grid scans (CSV)");
  std::string scan_kind, scan_grid = "", scan_formula, scan_out;
  std::string scan_n = "1e6";
  double scan_a = 1.0, scan_alpha0 = 0.5;
  int scan_workers = 0;
  scan_cmd->add_option("kind", scan_kind, "threshold|boundary|family-curve")
      ->required();
  scan_cmd->add_option("--grid", scan_grid, "lo:hi:steps");
  scan_cmd->add_option("--formula", scan_formula,
                       "unary catalog id (family-curve)");
  scan_cmd->add_option("--a", scan_a, "witness parameter (threshold)");
  scan_cmd->add_option("--n", scan_n, "samples per scan");
  scan_cmd->add_option("--alpha0", scan_alpha0, "sequence offset");
  scan_cmd->add_option("--workers", scan_workers, "worker threads");
  scan_cmd->add_option("--out", scan_out, "output path");

  // ---------- repro ----------
  auto* repro_cmd = app.add_subcommand("repro", "run the acceptance checks");
  std::vector<int> criteria;
  int repro_workers = 0;
  bool quiet = false;
  repro_cmd->add_option("--criterion", criteria, "subset of criteria to run");
  repro_cmd->add_option("--workers", repro_workers, "worker threads");
  repro_cmd->add_flag("--quiet", quiet, "suppress per-check detail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*est) {
      Family fam = family_from_name(family_s);
      const bool is_slow_family =
          fam == Family::Full3 || fam == Family::Full4;
      std::uint64_t n = n_text.empty()
                            ? ((slow || is_slow_family || ccnr) ? 100'000
                                                                : 1'000'000)
                            : parse_count(n_text);

      std::vector<Row> rows;
      if (table1) {
        if (fam != Family::HL3)
          throw std::invalid_argument("--table1 applies to --family hl3");
        for (const auto& [name, expr] : table1_rows())
          rows.push_back(expr_row(fam, name, expr));
      }
      for (const auto& spec : region_specs)
        rows.push_back(expr_row(fam, spec, spec));
      for (const auto& spec : witness_specs) {
        auto wr = witness_rows(fam, spec);
        for (auto& row : wr.rows) rows.push_back(std::move(row));
      }
      if (ccnr) {
        Row ent;
        ent.test.name = "ccnr.ent";
        ent.test.eval = [](const SamplePoint& sp) { return sp.ccnr(); };
        Row bound;
        bound.test.name = "ccnr.bound";
        if (fam == Family::HL3 || fam == Family::HL4 ||
            fam == Family::HorodeckiLine) {
          bound.test.eval = [](const SamplePoint& sp) {
            return ppt_region(sp.Q) && sp.ccnr();
          };
        } else {
          bound.test.eval = [](const SamplePoint& sp) {
            return sp.spectral_ppt() && sp.ccnr();
          };
        }
        const auto& cat = FormulaCatalog::instance();
        if (fam == Family::HL3) {
          ent.exact = cat.eval("d3.ccnr.ent");
          bound.exact = cat.eval("d3.ccnr.bound");
        } else if (fam == Family::HL4) {
          ent.exact = cat.eval("d4.ccnr.ent");
          bound.exact = cat.eval("d4.ccnr.bound");
        } else if (fam == Family::Full4) {
          ent.exact = cat.eval("full15.ccnr.ent.est");
          bound.exact = cat.eval("full15.ccnr.bound.conj");
        }
        rows.push_back(std::move(ent));
        rows.push_back(std::move(bound));
      }
      if (rows.empty()) {
        // family defaults
        switch (fam) {
          case Family::HL3:
            for (const auto& [name, expr] : table1_rows())
              rows.push_back(expr_row(fam, name, expr));
            break;
          case Family::HL4:
            for (const std::string name :
                 {"d4.ppt", "d4.chrusc1.ent", "d4.chrusc2.ent",
                  "d4.chrusc1.bound", "d4.chrusc2.bound", "d4.chrusc.joint"}) {
              Row r = expr_row(fam, name,
                               name == "d4.ppt" ? "ppt"
                               : name == "d4.chrusc1.ent" ? "chrusc1"
                               : name == "d4.chrusc2.ent" ? "chrusc2"
                               : name == "d4.chrusc1.bound" ? "ppt & chrusc1"
                               : name == "d4.chrusc2.bound" ? "ppt & chrusc2"
                                                    : "ppt & chrusc1 & chrusc2");
              rows.push_back(std::move(r));
            }
            break;
          case Family::HorodeckiLine: {
            Row p = expr_row(fam, "ppt", "ppt");
            p.exact = 0.6;
            Row pm = expr_row(fam, "ppt_and_mub", "ppt & mub");
            pm.exact = 0.2;
            rows.push_back(std::move(p));
            rows.push_back(std::move(pm));
            break;
          }
          case Family::Full3: {
            Row p = expr_row(fam, "ppt", "ppt");
            p.exact = FormulaCatalog::instance().eval("full8.ppt.conj");
            Row pm = expr_row(fam, "ppt_and_mub", "ppt & mub");
            pm.exact = FormulaCatalog::instance().eval("full8.mub_ppt.est");
            rows.push_back(std::move(p));
            rows.push_back(std::move(pm));
            break;
          }
          case Family::Full4: {
            Row p = expr_row(fam, "ppt", "ppt");
            p.exact = FormulaCatalog::instance().eval("full15.ppt.conj");
            rows.push_back(std::move(p));
            break;
          }
        }
      }

      std::vector<SampleTest> tests;
      tests.reserve(rows.size());
      for (const auto& r : rows) tests.push_back(r.test);

      RobertsConfig cfg{family_sample_dim(fam), alpha0, start};
      EstimateOptions eo;
      eo.workers = workers;
      if (progress > 0) {
        eo.progress_stride = progress;
        eo.on_progress = [&tests](const ProgressEntry& p) {
          std::cerr << "progress " << p.done;
          for (std::size_t i = 0; i < p.hits.size(); ++i)
            std::cerr << " " << tests[i].name << "="
                      << static_cast<double>(p.hits[i]) /
                             static_cast<double>(p.done);
          std::cerr << "\n";
        };
      }
      EstimateTable table = estimate(fam, tests, cfg, n, eo);

      // canonical args line: everything that determines file content
      std::ostringstream args;
      args << "estimate --family " << family_s;
      if (table1) args << " --table1";
      for (const auto& s : region_specs) args << " --regions " << s;
      for (const auto& s : witness_specs) args << " --witness " << s;
      if (ccnr) args << " --ccnr";
      args << " --n " << n << " --alpha0 " << fmt17(alpha0) << " --start "
           << start << " --format " << format;
      if (slow) args << " --slow";

      std::string content = format == "json"
                                ? table_json(args.str(), table, rows)
                                : table_csv(args.str(), table, rows);
      write_output(out_path, content);

      if (check) {
        int bad = 0;
        for (std::size_t i = 0; i < table.rows.size(); ++i)
          if (rows[i].exact &&
              std::abs(table.rows[i].estimate - *rows[i].exact) > tol)
            ++bad;
        if (bad > 0) {
          std::cerr << bad << " row(s) deviate beyond tol " << tol << "\n";
          return 2;
        }
      }
      return 0;
    }

    if (*exact_cmd) {
      std::optional<double> param;
      if (has_a) param = exact_a;
      if (has_alpha) param = exact_alpha;
      const auto& entry = FormulaCatalog::instance().at(exact_id);
      double v = FormulaCatalog::instance().eval(exact_id, param, extrapolated);
      std::cout.precision(17);
      std::cout << exact_id;
      if (param) std::cout << "(" << entry.param << "=" << *param << ")";
      std::cout << " = " << v << "\n  " << entry.note << "\n";
      if (entry.provisional)
        std::cout << "  note: value flagged provisional at the source\n";
      return 0;
    }

    if (*list_cmd) {
      std::string content;
      if (list_what == "formulas")
        content = FormulaCatalog::instance().to_json();
      else if (list_what == "regions")
        content = RegionRegistry::standard().to_json();
      else if (list_what == "witnesses")
        content = witness_catalog_json();
      else
        throw std::invalid_argument("list: formulas|regions|witnesses");
      write_output(list_out, content);
      return 0;
    }

    if (*scan_cmd) {
      std::uint64_t n = parse_count(scan_n);
      EstimateOptions eo;
      eo.workers = scan_workers;
      double lo = 0, hi = 1;
      int steps = 50;
      if (!scan_grid.empty()) {
        std::istringstream gs(scan_grid);
        std::string part;
        std::getline(gs, part, ':');
        lo = std::stod(part);
        std::getline(gs, part, ':');
        hi = std::stod(part);
        std::getline(gs, part, ':');
        steps = std::stoi(part);
      }
      std::ostringstream os;
      os.precision(17);

      if (scan_kind == "threshold") {
        // probability of {PPT and q_form < t} over a t-grid; the witness
        // loses all effect above 43/32 and bites fully below -3/16
        if (scan_grid.empty()) {
          lo = -0.25;
          hi = 1.40;
          steps = 60;
        }
        WitnessSpec w = choi_witness(scan_a);
        std::vector<SampleTest> tests;
        std::vector<double> ts;
        for (int i = 0; i <= steps; ++i) {
          double t = lo + (hi - lo) * i / steps;
          ts.push_back(t);
          tests.push_back(SampleTest{
              "t" + std::to_string(i), [w, t](const SamplePoint& sp) {
                return ppt_region(sp.Q) && w.q_form->eval(sp.Q) < t;
              }});
        }
        EstimateTable table = estimate(Family::HL3, tests,
                                       RobertsConfig{3, scan_alpha0, 0}, n, eo);
        os << "# bound-atlas scan threshold a=" << scan_a << " n=" << n
           << " alpha0=" << scan_alpha0 << "\nbound,hits,total,estimate\n";
        for (std::size_t i = 0; i < ts.size(); ++i)
          os << ts[i] << "," << table.rows[i].hits << "," << table.rows[i].total
             << "," << table.rows[i].estimate << "\n";
      } else if (scan_kind == "boundary") {
        // points on the flag-boundary surface Q2 = (Q1 - 4 Q3)/3
        os << "# bound-atlas scan boundary n=" << n
           << " alpha0=" << scan_alpha0 << "\nQ1,Q2,Q3,ppt\n";
        RobertsConfig cfg{2, scan_alpha0, 0};
        double u[2];
        for (std::uint64_t i = 0; i < n; ++i) {
          roberts_point(cfg, i, std::span<double>(u, 2));
          double Q1 = u[0], Q3 = u[1] / 2.0;
          double Q2 = (Q1 - 4 * Q3) / 3.0;
          QPoint Q = make_q3(Q1, Q2, Q3);
          if (!density_region(Q)) continue;
          os << Q1 << "," << Q2 << "," << Q3 << "," << (ppt_region(Q) ? 1 : 0)
             << "\n";
        }
      } else if (scan_kind == "family-curve") {
        if (scan_formula.empty())
          throw std::invalid_argument("family-curve needs --formula");
        const auto& entry = FormulaCatalog::instance().at(scan_formula);
        if (entry.arity != 1)
          throw std::invalid_argument("family-curve needs a unary formula");
        if (scan_grid.empty()) {
          lo = entry.lo;
          hi = entry.hi;
          steps = 50;
        }
        Family fam =
            scan_formula.rfind("d4.", 0) == 0 ? Family::HL4 : Family::HL3;
        std::vector<SampleTest> tests;
        std::vector<double> ps;
        for (int i = 0; i <= steps; ++i) {
          double p = lo + (hi - lo) * i / steps;
          ps.push_back(p);
          std::function<bool(const QPoint&)> flag;
          if (scan_formula == "d3.choi.ent" || scan_formula == "d3.choi.bound") {
            WitnessSpec w = choi_witness(p);
            bool bound = scan_formula == "d3.choi.bound";
            flag = [w, bound](const QPoint& Q) {
              return (!bound || ppt_region(Q)) && w.flags(Q);
            };
          } else if (scan_formula == "d3.jba.ent" ||
                     scan_formula == "d3.jba.bound") {
            bool bound = scan_formula == "d3.jba.bound";
            flag = [p, bound](const QPoint& Q) {
              return (!bound || ppt_region(Q)) && jba3_predicates(p, Q).first;
            };
          } else if (scan_formula == "d4.jba.ent" ||
                     scan_formula == "d4.jba.bound" ||
                     scan_formula == "d4.jba.union" ||
                     scan_formula == "d4.jba.intersection") {
            std::string kind = scan_formula.substr(7);
            flag = [p, kind](const QPoint& Q) {
              auto [w1, w2] = jba4_predicates(p, Q);
              if (kind == "ent") return w1;
              if (kind == "union") return w1 || w2;
              if (kind == "intersection") return w1 && w2;
              return ppt_region(Q) && w1;
            };
          } else if (scan_formula == "d4.wabcd.c1.ent" ||
                     scan_formula == "d4.wabcd.c2.ent") {
            WitnessSpec w = scan_formula == "d4.wabcd.c1.ent"
                                ? wabcd_class1(p)
                                : wabcd_class2(p);
            flag = [w](const QPoint& Q) { return w.flags(Q); };
          } else {
            throw std::invalid_argument("no sampling counterpart for " +
                                        scan_formula);
          }
          tests.push_back(SampleTest{
              "p" + std::to_string(i),
              [flag](const SamplePoint& sp) { return flag(sp.Q); }});
        }
        EstimateTable table =
            estimate(fam, tests,
                     RobertsConfig{family_sample_dim(fam), scan_alpha0, 0}, n,
                     eo);
        os << "# bound-atlas scan family-curve formula=" << scan_formula
           << " n=" << n << " alpha0=" << scan_alpha0
           << "\nparam,exact,estimate,abs_error\n";
        for (std::size_t i = 0; i < ps.size(); ++i) {
          double ex = FormulaCatalog::instance().eval(scan_formula, ps[i], true);
          os << ps[i] << "," << ex << "," << table.rows[i].estimate << ","
             << std::abs(ex - table.rows[i].estimate) << "\n";
        }
      } else {
        throw std::invalid_argument("scan: threshold|boundary|family-curve");
      }
      write_output(scan_out, os.str());
      return 0;
    }

    if (*repro_cmd) {
      ReproOptions opt;
      opt.workers = repro_workers;
      opt.only.insert(criteria.begin(), criteria.end());
      opt.log = [](const std::string& line) { std::cerr << line << "\n"; };
      auto results = run_acceptance(opt);
      std::cout << format_acceptance(results, !quiet);
      int fails = 0;
      for (const auto& r : results)
        if (!r.pass) ++fails;
      return fails == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
