// Refinement-study driver: a StudyConfig describes a grid family, degrees,
// and a level range; run_study solves each level and reports errors and
// observed orders as CSV and as an aligned text table.

#ifndef WG_STUDY_HPP
#define WG_STUDY_HPP

#include "wg/errors.hpp"
#include "wg/system.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wg
{

struct StudyConfig {
  GridFamily family = GridFamily::Triangle;
  int k = 1;
  std::optional<int> r;       ///< weak-curl degree override
  int level_min = 1;
  int level_max = 1;
  std::string case_name = "e1";
  double nu = 1.0;
  double tol = 1e-9;          ///< solver relative-residual tolerance
  std::string out = "study.csv";
  std::string format = "table"; ///< stdout rendering: "csv" or "table"
  std::int64_t dof_cap = 2000000;
  std::string dump_mesh;      ///< if set, per-level mesh dump path prefix
  std::string dump_matrix;    ///< if set, per-level reduced-matrix dump prefix
  std::string plot;           ///< if set, log-log plot data path prefix
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline GridFamily parse_family(const std::string &s)
{
  if (s == "triangle") return GridFamily::Triangle;
  if (s == "pentagon") return GridFamily::Pentagon;
  if (s == "sgrid") return GridFamily::SGrid;
  throw UsageError("family: expected triangle, pentagon, or sgrid, got '" + s + "'");
}

/// Parse an inclusive level range written as "A..B" (or a single level "A").
inline std::pair<int, int> parse_levels(const std::string &s)
{
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int a = std::stoi(s);
      return {a, a};
    }
    const int a = std::stoi(s.substr(0, dots));
    const int b = std::stoi(s.substr(dots + 2));
    if (a < 1 || b < a) throw UsageError("levels: need 1 <= A <= B in 'A..B', got '" + s + "'");
    return {a, b};
  } catch (const std::invalid_argument &) {
    throw UsageError("levels: expected 'A..B' with integers, got '" + s + "'");
  }
}

struct LevelResult {
  int level = 0;
  double h = 0.0;
  std::int64_t ndof = 0;
  double err_u_l2 = 0.0;
  double err_energy = 0.0;
  double err_p_l2 = 0.0;
  double ord_u_l2 = std::numeric_limits<double>::quiet_NaN();
  double ord_energy = std::numeric_limits<double>::quiet_NaN();
  double ord_p_l2 = std::numeric_limits<double>::quiet_NaN();
};

struct StudyReport {
  StudyConfig config;
  int r = 0;
  bool r_overridden = false;
  std::vector<LevelResult> rows;
  bool failed = false;
  std::string failure; ///< "<stage> at level <L>: <what>"
};

namespace detail
{

inline std::string sci(double v)
{
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

inline std::string ord(double v)
{
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

} // namespace detail

inline void write_csv(const StudyReport &rep, std::ostream &os)
{
  os << "level,h,ndof,err_u_l2,ord_u_l2,err_energy,ord_energy,err_p_l2,ord_p_l2\n";
  for (const LevelResult &r : rep.rows) {
    os << r.level << ',' << detail::sci(r.h) << ',' << r.ndof << ',' << detail::sci(r.err_u_l2)
       << ',' << detail::ord(r.ord_u_l2) << ',' << detail::sci(r.err_energy) << ','
       << detail::ord(r.ord_energy) << ',' << detail::sci(r.err_p_l2) << ','
       << detail::ord(r.ord_p_l2) << '\n';
  }
  if (rep.failed) os << "FAILED,,,,,,,,\n";
}

/// Aligned table in the usual paper column order:
/// grid | ||u-u0||_0, order | |||u-u_h|||, order | ||p-p0||_0, order.
inline void write_table(const StudyReport &rep, std::ostream &os)
{
  os << "family=" << to_string(rep.config.family) << " k=" << rep.config.k << " r=" << rep.r
     << (rep.r_overridden ? " (override)" : "") << " nu=" << rep.config.nu
     << " case=" << rep.config.case_name << "\n";
  os << std::left << std::setw(6) << "Grid" << std::setw(16) << "||u-u0||_0" << std::setw(8)
     << "order" << std::setw(16) << "|||u-u_h|||" << std::setw(8) << "order" << std::setw(16)
     << "||p-p0||_0" << std::setw(8) << "order" << "\n";
  for (const LevelResult &r : rep.rows) {
    os << std::left << std::setw(6) << r.level << std::setw(16) << detail::sci(r.err_u_l2)
       << std::setw(8) << detail::ord(r.ord_u_l2) << std::setw(16) << detail::sci(r.err_energy)
       << std::setw(8) << detail::ord(r.ord_energy) << std::setw(16) << detail::sci(r.err_p_l2)
       << std::setw(8) << detail::ord(r.ord_p_l2) << "\n";
  }
  if (rep.failed) os << "FAILED: " << rep.failure << "\n";
}

/// Two-column log10(h) vs log10(error) files, one per error column, written
/// to <path>_{u,energy,p}.dat.
inline void emit_plotdata(const StudyReport &rep, const std::string &path)
{
  const struct {
    const char *suffix;
    double LevelResult::*field;
  } cols[] = {{"_u.dat", &LevelResult::err_u_l2},
              {"_energy.dat", &LevelResult::err_energy},
              {"_p.dat", &LevelResult::err_p_l2}};
  for (const auto &c : cols) {
    std::ofstream os(path + c.suffix);
    if (!os) throw std::runtime_error("cannot write plot data to " + path + c.suffix);
    os.precision(17);
    for (const LevelResult &r : rep.rows) {
      os << std::log10(r.h) << ' ' << std::log10(r.*(c.field)) << '\n';
    }
  }
}

inline std::int64_t estimate_dofs(const PolyMesh &mesh, int k)
{
  return build_dof_map(mesh, k).n_total();
}

/// Run the refinement study. The CSV is (re)written to config.out after every
/// level, so a failed run leaves the completed rows plus a FAILED marker.
inline StudyReport run_study(const StudyConfig &cfg)
{
  if (cfg.k < 1) throw UsageError("k: must be >= 1");
  if (cfg.level_min < 1 || cfg.level_max < cfg.level_min)
    throw UsageError("levels: need 1 <= min <= max");

  StudyReport rep;
  rep.config = cfg;
  const WeakCurlDegree wr = weak_curl_degree(cfg.family, cfg.k, cfg.r);
  rep.r = wr.r;
  rep.r_overridden = wr.overridden;
  const ManufacturedCase problem = make_case(cfg.case_name, cfg.nu);

  auto flush_csv = [&rep]() {
    std::ofstream os(rep.config.out);
    if (!os) throw std::runtime_error("cannot write CSV to " + rep.config.out);
    write_csv(rep, os);
  };

  for (int level = cfg.level_min; level <= cfg.level_max; level++) {
    std::string stage = "build_grid";
    try {
      PolyMesh mesh = build_grid(cfg.family, level);
      if (!cfg.dump_mesh.empty()) {
        std::ofstream os(cfg.dump_mesh + "_L" + std::to_string(level) + ".txt");
        dump_mesh(mesh, os);
      }
      const std::int64_t ndof = estimate_dofs(mesh, cfg.k);
      if (ndof > cfg.dof_cap) {
        throw std::runtime_error("estimated " + std::to_string(ndof) +
                                 " dofs exceeds cap " + std::to_string(cfg.dof_cap));
      }

      stage = "assemble";
      const Discretization disc = discretize(std::move(mesh), cfg.k, rep.r, cfg.nu);
      ReducedSystem red;
      {
        // scope the unreduced blocks so their memory is back before the solve
        const SaddleSystem sys = assemble(disc, &problem);
        stage = "apply_boundary";
        red = apply_boundary(sys, disc, problem);
      }
      if (!cfg.dump_matrix.empty()) {
        std::ofstream os(cfg.dump_matrix + "_L" + std::to_string(level) + ".txt");
        dump_matrix(red.K, os);
      }

      stage = "solve";
      const SolveResult sol = solve(red, cfg.tol);

      stage = "errors";
      LevelResult row;
      row.level = level;
      row.ndof = ndof;
      for (int e = 0; e < disc.mesh.n_elements(); e++) {
        row.h = std::max(row.h, element_geometry(disc.mesh, e).h_T);
      }
      row.err_u_l2 = error_l2_u(disc, sol.x, problem);
      row.err_energy = error_energy(disc, sol.x, problem);
      row.err_p_l2 = error_l2_p(disc, sol.x, problem);
      if (!rep.rows.empty()) {
        const LevelResult &prev = rep.rows.back();
        auto order = [](double ep, double ec) {
          return (ep > 0 && ec > 0) ? std::log2(ep / ec)
                                    : std::numeric_limits<double>::quiet_NaN();
        };
        row.ord_u_l2 = order(prev.err_u_l2, row.err_u_l2);
        row.ord_energy = order(prev.err_energy, row.err_energy);
        row.ord_p_l2 = order(prev.err_p_l2, row.err_p_l2);
      }
      rep.rows.push_back(row);
      flush_csv();
    } catch (const std::exception &ex) {
      rep.failed = true;
      rep.failure = stage + " at level " + std::to_string(level) + ": " + ex.what();
      flush_csv();
      return rep;
    }
  }
  if (!cfg.plot.empty() && rep.rows.size() >= 2) emit_plotdata(rep, cfg.plot);
  return rep;
}

} // namespace wg

#endif
