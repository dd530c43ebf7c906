#include "wg/study.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace wg;

namespace
{

std::string slurp(const std::string &path)
{
  std::ifstream is(path);
  REQUIRE(is);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace

TEST_CASE("config parsing helpers")
{
  CHECK(parse_family("triangle") == GridFamily::Triangle);
  CHECK(parse_family("pentagon") == GridFamily::Pentagon);
  CHECK(parse_family("sgrid") == GridFamily::SGrid);
  CHECK_THROWS_AS(parse_family("hex"), UsageError);

  CHECK(parse_levels("6..8") == std::pair<int, int>(6, 8));
  CHECK(parse_levels("4") == std::pair<int, int>(4, 4));
  CHECK_THROWS_AS(parse_levels("8..6"), UsageError);
  CHECK_THROWS_AS(parse_levels("a..b"), UsageError);
}

TEST_CASE("k = 0 is a usage error")
{
  StudyConfig cfg;
  cfg.k = 0;
  cfg.out = "/tmp/wg_test_k0.csv";
  CHECK_THROWS_AS(run_study(cfg), UsageError);
}

TEST_CASE("run_study writes deterministic CSV with the specified columns")
{
  StudyConfig cfg;
  cfg.family = GridFamily::Triangle;
  cfg.k = 1;
  cfg.level_min = 1;
  cfg.level_max = 3;
  cfg.out = "/tmp/wg_test_study_a.csv";
  const StudyReport rep = run_study(cfg);
  CHECK_FALSE(rep.failed);
  REQUIRE(rep.rows.size() == 3);

  cfg.out = "/tmp/wg_test_study_b.csv";
  run_study(cfg);

  const std::string a = slurp("/tmp/wg_test_study_a.csv");
  const std::string b = slurp("/tmp/wg_test_study_b.csv");
  CHECK(a == b); // byte-identical across runs

  std::istringstream is(a);
  std::string header;
  std::getline(is, header);
  CHECK(header == "level,h,ndof,err_u_l2,ord_u_l2,err_energy,ord_energy,err_p_l2,ord_p_l2");
  std::string row1;
  std::getline(is, row1);
  CHECK(row1.substr(0, 2) == "1,");
  // scientific notation with 6+ significant digits
  CHECK(row1.find("e-") != std::string::npos);

  std::remove("/tmp/wg_test_study_a.csv");
  std::remove("/tmp/wg_test_study_b.csv");
}

TEST_CASE("dof cap aborts with a FAILED marker row")
{
  StudyConfig cfg;
  cfg.family = GridFamily::Triangle;
  cfg.k = 1;
  cfg.level_min = 1;
  cfg.level_max = 3;
  cfg.dof_cap = 100; // level 2 exceeds this
  cfg.out = "/tmp/wg_test_study_cap.csv";
  const StudyReport rep = run_study(cfg);
  CHECK(rep.failed);
  CHECK(rep.failure.find("level 2") != std::string::npos);
  REQUIRE(rep.rows.size() == 1); // level 1 completed and was flushed
  const std::string csv = slurp(cfg.out);
  CHECK(csv.find("FAILED") != std::string::npos);
  std::remove(cfg.out.c_str());
}

TEST_CASE("plot data slope equals the observed order")
{
  StudyReport rep;
  LevelResult r1, r2;
  r1.h = 0.5;
  r1.err_u_l2 = 1e-2;
  r1.err_energy = 1e-1;
  r1.err_p_l2 = 1e-1;
  r2.h = 0.25;
  r2.err_u_l2 = 2.5e-3;
  r2.err_energy = 5e-2;
  r2.err_p_l2 = 5e-2;
  rep.rows = {r1, r2};
  emit_plotdata(rep, "/tmp/wg_test_plot");

  std::ifstream is("/tmp/wg_test_plot_u.dat");
  REQUIRE(is);
  double x0, y0, x1, y1;
  is >> x0 >> y0 >> x1 >> y1;
  CHECK((y1 - y0) / (x1 - x0) == Catch::Approx(2.0).margin(1e-12));
  for (const char *suffix : {"_u.dat", "_energy.dat", "_p.dat"}) {
    std::remove((std::string("/tmp/wg_test_plot") + suffix).c_str());
  }
}

TEST_CASE("mesh and matrix dumps are written when requested")
{
  StudyConfig cfg;
  cfg.family = GridFamily::Triangle;
  cfg.k = 1;
  cfg.level_min = 1;
  cfg.level_max = 1;
  cfg.out = "/tmp/wg_test_dumps.csv";
  cfg.dump_mesh = "/tmp/wg_test_mesh";
  cfg.dump_matrix = "/tmp/wg_test_mat";
  const StudyReport rep = run_study(cfg);
  CHECK_FALSE(rep.failed);
  const std::string mesh = slurp("/tmp/wg_test_mesh_L1.txt");
  CHECK(mesh.substr(0, 5) == "4 5 2");
  const std::string mat = slurp("/tmp/wg_test_mat_L1.txt");
  CHECK_FALSE(mat.empty());
  std::remove("/tmp/wg_test_dumps.csv");
  std::remove("/tmp/wg_test_mesh_L1.txt");
  std::remove("/tmp/wg_test_mat_L1.txt");
}

TEST_CASE("weak-curl degree override propagates and is flagged")
{
  StudyConfig cfg;
  cfg.family = GridFamily::Triangle;
  cfg.k = 1;
  cfg.r = 5;
  cfg.level_min = 1;
  cfg.level_max = 2;
  cfg.out = "/tmp/wg_test_override.csv";
  const StudyReport rep = run_study(cfg);
  CHECK(rep.r == 5);
  CHECK(rep.r_overridden);
  CHECK_FALSE(rep.failed);
  std::remove(cfg.out.c_str());
}
