#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wshed/wshed.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    std::random_device rd;
    fs::path p = fs::temp_directory_path() / ("wshed_cli_" + std::to_string(rd()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const char* name) { return (fs::path(WSHED_TEST_DATA) / name).string(); }
std::string tmp(const std::string& name) { return (scratch() / name).string(); }

Run cli(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("cd '") + scratch().string() + "' && '" + WSHED_CLI + "' " +
                          args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return {};
}

}  // namespace

TEST_CASE("gen writes the same files twice") {
  Run a = cli("gen --n 100 --grid 64x64 --seed 7 --out a");
  REQUIRE(a.code == 0);
  Run b = cli("gen --n 100 --grid 64x64 --seed 7 --network b.net --raster b.grid");
  REQUIRE(b.code == 0);
  CHECK(slurp(tmp("a.net")) == slurp(tmp("b.net")));
  CHECK(slurp(tmp("a.grid")) == slurp(tmp("b.grid")));
  CHECK(field(a.out, "reaches") == "100");
  CHECK_FALSE(fs::exists(tmp("a.net.tmp")));
}

TEST_CASE("usage errors exit 2") {
  Run zero = cli("gen --n 0 --grid 4x4");
  CHECK(zero.code == 2);
  CHECK(zero.err.find("--n") != std::string::npos);
  Run small = cli("gen --n 5000 --grid 8x8");
  CHECK(small.code == 2);
  CHECK(small.err.find("GridTooSmall") != std::string::npos);
  CHECK(cli("gen --n 5 --grid 8by8").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("build --network " + data("path4.net")).code == 2);
  CHECK(cli("build --network " + data("path4.net") + " --raster " + data("path4.grid") +
              " --b 1 --index x.lrg")
            .code == 2);
  CHECK(cli("bench --network " + data("path4.net") + " --raster " + data("path4.grid") +
              " --format xml")
            .code == 2);
}

TEST_CASE("missing inputs exit 3") {
  CHECK(cli("build --network nope.net --raster nope.grid --index x.lrg").code == 3);
  CHECK(cli("query --index nope.lrg --reach 1").code == 3);
}

TEST_CASE("invalid networks exit 4") {
  Run cyc = cli("build --network " + data("cycle.net") + " --raster " + data("cycle.grid") +
                  " --index c.lrg");
  CHECK(cyc.code == 4);
  CHECK(cyc.err.find("CycleDetected") != std::string::npos);
  Run two = cli("build --network " + data("two_roots.net") + " --raster " + data("cycle.grid") +
                  " --index c.lrg");
  CHECK(two.code == 4);
  CHECK(two.err.find("MultipleRoots") != std::string::npos);
  // Raster references a reach the network does not have.
  Run unknown = cli("build --network " + data("single.net") + " --raster " + data("path4.grid") +
                      " --index c.lrg");
  CHECK(unknown.code == 4);
}

TEST_CASE("path of four") {
  Run build = cli("build --network " + data("path4.net") + " --raster " + data("path4.grid") +
                    " --b 2 --index p4.lrg");
  REQUIRE(build.code == 0);
  CHECK(field(build.out, "layer_count") == "3");
  CHECK(field(build.out, "storage_polygons") == "4");
  CHECK(field(build.out, "height") == "3");

  Run root = cli("query --index p4.lrg --reach 1 --out root.wkt");
  REQUIRE(root.code == 0);
  CHECK(field(root.out, "merged_polygons") == "1");
  const auto cells = wshed::rasterize(wshed::parse_wkt(slurp(tmp("root.wkt"))));
  CHECK(cells.size() == 4);

  Run a = cli("query --index p4.lrg --reach 2");
  REQUIRE(a.code == 0);
  CHECK(field(a.out, "merged_polygons") == "2");
  CHECK(a.out.rfind("POLYGON((1 0, 4 0, 4 1, 1 1, 1 0))\n", 0) == 0);

  Run leaf = cli("query --index p4.lrg --reach 4 --out leaf.wkt");
  REQUIRE(leaf.code == 0);
  const wshed::CellCatchment own(wshed::ReachId{4}, {wshed::Cell{3, 0}});
  CHECK(slurp(tmp("leaf.wkt")) == wshed::to_wkt(wshed::trace_boundary(own)));

  Run missing = cli("query --index p4.lrg --reach 99");
  CHECK(missing.code == 5);
  CHECK(missing.err.find("UnknownReach") != std::string::npos);

  std::ofstream(tmp("broken.lrg")) << "LRG 2 0 1\n1 0 1 1 0\n";
  CHECK(cli("query --index broken.lrg --reach 1").code == 4);
}

TEST_CASE("single reach") {
  Run build = cli("build --network " + data("single.net") + " --raster " + data("single.grid") +
                    " --b 4 --index one.lrg");
  REQUIRE(build.code == 0);
  CHECK(field(build.out, "layer_count") == "1");
  CHECK(field(build.out, "storage_polygons") == "1");

  Run bench = cli("bench --network " + data("single.net") + " --raster " + data("single.grid") +
                    " --out one --format csv");
  REQUIRE(bench.code == 0);
  CHECK(bench.out.find("processed,query_avg_polygons,1.000000") != std::string::npos);
  CHECK(bench.out.find("lrg_sw_b2,query_avg_polygons,1.000000") != std::string::npos);
  CHECK(bench.out.find("lrg_sw_b6,reduction_query_polygons,0.000000") != std::string::npos);
}

TEST_CASE("generated network end to end") {
  REQUIRE(cli("gen --n 400 --grid 30x30 --seed 3 --out g").code == 0);
  Run b1 = cli("build --network g.net --raster g.grid --b 3 --index g1.lrg");
  Run b2 = cli("build --network g.net --raster g.grid --b 3 --index g2.lrg");
  REQUIRE(b1.code == 0);
  REQUIRE(b2.code == 0);
  CHECK(slurp(tmp("g1.lrg")) == slurp(tmp("g2.lrg")));

  std::istringstream saved(slurp(tmp("g1.lrg")));
  std::ostringstream again;
  wshed::save_index(wshed::load_index(saved), again);
  CHECK(again.str() == slurp(tmp("g1.lrg")));

  Run root = cli("query --index g1.lrg --reach 1 --out g_root.wkt");
  REQUIRE(root.code == 0);
  const auto cells = wshed::rasterize(wshed::parse_wkt(slurp(tmp("g_root.wkt"))));
  CHECK(cells.size() == 900);
  CHECK(std::set<wshed::Cell>(cells.begin(), cells.end()).size() == 900);
  Run q2 = cli("query --index g2.lrg --reach 1 --out g_root2.wkt");
  CHECK(slurp(tmp("g_root.wkt")) == slurp(tmp("g_root2.wkt")));

  Run bench = cli("bench --network g.net --raster g.grid --b 2,4,6 --out m1");
  REQUIRE(bench.code == 0);
  CHECK(bench.out.find("(LRG,SW)b=2") != std::string::npos);
  CHECK(bench.out.find("(LRG,SW)b=4") != std::string::npos);
  CHECK(bench.out.find("(LRG,SW)b=6") != std::string::npos);
  REQUIRE(cli("bench --network g.net --raster g.grid --b 2,4,6 --out m2").code == 0);
  CHECK(slurp(tmp("m1.csv")) == slurp(tmp("m2.csv")));
  CHECK(slurp(tmp("m1.txt")) == slurp(tmp("m2.txt")));
  CHECK(slurp(tmp("m1.txt")) == bench.out);
}
