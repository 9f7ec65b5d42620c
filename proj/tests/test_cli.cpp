#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sys/wait.h>

#include "oracles.hpp"
#include "pinchip/app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("pinchip-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& s) const { return (path_ / s).string(); }

private:
  fs::path path_;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run cli(const std::string& args, const std::string& env = "") {
  TempDir io;
  const std::string cmd = env + " " + quote(PINCHIP_CLI_PATH) + " " + args + " >" + quote(io / "out") + " 2>" +
                          quote(io / "err");
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = oracle::read_file(io / "out");
  r.err = oracle::read_file(io / "err");
  return r;
}

std::string cfg(const std::string& name) { return quote(oracle::source_path("configs/" + name)); }

std::string write_doc(const TempDir& dir, const std::string& name, const json& doc) {
  const auto p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return quote(p);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(oracle::read_file(path));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else cell += ch;
    }
    cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  ADD_FAILURE() << "no column " << name;
  return 0;
}

std::map<std::string, std::string> directory_contents(const fs::path& dir) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(dir)) m[e.path().filename().string()] = oracle::read_file(e.path().string());
  return m;
}

json default_doc() { return json::parse(oracle::read_file(oracle::source_path("configs/default.json"))); }

} // namespace

TEST(Cli, VersionAndHelp) {
  const auto v = cli("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(pinchip::version), std::string::npos);
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
}

TEST(Cli, EveryCommandSucceedsOnDefaultConfig) {
  for (const char* c : {"scale", "impedance", "rf", "layout", "budget", "sweep"}) {
    TempDir out;
    const auto r = cli(std::string(c) + " -c " + cfg("default.json") + " -o " + quote(out.path().string()));
    EXPECT_EQ(r.code, 0) << c << "\n" << r.err;
    EXPECT_TRUE(fs::exists(out.path() / (std::string(c) + "-report.json"))) << c;
  }
}

TEST(Cli, ValidationErrorsExitOne) {
  TempDir dir;
  EXPECT_EQ(cli("scale").code, 1);
  EXPECT_EQ(cli("scale -c /nonexistent.json").code, 1);
  EXPECT_EQ(cli("layout -c " + cfg("default.json") + " -f dxf").code, 1);

  auto doc = default_doc();
  doc["layout"]["hole_diameter"] = "300 parsecs";
  const auto r = cli("layout -c " + write_doc(dir, "bad.json", doc));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("layout.hole_diameter"), std::string::npos) << r.err;

  doc = default_doc();
  doc["sweeps"][0]["parameters"][0]["path"] = "coax.no_such_field";
  const auto u = cli("sweep -c " + write_doc(dir, "unknown.json", doc) + " -s hole-diameter");
  EXPECT_EQ(u.code, 1);
  EXPECT_NE(u.err.find("coax.no_such_field"), std::string::npos) << u.err;

  EXPECT_EQ(cli("sweep -c " + cfg("default.json") + " -s nothing").code, 1);
}

TEST(Cli, VerticalPitchViolationExitsTwo) {
  TempDir dir;
  auto doc = default_doc();
  doc["architectures"][1]["wire_pitch"] = "800um";
  const auto r = cli("scale -c " + write_doc(dir, "v.json", doc));
  EXPECT_EQ(r.code, 2) << r.out << r.err;
}

TEST(Cli, ArtifactsAreDeterministicAndAtomic) {
  for (const char* c : {"scale", "impedance", "rf", "layout", "budget", "sweep", "paper-check"}) {
    TempDir a, b;
    const std::string args = std::string(c) + " -c " + cfg("default.json");
    const auto ra = cli(args + " -o " + quote(a.path().string()));
    const auto rb = cli(args + " -o " + quote(b.path().string()));
    EXPECT_EQ(ra.code, rb.code);
    EXPECT_EQ(ra.out, rb.out);
    const auto ca = directory_contents(a.path());
    EXPECT_EQ(ca, directory_contents(b.path())) << c;
    for (const auto& [name, content] : ca) EXPECT_FALSE(name.ends_with(".tmp")) << name;
  }
}

TEST(Cli, ReportCarriesConfigHashAndArtifactHashes) {
  TempDir out;
  ASSERT_EQ(cli("impedance -c " + cfg("default.json") + " -o " + quote(out.path().string())).code, 0);
  const auto rep = json::parse(oracle::read_file(out / "impedance-report.json"));
  EXPECT_EQ(rep.at("tool"), "pinchip");
  EXPECT_EQ(rep.at("exit_code"), 0);
  const auto doc = json::parse(oracle::read_file(oracle::source_path("configs/default.json")));
  EXPECT_EQ(rep.at("config_hash"), "fnv1a64:" + pinchip::app::fnv1a64(doc.dump()));
  for (const auto& a : rep.at("artifacts"))
    EXPECT_EQ(a.at("fnv1a64"), pinchip::app::fnv1a64(oracle::read_file(out / a.at("name").get<std::string>())));
}

TEST(Cli, MaterialsOverride) {
  TempDir dir;
  auto cat = json::parse(oracle::read_file(oracle::source_path("data/materials.json")));
  for (auto& m : cat["materials"])
    if (m["name"] == "STYCAST-1266") m["relative_permittivity"] = 4.0;
  const auto path = dir / "mat.json";
  std::ofstream(path) << cat.dump();

  TempDir o1, o2, o3;
  ASSERT_EQ(cli("impedance -c " + cfg("default.json") + " -o " + quote(o1.path().string())).code, 0);
  ASSERT_EQ(cli("impedance -c " + cfg("default.json") + " -o " + quote(o2.path().string()),
                "PINCHIP_MATERIALS=" + quote(path))
                .code,
            0);
  ASSERT_EQ(cli("impedance -c " + cfg("default.json") + " --materials " + quote(path) + " -o " +
                quote(o3.path().string()),
                "PINCHIP_MATERIALS=/nonexistent.json")
                .code,
            0);
  const auto base = oracle::read_file(o1 / "impedance.csv");
  EXPECT_NE(base, oracle::read_file(o2 / "impedance.csv"));
  EXPECT_EQ(oracle::read_file(o2 / "impedance.csv"), oracle::read_file(o3 / "impedance.csv"));

  EXPECT_EQ(cli("impedance -c " + cfg("default.json"), "PINCHIP_MATERIALS=/nonexistent.json").code, 1);
  std::ofstream(dir / "broken.json") << R"({"materials":[{"name":"Nb","kind":"conductor"}]})";
  EXPECT_EQ(cli("impedance -c " + cfg("default.json") + " --materials " + quote(dir / "broken.json")).code, 1);
}

TEST(Cli, GoldenCheckFailsOnlyOnKnownRows) {
  TempDir out;
  const auto r = cli("paper-check -o " + quote(out.path().string()));
  EXPECT_EQ(r.code, 2);
  const auto rows = read_csv(out / "paper-check.csv");
  ASSERT_GT(rows.size(), 30u);
  std::vector<std::string> failed;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].back() == "FAIL") failed.push_back(rows[i][0]);
  EXPECT_EQ(failed, (std::vector<std::string>{"2a", "7"}));
}

TEST(Cli, GoldenCheckSeedIsReproducible) {
  const auto a = cli("paper-check --seed 9");
  const auto b = cli("paper-check --seed 9");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ChipSideSweepFlipsLimitingFactorOnce) {
  TempDir out;
  ASSERT_EQ(cli("sweep -c " + cfg("default.json") + " -s chip-side -o " + quote(out.path().string())).code, 0);
  const auto rows = read_csv(out / "sweep-chip-side.csv");
  ASSERT_EQ(rows.size(), 22u);
  const auto lf = column(rows[0], "limiting_factor");
  int flips = 0;
  for (std::size_t i = 2; i < rows.size(); ++i) flips += rows[i][lf] != rows[i - 1][lf];
  EXPECT_EQ(flips, 1);
  EXPECT_NE(rows[1][lf], rows.back()[lf]);
}

TEST(Cli, HoleSweepImpedanceDecreasesMonotonically) {
  TempDir out;
  ASSERT_EQ(cli("sweep -c " + cfg("default.json") + " -s hole-diameter -o " + quote(out.path().string())).code, 0);
  const auto rows = read_csv(out / "sweep-hole-diameter.csv");
  ASSERT_EQ(rows.size(), 12u);
  const auto z = column(rows[0], "coax_impedance_ohm");
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][z]), std::stod(rows[i - 1][z]));
  EXPECT_NEAR(std::stod(rows[1][z]), 24.0, 0.5);
  EXPECT_NEAR(std::stod(rows.back()[z]), 14.0, 0.5);
}

TEST(Cli, VerticalWaferScale) {
  const auto r = cli("scale -c " + cfg("vertical-200mm.json"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("160000"), std::string::npos) << r.out;
}

TEST(Cli, ViaHeatLoadIsAFindingNotAFailure) {
  const auto r = cli("budget -c " + cfg("via-heat-load.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, LayoutJsonExport) {
  TempDir out;
  ASSERT_EQ(cli("layout -c " + cfg("default.json") + " -f json --bond-mode conical -o " + quote(out.path().string())).code, 0);
  const auto lay = pinchip::layout::layout_from_json(json::parse(oracle::read_file(out / "layout.json")));
  EXPECT_EQ(lay.pad_centers.size(), 64u);
  EXPECT_NE(oracle::read_file(out / "process.txt").find("conical"), std::string::npos);
}
