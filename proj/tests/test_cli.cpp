#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flatproj/cli.hpp"
#include "flatproj/errors.hpp"
#include "support.hpp"

using namespace flatproj;
using namespace flatproj::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "flatproj_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove_all(path);
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig config(std::string command, std::map<std::string, std::string> params = {}) {
  RunConfig c;
  c.command = std::move(command);
  c.params = std::move(params);
  return c;
}

double summary(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.summary) {
    if (k == key) return v;
  }
  FAIL("missing summary key " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto m = parse_config_text(
      "# comment\n[scenario]\ncommand = boundary\nflatten=1e-4 ; trailing\n  eps2-imag = 0.5\n\nPOL = TM\r\n");
  CHECK(m.at("command") == "boundary");
  CHECK(m.at("flatten") == "1e-4");
  CHECK(m.at("eps2_imag") == "0.5");
  CHECK(m.at("pol") == "TM");
  CHECK_THROWS_AS(parse_config_text("just words\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("= 3\n"), DomainError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/flatproj.ini"), DomainError);
}

TEST_CASE("every command has a spec and defaults resolve") {
  for (const auto& spec : command_specs()) {
    const auto resolved = resolve_params(config(spec.name));
    CHECK(resolved.size() == spec.params.size());
  }
  CHECK_THROWS_AS(resolve_params(config("nonsense")), DomainError);
  CHECK_THROWS_AS(resolve_params(config("kk", {{"bogus", "1"}})), DomainError);
  CHECK(resolve_params(config("boundary", {{"eps2-imag", "0.1"}})).at("eps2_imag") == "0.1");
}

TEST_CASE("projector command") {
  const Table t = compute(config("projector", {{"a", "0.5"}, {"b", "0.5"}, {"range", "-5:5:0.01"}}));
  CHECK(t.columns == std::vector<std::string>{"z", "theta", "zeta", "kappa", "partition_residual"});
  CHECK(t.rows.size() == 1001u);
  CHECK(summary(t, "max_partition_residual") < 1e-13);
  const auto& mid = t.rows[500];
  CHECK(mid[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mid[1] == doctest::Approx(0.25));
  CHECK(mid[2] == doctest::Approx(0.5));
}

TEST_CASE("kk command reconstructs the oscillator") {
  const Table t = compute(config("kk", {{"w0", "2"}, {"gamma", "0.3"}}));
  CHECK(t.columns == std::vector<std::string>{"omega", "eps1_recon", "eps1_exact", "abs_err"});
  CHECK(summary(t, "max_rel_err") < 1e-2);
  const Table im = compute(config("kk", {{"w0", "2"}, {"gamma", "0.3"}, {"direction", "imag"}}));
  CHECK(summary(im, "rel_l2_err") < 2e-2);
  const Table drude = compute(config("kk", {{"model", "drude"}, {"gamma", "0.5"}, {"range", "0.5:3:0.5"}}));
  CHECK(drude.rows.size() == 6u);
}

TEST_CASE("hilbert command") {
  const Table t = compute(config("hilbert", {{"range", "-3:3:0.5"}}));
  CHECK(summary(t, "max_oracle_err") < 1e-3);
}

TEST_CASE("boundary command") {
  const Table t = compute(config("boundary", {{"flatten", "1e-4"}}));
  CHECK(t.rows.size() == 1u);
  CHECK(std::abs(t.rows[0][3] + 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(summary(t, "energy_residual")) < 1e-10);
}

TEST_CASE("window and evolve commands") {
  CHECK(summary(compute(config("window", {{"shift", "0.1"}, {"a", "0.02"}})), "l1_mass") ==
        doctest::Approx(0.2).epsilon(5e-3));
  const Table series = compute(config("evolve"));
  CHECK(std::abs(summary(series, "slope_order1") - 2.0) < 0.2);
  CHECK(std::abs(summary(series, "slope_order2") - 3.0) < 0.3);
  CHECK(summary(compute(config("evolve", {{"kind", "duhamel"}, {"half_width", "20"}})), "rel_l2_err") < 1e-3);
  CHECK(summary(compute(config("evolve", {{"kind", "shannon"}})), "max_abs_err") < 1e-3);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(compute(config("projector", {{"a", "-1"}})), DomainError);
  CHECK_THROWS_AS(compute(config("projector", {{"a", "abc"}})), DomainError);
  CHECK_THROWS_AS(compute(config("projector", {{"range", "1:2"}})), DomainError);
  CHECK_THROWS_AS(compute(config("projector", {{"family", "cauchy"}})), DomainError);
  CHECK_THROWS_AS(compute(config("kk", {{"range", "0.1:100:1"}})), DomainError);
  CHECK_THROWS_AS(compute(config("boundary", {{"slices", "8"}})), DomainError);
  CHECK_THROWS_AS(compute(config("boundary", {{"flatten", "0"}})), DomainError);
  CHECK_THROWS_AS(compute(config("boundary", {{"eps2_imag", "-1"}})), DomainError);
  CHECK_THROWS_AS(compute(config("evolve", {{"taus", "0.02,0.9"}})), DomainError);
  CHECK_THROWS_AS(compute(config("evolve", {{"kind", "duhamel"}, {"step", "0.03"}})), DomainError);
}

TEST_CASE("csv rendering") {
  Table t;
  t.columns = {"x", "y"};
  t.rows = {{0.1, std::nan("")}, {1.0 / 3.0, -2.0}};
  t.summary = {{"worst", 1e-20}};
  const std::string csv = render_csv("projector", {{"a", "1"}, {"b", "2"}}, t);
  CHECK(csv ==
        "# flatproj projector a=1 b=2\n# worst=9.9999999999999995e-21\nx,y\n"
        "0.10000000000000001,nan\n0.33333333333333331,-2\n");
  const auto j = nlohmann::json::parse(render_json("projector", {{"a", "1"}}, t));
  CHECK(j["columns"][1] == "y");
  CHECK(j["rows"][0][1].is_null());
  CHECK(j["rows"][1][0].get<double>() == 1.0 / 3.0);
  CHECK(j["provenance"]["params"]["a"] == "1");
}

TEST_CASE("run writes deterministic files and never partial output") {
  std::ostringstream out, diag;
  auto c = config("projector", {{"range", "-1:1:0.1"}});
  const auto first = scratch("first.csv");
  const auto second = scratch("second.csv");
  c.output_path = first.string();
  CHECK(run(c, out, diag) == 0);
  c.output_path = second.string();
  CHECK(run(c, out, diag) == 0);
  CHECK(out.str().empty());
  CHECK(slurp(first) == slurp(second));
  CHECK(slurp(first).find('\r') == std::string::npos);

  const auto bad = scratch("bad.csv");
  c.params["a"] = "-2";
  c.output_path = bad.string();
  CHECK(run(c, out, diag) == 2);
  CHECK_FALSE(std::filesystem::exists(bad));
  CHECK(diag.str().find("invalid input") != std::string::npos);

  c = config("boundary", {{"flatten", "1"}, {"slices", "16"}, {"tolerance", "1e-15"}});
  const auto diverged = scratch("diverged.json");
  c.output_path = diverged.string();
  c.format = OutputFormat::JSON;
  CHECK(run(c, out, diag) == 3);
  CHECK_FALSE(std::filesystem::exists(diverged));
}

TEST_CASE("run to stdout and output directory override") {
  std::ostringstream out, diag;
  auto c = config("hilbert", {{"range", "0:1:0.5"}});
  c.format = OutputFormat::JSON;
  CHECK(run(c, out, diag) == 0);
  CHECK(nlohmann::json::parse(out.str())["rows"].size() == 3u);

  const auto dir = scratch("override_dir");
  std::filesystem::create_directories(dir);
  ::setenv("FLATPROJ_OUTPUT_DIR", dir.c_str(), 1);
  c.output_path = "relative.json";
  CHECK(run(c, out, diag) == 0);
  ::unsetenv("FLATPROJ_OUTPUT_DIR");
  CHECK(std::filesystem::exists(dir / "relative.json"));
}
