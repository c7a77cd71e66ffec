#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "falqon/experiment.hpp"
#include "test_util.hpp"

using namespace falqon;
using namespace falqon::testutil;

namespace {

SweepGrid tiny_grid() {
  SweepGrid grid;
  grid.donor_families = {GraphFamily::ThreeRegular, GraphFamily::ErdosRenyi};
  grid.donor_sizes = {8};
  grid.donor_ps = {0.5};
  grid.recipient_families = {GraphFamily::ErdosRenyi};
  grid.recipient_ps = {0.5, 1.0};
  grid.recipients_count = 2;
  grid.donor_seeds = {101};
  grid.recipient_seed_base = 700;
  grid.cfg.layers = 8;
  return grid;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string kFullConfig =
    "# paper grid\n"
    "donor_families = 3reg, er\n"
    "donor_sizes = 8, 10, 12\n"
    "donor_ps = 0.2, 0.3, 0.4, 0.5\n"
    "recipient_families = er, 3reg\n"
    "recipient_ps = 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0\n"
    "recipients_count = 10\n"
    "donor_seeds = 101, 202, 303\n"
    "recipient_seed_base = 50000\n"
    "dt = 0.03\n"
    "layers = 300\n"
    "beta_init = 0\n";

}  // namespace

TEST_CASE("sweep config parses every field") {
  std::istringstream in(kFullConfig);
  const SweepGrid grid = parse_sweep_config(in);
  CHECK(grid.donor_families ==
        std::vector<GraphFamily>{GraphFamily::ThreeRegular, GraphFamily::ErdosRenyi});
  CHECK(grid.donor_sizes == std::vector<int>{8, 10, 12});
  CHECK(grid.donor_ps == std::vector<double>{0.2, 0.3, 0.4, 0.5});
  CHECK(grid.recipient_ps.size() == 9);
  CHECK(grid.recipients_count == 10);
  CHECK(grid.donor_seeds == std::vector<std::uint64_t>{101, 202, 303});
  CHECK(grid.recipient_seed_base == 50000);
  CHECK(grid.cfg.dt == 0.03);
  CHECK(grid.cfg.layers == 300);
  CHECK(grid.cfg.beta_init == 0.0);
}

TEST_CASE("sweep config rejects unknown and malformed input") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(parse_sweep_config(in));
  };
  reject(kFullConfig + "mystery_key = 1\n");
  reject(kFullConfig + "dt = 0.05\n");  // duplicate key
  reject("donor_families = er\n");      // missing required fields
  reject(kFullConfig + "just some text\n");
  std::string no_ps = kFullConfig;
  no_ps.replace(no_ps.find("donor_ps = 0.2, 0.3, 0.4, 0.5\n"),
                std::string("donor_ps = 0.2, 0.3, 0.4, 0.5\n").size(), "");
  reject(no_ps);  // ER donors without donor_ps
}

TEST_CASE("grid validation") {
  SweepGrid grid = tiny_grid();
  grid.donor_sizes = {9};
  CHECK_THROWS_AS(validate_grid(grid), std::invalid_argument);
  grid = tiny_grid();
  grid.recipient_ps = {1.5};
  CHECK_THROWS_AS(validate_grid(grid), std::invalid_argument);
  grid = tiny_grid();
  grid.donor_seeds.clear();
  CHECK_THROWS_AS(validate_grid(grid), std::invalid_argument);
}

TEST_CASE("cell enumeration: single-cell grid") {
  SweepGrid grid = tiny_grid();
  grid.donor_families = {GraphFamily::ThreeRegular};
  grid.recipient_ps = {1.0};
  const std::vector<Cell> cells = enumerate_cells(grid);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].id == "d-3reg-n8-s101__r-er-n14-p1.0");
  CHECK(cells[0].spec.recipient.n == 14);
}

TEST_CASE("cell enumeration matches an independent count of the paper grid") {
  std::istringstream in(kFullConfig);
  const SweepGrid grid = parse_sweep_config(in);
  const std::vector<Cell> cells = enumerate_cells(grid);

  // Independent enumeration, structured differently on purpose.
  std::size_t donors = 0;
  for (const std::string& family : {"3reg", "er"}) {
    for (int n : {8, 10, 12}) {
      (void)n;
      if (family == "er") {
        donors += 4 * 3;  // ps x seeds
      } else {
        donors += 3;  // seeds
      }
    }
  }
  const std::size_t recipients = 9 + 1;  // ER density sweep + one 3reg spec
  CHECK(cells.size() == donors * recipients);
  CHECK(cells.size() == 450);

  std::set<std::string> ids;
  for (const Cell& cell : cells) ids.insert(cell.id);
  CHECK(ids.size() == cells.size());
}

TEST_CASE("cells sharing a recipient spec share recipient seeds") {
  const std::vector<Cell> cells = enumerate_cells(tiny_grid());
  REQUIRE(cells.size() == 4);
  std::map<double, std::set<std::uint64_t>> bases;
  for (const Cell& cell : cells) {
    bases[cell.spec.recipient.p].insert(cell.spec.recipient_seed_base);
  }
  for (const auto& [p, seeds] : bases) {
    CHECK(seeds.size() == 1);  // same recipient spec -> same seed base
  }
  CHECK(bases.at(0.5) != bases.at(1.0));
}

TEST_CASE("run_sweep writes cells, manifest, and is idempotent") {
  const TempDir dir("sweep");
  const SweepGrid grid = tiny_grid();

  const RunManifest first = run_sweep(grid, dir.path(), 2);
  REQUIRE(first.cells.size() == 4);
  for (const CellStatus& cell : first.cells) {
    CHECK(cell.status == "done");
    CHECK(std::filesystem::exists(dir.path() / cell.dir / "result.json"));
    CHECK(std::filesystem::exists(dir.path() / cell.dir / "donor_trace.csv"));
    CHECK(std::filesystem::exists(dir.path() / cell.dir / "recipient_0.csv"));
    CHECK(std::filesystem::exists(dir.path() / cell.dir / "recipient_1.csv"));
  }
  CHECK(std::filesystem::exists(dir.path() / "manifest.json"));
  CHECK(first.rng_name == "mt19937_64");

  // No stray temp directories left behind.
  for (const auto& entry : std::filesystem::directory_iterator(dir.path() / "cells")) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }

  const RunManifest second = run_sweep(grid, dir.path(), 2);
  for (const CellStatus& cell : second.cells) {
    CHECK(cell.status == "skipped");
  }

  const RunManifest forced = run_sweep(grid, dir.path(), 1, /*force=*/true);
  for (const CellStatus& cell : forced.cells) {
    CHECK(cell.status == "done");
  }
}

TEST_CASE("sweep results are identical across worker counts") {
  const TempDir dir_a("sweep_w1");
  const TempDir dir_b("sweep_w2");
  const SweepGrid grid = tiny_grid();
  run_sweep(grid, dir_a.path(), 1);
  run_sweep(grid, dir_b.path(), 2);

  for (const Cell& cell : enumerate_cells(grid)) {
    const auto rel = std::filesystem::path("cells") / cell.id / "result.json";
    CHECK(read_file(dir_a.path() / rel) == read_file(dir_b.path() / rel));
  }
}

TEST_CASE("a stale cell with a different spec is re-run") {
  const TempDir dir("sweep_stale");
  SweepGrid grid = tiny_grid();
  run_sweep(grid, dir.path(), 1);

  grid.cfg.layers = 9;  // same cell ids, different config
  const RunManifest manifest = run_sweep(grid, dir.path(), 1);
  for (const CellStatus& cell : manifest.cells) {
    CHECK(cell.status == "done");
  }
}

TEST_CASE("manifest JSON round-trips") {
  const TempDir dir("manifest");
  const RunManifest manifest = run_sweep(tiny_grid(), dir.path(), 1);
  const RunManifest back = manifest_from_json(manifest_json(manifest));
  CHECK(back.cells.size() == manifest.cells.size());
  CHECK(back.rng_name == manifest.rng_name);
  CHECK(back.version == manifest.version);
  CHECK(grid_json(back.grid) == grid_json(manifest.grid));
  for (std::size_t i = 0; i < back.cells.size(); ++i) {
    CHECK(back.cells[i].id == manifest.cells[i].id);
    CHECK(back.cells[i].status == manifest.cells[i].status);
  }
}

TEST_CASE("summarize_findings reports missing cells") {
  const TempDir dir("findings_missing");
  const SweepGrid grid = tiny_grid();
  run_sweep(grid, dir.path(), 1);
  const std::string victim = enumerate_cells(grid)[2].id;
  std::filesystem::remove(dir.path() / "cells" / victim / "result.json");
  try {
    summarize_findings(dir.path());
    FAIL("expected a missing-cell error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(victim) != std::string::npos);
  }
}

TEST_CASE("summarize_findings builds the three tables") {
  const TempDir dir("findings");
  SweepGrid grid = tiny_grid();
  grid.recipient_ps = {0.2, 0.3, 0.4, 0.5, 1.0};
  grid.donor_families = {GraphFamily::ThreeRegular, GraphFamily::ErdosRenyi};
  grid.donor_sizes = {8};
  run_sweep(grid, dir.path(), 2);

  const Findings findings = summarize_findings(dir.path());

  // Dense: only p = 1.0 present, for both donor groups.
  REQUIRE(findings.dense.size() == 2);
  for (const DenseRecipientRow& row : findings.dense) {
    CHECK(row.recipient_p == 1.0);
    CHECK(row.target == 0.98);
    CHECK(row.final_mean > 0.0);
  }

  // Sparse: 3reg donor at p in {0.2, 0.3, 0.4}; the narrowing flag needs all
  // three densities.
  REQUIRE(findings.sparse.size() == 3);
  for (const SparseCrossFamilyRow& row : findings.sparse) {
    CHECK(row.donor_n == 8);
    CHECK(near(row.gap, row.donor_reference - row.transferred_mean, 1e-15));
  }
  REQUIRE(findings.sparse_gap_narrows.size() == 1);

  // Resilience at recipient p = 0.5: one row per donor family (size 8 only).
  REQUIRE(findings.resilience.size() == 2);
  CHECK(findings.resilience_overlap.empty());  // needs at least two sizes

  const std::string text = findings_text(findings);
  CHECK(text.find("Dense ER recipients") != std::string::npos);
  CHECK(text.find("Sparse ER recipients") != std::string::npos);
  CHECK(text.find("Donor-size resilience") != std::string::npos);

  const nlohmann::json j = findings_json(findings);
  CHECK(j.at("dense_recipients").size() == 2);
  CHECK(j.at("sparse_cross_family").at("rows").size() == 3);
  CHECK(j.at("donor_size_resilience").at("rows").size() == 2);
}

TEST_CASE("summary numbers are recomputable from the per-cell files") {
  const TempDir dir("findings_recompute");
  SweepGrid grid = tiny_grid();
  grid.recipient_ps = {1.0};
  run_sweep(grid, dir.path(), 1);
  const Findings findings = summarize_findings(dir.path());

  // Pool recipient finals straight from the result files.
  std::map<std::string, std::vector<double>> by_donor;
  for (const Cell& cell : enumerate_cells(grid)) {
    std::ifstream in(dir.path() / "cells" / cell.id / "result.json");
    const nlohmann::json j = nlohmann::json::parse(in);
    const std::string donor = j.at("spec").at("donor").at("family").get<std::string>();
    for (const double r : j.at("recipient_final_ratios")) {
      by_donor[donor].push_back(r);
    }
  }
  for (const DenseRecipientRow& row : findings.dense) {
    const auto& xs = by_donor.at(family_name(row.donor_family));
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    CHECK(near(row.final_mean, mean, 1e-12));
  }
}
