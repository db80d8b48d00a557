// Drives the installed CLI end to end on a generated price file. The binary
// path arrives as argv[1] from CTest.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "core/marketdata.hpp"
#include "core/rng.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::printf("[ok] %s\n", what.c_str());
  } else {
    std::printf("[FAIL] %s\n", what.c_str());
    ++failures;
  }
}

int run(const std::string& command) {
  std::printf("$ %s\n", command.c_str());
  return std::system(command.c_str());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_smoke <path-to-specrisk-binary>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = fs::temp_directory_path() / "specrisk_cli_smoke";
  fs::remove_all(work);
  fs::create_directories(work);

  // 260 trading days, 8 tickers.
  specrisk::Rng rng(9001);
  const auto prices = synthetic::price_walk(rng, 260, 8);
  const fs::path input = work / "prices.csv";
  {
    std::ofstream out(input);
    specrisk::marketdata::write_prices(out, prices, specrisk::marketdata::Layout::Long);
  }
  const std::string in_flag = " --input " + input.string();

  check(run(cli + " --help > " + (work / "help.txt").string()) == 0, "--help exits 0");
  check(read_file(work / "help.txt").find("spectrum") != std::string::npos,
        "--help lists subcommands");

  check(run(cli + " ingest" + in_flag + " --out " + (work / "ingest").string()) == 0,
        "ingest runs");
  check(fs::exists(work / "ingest/panel.csv"), "ingest writes panel.csv");

  check(run(cli + " spectrum" + in_flag + " --out " + (work / "spectrum").string()) == 0,
        "spectrum runs");
  check(fs::exists(work / "spectrum/ks.json"), "spectrum writes ks.json");

  check(run(cli + " clean" + in_flag + " --out " + (work / "clean").string()) == 0,
        "clean runs");
  check(fs::exists(work / "clean/cleaned_correlation.csv"),
        "clean writes the cleaned correlation");

  check(run(cli + " residuals" + in_flag + " --out " + (work / "residuals").string()) == 0,
        "residuals runs");
  check(fs::exists(work / "residuals/fit.csv"), "residuals writes fit.csv");

  check(run(cli + " frontier" + in_flag + " --grid 12 --no-short --out " +
            (work / "frontier").string()) == 0,
        "frontier runs");
  check(fs::exists(work / "frontier/frontier.csv"), "frontier writes frontier.csv");

  const std::string first_date = prices.dates().front().to_string();
  const std::string mid_date = prices.dates()[129].to_string();
  const std::string mid_next = prices.dates()[130].to_string();
  const std::string last_date = prices.dates().back().to_string();
  check(run(cli + " pair" + in_flag + " --grid 10 --prev " + first_date + ":" + mid_date +
            " --target " + mid_next + ":" + last_date + " --out " +
            (work / "pair").string()) == 0,
        "pair runs all four methods");
  check(fs::exists(work / "pair/m_clean_regress/report.json"),
        "pair writes per-method reports");

  check(run(cli + " pair" + in_flag + " --grid 10 --clean --prev " + first_date + ":" +
            mid_date + " --target " + mid_next + ":" + last_date + " --out " +
            (work / "pair_one").string()) == 0,
        "pair honors --clean narrowing");
  check(fs::exists(work / "pair_one/m_clean/report.json") &&
            !fs::exists(work / "pair_one/m_raw"),
        "narrowed pair runs exactly one method");

  check(run(cli + " rolling" + in_flag + " --window 60 --step 30 --grid 8 --method raw" +
            " --out " + (work / "rolling").string()) == 0,
        "rolling runs");
  check(fs::exists(work / "rolling/reports.csv"), "rolling writes reports.csv");

  check(run(cli + " simulate" + in_flag + " --sims 25 --seed 3 --out " +
            (work / "simulate").string()) == 0,
        "simulate runs");
  check(fs::exists(work / "simulate/eigenvalue_samples.csv"),
        "simulate writes the eigenvalue sample");

  // determinism: the same command twice gives byte-identical artifacts
  check(run(cli + " simulate" + in_flag + " --sims 25 --seed 3 --out " +
            (work / "simulate2").string()) == 0,
        "simulate rerun");
  check(read_file(work / "simulate/eigenvalue_samples.csv") ==
            read_file(work / "simulate2/eigenvalue_samples.csv"),
        "simulate artifacts are byte-identical across runs");

  // config file: flags mirror keys, command line wins
  const fs::path config = work / "specrisk.conf";
  {
    std::ofstream out(config);
    out << "input=" << input.string() << "\n";
    out << "grid=9\n";
    out << "out=" << (work / "config_run").string() << "\n";
  }
  check(run(cli + " frontier --config " + config.string()) == 0,
        "frontier runs from a config file");
  check(read_file(work / "config_run/frontier_meta.json").find("\"grid_points\": 9") !=
            std::string::npos,
        "config file grid size is honored");
  check(run(cli + " frontier --config " + config.string() + " --grid 7 --out " +
            (work / "config_override").string()) == 0,
        "flags override the config file");
  check(read_file(work / "config_override/frontier_meta.json").find("\"grid_points\": 7") !=
            std::string::npos,
        "command-line grid size wins");

  // failure paths: bad input file and missing subcommand
  check(run(cli + " spectrum --input /no/such/file.csv --out " +
            (work / "bad").string() + " 2> " + (work / "err.txt").string()) != 0,
        "missing input fails loudly");
  check(read_file(work / "err.txt").find("error:") != std::string::npos,
        "stderr carries the error message");
  check(run(cli + " > /dev/null 2>&1") != 0, "a subcommand is required");

  if (failures == 0) {
    std::printf("cli smoke: all checks passed\n");
    return 0;
  }
  std::printf("cli smoke: %d check(s) failed\n", failures);
  return 1;
}
