// Command-line driver: builds the root system, loads a generator table
// variant, runs the relation suite, and writes a deterministic report.
//
// Exit codes: 0 all relations pass, 1 at least one failure, 2 bad
// configuration or parse error.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "toroidal/expr_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact relation checker for the level -1 free-field construction"};

  int m = 2, n = 1;
  int modes = 2, energy_cap = 3, charge_cap = 4, word_depth = 2;
  std::string variant = "corrected";
  std::string relations_arg = "1,2,3,4,5";
  std::string format = "text";
  std::string out_path;

  app.add_option("-m", m, "number of even-block nodes (requires m > 1)");
  app.add_option("-n", n, "number of odd-block nodes (requires n >= 1)");
  app.add_option("--variant", variant,
                 "generator table: as-printed | corrected | file=PATH");
  app.add_option("--modes", modes, "check modes p,q in [-B,B]");
  app.add_option("--energy-cap", energy_cap, "test-state oscillator budget");
  app.add_option("--charge-cap", charge_cap, "squared norm bound on exponents");
  app.add_option("--word-depth", word_depth, "generator-word depth for states");
  app.add_option("--relations", relations_arg, "comma list of relation families");
  app.add_option("--format", format, "report format: text | json");
  app.add_option("--out", out_path, "write the report to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    return 2;
  }

  using namespace toroidal;
  try {
    SuiteConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.mode_bound = modes;
    cfg.energy_cap = energy_cap;
    cfg.charge_cap = charge_cap;
    cfg.word_depth = word_depth;
    cfg.relations.clear();
    {
      std::stringstream ss(relations_arg);
      std::string piece;
      while (std::getline(ss, piece, ',')) {
        if (piece.empty()) continue;
        int r = std::stoi(piece);
        if (r < 1 || r > 5) throw config_error("relation id out of range");
        cfg.relations.insert(r);
      }
      if (cfg.relations.empty()) throw config_error("empty relation filter");
    }
    if (format != "text" && format != "json")
      throw config_error("unknown format: " + format);

    RootSystemData sys;
    GeneratorTable table;
    if (variant == "corrected" || variant == "as-printed") {
      sys = build_system(m, n);
      table = generator_table(
          sys, variant == "corrected" ? Variant::corrected : Variant::as_printed);
    } else if (variant.rfind("file=", 0) == 0) {
      std::ifstream in(variant.substr(5));
      if (!in) throw config_error("cannot open table file: " + variant.substr(5));
      std::stringstream buf;
      buf << in.rdbuf();
      table = parse_table(buf.str(), sys);
      if (table.m != m || table.n != n)
        throw config_error("table file is for D(" + std::to_string(table.m) + "," +
                           std::to_string(table.n) + "), not the requested size");
    } else {
      throw config_error("unknown variant: " + variant);
    }

    SuiteResult res = run_suite(sys, table, cfg);
    std::string rendered = render_report(sys, table, cfg, res, format);
    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw config_error("cannot open output file: " + out_path);
      out << rendered;
    }
    return res.summary.failed == 0 ? 0 : 1;
  } catch (const toroidal::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toroidal::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toroidal::table_file_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
