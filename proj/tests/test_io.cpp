#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fccfold/benchmark.hpp"
#include "fccfold/error.hpp"
#include "fccfold/io.hpp"
#include "oracles.hpp"

using namespace fccfold;
namespace ft = fccfold::testing;
namespace fs = std::filesystem;

namespace {

const ContactMatrix& bundled_matrix() {
  static const ContactMatrix matrix =
      ContactMatrix::load_file(std::string(FCCFOLD_DATA_DIR) +
                               "/bm_contact_energy.csv");
  return matrix;
}

}  // namespace

TEST_CASE("structure files round-trip bit-exactly") {
  Rng rng(60);
  const Sequence seq = ft::random_sequence(rng, 15);
  const Conformation c = ft::random_walk_conformation(rng, 15);
  const double energy = -123.456789012345;
  const std::string text = export_structure(c, seq, energy);

  std::istringstream in(text);
  const StructureFile parsed = import_structure(in);
  CHECK(parsed.id == seq.id());
  CHECK(parsed.residues == seq.residues());
  CHECK(parsed.energy == energy);
  CHECK(parsed.conformation.dirs == c.dirs);
  CHECK(parsed.conformation.coords == c.coords);

  const std::string again =
      export_structure(parsed.conformation,
                       Sequence(parsed.id, parsed.residues), parsed.energy);
  CHECK(again == text);
}

TEST_CASE("structure import rejects revisits and non-neighbour steps") {
  const std::string dup =
      "# id=x energy=0\n0 A 0 0 0\n1 A 1 1 0\n2 A 0 0 0\n";
  std::istringstream dup_in(dup);
  CHECK_THROWS_WITH_AS(import_structure(dup_in),
                       doctest::Contains("revisits"), FoldError);

  const std::string far =
      "# id=x energy=0\n0 A 0 0 0\n1 A 2 0 0\n2 A 3 1 0\n";
  std::istringstream far_in(far);
  CHECK_THROWS_WITH_AS(import_structure(far_in),
                       doctest::Contains("not lattice neighbours"), FoldError);

  std::istringstream no_header("0 A 0 0 0\n");
  CHECK_THROWS_AS(import_structure(no_header), FoldError);
}

TEST_CASE("imported structures are re-anchored at the origin") {
  const std::string text =
      "# id=x energy=0\n0 A 5 5 0\n1 A 6 6 0\n2 A 7 5 0\n";
  std::istringstream in(text);
  const StructureFile parsed = import_structure(in);
  CHECK(parsed.conformation.coords[0] == LatticePoint(0, 0, 0));
  CHECK(is_valid_saw(parsed.conformation));
}

TEST_CASE("run records round-trip through JSON") {
  const Sequence seq = ft::all_h_sequence(10);
  RunConfig config;
  config.variant = Variant::HP;
  config.pop_size = 10;
  config.time_budget_s = 0;
  config.max_generations = 8;
  config.seed = 77;
  const RunRecord record = run(seq, config, bundled_matrix());

  const std::string json = run_record_to_json(record);
  const RunRecord parsed = run_record_from_json(json);
  CHECK(parsed.sequence_id == record.sequence_id);
  CHECK(parsed.sequence == record.sequence);
  CHECK(parsed.best.dirs == record.best.dirs);
  CHECK(parsed.best_search_energy == record.best_search_energy);
  CHECK(parsed.best_bm_energy == record.best_bm_energy);
  CHECK(parsed.generations == record.generations);
  CHECK(parsed.config.seed == record.config.seed);
  CHECK(parsed.config.variant == record.config.variant);
  CHECK(parsed.trace.size() == record.trace.size());
  CHECK(run_record_to_json(parsed) == json);
}

TEST_CASE("run record JSON carries the variant-adjusted operator menu") {
  const Sequence seq = ft::all_h_sequence(10);
  RunConfig config;
  config.variant = Variant::BM;
  config.pop_size = 8;
  config.time_budget_s = 0;
  config.max_generations = 3;
  const RunRecord record = run(seq, config, bundled_matrix());
  const std::string json = run_record_to_json(record);
  const auto menu_pos = json.find("\"operator_menu\"");
  REQUIRE(menu_pos != std::string::npos);
  const auto menu_end = json.find(']', menu_pos);
  const std::string menu = json.substr(menu_pos, menu_end - menu_pos);
  CHECK(menu.find("MacroMutation") == std::string::npos);
  CHECK(menu.find("Crossover") != std::string::npos);
}

TEST_CASE("config files apply and flags override later") {
  const fs::path path = fs::temp_directory_path() / "fccfold_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "variant = HP\n"
        << "pop_size = 42\n"
        << "time = 2m\n"
        << "macro_p = 0.35\n"
        << "first_improvement = true\n"
        << "weight_Tilt = 0\n";
  }
  RunConfig base;
  const RunConfig config = apply_config_file(base, path.string());
  CHECK(config.variant == Variant::HP);
  CHECK(config.pop_size == 42);
  CHECK(config.time_budget_s == doctest::Approx(120.0));
  CHECK(config.macro_p == doctest::Approx(0.35));
  CHECK(config.first_improvement);
  CHECK(config.operator_weights[static_cast<std::size_t>(MoveKind::Tilt)] == 0.0);
  fs::remove(path);
}

TEST_CASE("config files reject unknown keys with a location") {
  std::istringstream in("pop_size = 10\nnonsense = 1\n");
  CHECK_THROWS_WITH_AS(apply_config_text(RunConfig{}, in, "test.cfg"),
                       doctest::Contains("test.cfg:2"), FoldError);
}

TEST_CASE("runs CSV round-trips") {
  std::vector<RunRow> rows;
  RunRow r1{"4RXN", "BH", 12345, -160.25, -160.25, 900, 5.5};
  RunRow r2{"1ENH", "HP", 99, -120.5, -60.0, 1200, std::nullopt};
  rows.push_back(r1);
  rows.push_back(r2);
  const std::string text = runs_csv(rows);
  std::istringstream in(text);
  const auto parsed = parse_runs_csv(in, "mem");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].seq == "4RXN");
  CHECK(parsed[0].best_bm == doctest::Approx(-160.25));
  CHECK(parsed[0].rmsd.has_value());
  CHECK(*parsed[0].rmsd == doctest::Approx(5.5));
  CHECK(parsed[1].variant == "HP");
  CHECK_FALSE(parsed[1].rmsd.has_value());
}

TEST_CASE("summary CSV uses the documented header") {
  SummaryRow row;
  row.seq = "4RXN";
  row.size = 54;
  row.h = 27;
  row.variant = "BH";
  row.best = -166.88;
  row.avg = -162.72;
  row.census = {67, 54, 22, 143};
  const std::string text = summary_csv({row});
  CHECK(text.rfind("seq,size,h,variant,best,avg,best_rmsd,avg_rmsd,hh,hp,pp,total\n",
                   0) == 0);
  CHECK(text.find("4RXN,54,27,BH,-166.88,-162.72,,,67,54,22,143") !=
        std::string::npos);
}

TEST_CASE("durations parse human units") {
  CHECK(parse_duration_s("90") == doctest::Approx(90.0));
  CHECK(parse_duration_s("90s") == doctest::Approx(90.0));
  CHECK(parse_duration_s("2m") == doctest::Approx(120.0));
  CHECK(parse_duration_s("1.5h") == doctest::Approx(5400.0));
  CHECK_THROWS_AS(parse_duration_s("abc"), FoldError);
  CHECK_THROWS_AS(parse_duration_s("-5s"), FoldError);
}

TEST_CASE("bundled benchmark suite passes its self-check") {
  CHECK_NOTHROW(self_check_suite());
  CHECK(builtin_suite().size() == 12);
  const BenchmarkEntry& pnx = suite_entry("3PNX");
  CHECK(pnx.length == 160);
  CHECK(pnx.h_count == 84);
  const BenchmarkEntry& enh = suite_entry("1ENH");
  CHECK(enh.length == 54);
  CHECK(enh.h_count == 19);
  CHECK_THROWS_AS(suite_entry("XXXX"), FoldError);
}

TEST_CASE("matrix CSV written by hand reloads") {
  const fs::path path = fs::temp_directory_path() / "fccfold_test_matrix.csv";
  {
    std::ofstream out(path);
    out << "# test matrix\n" << "A,C,D,E,F,G,H,I,K,L,M,N,P,Q,R,S,T,V,W,Y" << "\n";
    for (int r = 0; r < 20; ++r) {
      for (int c = 0; c < 20; ++c) {
        if (c) out << ',';
        out << (r == c ? "-1.0" : "0.25");
      }
      out << "\n";
    }
  }
  const ContactMatrix m = ContactMatrix::load_file(path.string());
  CHECK(m.at('A', 'A') == -1.0);
  CHECK(m.at('A', 'W') == 0.25);
  fs::remove(path);
}
