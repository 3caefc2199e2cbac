// fccfold: fold single sequences, run benchmark batteries, evaluate exported
// structures, and compare result sets.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fccfold/benchmark.hpp"
#include "fccfold/engine.hpp"
#include "fccfold/error.hpp"
#include "fccfold/io.hpp"
#include "fccfold/metrics.hpp"

namespace fs = std::filesystem;
using namespace fccfold;

namespace {

std::string default_matrix_path() {
  if (const char* env = std::getenv("FCCFOLD_MATRIX"); env && *env) return env;
  return std::string(FCCFOLD_DATA_DIR) + "/bm_contact_energy.csv";
}

ContactMatrix load_matrix(const std::string& flag_value) {
  const std::string path =
      flag_value.empty() ? default_matrix_path() : flag_value;
  return ContactMatrix::load_file(path);
}

// --seq accepts a literal residue string, a FASTA/plain file path, or '-'
// for stdin.
Sequence resolve_sequence(const std::string& seq_arg,
                          const std::string& suite_id,
                          const std::string& id_override) {
  if (!suite_id.empty()) return suite_entry(suite_id).parse();
  if (seq_arg.empty()) {
    throw FoldError("no sequence given: use --seq or --suite");
  }
  std::string fallback = id_override.empty() ? "seq" : id_override;
  if (seq_arg == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return Sequence::parse(buffer.str(), fallback);
  }
  if (fs::exists(seq_arg)) {
    return Sequence::parse(read_text_file(seq_arg), fallback);
  }
  Sequence seq = Sequence::parse(seq_arg, fallback);
  return seq;
}

struct CommonRunFlags {
  std::string variant = "BH";
  std::string time = "60s";
  std::int64_t generations = 0;
  int pop = 100;
  int rwt = 20;
  double macro_p = 0.20;
  int macro_repeat = 5;
  bool first_improvement = false;
  std::string config_path;
};

void add_run_flags(CLI::App* cmd, CommonRunFlags& flags) {
  cmd->add_option("--variant", flags.variant, "GA variant: BH, BD, BM or HP")
      ->capture_default_str();
  cmd->add_option("--time", flags.time, "wall-clock budget (e.g. 90s, 2m, 1h)")
      ->capture_default_str();
  cmd->add_option("--generations", flags.generations,
                  "generation cap (0 = none); makes runs reproducible "
                  "independently of wall time")
      ->capture_default_str();
  cmd->add_option("--pop", flags.pop, "population size")->capture_default_str();
  cmd->add_option("--rwt", flags.rwt,
                  "non-improving generations before a random walk")
      ->capture_default_str();
  cmd->add_option("--macro-p", flags.macro_p,
                  "probability of a P-class macro-mutation sweep")
      ->capture_default_str();
  cmd->add_option("--macro-repeat", flags.macro_repeat,
                  "macro-mutation sweeps per application")
      ->capture_default_str();
  cmd->add_flag("--first-improvement", flags.first_improvement,
                "stop each exhaustive scan at the first improving site");
  cmd->add_option("--config", flags.config_path,
                  "key=value config file; explicit flags override it");
}

// Precedence: built-in defaults, then the config file, then every flag that
// was given explicitly.  Without a config file the flag values apply as-is.
RunConfig build_config(const CommonRunFlags& flags, const CLI::App* cmd,
                       std::uint64_t seed) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    config = apply_config_file(config, flags.config_path);
  }
  const auto applies = [&](const std::string& name) {
    return cmd->count(name) > 0 || flags.config_path.empty();
  };
  if (applies("--variant")) config.variant = variant_from_string(flags.variant);
  if (applies("--time")) config.time_budget_s = parse_duration_s(flags.time);
  if (applies("--generations")) config.max_generations = flags.generations;
  if (applies("--pop")) config.pop_size = flags.pop;
  if (applies("--rwt")) config.rw_threshold = flags.rwt;
  if (applies("--macro-p")) config.macro_p = flags.macro_p;
  if (applies("--macro-repeat")) config.macro_repeat = flags.macro_repeat;
  if (applies("--first-improvement")) {
    config.first_improvement = flags.first_improvement;
  }
  config.seed = seed;
  validate(config);
  return config;
}

std::string run_basename(const std::string& id, const std::string& variant,
                         std::uint64_t seed) {
  std::ostringstream name;
  name << id << '_' << variant << "_s" << seed;
  return name.str();
}

/// Child seeds derived deterministically from a master seed.
std::uint64_t child_seed(std::uint64_t master, int index) {
  Rng rng(master, 0x5eedULL + static_cast<std::uint64_t>(index));
  return rng.next();
}

int cmd_fold(const CommonRunFlags& flags, const CLI::App* cmd,
             const std::string& seq_arg, const std::string& suite_id,
             const std::string& id_override, std::uint64_t seed,
             const std::string& matrix_path, const std::string& out_dir,
             const std::string& ref_path) {
  const ContactMatrix matrix = load_matrix(matrix_path);
  const Sequence seq = resolve_sequence(seq_arg, suite_id, id_override);
  const RunConfig config = build_config(flags, cmd, seed);

  const RunRecord record = run(seq, config, matrix);

  fs::create_directories(out_dir);
  const std::string base =
      (fs::path(out_dir) / run_basename(seq.id(), to_string(config.variant), seed))
          .string();
  write_run_record(base + ".json", record);
  write_structure_file(base + ".structure.txt", record.best, seq,
                       record.best_bm_energy);

  std::cout << "sequence        " << seq.id() << " (n=" << seq.length()
            << ", h=" << seq.h_count() << ")\n"
            << "variant         " << to_string(config.variant) << "\n"
            << "search energy   " << record.best_search_energy << " ("
            << to_string(make_variant(config.variant, config, matrix).search_model)
            << ")\n"
            << "BM energy       " << record.best_bm_energy << "\n"
            << "generations     " << record.generations << "\n"
            << "records         " << base << ".json\n";
  if (!ref_path.empty()) {
    const ReferenceStructure ref = ReferenceStructure::load_file(ref_path);
    std::cout << "rmsd            " << rmsd(record.best, ref) << " A\n";
  }
  return 0;
}

struct BenchTask {
  const BenchmarkEntry* entry;
  Variant variant;
  int seed_index;
  std::uint64_t seed;
};

int cmd_bench(const CommonRunFlags& flags, const CLI::App* cmd,
              const std::string& suite_arg, const std::string& variants_arg,
              int seeds, std::uint64_t master_seed,
              const std::string& matrix_path, const std::string& out_dir,
              const std::string& trace_interval_arg, int workers,
              const std::string& ref_dir, bool paper_scale) {
  const ContactMatrix matrix = load_matrix(matrix_path);

  CommonRunFlags effective = flags;
  if (paper_scale) {
    effective.time = "60m";
    if (seeds == 1) seeds = 50;
  }

  // Suite subset.
  std::vector<const BenchmarkEntry*> entries;
  if (suite_arg == "all" || suite_arg.empty()) {
    for (const auto& entry : builtin_suite()) entries.push_back(&entry);
  } else {
    std::istringstream ss(suite_arg);
    std::string id;
    while (std::getline(ss, id, ',')) entries.push_back(&suite_entry(id));
  }

  std::vector<Variant> variants;
  {
    std::istringstream ss(variants_arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
      variants.push_back(variant_from_string(name));
    }
    if (variants.empty()) variants.push_back(Variant::BH);
  }

  const double trace_interval = parse_duration_s(trace_interval_arg);
  if (trace_interval <= 0) throw FoldError("trace interval must be positive");

  // Per-protein references, if provided: <ref_dir>/<ID>.ref or <ID>.csv.
  std::map<std::string, ReferenceStructure> refs;
  if (!ref_dir.empty()) {
    for (const auto* entry : entries) {
      for (const char* suffix : {".ref", ".csv", ".txt"}) {
        const fs::path p = fs::path(ref_dir) / (entry->id + suffix);
        if (fs::exists(p)) {
          refs.emplace(entry->id, ReferenceStructure::load_file(p.string()));
          break;
        }
      }
    }
  }

  std::vector<BenchTask> tasks;
  for (const auto* entry : entries) {
    for (Variant variant : variants) {
      for (int s = 0; s < seeds; ++s) {
        tasks.push_back({entry, variant, s, child_seed(master_seed, s)});
      }
    }
  }

  fs::create_directories(fs::path(out_dir) / "records");
  fs::create_directories(fs::path(out_dir) / "structures");
  fs::create_directories(fs::path(out_dir) / "traces");

  struct TaskResult {
    RunRecord record;
    std::vector<double> marks;  // best-so-far at each trace-interval tick
    bool ok = false;
    std::string error;
  };
  std::vector<TaskResult> results(tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;
  const int thread_count =
      std::max(1, workers > 0 ? workers
                              : static_cast<int>(std::thread::hardware_concurrency()));

  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const BenchTask& task = tasks[i];
      TaskResult& result = results[i];
      try {
        const Sequence seq = task.entry->parse();
        RunConfig config = build_config(effective, cmd, task.seed);
        config.variant = task.variant;
        validate(config);

        std::vector<double> marks;
        double best_seen = 0;
        bool best_valid = false;
        const auto observer = [&](std::int64_t, double elapsed, double best) {
          best_seen = best;
          best_valid = true;
          while ((static_cast<double>(marks.size()) + 1) * trace_interval <=
                 elapsed) {
            marks.push_back(best);
          }
        };
        result.record = run(seq, config, matrix, observer);
        if (!best_valid) best_seen = result.record.best_search_energy;
        const double budget = config.time_budget_s;
        while (budget > 0 && (static_cast<double>(marks.size()) + 1) *
                                     trace_interval <= budget) {
          marks.push_back(best_seen);
        }
        result.marks = std::move(marks);
        result.ok = true;
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << "done " << task.entry->id << ' ' << to_string(task.variant)
                  << " seed#" << task.seed_index << " best_bm "
                  << result.record.best_bm_energy << " gens "
                  << result.record.generations << std::endl;
      } catch (const std::exception& e) {
        result.error = e.what();
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "FAILED " << task.entry->id << ' ' << to_string(task.variant)
                  << " seed#" << task.seed_index << ": " << e.what() << std::endl;
      }
    }
  };
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  // Single collector writes everything in task order.
  bool all_ok = true;
  std::vector<RunRow> run_rows;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const BenchTask& task = tasks[i];
    const TaskResult& result = results[i];
    if (!result.ok) {
      all_ok = false;
      continue;
    }
    const Sequence seq = task.entry->parse();
    const std::string base =
        run_basename(task.entry->id, to_string(task.variant), result.record.config.seed);
    write_run_record((fs::path(out_dir) / "records" / (base + ".json")).string(),
                     result.record);
    write_structure_file(
        (fs::path(out_dir) / "structures" / (base + ".structure.txt")).string(),
        result.record.best, seq, result.record.best_bm_energy);
    std::ostringstream trace;
    trace << "elapsed_s,best_energy\n";
    for (std::size_t m = 0; m < result.marks.size(); ++m) {
      trace << (static_cast<double>(m + 1) * trace_interval) << ','
            << result.marks[m] << "\n";
    }
    write_text_file((fs::path(out_dir) / "traces" / (base + ".csv")).string(),
                    trace.str());

    RunRow row;
    row.seq = task.entry->id;
    row.variant = to_string(task.variant);
    row.seed = result.record.config.seed;
    row.best_bm = result.record.best_bm_energy;
    row.best_search = result.record.best_search_energy;
    row.generations = result.record.generations;
    if (const auto it = refs.find(task.entry->id); it != refs.end()) {
      row.rmsd = rmsd(result.record.best, it->second);
    }
    run_rows.push_back(std::move(row));
  }
  write_text_file((fs::path(out_dir) / "runs.csv").string(), runs_csv(run_rows));

  // Summary rows plus per-interval traces averaged over seeds.
  std::vector<SummaryRow> summary;
  for (const auto* entry : entries) {
    for (Variant variant : variants) {
      std::vector<RunRecord> records;
      std::vector<const std::vector<double>*> mark_sets;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].entry == entry && tasks[i].variant == variant &&
            results[i].ok) {
          records.push_back(results[i].record);
          mark_sets.push_back(&results[i].marks);
        }
      }
      if (records.empty()) continue;
      const Sequence seq = entry->parse();
      const auto ref_it = refs.find(entry->id);
      summary.push_back(summarize(seq, to_string(variant), records,
                                  ref_it == refs.end() ? nullptr
                                                       : &ref_it->second));
      std::size_t mark_count = 0;
      for (const auto* marks : mark_sets) {
        mark_count = std::max(mark_count, marks->size());
      }
      std::ostringstream avg;
      avg << "elapsed_s,avg_best_energy\n";
      for (std::size_t m = 0; m < mark_count; ++m) {
        double sum = 0;
        int count = 0;
        for (std::size_t r = 0; r < mark_sets.size(); ++r) {
          const auto& marks = *mark_sets[r];
          // A run that recorded fewer marks holds its final best value.
          const double value =
              m < marks.size()
                  ? marks[m]
                  : (marks.empty() ? records[r].best_search_energy : marks.back());
          sum += value;
          ++count;
        }
        avg << (static_cast<double>(m + 1) * trace_interval) << ','
            << (sum / count) << "\n";
      }
      write_text_file((fs::path(out_dir) / "traces" /
                       ("avg_" + entry->id + "_" + to_string(variant) + ".csv"))
                          .string(),
                      avg.str());
    }
  }
  write_text_file((fs::path(out_dir) / "summary.csv").string(),
                  summary_csv(summary));

  std::cout << "wrote " << run_rows.size() << "/" << tasks.size()
            << " run records under " << out_dir << std::endl;
  return all_ok ? 0 : 1;
}

int cmd_eval(const std::string& structure_path, const std::string& model_arg,
             const std::string& matrix_path, const std::string& seq_check) {
  const StructureFile file = import_structure_file(structure_path);
  const Sequence seq(file.id, file.residues);
  if (!seq_check.empty() && seq_check != file.residues) {
    throw FoldError("--seq does not match the residues in the structure file");
  }
  const ContactMatrix matrix = load_matrix(matrix_path);

  std::cout << "id        " << seq.id() << "\n"
            << "residues  " << seq.length() << " (h=" << seq.h_count() << ")\n";
  if (model_arg == "hp" || model_arg == "both") {
    std::cout << "HP energy "
              << evaluate(file.conformation, seq, EnergyModel::HP, matrix)
              << "\n";
  }
  if (model_arg == "bm" || model_arg == "both") {
    std::cout << "BM energy "
              << evaluate(file.conformation, seq, EnergyModel::BM, matrix)
              << "\n";
  }
  const ContactCensus census = contact_census(file.conformation, seq);
  std::cout << "contacts  hh=" << census.hh << " hp=" << census.hp
            << " pp=" << census.pp << " total=" << census.total << "\n";
  return 0;
}

int cmd_stats(const std::string& target_path, const std::string& reference_path,
              const std::string& out_path) {
  const auto target = read_runs_csv(target_path);
  const auto reference = read_runs_csv(reference_path);

  // Group run-level energies (and RMSDs when present) per protein.
  struct Group {
    std::vector<double> energies;
    std::vector<double> rmsds;
  };
  const auto group = [](const std::vector<RunRow>& rows) {
    std::map<std::string, Group> out;
    for (const auto& row : rows) {
      auto& g = out[row.seq];
      g.energies.push_back(row.best_bm);
      if (row.rmsd) g.rmsds.push_back(*row.rmsd);
    }
    return out;
  };
  const auto target_groups = group(target);
  const auto reference_groups = group(reference);
  for (const auto& [id, g] : target_groups) {
    if (reference_groups.find(id) == reference_groups.end()) {
      throw FoldError("protein '" + id + "' present in target but not reference");
    }
  }
  for (const auto& [id, g] : reference_groups) {
    if (target_groups.find(id) == target_groups.end()) {
      throw FoldError("protein '" + id + "' present in reference but not target");
    }
  }

  const auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };

  std::ostringstream out;
  out << "seq,energy_ri_pct,energy_p,energy_significant_95,rmsd_ri_pct,rmsd_p,"
         "rmsd_significant_95\n";
  std::cout << "seq       energy RI     p        sig   rmsd RI      p        sig\n";
  for (const auto& [id, tg] : target_groups) {
    const Group& rg = reference_groups.at(id);
    const double e_ri =
        energy_improvement_percent(mean(tg.energies), mean(rg.energies));
    const MannWhitneyResult e_test =
        mann_whitney_u({"target", tg.energies}, {"reference", rg.energies});
    out << id << ',' << e_ri << ',' << e_test.p_two_sided << ','
        << (e_test.significant_95 ? 1 : 0) << ',';
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << id << "  " << e_ri << "%  " << e_test.p_two_sided << "  "
         << (e_test.significant_95 ? "yes" : "no ");
    if (!tg.rmsds.empty() && !rg.rmsds.empty()) {
      const double r_ri =
          rmsd_improvement_percent(mean(tg.rmsds), mean(rg.rmsds));
      const MannWhitneyResult r_test =
          mann_whitney_u({"target", tg.rmsds}, {"reference", rg.rmsds});
      out << r_ri << ',' << r_test.p_two_sided << ','
          << (r_test.significant_95 ? 1 : 0) << "\n";
      line << "  " << r_ri << "%  " << r_test.p_two_sided << "  "
           << (r_test.significant_95 ? "yes" : "no");
    } else {
      out << ",,\n";
      line << "  (no rmsd data)";
    }
    std::cout << line.str() << "\n";
  }
  if (!out_path.empty()) write_text_file(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice protein folding on the 3D FCC lattice with a "
               "mixed-energy genetic algorithm"};
  app.require_subcommand(1);

  try {
    self_check_suite();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }

  // fold ---------------------------------------------------------------
  auto* fold = app.add_subcommand("fold", "run the GA on one sequence");
  CommonRunFlags fold_flags;
  std::string fold_seq, fold_suite, fold_id, fold_matrix, fold_out = ".",
              fold_ref;
  std::uint64_t fold_seed = 1;
  fold->add_option("--seq", fold_seq,
                   "residue string, FASTA/plain file, or '-' for stdin");
  fold->add_option("--suite", fold_suite, "benchmark protein id (e.g. 4RXN)");
  fold->add_option("--id", fold_id, "label for the run outputs");
  fold->add_option("--seed", fold_seed, "rng seed")->capture_default_str();
  fold->add_option("--matrix", fold_matrix,
                   "contact-energy CSV (default: $FCCFOLD_MATRIX or bundled)");
  fold->add_option("--out", fold_out, "output directory")->capture_default_str();
  fold->add_option("--ref", fold_ref, "native reference structure file");
  add_run_flags(fold, fold_flags);

  // bench --------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run a benchmark battery");
  CommonRunFlags bench_flags;
  std::string bench_suite = "all", bench_variants = "BH", bench_matrix,
              bench_out = "bench_out", bench_interval = "2m", bench_refdir;
  int bench_seeds = 1, bench_workers = 0;
  std::uint64_t bench_master = 1;
  bool bench_paper_scale = false;
  bench->add_option("--suite", bench_suite,
                    "'all' or comma list of protein ids")
      ->capture_default_str();
  bench->add_option("--variants", bench_variants, "comma list of variants")
      ->capture_default_str();
  bench->add_option("--seeds", bench_seeds, "runs per (protein, variant)")
      ->capture_default_str();
  bench->add_option("--master-seed", bench_master,
                    "master seed from which run seeds derive")
      ->capture_default_str();
  bench->add_option("--matrix", bench_matrix, "contact-energy CSV");
  bench->add_option("--out", bench_out, "output directory")
      ->capture_default_str();
  bench->add_option("--trace-interval", bench_interval,
                    "sampling interval for energy traces")
      ->capture_default_str();
  bench->add_option("--workers", bench_workers,
                    "parallel runs (0 = hardware concurrency)");
  bench->add_option("--ref-dir", bench_refdir,
                    "directory with <ID>.ref native reference files");
  bench->add_flag("--paper-scale", bench_paper_scale,
                  "60-minute budgets and 50 seeds");
  add_run_flags(bench, bench_flags);

  // eval ---------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate an exported structure");
  std::string eval_structure, eval_model = "both", eval_matrix, eval_seq;
  eval->add_option("--structure", eval_structure, "structure text file")
      ->required();
  eval->add_option("--model", eval_model, "hp, bm or both")
      ->capture_default_str();
  eval->add_option("--matrix", eval_matrix, "contact-energy CSV");
  eval->add_option("--seq", eval_seq, "residue string to cross-check");

  // stats --------------------------------------------------------------
  auto* stats = app.add_subcommand(
      "stats", "relative improvement and rank tests between two runs.csv files");
  std::string stats_target, stats_reference, stats_out;
  stats->add_option("--target", stats_target, "target runs.csv")->required();
  stats->add_option("--reference", stats_reference, "reference runs.csv")
      ->required();
  stats->add_option("--out", stats_out, "write the report as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fold->parsed()) {
      return cmd_fold(fold_flags, fold, fold_seq, fold_suite, fold_id,
                      fold_seed, fold_matrix, fold_out, fold_ref);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_flags, bench, bench_suite, bench_variants,
                       bench_seeds, bench_master, bench_matrix, bench_out,
                       bench_interval, bench_workers, bench_refdir,
                       bench_paper_scale);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_structure, eval_model, eval_matrix, eval_seq);
    }
    if (stats->parsed()) {
      return cmd_stats(stats_target, stats_reference, stats_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
