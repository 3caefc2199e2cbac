#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fccfold/chain.hpp"
#include "fccfold/engine.hpp"
#include "fccfold/metrics.hpp"

namespace fccfold {

// --- structure text format --------------------------------------------------
// One header line `# id=<id> energy=<value>`, then one line per residue:
// `index code x y z` (0-based index).  Exports round-trip bit-exactly.

struct StructureFile {
  std::string id;
  std::string residues;
  Conformation conformation;
  double energy = 0.0;
};

std::string export_structure(const Conformation& c, const Sequence& seq,
                             double energy);
StructureFile import_structure(std::istream& in);
StructureFile import_structure_file(const std::string& path);
void write_structure_file(const std::string& path, const Conformation& c,
                          const Sequence& seq, double energy);

// --- run record JSON ----------------------------------------------------
// Deterministic serialization: fixed key order, no wall-clock fields.

std::string run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const std::string& text);
void write_run_record(const std::string& path, const RunRecord& record);
RunRecord read_run_record(const std::string& path);

// --- config files ---------------------------------------------------------
// Plain `key = value` lines, '#' comments.  Keys mirror the CLI flags:
// variant, pop_size, time_budget_s, max_generations, rw_threshold, macro_p,
// macro_repeat, seed, first_improvement, rw_energy_band, rw_struct_min,
// rw_struct_max, rw_sweep_cap, init_attempt_cap, crossover_attempt_factor,
// weight_<operator>.

RunConfig apply_config_text(const RunConfig& base, std::istream& in,
                            const std::string& origin);
RunConfig apply_config_file(const RunConfig& base, const std::string& path);

// --- CSV outputs ------------------------------------------------------------

inline constexpr const char* kSummaryHeader =
    "seq,size,h,variant,best,avg,best_rmsd,avg_rmsd,hh,hp,pp,total";

std::string summary_csv(const std::vector<SummaryRow>& rows);

// Per-run results; the granularity cmd_stats needs for rank tests.
struct RunRow {
  std::string seq;
  std::string variant;
  std::uint64_t seed = 0;
  double best_bm = 0;
  double best_search = 0;
  std::int64_t generations = 0;
  std::optional<double> rmsd;
};

inline constexpr const char* kRunsHeader =
    "seq,variant,seed,best_bm,best_search,generations,rmsd";

std::string runs_csv(const std::vector<RunRow>& rows);
std::vector<RunRow> parse_runs_csv(std::istream& in, const std::string& origin);
std::vector<RunRow> read_runs_csv(const std::string& path);

/// Human-friendly duration: plain seconds or suffixed `s`, `m`, `h`.
double parse_duration_s(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fccfold
