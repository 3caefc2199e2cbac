#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "fccfold/chain.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/moves.hpp"

namespace fccfold {

enum class Variant { BH, BD, BM, HP };
const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct RunConfig {
  Variant variant = Variant::BH;
  int pop_size = 100;
  double time_budget_s = 60.0;     // wall-clock stop; 0 disables
  std::int64_t max_generations = 0;  // generation stop; 0 disables
  int rw_threshold = 20;           // non-improving generations before a walk
  double macro_p = 0.20;           // Bernoulli probability of a P sweep
  int macro_repeat = 5;            // macro-mutation sweeps per application
  std::uint64_t seed = 1;
  bool first_improvement = false;  // stop an exhaustive scan at the first gain
  // Selection weights in MoveKind order; the macro-mutation entry is ignored
  // for the BM variant (its operator set has no macro-mutation).
  std::array<double, kMoveKindCount> operator_weights{1, 1, 1, 1, 1, 1};
  double rw_energy_band = 0.10;    // max |dE/E| accepted by a random walk
  double rw_struct_min = 0.10;     // structural difference window
  double rw_struct_max = 0.75;
  int rw_sweep_cap = 50;
  int init_attempt_cap = 1000;
  int crossover_attempt_factor = 10;  // redraw cap = factor * pop_size
};

/// Throws FoldError when a field is out of range.
void validate(const RunConfig& config);

// Per-variant wiring resolved once per run.
struct EngineContext {
  EnergyModel search_model = EnergyModel::BM;
  MacroGuidance guidance = MacroGuidance::HccDistance;
  const ContactMatrix* bm = nullptr;  // always present; BM reporting needs it
  std::array<double, kMoveKindCount> weights{};
  double macro_p = 0.20;
  int macro_repeat = 5;
  bool first_improvement = false;

  double evaluate_search(const Conformation& c, const Sequence& seq) const {
    return evaluate(c, seq, search_model, *bm);
  }
  std::vector<MoveKind> operator_menu() const;
};

EngineContext make_variant(Variant variant, const RunConfig& config,
                           const ContactMatrix& bm);

/// Operator kinds left with positive weight once the variant is applied.
std::vector<MoveKind> operator_menu(const RunConfig& config);

/// Fixed-capacity set of conformations with duplicate-key rejection.
class Population {
 public:
  explicit Population(int capacity) : capacity_(capacity) {}

  // Inserts unless the key is already present or the population is full.
  bool add_unique(Conformation c);
  bool contains(const DuplicateKey& key) const { return keys_.count(key) != 0; }
  bool full() const { return static_cast<int>(members_.size()) >= capacity_; }
  int size() const { return static_cast<int>(members_.size()); }
  int capacity() const { return capacity_; }
  const std::vector<Conformation>& members() const { return members_; }

  // Replaces member i when the new key stays unique population-wide.
  bool replace(int i, Conformation c);

 private:
  int capacity_;
  std::vector<Conformation> members_;
  std::unordered_set<DuplicateKey> keys_;
};

struct TracePoint {
  std::int64_t generation = 0;
  double energy = 0.0;
  double elapsed_s = 0.0;  // informational; not part of the serialized record
};

struct RunRecord {
  RunConfig config;
  std::string sequence_id;
  std::string sequence;
  Conformation best;               // search-model energy cached
  double best_search_energy = 0.0;
  double best_bm_energy = 0.0;
  std::int64_t generations = 0;
  int stagnation_recoveries = 0;
  int rw_members_unchanged = 0;    // walk targets left in place (cap reached)
  std::vector<TracePoint> trace;   // best-so-far improvements, non-increasing
  std::vector<std::int64_t> stagnation_gens;
};

using ProgressFn =
    std::function<void(std::int64_t gen, double elapsed_s, double best)>;

// One GA run.  Deterministic for a fixed (seed, config) up to the number of
// generations executed; bound max_generations to make whole records
// reproducible byte for byte.
RunRecord run(const Sequence& seq, const RunConfig& config,
              const ContactMatrix& bm, const ProgressFn& on_generation = {});

// Applies `kind` at every feasible site of the parent and returns the best
// outcome by search energy; the parent survives unless strictly beaten.
Conformation exhaustive_mutate(const Conformation& parent, MoveKind kind,
                               const Sequence& seq, const EngineContext& ctx,
                               Rng& rng);

// Tries every split point and returns the best two of {parents, children},
// preferring a pair with distinct duplicate keys.
std::pair<Conformation, Conformation> exhaustive_crossover(
    const Conformation& a, const Conformation& b, const Sequence& seq,
    const EngineContext& ctx);

struct WalkStats {
  int walked = 0;
  int unchanged = 0;
};

// Stagnation recovery: pull-move sweeps per member until the energy stays
// within the band while the structure diverges inside the window; prefers
// the most diverged acceptable candidate seen before the sweep cap.
WalkStats random_walk(Population& pop, const Sequence& seq,
                      const EngineContext& ctx, const RunConfig& config,
                      Rng& rng);

}  // namespace fccfold
