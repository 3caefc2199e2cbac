#include "fccfold/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

#include "fccfold/error.hpp"

namespace fccfold {

namespace {
constexpr double kImproveEps = 1e-9;
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::BH: return "BH";
    case Variant::BD: return "BD";
    case Variant::BM: return "BM";
    case Variant::HP: return "HP";
  }
  return "?";
}

Variant variant_from_string(const std::string& name) {
  if (name == "BH" || name == "bh") return Variant::BH;
  if (name == "BD" || name == "bd") return Variant::BD;
  if (name == "BM" || name == "bm") return Variant::BM;
  if (name == "HP" || name == "hp") return Variant::HP;
  throw FoldError("unknown variant '" + name + "' (expected BH, BD, BM or HP)");
}

void validate(const RunConfig& config) {
  if (config.pop_size < 2) throw FoldError("pop_size must be >= 2");
  if (config.rw_threshold < 1) throw FoldError("rw_threshold must be >= 1");
  if (config.time_budget_s <= 0 && config.max_generations <= 0) {
    throw FoldError("need a positive time budget or generation cap");
  }
  if (config.macro_p < 0 || config.macro_p > 1) {
    throw FoldError("macro_p must lie in [0, 1]");
  }
  if (config.macro_repeat < 1) throw FoldError("macro_repeat must be >= 1");
  if (config.rw_energy_band < 0) throw FoldError("rw_energy_band must be >= 0");
  if (config.rw_struct_min < 0 || config.rw_struct_max > 1 ||
      config.rw_struct_min > config.rw_struct_max) {
    throw FoldError("random-walk structural window must satisfy 0 <= min <= max <= 1");
  }
  if (config.rw_sweep_cap < 1) throw FoldError("rw_sweep_cap must be >= 1");
  if (config.init_attempt_cap < 1) throw FoldError("init_attempt_cap must be >= 1");
  double weight_sum = 0;
  for (double w : config.operator_weights) {
    if (w < 0) throw FoldError("operator weights must be >= 0");
    weight_sum += w;
  }
  if (weight_sum <= 0) throw FoldError("operator weights must not all be zero");
}

std::vector<MoveKind> EngineContext::operator_menu() const {
  std::vector<MoveKind> menu;
  for (int k = 0; k < kMoveKindCount; ++k) {
    if (weights[static_cast<std::size_t>(k)] > 0) {
      menu.push_back(static_cast<MoveKind>(k));
    }
  }
  return menu;
}

EngineContext make_variant(Variant variant, const RunConfig& config,
                           const ContactMatrix& bm) {
  EngineContext ctx;
  ctx.bm = &bm;
  ctx.weights = config.operator_weights;
  ctx.macro_p = config.macro_p;
  ctx.macro_repeat = config.macro_repeat;
  ctx.first_improvement = config.first_improvement;
  switch (variant) {
    case Variant::BH:
      ctx.search_model = EnergyModel::BM;
      ctx.guidance = MacroGuidance::HccDistance;
      break;
    case Variant::BD:
      ctx.search_model = EnergyModel::BM;
      ctx.guidance = MacroGuidance::BmEnergy;
      break;
    case Variant::BM:
      ctx.search_model = EnergyModel::BM;
      ctx.weights[static_cast<std::size_t>(MoveKind::MacroMutation)] = 0;
      break;
    case Variant::HP:
      ctx.search_model = EnergyModel::HP;
      ctx.guidance = MacroGuidance::HccDistance;
      break;
  }
  double weight_sum = 0;
  for (double w : ctx.weights) weight_sum += w;
  if (weight_sum <= 0) {
    throw FoldError("variant leaves no operator with positive weight");
  }
  return ctx;
}

std::vector<MoveKind> operator_menu(const RunConfig& config) {
  auto weights = config.operator_weights;
  if (config.variant == Variant::BM) {
    weights[static_cast<std::size_t>(MoveKind::MacroMutation)] = 0;
  }
  std::vector<MoveKind> menu;
  for (int k = 0; k < kMoveKindCount; ++k) {
    if (weights[static_cast<std::size_t>(k)] > 0) {
      menu.push_back(static_cast<MoveKind>(k));
    }
  }
  return menu;
}

bool Population::add_unique(Conformation c) {
  if (full()) return false;
  DuplicateKey key = duplicate_key(c);
  if (keys_.count(key) != 0) return false;
  keys_.insert(std::move(key));
  members_.push_back(std::move(c));
  return true;
}

bool Population::replace(int i, Conformation c) {
  DuplicateKey old_key = duplicate_key(members_[static_cast<std::size_t>(i)]);
  DuplicateKey new_key = duplicate_key(c);
  if (new_key == old_key) {
    members_[static_cast<std::size_t>(i)] = std::move(c);
    return true;
  }
  if (keys_.count(new_key) != 0) return false;
  keys_.erase(old_key);
  keys_.insert(std::move(new_key));
  members_[static_cast<std::size_t>(i)] = std::move(c);
  return true;
}

namespace {

MoveKind pick_operator(const std::array<double, kMoveKindCount>& weights,
                       Rng& rng) {
  double total = 0;
  for (double w : weights) total += w;
  double x = rng.unit() * total;
  for (int k = 0; k < kMoveKindCount; ++k) {
    x -= weights[static_cast<std::size_t>(k)];
    if (x < 0) return static_cast<MoveKind>(k);
  }
  return MoveKind::MacroMutation;
}

struct SitesRange {
  int lo;
  int hi;  // inclusive
};

SitesRange move_sites(MoveKind kind, int n) {
  switch (kind) {
    case MoveKind::Rotation: return {1, n - 1};
    case MoveKind::Diagonal: return {1, n - 2};
    case MoveKind::Pull: return {0, n - 1};
    case MoveKind::Tilt: return {0, n - 3};
    default: return {0, -1};
  }
}

MoveOutcome apply_move(MoveKind kind, const Conformation& c, int pos,
                       Rng& rng) {
  switch (kind) {
    case MoveKind::Rotation:
      return rotation_move(c, pos, static_cast<int>(rng.below(24)));
    case MoveKind::Diagonal:
      return diagonal_move(c, pos);
    case MoveKind::Pull:
      return pull_move(c, pos, rng);
    case MoveKind::Tilt:
      return tilt_move(c, pos, rng);
    default:
      return MoveOutcome{std::nullopt, kind, pos};
  }
}

}  // namespace

Conformation exhaustive_mutate(const Conformation& parent, MoveKind kind,
                               const Sequence& seq, const EngineContext& ctx,
                               Rng& rng) {
  assert(parent.energy_valid);
  if (kind == MoveKind::MacroMutation) {
    // Whole-chain composite operator: one application per parent.
    Conformation mutant = macro_mutation(parent, seq, ctx.macro_repeat,
                                         ctx.macro_p, rng, ctx.guidance, *ctx.bm);
    mutant.energy = ctx.evaluate_search(mutant, seq);
    mutant.energy_valid = true;
    return mutant.energy < parent.energy - kImproveEps ? mutant : parent;
  }
  Conformation best = parent;
  const auto range = move_sites(kind, parent.size());
  for (int pos = range.lo; pos <= range.hi; ++pos) {
    MoveOutcome outcome = apply_move(kind, parent, pos, rng);
    if (!outcome.ok()) continue;
    Conformation& candidate = *outcome.result;
    candidate.energy = ctx.evaluate_search(candidate, seq);
    candidate.energy_valid = true;
    if (candidate.energy < best.energy - kImproveEps) {
      best = std::move(candidate);
      if (ctx.first_improvement) break;
    }
  }
  return best;
}

std::pair<Conformation, Conformation> exhaustive_crossover(
    const Conformation& a, const Conformation& b, const Sequence& seq,
    const EngineContext& ctx) {
  assert(a.energy_valid && b.energy_valid);
  std::vector<Conformation> pool;
  pool.push_back(a);
  pool.push_back(b);
  const int n = a.size();
  for (int pos = 1; pos <= n - 2; ++pos) {
    auto children = crossover(a, b, pos);
    if (!children) continue;
    children->first.energy = ctx.evaluate_search(children->first, seq);
    children->first.energy_valid = true;
    children->second.energy = ctx.evaluate_search(children->second, seq);
    children->second.energy_valid = true;
    pool.push_back(std::move(children->first));
    pool.push_back(std::move(children->second));
  }
  std::size_t first = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    if (pool[i].energy < pool[first].energy - kImproveEps) first = i;
  }
  const DuplicateKey first_key = duplicate_key(pool[first]);
  std::size_t second = pool.size();
  std::size_t second_any = pool.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == first) continue;
    if (second_any == pool.size() ||
        pool[i].energy < pool[second_any].energy - kImproveEps) {
      second_any = i;
    }
    if (duplicate_key(pool[i]) == first_key) continue;
    if (second == pool.size() ||
        pool[i].energy < pool[second].energy - kImproveEps) {
      second = i;
    }
  }
  if (second == pool.size()) second = second_any;  // every entry duplicates first
  return {pool[first], pool[second]};
}

WalkStats random_walk(Population& pop, const Sequence& seq,
                      const EngineContext& ctx, const RunConfig& config,
                      Rng& rng) {
  WalkStats stats;
  const int count = pop.size();
  for (int i = 0; i < count; ++i) {
    const Conformation original = pop.members()[static_cast<std::size_t>(i)];
    const double e0 = original.energy;
    Conformation current = original;
    std::optional<Conformation> chosen;
    double chosen_diff = -1.0;
    for (int sweep = 0; sweep < config.rw_sweep_cap; ++sweep) {
      for (int pos = 0; pos < current.size(); ++pos) {
        MoveOutcome outcome = pull_move(current, pos, rng);
        if (outcome.ok()) current = std::move(*outcome.result);
      }
      current.energy = ctx.evaluate_search(current, seq);
      current.energy_valid = true;
      const double diff = direction_difference(original, current);
      const bool energy_ok =
          std::abs(e0) < 1e-12
              ? true  // nothing to preserve at zero energy
              : std::abs((current.energy - e0) / e0) <= config.rw_energy_band;
      if (energy_ok && diff >= config.rw_struct_min &&
          diff <= config.rw_struct_max && diff > chosen_diff) {
        chosen = current;
        chosen_diff = diff;
      }
      if (diff > config.rw_struct_max && chosen) break;  // past the window
    }
    if (chosen && pop.replace(i, std::move(*chosen))) {
      ++stats.walked;
    } else {
      ++stats.unchanged;
    }
  }
  return stats;
}

RunRecord run(const Sequence& seq, const RunConfig& config,
              const ContactMatrix& bm, const ProgressFn& on_generation) {
  validate(config);
  if (seq.h_count() == 0) {
    throw FoldError("sequence '" + seq.id() +
                    "' has no hydrophobic residue; run setup rejects it");
  }
  const EngineContext ctx = make_variant(config.variant, config, bm);

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  RunRecord record;
  record.config = config;
  record.sequence_id = seq.id();
  record.sequence = seq.residues();

  // Alg. 2 line 6: random initial population.
  Rng init_rng(config.seed, 0);
  Population current(config.pop_size);
  const int init_cap = config.pop_size * 50;
  for (int tries = 0; !current.full() && tries < init_cap; ++tries) {
    Conformation c = initialise(seq, init_rng, config.init_attempt_cap);
    c.energy = ctx.evaluate_search(c, seq);
    c.energy_valid = true;
    current.add_unique(std::move(c));
  }

  const auto best_of = [](const Population& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.members().size(); ++i) {
      if (pop.members()[i].energy < pop.members()[best].energy) best = i;
    }
    return best;
  };

  Conformation best = current.members()[best_of(current)];
  record.trace.push_back({0, best.energy, elapsed()});

  int stall = 0;
  std::int64_t gen = 0;
  const std::int64_t cross_cap =
      static_cast<std::int64_t>(config.crossover_attempt_factor) *
      config.pop_size;

  while (true) {
    if (config.max_generations > 0 && gen >= config.max_generations) break;
    if (config.time_budget_s > 0 && elapsed() >= config.time_budget_s) break;
    ++gen;
    // One deterministic stream per generation.
    Rng rng(config.seed, static_cast<std::uint64_t>(gen));
    const MoveKind op = pick_operator(ctx.weights, rng);

    Population next(config.pop_size);
    if (op == MoveKind::Crossover) {
      // Alg. 2 lines 13-15: random parent pairs until the population fills.
      const auto& members = current.members();
      const auto size = static_cast<std::uint32_t>(members.size());
      for (std::int64_t attempt = 0; !next.full() && attempt < cross_cap;
           ++attempt) {
        const Conformation& a = members[rng.below(size)];
        const Conformation& b = members[rng.below(size)];
        auto pair = exhaustive_crossover(a, b, seq, ctx);
        next.add_unique(std::move(pair.first));
        if (!next.full()) next.add_unique(std::move(pair.second));
      }
      if (!next.full()) {
        // Exhausted redraws: surviving parents fill the remaining slots.
        std::vector<std::size_t> order(members.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&members](std::size_t x, std::size_t y) {
                           return members[x].energy < members[y].energy;
                         });
        for (std::size_t i : order) {
          if (next.full()) break;
          next.add_unique(members[i]);
        }
      }
    } else {
      for (const Conformation& member : current.members()) {
        next.add_unique(exhaustive_mutate(member, op, seq, ctx, rng));
      }
    }

    const std::size_t gen_best = best_of(next);
    if (next.members()[gen_best].energy < best.energy - kImproveEps) {
      best = next.members()[gen_best];
      record.trace.push_back({gen, best.energy, elapsed()});
      stall = 0;
    } else {
      ++stall;
    }

    if (stall >= config.rw_threshold) {
      // Alg. 2 lines 16-17.
      WalkStats walk = random_walk(next, seq, ctx, config, rng);
      record.stagnation_gens.push_back(gen);
      ++record.stagnation_recoveries;
      record.rw_members_unchanged += walk.unchanged;
      stall = 0;
      const std::size_t walked_best = best_of(next);
      if (next.members()[walked_best].energy < best.energy - kImproveEps) {
        best = next.members()[walked_best];
        record.trace.push_back({gen, best.energy, elapsed()});
      }
    }

    current = std::move(next);
    if (on_generation) on_generation(gen, elapsed(), best.energy);
  }

  record.generations = gen;
  record.best = best;
  record.best_search_energy = best.energy;
  record.best_bm_energy = ctx.search_model == EnergyModel::BM
                              ? best.energy
                              : evaluate(best, seq, EnergyModel::BM, bm);
  return record;
}

}  // namespace fccfold
