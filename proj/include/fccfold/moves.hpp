#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fccfold/chain.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/rng.hpp"

namespace fccfold {

enum class MoveKind {
  Crossover,
  Rotation,
  Diagonal,
  Pull,
  Tilt,
  MacroMutation,
};
inline constexpr int kMoveKindCount = 6;
const char* to_string(MoveKind kind);

struct MoveOutcome {
  std::optional<Conformation> result;
  MoveKind kind{};
  int site = -1;
  // Results are re-anchored so coords[0] sits at the origin; this is the
  // pre-normalization position of residue 0 (zero when it did not move).
  LatticePoint origin_shift{0, 0, 0};
  // Pull moves record (residue, previous position) in application order so
  // the inverse displacement sequence can be replayed.  Positions are in the
  // pre-move frame.
  std::vector<std::pair<int, LatticePoint>> displaced;

  bool ok() const { return result.has_value(); }
};

// Single-point crossover: children splice the parents' direction lists at
// pos (1 <= pos <= N-2).  Fails when either child collides.
std::optional<std::pair<Conformation, Conformation>> crossover(
    const Conformation& a, const Conformation& b, int pos);

// Rotates the tail coords[pos..] about the pivot residue pos-1 with one of
// the 24 lattice rotations; the prefix is untouched.
MoveOutcome rotation_move(const Conformation& c, int pos, int rot_index);

// Free lattice points adjacent to both chain neighbours of residue pos,
// enumerated in basis order.  Empty at the termini.
std::vector<LatticePoint> diagonal_candidates(const Conformation& c, int pos,
                                              const OccupancySet& occupied);

/// Relocates residue pos to `target`; target must come from diagonal_candidates.
Conformation apply_diagonal(const Conformation& c, int pos,
                            const LatticePoint& target);

/// Diagonal move taking the first free candidate.
MoveOutcome diagonal_move(const Conformation& c, int pos);

// Pull move: residue pos relocates to a free neighbour of its successor
// (predecessor for the tail residue), dragging earlier residues into the
// vacated positions until the chain reconnects.  The candidate target is
// drawn uniformly from the feasible set.
MoveOutcome pull_move(const Conformation& c, int pos, Rng& rng);

// Tilt move: the maximal straight run starting at pos (at least two equal
// consecutive direction steps) is translated to a parallel line; both flanks
// are dragged until the chain reconnects.
MoveOutcome tilt_move(const Conformation& c, int pos, Rng& rng);

enum class MacroGuidance { HccDistance, BmEnergy };

struct MacroStats {
  long sweeps = 0;
  long moved_h = 0;
  long moved_p = 0;
  long h_distance_violations = 0;  // accepted H moves with d_new > d_old
};

// Composite operator: `repeat` sweeps of diagonal moves over one residue
// class per sweep (P with probability p, else H).  P residues take the first
// free candidate; H residues additionally require the move not to increase
// the distance to the hydrophobic core centre (HccDistance) or not to
// increase the BM energy (BmEnergy).  Never fails; a sweep without
// successful moves leaves the chain as it was.
Conformation macro_mutation(const Conformation& c, const Sequence& seq,
                            int repeat, double p, Rng& rng,
                            MacroGuidance guidance, const ContactMatrix& bm,
                            MacroStats* stats = nullptr);

/// BM energy change of relocating residue pos to target, O(N).
double diagonal_bm_delta(const Conformation& c, const Sequence& seq, int pos,
                         const LatticePoint& target, const ContactMatrix& bm);

}  // namespace fccfold
