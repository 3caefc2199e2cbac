#include "fccfold/moves.hpp"

#include <cassert>
#include <cmath>

namespace fccfold {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Crossover: return "Crossover";
    case MoveKind::Rotation: return "Rotation";
    case MoveKind::Diagonal: return "Diagonal";
    case MoveKind::Pull: return "Pull";
    case MoveKind::Tilt: return "Tilt";
    case MoveKind::MacroMutation: return "MacroMutation";
  }
  return "?";
}

std::optional<std::pair<Conformation, Conformation>> crossover(
    const Conformation& a, const Conformation& b, int pos) {
  const int n = a.size();
  if (n != b.size() || pos < 1 || pos > n - 2) return std::nullopt;
  const auto splice = [pos](const Conformation& head, const Conformation& tail) {
    std::vector<std::uint8_t> dirs(head.dirs.begin(),
                                   head.dirs.begin() + pos);
    dirs.insert(dirs.end(), tail.dirs.begin() + pos, tail.dirs.end());
    return dirs;
  };
  Rebuild r1 = rebuild_coords(splice(a, b));
  if (!r1.ok()) return std::nullopt;
  Rebuild r2 = rebuild_coords(splice(b, a));
  if (!r2.ok()) return std::nullopt;

  Conformation child1;
  child1.dirs = splice(a, b);
  child1.coords = std::move(r1.coords);
  Conformation child2;
  child2.dirs = splice(b, a);
  child2.coords = std::move(r2.coords);
  return std::make_pair(std::move(child1), std::move(child2));
}

MoveOutcome rotation_move(const Conformation& c, int pos, int rot_index) {
  MoveOutcome out{std::nullopt, MoveKind::Rotation, pos};
  const int n = c.size();
  if (pos < 1 || pos > n - 1) return out;
  const Rotation& r = lattice_rotations()[static_cast<std::size_t>(rot_index)];
  const LatticePoint pivot = c.coords[static_cast<std::size_t>(pos - 1)];

  OccupancySet prefix;
  for (int i = 0; i < pos; ++i) prefix.insert(c.coords[static_cast<std::size_t>(i)]);

  Conformation next = c;
  next.energy_valid = false;
  for (int i = pos; i < n; ++i) {
    const LatticePoint p =
        pivot + r * (c.coords[static_cast<std::size_t>(i)] - pivot);
    // The rotated tail is rigid, so only collisions with the prefix matter.
    if (prefix.occupied(p)) return out;
    next.coords[static_cast<std::size_t>(i)] = p;
  }
  const auto& basis = basis_vectors();
  for (int i = pos - 1; i < n - 1; ++i) {
    const int k = basis_index(r * basis[c.dirs[static_cast<std::size_t>(i)]]);
    assert(k >= 0);
    next.dirs[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k);
  }
  out.result = std::move(next);
  return out;
}

std::vector<LatticePoint> diagonal_candidates(const Conformation& c, int pos,
                                              const OccupancySet& occupied) {
  std::vector<LatticePoint> candidates;
  const int n = c.size();
  if (pos < 1 || pos > n - 2) return candidates;
  const LatticePoint a = c.coords[static_cast<std::size_t>(pos - 1)];
  const LatticePoint b = c.coords[static_cast<std::size_t>(pos + 1)];
  const auto& basis = basis_vectors();
  for (int k = 0; k < 12; ++k) {
    const LatticePoint q = a + basis[k];
    if (!is_contact(q, b)) continue;
    if (occupied.occupied(q)) continue;  // also excludes the current position
    candidates.push_back(q);
  }
  return candidates;
}

Conformation apply_diagonal(const Conformation& c, int pos,
                            const LatticePoint& target) {
  Conformation next = c;
  next.energy_valid = false;
  next.coords[static_cast<std::size_t>(pos)] = target;
  const int before =
      basis_index(target - c.coords[static_cast<std::size_t>(pos - 1)]);
  const int after =
      basis_index(c.coords[static_cast<std::size_t>(pos + 1)] - target);
  assert(before >= 0 && after >= 0);
  next.dirs[static_cast<std::size_t>(pos - 1)] = static_cast<std::uint8_t>(before);
  next.dirs[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(after);
  assert(is_valid_saw(next));
  return next;
}

MoveOutcome diagonal_move(const Conformation& c, int pos) {
  MoveOutcome out{std::nullopt, MoveKind::Diagonal, pos};
  const OccupancySet occupied(c.coords);
  const auto candidates = diagonal_candidates(c, pos, occupied);
  if (candidates.empty()) return out;
  out.result = apply_diagonal(c, pos, candidates.front());
  return out;
}

namespace {

// Re-anchors coords[0] at the origin, rebuilds the direction list and
// validates the walk.  `shift` receives the pre-normalization position of
// residue 0.
bool finalize_coords(Conformation& next, LatticePoint& shift) {
  shift = next.coords.front();
  if (shift != LatticePoint(0, 0, 0)) {
    for (auto& p : next.coords) p -= shift;
  }
  OccupancySet occ;
  occ.insert(next.coords.front());
  const int n = next.size();
  for (int i = 1; i < n; ++i) {
    const LatticePoint& p = next.coords[static_cast<std::size_t>(i)];
    if (occ.occupied(p)) return false;
    const int k = basis_index(p - next.coords[static_cast<std::size_t>(i - 1)]);
    if (k < 0) return false;
    next.dirs[static_cast<std::size_t>(i - 1)] = static_cast<std::uint8_t>(k);
    occ.insert(p);
  }
  next.energy_valid = false;
  return true;
}

}  // namespace

MoveOutcome pull_move(const Conformation& c, int pos, Rng& rng) {
  MoveOutcome out{std::nullopt, MoveKind::Pull, pos};
  const int n = c.size();
  if (pos < 0 || pos >= n || n < 2) return out;
  const OccupancySet occupied(c.coords);
  const auto& basis = basis_vectors();

  std::vector<LatticePoint> candidates;
  if (pos == n - 1) {
    // Tail residue: plain relocation around its only chain neighbour.
    const LatticePoint anchor = c.coords[static_cast<std::size_t>(n - 2)];
    for (int k = 0; k < 12; ++k) {
      const LatticePoint q = anchor + basis[k];
      if (!occupied.occupied(q)) candidates.push_back(q);
    }
  } else {
    const LatticePoint anchor = c.coords[static_cast<std::size_t>(pos + 1)];
    const LatticePoint self = c.coords[static_cast<std::size_t>(pos)];
    for (int k = 0; k < 12; ++k) {
      const LatticePoint q = anchor + basis[k];
      if (occupied.occupied(q)) continue;
      const bool immediate =
          pos == 0 || is_contact(q, c.coords[static_cast<std::size_t>(pos - 1)]);
      // A target adjacent to the vacated position keeps the drag connected.
      if (immediate || is_contact(q, self)) candidates.push_back(q);
    }
  }
  if (candidates.empty()) return out;
  const LatticePoint target =
      candidates[rng.below(static_cast<std::uint32_t>(candidates.size()))];

  Conformation next = c;
  next.coords[static_cast<std::size_t>(pos)] = target;
  out.displaced.emplace_back(pos, c.coords[static_cast<std::size_t>(pos)]);
  for (int j = pos - 1; j >= 0; --j) {
    if (is_contact(next.coords[static_cast<std::size_t>(j)],
                   next.coords[static_cast<std::size_t>(j + 1)])) {
      break;
    }
    next.coords[static_cast<std::size_t>(j)] =
        c.coords[static_cast<std::size_t>(j + 1)];
    out.displaced.emplace_back(j, c.coords[static_cast<std::size_t>(j)]);
  }
  if (!finalize_coords(next, out.origin_shift)) {
    out.displaced.clear();
    return out;
  }
  out.result = std::move(next);
  return out;
}

MoveOutcome tilt_move(const Conformation& c, int pos, Rng& rng) {
  (void)rng;  // candidates are tried in fixed order
  MoveOutcome out{std::nullopt, MoveKind::Tilt, pos};
  const int n = c.size();
  // Straight run of at least two equal steps starting at pos.
  if (pos < 0 || pos + 2 >= n || c.dirs[static_cast<std::size_t>(pos)] !=
                                     c.dirs[static_cast<std::size_t>(pos + 1)]) {
    return out;
  }
  const std::uint8_t run_dir = c.dirs[static_cast<std::size_t>(pos)];
  int end = pos + 2;
  while (end < n - 1 && c.dirs[static_cast<std::size_t>(end)] == run_dir) ++end;

  const auto& basis = basis_vectors();
  const LatticePoint axis = basis[run_dir];
  for (int k = 0; k < 12; ++k) {
    const LatticePoint t = basis[k];
    if (axis.dot(t) != 0) continue;  // only strictly parallel placements
    Conformation next = c;
    for (int i = pos; i <= end; ++i) {
      next.coords[static_cast<std::size_t>(i)] =
          c.coords[static_cast<std::size_t>(i)] + t;
    }
    for (int j = pos - 1; j >= 0; --j) {
      if (is_contact(next.coords[static_cast<std::size_t>(j)],
                     next.coords[static_cast<std::size_t>(j + 1)])) {
        break;
      }
      next.coords[static_cast<std::size_t>(j)] =
          c.coords[static_cast<std::size_t>(j + 1)];
    }
    for (int j = end + 1; j < n; ++j) {
      if (is_contact(next.coords[static_cast<std::size_t>(j)],
                     next.coords[static_cast<std::size_t>(j - 1)])) {
        break;
      }
      next.coords[static_cast<std::size_t>(j)] =
          c.coords[static_cast<std::size_t>(j - 1)];
    }
    if (finalize_coords(next, out.origin_shift)) {
      out.result = std::move(next);
      return out;
    }
  }
  return out;
}

double diagonal_bm_delta(const Conformation& c, const Sequence& seq, int pos,
                         const LatticePoint& target, const ContactMatrix& bm) {
  const int n = c.size();
  const LatticePoint old = c.coords[static_cast<std::size_t>(pos)];
  const char code = seq.code(pos);
  double delta = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k >= pos - 1 && k <= pos + 1) continue;
    const LatticePoint& pk = c.coords[static_cast<std::size_t>(k)];
    const bool now = is_contact(target, pk);
    const bool was = is_contact(old, pk);
    if (now == was) continue;
    const double e = bm.at(code, seq.code(k));
    delta += now ? e : -e;
  }
  return delta;
}

Conformation macro_mutation(const Conformation& c, const Sequence& seq,
                            int repeat, double p, Rng& rng,
                            MacroGuidance guidance, const ContactMatrix& bm,
                            MacroStats* stats) {
  Conformation conf = c;
  conf.energy_valid = false;
  const int n = conf.size();
  for (int sweep = 0; sweep < repeat; ++sweep) {
    if (stats) ++stats->sweeps;
    const ResidueClass target_class =
        rng.bernoulli(p) ? ResidueClass::P : ResidueClass::H;
    // The core centre is fixed for the whole sweep.
    const Eigen::Vector3d hcc = hydrophobic_core_center(conf, seq);
    OccupancySet occupied(conf.coords);
    for (int j = 1; j + 1 < n; ++j) {
      if (seq.klass(j) != target_class) continue;
      const auto candidates = diagonal_candidates(conf, j, occupied);
      if (candidates.empty()) continue;
      const LatticePoint old = conf.coords[static_cast<std::size_t>(j)];
      std::optional<LatticePoint> accepted;
      if (target_class == ResidueClass::P) {
        accepted = candidates.front();
      } else if (guidance == MacroGuidance::HccDistance) {
        const double d_old = (old.cast<double>() - hcc).squaredNorm();
        for (const auto& q : candidates) {
          const double d_new = (q.cast<double>() - hcc).squaredNorm();
          if (d_new <= d_old) {
            accepted = q;
            if (stats && d_new > d_old) ++stats->h_distance_violations;
            break;
          }
        }
      } else {
        for (const auto& q : candidates) {
          const double delta = diagonal_bm_delta(conf, seq, j, q, bm);
          if (delta <= 1e-9) {
            accepted = q;
#ifndef NDEBUG
            // Incremental delta must agree with the full evaluation.
            const double before = evaluate(conf, seq, EnergyModel::BM, bm);
            assert(std::abs(evaluate(apply_diagonal(conf, j, q), seq,
                                     EnergyModel::BM, bm) -
                            (before + delta)) < 1e-6);
#endif
            break;
          }
        }
      }
      if (!accepted) continue;
      conf = apply_diagonal(conf, j, *accepted);
      occupied.erase(old);
      occupied.insert(*accepted);
      if (stats) {
        if (target_class == ResidueClass::H) {
          ++stats->moved_h;
        } else {
          ++stats->moved_p;
        }
      }
    }
  }
  return conf;
}

}  // namespace fccfold
