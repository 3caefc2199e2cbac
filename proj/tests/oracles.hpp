// Independent reference implementations used only by tests.  These stay
// deliberately decoupled from the library internals they check: distances,
// residue classes and pair sums are recomputed from scratch.
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "fccfold/chain.hpp"
#include "fccfold/energy.hpp"

namespace fccfold::testing {

inline bool oracle_is_h(char code) {
  static const std::string h = "GAPVLIMFYW";
  return h.find(code) != std::string::npos;
}

inline int oracle_sqr_dist(const LatticePoint& a, const LatticePoint& b) {
  const int dx = a.x() - b.x();
  const int dy = a.y() - b.y();
  const int dz = a.z() - b.z();
  return dx * dx + dy * dy + dz * dz;
}

// Plain double loop over all residue pairs, skipping chain neighbours.
inline double oracle_energy(const Conformation& c, const std::string& residues,
                            EnergyModel model, const ContactMatrix& matrix) {
  const int n = static_cast<int>(residues.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (oracle_sqr_dist(c.coords[static_cast<std::size_t>(i)],
                          c.coords[static_cast<std::size_t>(j)]) != 2) {
        continue;
      }
      if (model == EnergyModel::HP) {
        if (oracle_is_h(residues[static_cast<std::size_t>(i)]) &&
            oracle_is_h(residues[static_cast<std::size_t>(j)])) {
          total -= 1.0;
        }
      } else {
        total += matrix.at(residues[static_cast<std::size_t>(i)],
                           residues[static_cast<std::size_t>(j)]);
      }
    }
  }
  return total;
}

// Exhaustive minimum HP energy over all self-avoiding walks of n all-H
// residues.  The first step is pinned to v1 and the second step to one orbit
// representative per symmetry class of the stabilizer of v1, so the scan
// covers every walk modulo the 48 lattice symmetries.
inline double min_hp_energy_exhaustive(int n) {
  const auto& basis = basis_vectors();
  std::vector<LatticePoint> pos(static_cast<std::size_t>(n));
  pos[0] = LatticePoint(0, 0, 0);
  pos[1] = basis[0];
  int best = 0;

  const auto contacts_with = [&](const LatticePoint& p, int placed) {
    int count = 0;
    for (int j = 0; j <= placed - 2; ++j) {
      if (oracle_sqr_dist(p, pos[static_cast<std::size_t>(j)]) == 2) ++count;
    }
    return count;
  };

  // v1, v3, v5, v9: one representative per orbit of the second step.
  static constexpr std::array<int, 4> kSecondSteps = {0, 2, 4, 8};

  struct Dfs {
    int n;
    std::vector<LatticePoint>& pos;
    const std::array<LatticePoint, 12>& basis;
    int& best;
    const decltype(contacts_with)& contacts;

    void operator()(int i, int acc) {
      if (i == n) {
        best = std::max(best, acc);
        return;
      }
      for (int k = 0; k < 12; ++k) {
        const LatticePoint p = pos[static_cast<std::size_t>(i - 1)] + basis[k];
        bool occupied = false;
        for (int j = 0; j < i; ++j) {
          if (pos[static_cast<std::size_t>(j)] == p) {
            occupied = true;
            break;
          }
        }
        if (occupied) continue;
        const int gained = contacts(p, i);
        pos[static_cast<std::size_t>(i)] = p;
        (*this)(i + 1, acc + gained);
      }
    }
  };

  Dfs dfs{n, pos, basis, best, contacts_with};
  for (int k : kSecondSteps) {
    const LatticePoint p = pos[1] + basis[k];
    if (p == pos[0]) continue;
    pos[2] = p;
    dfs(3, contacts_with(p, 2));
  }
  return -static_cast<double>(best);
}

/// Random valid walk of n residues (restart on dead end, never fails for
/// small n in practice).
inline Conformation random_walk_conformation(Rng& rng, int n) {
  const auto& basis = basis_vectors();
  while (true) {
    Conformation c;
    c.coords.emplace_back(0, 0, 0);
    OccupancySet occ;
    occ.insert(c.coords.back());
    bool dead = false;
    for (int i = 1; i < n; ++i) {
      const int k = static_cast<int>(rng.below(12));
      const LatticePoint p = c.coords.back() + basis[k];
      if (occ.occupied(p)) {
        dead = true;
        break;
      }
      occ.insert(p);
      c.coords.push_back(p);
      c.dirs.push_back(static_cast<std::uint8_t>(k));
    }
    if (!dead) return c;
  }
}

inline Sequence all_h_sequence(int n, const std::string& id = "toy") {
  return Sequence(id, std::string(static_cast<std::size_t>(n), 'A'));
}

inline Sequence random_sequence(Rng& rng, int n, const std::string& id = "rnd") {
  std::string residues;
  for (int i = 0; i < n; ++i) {
    residues += kAminoAcids[rng.below(20)];
  }
  // Guarantee at least one hydrophobic residue so HCC stays defined.
  residues[0] = 'A';
  return Sequence(id, residues);
}

}  // namespace fccfold::testing
