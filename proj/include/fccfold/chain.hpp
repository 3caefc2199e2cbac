#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fccfold/lattice.hpp"
#include "fccfold/rng.hpp"

namespace fccfold {

enum class ResidueClass : std::uint8_t { H, P };

/// True for the 20 standard one-letter amino-acid codes (upper case).
bool is_valid_code(char code);

// Hydrophobic: G A P V L I M F Y W. Polar: S T C N Q K H R D E.
ResidueClass classify(char code);

struct Residue {
  char code;
  ResidueClass klass;
};

class Sequence {
 public:
  Sequence(std::string id, std::string residues);

  // Accepts a FASTA record (id taken from the header line) or a plain
  // residue string; whitespace is ignored.  Invalid characters are rejected
  // with their 1-based position.
  static Sequence parse(const std::string& text, std::string fallback_id = "seq");

  const std::string& id() const { return id_; }
  const std::string& residues() const { return residues_; }
  int length() const { return static_cast<int>(residues_.size()); }
  char code(int i) const { return residues_[static_cast<std::size_t>(i)]; }
  ResidueClass klass(int i) const { return klass_[static_cast<std::size_t>(i)]; }
  bool is_h(int i) const { return klass(i) == ResidueClass::H; }
  int h_count() const { return h_count_; }

 private:
  std::string id_;
  std::string residues_;
  std::vector<ResidueClass> klass_;
  int h_count_ = 0;
};

// A chain embedding: absolute basis-index encoding plus the coordinates it
// rebuilds to, with coords[0] pinned at the origin.  The energy cache is
// owned by whoever evaluates it (see energy.hpp) and is only meaningful
// while energy_valid is set.
struct Conformation {
  std::vector<std::uint8_t> dirs;     // length N-1
  std::vector<LatticePoint> coords;   // length N
  double energy = 0.0;
  bool energy_valid = false;

  int size() const { return static_cast<int>(coords.size()); }
};

struct Rebuild {
  std::vector<LatticePoint> coords;
  int collision_at = -1;  // residue index of the first revisit, -1 if none
  bool ok() const { return collision_at < 0; }
};

/// Walks the direction list from the origin, reporting the first collision.
Rebuild rebuild_coords(std::span<const std::uint8_t> dirs);

/// Conformation from a direction list; throws FoldError on self-collision.
Conformation from_directions(std::vector<std::uint8_t> dirs);

/// Deterministic fallback structure: extended zig-zag alternating v1, v4.
Conformation zigzag(int n);

// Random self-avoiding walk by repeated random extension; a blocked walk is
// restarted from scratch.  After attempt_cap failed walks the deterministic
// zig-zag is returned, so a result is guaranteed.
Conformation initialise(const Sequence& seq, Rng& rng, int attempt_cap = 1000);

/// Distinct coordinates and consecutive lattice contacts, matching dirs.
bool is_valid_saw(const Conformation& c);

// Population identity: two conformations are duplicates iff their direction
// lists are identical (coordinates are a function of directions).
using DuplicateKey = std::string;
DuplicateKey duplicate_key(const Conformation& c);

/// Fraction of direction entries where a and b differ (same length required).
double direction_difference(const Conformation& a, const Conformation& b);

}  // namespace fccfold
