#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

namespace fccfold {

using LatticePoint = Eigen::Vector3i;
using Rotation = Eigen::Matrix3i;

// The 12 nearest-neighbour displacements of the face-centred-cubic lattice,
// in a fixed order that every direction encoding, tie-break and candidate
// enumeration in this library depends on.
const std::array<LatticePoint, 12>& basis_vectors();

/// Index of `delta` within basis_vectors(), or -1 if it is not a basis delta.
int basis_index(const LatticePoint& delta);

/// Index k' with basis_vectors()[k'] == -basis_vectors()[k].
int opposite_basis(int k);

/// Points reachable from the origin by basis steps have even coordinate sum.
inline bool on_lattice(const LatticePoint& p) {
  return ((p.x() + p.y() + p.z()) & 1) == 0;
}

std::array<LatticePoint, 12> neighbors(const LatticePoint& p);

/// True iff p and q are lattice neighbours (squared Euclidean distance 2).
inline bool is_contact(const LatticePoint& p, const LatticePoint& q) {
  const int dx = p.x() - q.x();
  const int dy = p.y() - q.y();
  const int dz = p.z() - q.z();
  return dx * dx + dy * dy + dz * dz == 2;
}

// The 24 proper rotations of the octahedral group, identity first.  Each maps
// the basis-vector set onto itself.
const std::vector<Rotation>& lattice_rotations();

// Dense key for occupancy sets.  Valid while every coordinate stays within
// +/-511 of the origin; chains of <= 256 residues starting at the origin
// cannot leave that box.
inline std::uint32_t pack_point(const LatticePoint& p) {
  return (static_cast<std::uint32_t>(p.x() + 512) << 20) |
         (static_cast<std::uint32_t>(p.y() + 512) << 10) |
         static_cast<std::uint32_t>(p.z() + 512);
}

/// Hash set of occupied lattice points.
class OccupancySet {
 public:
  OccupancySet() = default;
  template <typename Range>
  explicit OccupancySet(const Range& points) {
    for (const auto& p : points) insert(p);
  }

  bool occupied(const LatticePoint& p) const {
    return cells_.count(pack_point(p)) != 0;
  }
  void insert(const LatticePoint& p) { cells_.insert(pack_point(p)); }
  void erase(const LatticePoint& p) { cells_.erase(pack_point(p)); }
  std::size_t size() const { return cells_.size(); }

 private:
  std::unordered_set<std::uint32_t> cells_;
};

}  // namespace fccfold
