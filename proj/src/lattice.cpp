#include "fccfold/lattice.hpp"

#include <algorithm>

namespace fccfold {

const std::array<LatticePoint, 12>& basis_vectors() {
  static const std::array<LatticePoint, 12> kBasis = {{
      {1, 1, 0},    // v1
      {-1, -1, 0},  // v2
      {-1, 1, 0},   // v3
      {1, -1, 0},   // v4
      {0, 1, 1},    // v5
      {0, 1, -1},   // v6
      {1, 0, 1},    // v7
      {1, 0, -1},   // v8
      {0, -1, 1},   // v9
      {-1, 0, 1},   // v10
      {0, -1, -1},  // v11
      {-1, 0, -1},  // v12
  }};
  return kBasis;
}

namespace {

// 27-entry lookup keyed on the delta components, each in {-1, 0, 1}.
std::array<signed char, 27> make_index_table() {
  std::array<signed char, 27> table;
  table.fill(-1);
  const auto& basis = basis_vectors();
  for (int k = 0; k < 12; ++k) {
    const auto& v = basis[k];
    table[static_cast<std::size_t>((v.x() + 1) * 9 + (v.y() + 1) * 3 +
                                   (v.z() + 1))] = static_cast<signed char>(k);
  }
  return table;
}

}  // namespace

int basis_index(const LatticePoint& delta) {
  if (delta.x() < -1 || delta.x() > 1 || delta.y() < -1 || delta.y() > 1 ||
      delta.z() < -1 || delta.z() > 1) {
    return -1;
  }
  static const std::array<signed char, 27> kTable = make_index_table();
  return kTable[static_cast<std::size_t>((delta.x() + 1) * 9 +
                                         (delta.y() + 1) * 3 + (delta.z() + 1))];
}

int opposite_basis(int k) {
  static const std::array<signed char, 12> kOpposite = {1, 0, 3,  2, 10, 8,
                                                        11, 9, 5, 7, 4,  6};
  return kOpposite[static_cast<std::size_t>(k)];
}

std::array<LatticePoint, 12> neighbors(const LatticePoint& p) {
  std::array<LatticePoint, 12> out;
  const auto& basis = basis_vectors();
  for (int k = 0; k < 12; ++k) out[static_cast<std::size_t>(k)] = p + basis[k];
  return out;
}

const std::vector<Rotation>& lattice_rotations() {
  static const std::vector<Rotation> kRotations = [] {
    std::vector<Rotation> rotations;
    rotations.reserve(24);
    int perm[3] = {0, 1, 2};
    // All 48 signed permutation matrices; the proper (det +1) half forms the
    // rotation group.  Enumeration order is fixed: permutations in
    // lexicographic order, sign patterns in binary order, so the identity
    // comes first.
    do {
      for (int signs = 0; signs < 8; ++signs) {
        Rotation r = Rotation::Zero();
        for (int row = 0; row < 3; ++row) {
          r(row, perm[row]) = (signs >> row) & 1 ? -1 : 1;
        }
        const int det = r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
                        r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
                        r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
        if (det == 1) rotations.push_back(r);
      }
    } while (std::next_permutation(perm, perm + 3));
    return rotations;
  }();
  return kRotations;
}

}  // namespace fccfold
