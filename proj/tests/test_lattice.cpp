#include <doctest.h>

#include <algorithm>
#include <set>

#include "fccfold/lattice.hpp"
#include "fccfold/rng.hpp"

using namespace fccfold;

namespace {

std::set<std::array<int, 3>> as_set(const std::array<LatticePoint, 12>& points) {
  std::set<std::array<int, 3>> out;
  for (const auto& p : points) out.insert({p.x(), p.y(), p.z()});
  return out;
}

}  // namespace

TEST_CASE("basis vectors are the twelve FCC displacements in fixed order") {
  const auto& basis = basis_vectors();
  const std::array<LatticePoint, 12> expected = {{{1, 1, 0},
                                                  {-1, -1, 0},
                                                  {-1, 1, 0},
                                                  {1, -1, 0},
                                                  {0, 1, 1},
                                                  {0, 1, -1},
                                                  {1, 0, 1},
                                                  {1, 0, -1},
                                                  {0, -1, 1},
                                                  {-1, 0, 1},
                                                  {0, -1, -1},
                                                  {-1, 0, -1}}};
  for (int k = 0; k < 12; ++k) {
    CHECK(basis[static_cast<std::size_t>(k)] ==
          expected[static_cast<std::size_t>(k)]);
    CHECK(basis[static_cast<std::size_t>(k)].squaredNorm() == 2);
    CHECK(basis_index(basis[static_cast<std::size_t>(k)]) == k);
  }
}

TEST_CASE("basis set is closed under negation") {
  const auto& basis = basis_vectors();
  for (int k = 0; k < 12; ++k) {
    CHECK(basis[static_cast<std::size_t>(opposite_basis(k))] ==
          LatticePoint(-basis[static_cast<std::size_t>(k)]));
  }
}

TEST_CASE("neighbors of the origin") {
  const auto ns = neighbors(LatticePoint(0, 0, 0));
  const auto set = as_set(ns);
  CHECK(set.size() == 12);
  CHECK(set.count({1, 1, 0}) == 1);
  CHECK(set.count({-1, 0, -1}) == 1);
  CHECK(set.count({2, 0, 0}) == 0);
  CHECK(set.count({1, 0, 0}) == 0);
}

TEST_CASE("neighbors translate") {
  const auto ns = neighbors(LatticePoint(1, 1, 0));
  CHECK(std::count(ns.begin(), ns.end(), LatticePoint(2, 2, 0)) == 1);
}

TEST_CASE("is_contact checks squared distance two") {
  CHECK(is_contact({0, 0, 0}, {1, 1, 0}));
  CHECK_FALSE(is_contact({0, 0, 0}, {0, 0, 0}));
  CHECK_FALSE(is_contact({0, 0, 0}, {2, 0, 0}));
}

TEST_CASE("every neighbor is a contact, symmetric and translation invariant") {
  Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    LatticePoint p(static_cast<int>(rng.below(41)) - 20,
                   static_cast<int>(rng.below(41)) - 20,
                   static_cast<int>(rng.below(41)) - 20);
    const auto ns = neighbors(p);
    CHECK(as_set(ns).size() == 12);
    for (const auto& q : ns) {
      CHECK(is_contact(p, q));
      CHECK(is_contact(q, p));
    }
    const LatticePoint t(static_cast<int>(rng.below(9)) - 4,
                         static_cast<int>(rng.below(9)) - 4,
                         static_cast<int>(rng.below(9)) - 4);
    const LatticePoint q = ns[rng.below(12)];
    CHECK(is_contact(p + t, q + t) == is_contact(p, q));
  }
}

TEST_CASE("the 24 proper rotations match a brute-force enumeration") {
  const auto& rotations = lattice_rotations();
  REQUIRE(rotations.size() == 24);
  CHECK(rotations[0] == Rotation::Identity());

  // Independent oracle: all 48 signed permutation matrices, det +1 kept.
  std::set<std::array<int, 9>> expected;
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    for (int signs = 0; signs < 8; ++signs) {
      int m[3][3] = {};
      for (int row = 0; row < 3; ++row) {
        m[row][perm[row]] = (signs >> row) & 1 ? -1 : 1;
      }
      const int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      if (det == 1) {
        expected.insert({m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2],
                         m[2][0], m[2][1], m[2][2]});
      }
    }
  } while (std::next_permutation(perm, perm + 3));
  REQUIRE(expected.size() == 24);

  std::set<std::array<int, 9>> got;
  for (const auto& r : rotations) {
    got.insert({r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0),
                r(2, 1), r(2, 2)});
  }
  CHECK(got == expected);
}

TEST_CASE("each rotation permutes the basis set") {
  const auto& basis = basis_vectors();
  std::set<std::array<int, 3>> basis_set;
  for (const auto& v : basis) basis_set.insert({v.x(), v.y(), v.z()});
  for (const auto& r : lattice_rotations()) {
    std::set<std::array<int, 3>> image;
    for (const auto& v : basis) {
      const LatticePoint w = r * v;
      CHECK(basis_index(w) >= 0);
      image.insert({w.x(), w.y(), w.z()});
    }
    CHECK(image == basis_set);
  }
}

TEST_CASE("random walks stay on the even sublattice") {
  Rng rng(7);
  const auto& basis = basis_vectors();
  for (int walk = 0; walk < 2000; ++walk) {
    LatticePoint p(0, 0, 0);
    for (int step = 0; step < 24; ++step) {
      p += basis[rng.below(12)];
      CHECK(on_lattice(p));
    }
  }
}

TEST_CASE("pack_point is injective over chain-reachable coordinates") {
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const LatticePoint a(static_cast<int>(rng.below(511)) - 255,
                         static_cast<int>(rng.below(511)) - 255,
                         static_cast<int>(rng.below(511)) - 255);
    const LatticePoint b(static_cast<int>(rng.below(511)) - 255,
                         static_cast<int>(rng.below(511)) - 255,
                         static_cast<int>(rng.below(511)) - 255);
    if (a != b) CHECK(pack_point(a) != pack_point(b));
  }
}
