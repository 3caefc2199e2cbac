#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>

#include "fccfold/chain.hpp"

namespace fccfold {

inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

/// Position of a one-letter code within kAminoAcids, or -1.
int amino_index(char code);

enum class EnergyModel { HP, BM };
const char* to_string(EnergyModel model);
EnergyModel energy_model_from_string(const std::string& name);

// Symmetric 20x20 residue-residue contact energies keyed by one-letter code.
// Loaded from CSV: optional '#' comment lines, then a header row naming the
// 20 codes (column order), then 20 value rows in the same order.
class ContactMatrix {
 public:
  static ContactMatrix load_csv(std::istream& in, std::string name);
  static ContactMatrix load_file(const std::string& path);
  static ContactMatrix zeros(std::string name);

  double at(char a, char b) const;
  double at_index(int a, int b) const { return values_(a, b); }
  const std::string& name() const { return name_; }
  const Eigen::Matrix<double, 20, 20>& values() const { return values_; }

 private:
  ContactMatrix(Eigen::Matrix<double, 20, 20> values, std::string name);

  Eigen::Matrix<double, 20, 20> values_;
  std::string name_;
};

struct ContactCensus {
  int hh = 0;
  int hp = 0;
  int pp = 0;
  int total = 0;
};

// Sum over non-consecutive residue pairs in lattice contact: -1 per H-H pair
// under HP, the matrix entry for the pair under BM.
double evaluate(const Conformation& c, const Sequence& seq, EnergyModel model,
                const ContactMatrix& matrix);

/// Non-consecutive contacts partitioned by residue classes.
ContactCensus contact_census(const Conformation& c, const Sequence& seq);

// Centroid of the coordinates of the hydrophobic residues (real-valued).
// Throws FoldError when the sequence has no H residue.
Eigen::Vector3d hydrophobic_core_center(const Conformation& c,
                                        const Sequence& seq);

}  // namespace fccfold
