#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fccfold/chain.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/engine.hpp"

namespace fccfold {

/// One FCC lattice step (Euclidean length sqrt(2)) in angstroms.
inline constexpr double kLatticeStepAngstrom = 3.8;

// Native-structure reference: the full pairwise distance matrix in angstroms.
class ReferenceStructure {
 public:
  static ReferenceStructure from_distances(Eigen::MatrixXd distances);
  static ReferenceStructure from_coordinates(
      const std::vector<Eigen::Vector3d>& xyz);
  // CSV distance matrix, or an `index x y z` coordinate file (angstroms).
  static ReferenceStructure load_file(const std::string& path);

  int size() const { return static_cast<int>(distances_.rows()); }
  double distance(int i, int j) const { return distances_(i, j); }
  const Eigen::MatrixXd& distances() const { return distances_; }

 private:
  explicit ReferenceStructure(Eigen::MatrixXd distances);
  Eigen::MatrixXd distances_;
};

// Distance-matrix RMSD: lattice distances are calibrated so one lattice step
// equals kLatticeStepAngstrom, then compared pairwise against the reference.
// No superposition is performed.
double rmsd(const Conformation& c, const ReferenceStructure& ref);

/// Percent improvement of a target energy over a reference: (t - r) / r * 100.
double energy_improvement_percent(double target, double reference);

/// Percent improvement of a target RMSD over a reference: (r - t) / r * 100.
double rmsd_improvement_percent(double target, double reference);

struct SampleSet {
  std::string label;
  std::vector<double> values;
};

struct MannWhitneyResult {
  double u_a = 0;
  double u_b = 0;
  double p_two_sided = 1;
  bool significant_95 = false;
};

// Rank-sum U with midrank ties; exact permutation null for pooled sizes up
// to 20, tie-corrected normal approximation beyond.
MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b);

struct SummaryRow {
  std::string seq;
  int size = 0;
  int h = 0;
  std::string variant;
  double best = 0;                  // minimum BM-reported energy over runs
  double avg = 0;                   // mean BM-reported energy
  std::optional<double> best_rmsd;  // present when a reference was given
  std::optional<double> avg_rmsd;
  ContactCensus census;             // of the best conformation
};

SummaryRow summarize(const Sequence& seq, const std::string& variant,
                     const std::vector<RunRecord>& runs,
                     const ReferenceStructure* ref);

}  // namespace fccfold
