#include "fccfold/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "fccfold/error.hpp"

namespace fccfold {

ReferenceStructure::ReferenceStructure(Eigen::MatrixXd distances)
    : distances_(std::move(distances)) {}

ReferenceStructure ReferenceStructure::from_distances(Eigen::MatrixXd d) {
  if (d.rows() != d.cols() || d.rows() < 2) {
    throw FoldError("reference distance matrix must be square with size >= 2");
  }
  for (int i = 0; i < d.rows(); ++i) {
    if (std::abs(d(i, i)) > 1e-9) {
      throw FoldError("reference distance matrix has nonzero diagonal at row " +
                      std::to_string(i + 1));
    }
    for (int j = 0; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0) {
        throw FoldError("reference distances must be finite and nonnegative");
      }
      if (std::abs(d(i, j) - d(j, i)) > 1e-6) {
        throw FoldError("reference distance matrix asymmetric at (" +
                        std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
      }
    }
  }
  return ReferenceStructure(std::move(d));
}

ReferenceStructure ReferenceStructure::from_coordinates(
    const std::vector<Eigen::Vector3d>& xyz) {
  const int n = static_cast<int>(xyz.size());
  if (n < 2) throw FoldError("reference needs at least 2 coordinates");
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0;
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (xyz[static_cast<std::size_t>(i)] -
                           xyz[static_cast<std::size_t>(j)])
                              .norm();
    }
  }
  return ReferenceStructure(std::move(d));
}

ReferenceStructure ReferenceStructure::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoldError("cannot open reference file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::vector<Eigen::Vector3d> coords;
  bool coordinate_form = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> cells;
    if (line.find(',') != std::string::npos) {
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    } else {
      std::istringstream ls(line);
      double v = 0;
      while (ls >> v) cells.push_back(v);
    }
    if (cells.size() == 4 && (rows.empty() || coordinate_form)) {
      coordinate_form = true;  // `index x y z`
      coords.emplace_back(cells[1], cells[2], cells[3]);
    } else {
      rows.push_back(std::move(cells));
    }
  }
  if (coordinate_form) return from_coordinates(coords);
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw FoldError("reference matrix row " + std::to_string(i + 1) +
                      " has wrong width in '" + path + "'");
    }
    for (int j = 0; j < n; ++j) {
      d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return from_distances(std::move(d));
}

double rmsd(const Conformation& c, const ReferenceStructure& ref) {
  const int n = c.size();
  if (ref.size() != n) {
    throw FoldError("reference has " + std::to_string(ref.size()) +
                    " residues but conformation has " + std::to_string(n));
  }
  const double scale = kLatticeStepAngstrom / std::sqrt(2.0);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d pi = c.coords[static_cast<std::size_t>(i)].cast<double>();
    for (int j = i + 1; j < n; ++j) {
      const double dp =
          (pi - c.coords[static_cast<std::size_t>(j)].cast<double>()).norm() *
          scale;
      const double diff = dp - ref.distance(i, j);
      sum += diff * diff;
    }
  }
  return std::sqrt(sum / (static_cast<double>(n) * (n - 1) / 2.0));
}

double energy_improvement_percent(double target, double reference) {
  if (reference == 0) throw FoldError("relative improvement undefined for zero reference");
  return (target - reference) / reference * 100.0;
}

double rmsd_improvement_percent(double target, double reference) {
  if (reference == 0) throw FoldError("relative improvement undefined for zero reference");
  return (reference - target) / reference * 100.0;
}

namespace {

// Midranks of the pooled sample; returns (ranks of a, tie term sum t^3 - t).
struct PooledRanks {
  std::vector<double> rank_a;
  double tie_sum = 0;
};

PooledRanks pooled_midranks(const std::vector<double>& a,
                            const std::vector<double>& b) {
  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> pool;
  pool.reserve(a.size() + b.size());
  for (double v : a) pool.push_back({v, true});
  for (double v : b) pool.push_back({v, false});
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Tagged& x, const Tagged& y) { return x.value < y.value; });
  PooledRanks out;
  std::size_t i = 0;
  while (i < pool.size()) {
    std::size_t j = i;
    while (j < pool.size() && pool[j].value == pool[i].value) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pool[k].from_a) out.rank_a.push_back(midrank);
    }
    if (t > 1) out.tie_sum += t * t * t - t;
    i = j;
  }
  return out;
}

// Exact two-sided permutation p-value for the U statistic with midranks:
// enumerate every n-choose-na assignment of pooled ranks to group a.
double exact_two_sided_p(const std::vector<double>& pooled_ranks, int na,
                         double u_obs, double mean_u) {
  const int n = static_cast<int>(pooled_ranks.size());
  const double offset = static_cast<double>(na) * (na + 1) / 2.0;
  const double extremity = std::abs(u_obs - mean_u) - 1e-12;
  long long total = 0;
  long long at_least = 0;
  // Depth-first over combinations, accumulating the rank sum.
  std::vector<int> stack;
  const std::function<void(int, double)> visit = [&](int start, double rank_sum) {
    if (static_cast<int>(stack.size()) == na) {
      ++total;
      const double u = rank_sum - offset;
      if (std::abs(u - mean_u) >= extremity) ++at_least;
      return;
    }
    const int need = na - static_cast<int>(stack.size());
    for (int i = start; i <= n - need; ++i) {
      stack.push_back(i);
      visit(i + 1, rank_sum + pooled_ranks[static_cast<std::size_t>(i)]);
      stack.pop_back();
    }
  };
  visit(0, 0.0);
  return static_cast<double>(at_least) / static_cast<double>(total);
}

}  // namespace

MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b) {
  if (a.values.empty() || b.values.empty()) {
    throw FoldError("Mann-Whitney U needs non-empty samples");
  }
  const auto na = static_cast<double>(a.values.size());
  const auto nb = static_cast<double>(b.values.size());
  const PooledRanks ranks = pooled_midranks(a.values, b.values);
  double rank_sum_a = 0;
  for (double r : ranks.rank_a) rank_sum_a += r;

  MannWhitneyResult result;
  result.u_a = rank_sum_a - na * (na + 1) / 2.0;
  result.u_b = na * nb - result.u_a;
  const double mean_u = na * nb / 2.0;

  const std::size_t n = a.values.size() + b.values.size();
  if (n <= 20) {
    std::vector<double> pooled;
    pooled.reserve(n);
    {
      std::vector<double> all(a.values);
      all.insert(all.end(), b.values.begin(), b.values.end());
      std::sort(all.begin(), all.end());
      // midranks of the sorted pool
      std::size_t i = 0;
      while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        const double midrank =
            (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) pooled.push_back(midrank);
        i = j;
      }
    }
    result.p_two_sided = exact_two_sided_p(
        pooled, static_cast<int>(a.values.size()), result.u_a, mean_u);
  } else {
    const double nn = static_cast<double>(n);
    const double variance =
        na * nb / 12.0 * ((nn + 1) - ranks.tie_sum / (nn * (nn - 1)));
    if (variance <= 0) {
      result.p_two_sided = 1.0;  // all observations tied
    } else {
      const double z =
          (std::abs(result.u_a - mean_u) - 0.5) / std::sqrt(variance);
      result.p_two_sided = std::erfc(std::max(z, 0.0) / std::sqrt(2.0));
    }
  }
  result.p_two_sided = std::min(result.p_two_sided, 1.0);
  result.significant_95 = result.p_two_sided < 0.05;
  return result;
}

SummaryRow summarize(const Sequence& seq, const std::string& variant,
                     const std::vector<RunRecord>& runs,
                     const ReferenceStructure* ref) {
  if (runs.empty()) throw FoldError("summarize needs at least one run");
  SummaryRow row;
  row.seq = seq.id();
  row.size = seq.length();
  row.h = seq.h_count();
  row.variant = variant;
  double sum = 0;
  std::size_t best_run = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    sum += runs[i].best_bm_energy;
    if (runs[i].best_bm_energy < runs[best_run].best_bm_energy) best_run = i;
  }
  row.best = runs[best_run].best_bm_energy;
  row.avg = sum / static_cast<double>(runs.size());
  if (ref != nullptr) {
    double rmsd_sum = 0;
    double rmsd_best = std::numeric_limits<double>::infinity();
    for (const auto& record : runs) {
      const double r = rmsd(record.best, *ref);
      rmsd_sum += r;
      rmsd_best = std::min(rmsd_best, r);
    }
    row.best_rmsd = rmsd_best;
    row.avg_rmsd = rmsd_sum / static_cast<double>(runs.size());
  }
  row.census = contact_census(runs[best_run].best, seq);
  return row;
}

}  // namespace fccfold
