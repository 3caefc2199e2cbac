#include "fccfold/energy.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "fccfold/error.hpp"

namespace fccfold {

int amino_index(char code) {
  const auto pos = kAminoAcids.find(code);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

const char* to_string(EnergyModel model) {
  return model == EnergyModel::HP ? "HP" : "BM";
}

EnergyModel energy_model_from_string(const std::string& name) {
  if (name == "HP" || name == "hp") return EnergyModel::HP;
  if (name == "BM" || name == "bm") return EnergyModel::BM;
  throw FoldError("unknown energy model '" + name + "' (expected HP or BM)");
}

ContactMatrix::ContactMatrix(Eigen::Matrix<double, 20, 20> values,
                             std::string name)
    : values_(std::move(values)), name_(std::move(name)) {}

ContactMatrix ContactMatrix::zeros(std::string name) {
  return ContactMatrix(Eigen::Matrix<double, 20, 20>::Zero(), std::move(name));
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    // trim surrounding blanks
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? std::string()
                        : cell.substr(first, last - first + 1));
  }
  return cells;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

ContactMatrix ContactMatrix::load_csv(std::istream& in, std::string name) {
  std::string line;
  if (!next_content_line(in, line)) {
    throw FoldError("contact matrix '" + name + "': missing header row");
  }
  const auto header = split_csv_row(line);
  if (header.size() != 20) {
    throw FoldError("contact matrix '" + name + "': header must name 20 codes, got " +
                    std::to_string(header.size()));
  }
  std::array<int, 20> col_code{};  // column -> amino index
  std::array<bool, 20> seen{};
  for (std::size_t c = 0; c < 20; ++c) {
    if (header[c].size() != 1 || amino_index(header[c][0]) < 0) {
      throw FoldError("contact matrix '" + name + "': bad header code '" +
                      header[c] + "' in column " + std::to_string(c + 1));
    }
    const int idx = amino_index(header[c][0]);
    if (seen[static_cast<std::size_t>(idx)]) {
      throw FoldError("contact matrix '" + name + "': duplicate code '" +
                      header[c] + "'");
    }
    seen[static_cast<std::size_t>(idx)] = true;
    col_code[c] = idx;
  }

  Eigen::Matrix<double, 20, 20> values;
  for (std::size_t r = 0; r < 20; ++r) {
    if (!next_content_line(in, line)) {
      throw FoldError("contact matrix '" + name + "': expected 20 value rows, got " +
                      std::to_string(r));
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 20) {
      throw FoldError("contact matrix '" + name + "': row " + std::to_string(r + 1) +
                      " has " + std::to_string(cells.size()) + " cells, expected 20");
    }
    for (std::size_t c = 0; c < 20; ++c) {
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(cells[c], &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed != cells[c].size() || !std::isfinite(value)) {
        throw FoldError("contact matrix '" + name + "': non-numeric cell '" +
                        cells[c] + "' at row " + std::to_string(r + 1) +
                        ", column " + std::to_string(c + 1));
      }
      values(col_code[r], col_code[c]) = value;
    }
  }

  for (int a = 0; a < 20; ++a) {
    for (int b = a + 1; b < 20; ++b) {
      if (std::abs(values(a, b) - values(b, a)) > 1e-9) {
        throw FoldError(std::string("contact matrix '") + name +
                        "': asymmetric pair (" + kAminoAcids[static_cast<std::size_t>(a)] +
                        ", " + kAminoAcids[static_cast<std::size_t>(b)] + "): " +
                        std::to_string(values(a, b)) + " vs " +
                        std::to_string(values(b, a)));
      }
    }
  }

  return ContactMatrix(std::move(values), std::move(name));
}

ContactMatrix ContactMatrix::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoldError("cannot open contact matrix file '" + path + "'");
  return load_csv(in, path);
}

double ContactMatrix::at(char a, char b) const {
  const int ia = amino_index(a);
  const int ib = amino_index(b);
  if (ia < 0 || ib < 0) {
    throw FoldError(std::string("contact matrix lookup with invalid code '") +
                    (ia < 0 ? a : b) + "'");
  }
  return values_(ia, ib);
}

double evaluate(const Conformation& c, const Sequence& seq, EnergyModel model,
                const ContactMatrix& matrix) {
  const int n = c.size();
  double total = 0.0;
  if (model == EnergyModel::HP) {
    for (int i = 0; i + 2 < n; ++i) {
      if (!seq.is_h(i)) continue;
      const LatticePoint pi = c.coords[static_cast<std::size_t>(i)];
      for (int j = i + 2; j < n; ++j) {
        if (seq.is_h(j) && is_contact(pi, c.coords[static_cast<std::size_t>(j)])) {
          total -= 1.0;
        }
      }
    }
    return total;
  }
  std::array<int, 256> idx_buf;
  std::vector<int> idx_heap;
  int* idx = idx_buf.data();
  if (n > 256) {
    idx_heap.resize(static_cast<std::size_t>(n));
    idx = idx_heap.data();
  }
  for (int i = 0; i < n; ++i) idx[i] = amino_index(seq.code(i));
  for (int i = 0; i + 2 < n; ++i) {
    const LatticePoint pi = c.coords[static_cast<std::size_t>(i)];
    for (int j = i + 2; j < n; ++j) {
      if (is_contact(pi, c.coords[static_cast<std::size_t>(j)])) {
        total += matrix.at_index(idx[i], idx[j]);
      }
    }
  }
  return total;
}

ContactCensus contact_census(const Conformation& c, const Sequence& seq) {
  ContactCensus census;
  const int n = c.size();
  for (int i = 0; i + 2 < n; ++i) {
    const LatticePoint pi = c.coords[static_cast<std::size_t>(i)];
    for (int j = i + 2; j < n; ++j) {
      if (!is_contact(pi, c.coords[static_cast<std::size_t>(j)])) continue;
      const int h = (seq.is_h(i) ? 1 : 0) + (seq.is_h(j) ? 1 : 0);
      if (h == 2) {
        ++census.hh;
      } else if (h == 1) {
        ++census.hp;
      } else {
        ++census.pp;
      }
      ++census.total;
    }
  }
  return census;
}

Eigen::Vector3d hydrophobic_core_center(const Conformation& c,
                                        const Sequence& seq) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  int count = 0;
  const int n = c.size();
  for (int i = 0; i < n; ++i) {
    if (!seq.is_h(i)) continue;
    sum += c.coords[static_cast<std::size_t>(i)].cast<double>();
    ++count;
  }
  if (count == 0) {
    throw FoldError("hydrophobic core centre undefined: sequence '" + seq.id() +
                    "' has no hydrophobic residue");
  }
  return sum / count;
}

}  // namespace fccfold
