#include "fccfold/chain.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fccfold/error.hpp"

namespace fccfold {

namespace {
constexpr const char* kHydrophobic = "GAPVLIMFYW";
constexpr const char* kPolar = "STCNQKHRDE";
}  // namespace

bool is_valid_code(char code) {
  return std::string_view(kHydrophobic).find(code) != std::string_view::npos ||
         std::string_view(kPolar).find(code) != std::string_view::npos;
}

ResidueClass classify(char code) {
  if (std::string_view(kHydrophobic).find(code) != std::string_view::npos) {
    return ResidueClass::H;
  }
  if (std::string_view(kPolar).find(code) != std::string_view::npos) {
    return ResidueClass::P;
  }
  throw FoldError(std::string("invalid residue code '") + code + "'");
}

Sequence::Sequence(std::string id, std::string residues)
    : id_(std::move(id)), residues_(std::move(residues)) {
  if (residues_.size() < 3) {
    throw FoldError("sequence '" + id_ + "' too short: need at least 3 residues");
  }
  klass_.reserve(residues_.size());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const char c = residues_[i];
    if (!is_valid_code(c)) {
      std::ostringstream msg;
      msg << "invalid residue '" << c << "' at position " << (i + 1)
          << " in sequence '" << id_ << "'";
      throw FoldError(msg.str());
    }
    const ResidueClass k = classify(c);
    klass_.push_back(k);
    if (k == ResidueClass::H) ++h_count_;
  }
}

Sequence Sequence::parse(const std::string& text, std::string fallback_id) {
  std::string id = std::move(fallback_id);
  std::string residues;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '>') {
      if (saw_header) break;  // only the first FASTA record is used
      saw_header = true;
      std::istringstream header(line.substr(1));
      std::string token;
      if (header >> token) id = token;
      continue;
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      residues += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  return Sequence(std::move(id), std::move(residues));
}

Rebuild rebuild_coords(std::span<const std::uint8_t> dirs) {
  Rebuild out;
  out.coords.reserve(dirs.size() + 1);
  out.coords.emplace_back(0, 0, 0);
  OccupancySet occ;
  occ.insert(out.coords.back());
  const auto& basis = basis_vectors();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const LatticePoint next = out.coords.back() + basis[dirs[i]];
    if (occ.occupied(next)) {
      out.collision_at = static_cast<int>(i) + 1;
      return out;
    }
    occ.insert(next);
    out.coords.push_back(next);
  }
  return out;
}

Conformation from_directions(std::vector<std::uint8_t> dirs) {
  Rebuild r = rebuild_coords(dirs);
  if (!r.ok()) {
    std::ostringstream msg;
    msg << "direction list self-collides at residue " << r.collision_at;
    throw FoldError(msg.str());
  }
  Conformation c;
  c.dirs = std::move(dirs);
  c.coords = std::move(r.coords);
  return c;
}

Conformation zigzag(int n) {
  std::vector<std::uint8_t> dirs;
  dirs.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (int i = 0; i + 1 < n; ++i) dirs.push_back(i % 2 == 0 ? 0 : 3);  // v1, v4
  return from_directions(std::move(dirs));
}

Conformation initialise(const Sequence& seq, Rng& rng, int attempt_cap) {
  const int n = seq.length();
  const auto& basis = basis_vectors();
  for (int attempt = 0; attempt < attempt_cap; ++attempt) {
    Conformation c;
    c.coords.emplace_back(0, 0, 0);
    c.dirs.reserve(static_cast<std::size_t>(n - 1));
    OccupancySet occ;
    occ.insert(c.coords.back());
    bool dead_end = false;
    for (int i = 1; i < n; ++i) {
      const int k = static_cast<int>(rng.below(12));
      const LatticePoint node = c.coords.back() + basis[k];
      if (occ.occupied(node)) {
        dead_end = true;  // restart the whole walk
        break;
      }
      occ.insert(node);
      c.coords.push_back(node);
      c.dirs.push_back(static_cast<std::uint8_t>(k));
    }
    if (!dead_end) return c;
  }
  return zigzag(n);
}

bool is_valid_saw(const Conformation& c) {
  if (c.coords.empty() || c.dirs.size() + 1 != c.coords.size()) return false;
  if (c.coords.front() != LatticePoint(0, 0, 0)) return false;
  OccupancySet occ;
  const auto& basis = basis_vectors();
  occ.insert(c.coords.front());
  for (std::size_t i = 0; i + 1 < c.coords.size(); ++i) {
    if (c.dirs[i] > 11) return false;
    if (c.coords[i + 1] != c.coords[i] + basis[c.dirs[i]]) return false;
    if (occ.occupied(c.coords[i + 1])) return false;
    occ.insert(c.coords[i + 1]);
  }
  return true;
}

DuplicateKey duplicate_key(const Conformation& c) {
  return DuplicateKey(reinterpret_cast<const char*>(c.dirs.data()),
                      c.dirs.size());
}

double direction_difference(const Conformation& a, const Conformation& b) {
  const std::size_t n = a.dirs.size();
  if (n == 0 || n != b.dirs.size()) return n == b.dirs.size() ? 0.0 : 1.0;
  std::size_t differing = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.dirs[i] != b.dirs[i]) ++differing;
  }
  return static_cast<double>(differing) / static_cast<double>(n);
}

}  // namespace fccfold
