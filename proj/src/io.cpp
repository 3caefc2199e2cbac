#include "fccfold/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fccfold/error.hpp"

namespace fccfold {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_compact(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

}  // namespace

std::string export_structure(const Conformation& c, const Sequence& seq,
                             double energy) {
  if (c.size() != seq.length()) {
    throw FoldError("structure export: conformation and sequence length differ");
  }
  std::ostringstream out;
  out << "# id=" << seq.id() << " energy=" << format_double(energy) << "\n";
  for (int i = 0; i < c.size(); ++i) {
    const auto& p = c.coords[static_cast<std::size_t>(i)];
    out << i << ' ' << seq.code(i) << ' ' << p.x() << ' ' << p.y() << ' '
        << p.z() << "\n";
  }
  return out.str();
}

StructureFile import_structure(std::istream& in) {
  StructureFile file;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# id=", 0) != 0) {
    throw FoldError("structure file: missing '# id=... energy=...' header");
  }
  const auto energy_pos = line.find(" energy=");
  if (energy_pos == std::string::npos) {
    throw FoldError("structure file: header lacks energy field");
  }
  file.id = line.substr(5, energy_pos - 5);
  file.energy = std::stod(line.substr(energy_pos + 8));

  std::vector<LatticePoint> coords;
  int expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int index = 0;
    char code = 0;
    long x = 0, y = 0, z = 0;
    if (!(ls >> index >> code >> x >> y >> z)) {
      throw FoldError("structure file: malformed residue line '" + line + "'");
    }
    if (index != expected) {
      throw FoldError("structure file: expected residue index " +
                      std::to_string(expected) + ", got " + std::to_string(index));
    }
    ++expected;
    file.residues += code;
    coords.emplace_back(static_cast<int>(x), static_cast<int>(y),
                        static_cast<int>(z));
  }
  if (coords.size() < 3) {
    throw FoldError("structure file: need at least 3 residues");
  }

  // Normalize to the origin and derive the direction encoding.
  const LatticePoint origin = coords.front();
  Conformation c;
  c.coords.reserve(coords.size());
  OccupancySet occ;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const LatticePoint p = coords[i] - origin;
    if (occ.occupied(p)) {
      throw FoldError("structure file: residue " + std::to_string(i) +
                      " revisits an occupied lattice point");
    }
    occ.insert(p);
    c.coords.push_back(p);
    if (i > 0) {
      const int k = basis_index(c.coords[i] - c.coords[i - 1]);
      if (k < 0) {
        throw FoldError("structure file: residues " + std::to_string(i - 1) +
                        " and " + std::to_string(i) +
                        " are not lattice neighbours");
      }
      c.dirs.push_back(static_cast<std::uint8_t>(k));
    }
  }
  c.energy = file.energy;
  c.energy_valid = false;  // header energy is metadata until re-evaluated
  file.conformation = std::move(c);
  return file;
}

StructureFile import_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoldError("cannot open structure file '" + path + "'");
  return import_structure(in);
}

void write_structure_file(const std::string& path, const Conformation& c,
                          const Sequence& seq, double energy) {
  write_text_file(path, export_structure(c, seq, energy));
}

namespace {

ordered_json config_to_json(const RunConfig& config) {
  ordered_json j;
  j["variant"] = to_string(config.variant);
  j["pop_size"] = config.pop_size;
  j["time_budget_s"] = config.time_budget_s;
  j["max_generations"] = config.max_generations;
  j["rw_threshold"] = config.rw_threshold;
  j["macro_p"] = config.macro_p;
  j["macro_repeat"] = config.macro_repeat;
  j["seed"] = config.seed;
  j["first_improvement"] = config.first_improvement;
  ordered_json weights = ordered_json::object();
  for (int k = 0; k < kMoveKindCount; ++k) {
    weights[to_string(static_cast<MoveKind>(k))] =
        config.operator_weights[static_cast<std::size_t>(k)];
  }
  j["operator_weights"] = weights;
  ordered_json menu = ordered_json::array();
  for (MoveKind kind : operator_menu(config)) menu.push_back(to_string(kind));
  j["operator_menu"] = menu;
  j["rw_energy_band"] = config.rw_energy_band;
  j["rw_struct_min"] = config.rw_struct_min;
  j["rw_struct_max"] = config.rw_struct_max;
  j["rw_sweep_cap"] = config.rw_sweep_cap;
  j["init_attempt_cap"] = config.init_attempt_cap;
  j["crossover_attempt_factor"] = config.crossover_attempt_factor;
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig config;
  config.variant = variant_from_string(j.at("variant").get<std::string>());
  config.pop_size = j.at("pop_size").get<int>();
  config.time_budget_s = j.at("time_budget_s").get<double>();
  config.max_generations = j.at("max_generations").get<std::int64_t>();
  config.rw_threshold = j.at("rw_threshold").get<int>();
  config.macro_p = j.at("macro_p").get<double>();
  config.macro_repeat = j.at("macro_repeat").get<int>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.first_improvement = j.at("first_improvement").get<bool>();
  const auto& weights = j.at("operator_weights");
  for (int k = 0; k < kMoveKindCount; ++k) {
    config.operator_weights[static_cast<std::size_t>(k)] =
        weights.at(to_string(static_cast<MoveKind>(k))).get<double>();
  }
  config.rw_energy_band = j.at("rw_energy_band").get<double>();
  config.rw_struct_min = j.at("rw_struct_min").get<double>();
  config.rw_struct_max = j.at("rw_struct_max").get<double>();
  config.rw_sweep_cap = j.at("rw_sweep_cap").get<int>();
  config.init_attempt_cap = j.at("init_attempt_cap").get<int>();
  config.crossover_attempt_factor = j.at("crossover_attempt_factor").get<int>();
  return config;
}

}  // namespace

std::string run_record_to_json(const RunRecord& record) {
  ordered_json j;
  j["schema"] = "fccfold.run/1";
  j["sequence"] = {{"id", record.sequence_id},
                   {"residues", record.sequence},
                   {"length", record.sequence.size()}};
  j["config"] = config_to_json(record.config);
  ordered_json best;
  best["search_energy"] = record.best_search_energy;
  best["bm_energy"] = record.best_bm_energy;
  best["directions"] = record.best.dirs;
  ordered_json coords = ordered_json::array();
  for (const auto& p : record.best.coords) {
    coords.push_back({p.x(), p.y(), p.z()});
  }
  best["coords"] = coords;
  j["result"] = {{"generations", record.generations},
                 {"stagnation_recoveries", record.stagnation_recoveries},
                 {"rw_members_unchanged", record.rw_members_unchanged},
                 {"best", best}};
  ordered_json trace = ordered_json::array();
  for (const auto& point : record.trace) {
    trace.push_back({{"gen", point.generation}, {"energy", point.energy}});
  }
  j["trace"] = trace;
  j["stagnation_gens"] = record.stagnation_gens;
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (j.at("schema").get<std::string>() != "fccfold.run/1") {
    throw FoldError("unsupported run record schema");
  }
  RunRecord record;
  record.sequence_id = j.at("sequence").at("id").get<std::string>();
  record.sequence = j.at("sequence").at("residues").get<std::string>();
  record.config = config_from_json(j.at("config"));
  const auto& result = j.at("result");
  record.generations = result.at("generations").get<std::int64_t>();
  record.stagnation_recoveries = result.at("stagnation_recoveries").get<int>();
  record.rw_members_unchanged = result.at("rw_members_unchanged").get<int>();
  record.best_search_energy = result.at("best").at("search_energy").get<double>();
  record.best_bm_energy = result.at("best").at("bm_energy").get<double>();
  record.best = from_directions(
      result.at("best").at("directions").get<std::vector<std::uint8_t>>());
  record.best.energy = record.best_search_energy;
  record.best.energy_valid = true;
  for (const auto& point : j.at("trace")) {
    record.trace.push_back(
        {point.at("gen").get<std::int64_t>(), point.at("energy").get<double>(), 0.0});
  }
  record.stagnation_gens =
      j.at("stagnation_gens").get<std::vector<std::int64_t>>();
  return record;
}

void write_run_record(const std::string& path, const RunRecord& record) {
  write_text_file(path, run_record_to_json(record));
}

RunRecord read_run_record(const std::string& path) {
  return run_record_from_json(read_text_file(path));
}

namespace {

bool parse_bool(const std::string& value, const std::string& origin) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw FoldError(origin + ": bad boolean '" + value + "'");
}

}  // namespace

RunConfig apply_config_text(const RunConfig& base, std::istream& in,
                            const std::string& origin) {
  RunConfig config = base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw FoldError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
      }
      continue;
    }
    const auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string();
      const auto last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = origin + ":" + std::to_string(line_no);
    try {
      if (key == "variant") {
        config.variant = variant_from_string(value);
      } else if (key == "pop_size") {
        config.pop_size = std::stoi(value);
      } else if (key == "time_budget_s" || key == "time") {
        config.time_budget_s = parse_duration_s(value);
      } else if (key == "max_generations") {
        config.max_generations = std::stoll(value);
      } else if (key == "rw_threshold") {
        config.rw_threshold = std::stoi(value);
      } else if (key == "macro_p") {
        config.macro_p = std::stod(value);
      } else if (key == "macro_repeat") {
        config.macro_repeat = std::stoi(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "first_improvement") {
        config.first_improvement = parse_bool(value, where);
      } else if (key == "rw_energy_band") {
        config.rw_energy_band = std::stod(value);
      } else if (key == "rw_struct_min") {
        config.rw_struct_min = std::stod(value);
      } else if (key == "rw_struct_max") {
        config.rw_struct_max = std::stod(value);
      } else if (key == "rw_sweep_cap") {
        config.rw_sweep_cap = std::stoi(value);
      } else if (key == "init_attempt_cap") {
        config.init_attempt_cap = std::stoi(value);
      } else if (key == "crossover_attempt_factor") {
        config.crossover_attempt_factor = std::stoi(value);
      } else if (key.rfind("weight_", 0) == 0) {
        const std::string name = key.substr(7);
        bool found = false;
        for (int k = 0; k < kMoveKindCount; ++k) {
          if (name == to_string(static_cast<MoveKind>(k))) {
            config.operator_weights[static_cast<std::size_t>(k)] =
                std::stod(value);
            found = true;
            break;
          }
        }
        if (!found) throw FoldError(where + ": unknown operator '" + name + "'");
      } else {
        throw FoldError(where + ": unknown key '" + key + "'");
      }
    } catch (const FoldError&) {
      throw;
    } catch (const std::exception&) {
      throw FoldError(where + ": bad value '" + value + "' for key '" + key + "'");
    }
  }
  return config;
}

RunConfig apply_config_file(const RunConfig& base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoldError("cannot open config file '" + path + "'");
  return apply_config_text(base, in, path);
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << kSummaryHeader << "\n";
  for (const auto& row : rows) {
    out << row.seq << ',' << row.size << ',' << row.h << ',' << row.variant
        << ',' << format_compact(row.best) << ',' << format_compact(row.avg)
        << ',';
    if (row.best_rmsd) out << format_compact(*row.best_rmsd);
    out << ',';
    if (row.avg_rmsd) out << format_compact(*row.avg_rmsd);
    out << ',' << row.census.hh << ',' << row.census.hp << ',' << row.census.pp
        << ',' << row.census.total << "\n";
  }
  return out.str();
}

std::string runs_csv(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << kRunsHeader << "\n";
  for (const auto& row : rows) {
    out << row.seq << ',' << row.variant << ',' << row.seed << ','
        << format_compact(row.best_bm) << ',' << format_compact(row.best_search)
        << ',' << row.generations << ',';
    if (row.rmsd) out << format_compact(*row.rmsd);
    out << "\n";
  }
  return out.str();
}

std::vector<RunRow> parse_runs_csv(std::istream& in, const std::string& origin) {
  std::vector<RunRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kRunsHeader) {
    throw FoldError(origin + ": expected header '" + kRunsHeader + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (cells.size() != 7) {
      throw FoldError(origin + ":" + std::to_string(line_no) +
                      ": expected 7 cells, got " + std::to_string(cells.size()));
    }
    RunRow row;
    row.seq = cells[0];
    row.variant = cells[1];
    try {
      row.seed = std::stoull(cells[2]);
      row.best_bm = std::stod(cells[3]);
      row.best_search = std::stod(cells[4]);
      row.generations = std::stoll(cells[5]);
      if (!cells[6].empty()) row.rmsd = std::stod(cells[6]);
    } catch (const std::exception&) {
      throw FoldError(origin + ":" + std::to_string(line_no) + ": bad numeric cell");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RunRow> read_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoldError("cannot open runs file '" + path + "'");
  return parse_runs_csv(in, path);
}

double parse_duration_s(const std::string& text) {
  if (text.empty()) throw FoldError("empty duration");
  double scale = 1.0;
  std::string number = text;
  switch (text.back()) {
    case 's': scale = 1.0; number.pop_back(); break;
    case 'm': scale = 60.0; number.pop_back(); break;
    case 'h': scale = 3600.0; number.pop_back(); break;
    default: break;
  }
  std::size_t consumed = 0;
  double value = 0;
  try {
    value = std::stod(number, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != number.size() || value < 0) {
    throw FoldError("bad duration '" + text + "' (use e.g. 90, 90s, 2m, 1h)");
  }
  return value * scale;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FoldError("cannot write file '" + path + "'");
  out << content;
  if (!out) throw FoldError("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FoldError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fccfold
