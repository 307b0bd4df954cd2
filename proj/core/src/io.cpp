#include "cspath/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace cspath {

namespace {

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json j;
  in >> j;
  return j;
}

void dump_json_file(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << j.dump(2) << '\n';
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::runtime_error("csv: unparsable cell '" + cell + "'");
    }
  }
  return row;
}

DenseMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_csv_row(line));
    if (rows.back().size() != rows.front().size())
      throw std::runtime_error("csv: ragged rows in " + path);
  }
  if (rows.empty()) throw std::runtime_error("csv: empty matrix in " + path);
  DenseMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
  return m;
}

void save_matrix_csv(const DenseMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

std::string kind_name(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::learned: return "learned";
    case DictionaryKind::dct: return "dct";
    case DictionaryKind::polynomial: return "polynomial";
  }
  return "learned";
}

DictionaryKind kind_from_name(const std::string& name) {
  if (name == "learned") return DictionaryKind::learned;
  if (name == "dct") return DictionaryKind::dct;
  if (name == "polynomial") return DictionaryKind::polynomial;
  throw std::runtime_error("unknown dictionary kind: " + name);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t field_content_hash(const Field& field) {
  std::string repr = std::to_string(field.height) + 'x' +
                     std::to_string(field.width);
  for (Eigen::Index r = 0; r < field.values.rows(); ++r)
    for (Eigen::Index c = 0; c < field.values.cols(); ++c) {
      repr += ',';
      repr += format_double(field.values(r, c));
    }
  return fnv1a64(repr);
}

void save_dictionary(const Dictionary& psi, const std::string& json_path) {
  const fs::path jp(json_path);
  const std::string payload = jp.stem().string() + ".csv";
  json header = {
      {"kind", kind_name(psi.kind)},
      {"n", psi.signal_dim()},
      {"k", psi.atom_count()},
      {"patch_side", psi.patch_side},
      {"payload", payload},
  };
  dump_json_file(header, json_path);
  save_matrix_csv(psi.atoms, (jp.parent_path() / payload).string());
}

Dictionary load_dictionary(const std::string& json_path) {
  const json header = parse_json_file(json_path);
  const fs::path jp(json_path);
  Dictionary psi;
  psi.kind = kind_from_name(header.at("kind").get<std::string>());
  psi.patch_side = header.at("patch_side").get<int>();
  const std::string payload = header.at("payload").get<std::string>();
  psi.atoms = load_matrix_csv((jp.parent_path() / payload).string());
  if (psi.atoms.rows() != header.at("n").get<Eigen::Index>() ||
      psi.atoms.cols() != header.at("k").get<Eigen::Index>())
    throw std::runtime_error("dictionary payload shape disagrees with header");
  return psi;
}

void save_measurement(const MeasurementMatrix& phi, const std::string& path) {
  std::vector<std::string> rows;
  rows.reserve(std::size_t(phi.rows));
  for (int r = 0; r < phi.rows; ++r) {
    std::string row(std::size_t(phi.cols), '0');
    for (int c = 0; c < phi.cols; ++c)
      if (phi.at(r, c)) row[std::size_t(c)] = '1';
    rows.push_back(std::move(row));
  }
  json j = {
      {"m", phi.rows},   {"n", phi.cols},       {"p", phi.gen_p},
      {"seed", phi.seed}, {"theta", phi.theta}, {"bits", rows},
  };
  dump_json_file(j, path);
}

MeasurementMatrix load_measurement(const std::string& path) {
  const json j = parse_json_file(path);
  MeasurementMatrix phi;
  phi.rows = j.at("m").get<int>();
  phi.cols = j.at("n").get<int>();
  phi.gen_p = j.at("p").get<double>();
  phi.seed = j.at("seed").get<std::uint64_t>();
  phi.theta = j.at("theta").get<int>();
  const auto rows = j.at("bits").get<std::vector<std::string>>();
  if (int(rows.size()) != phi.rows)
    throw std::runtime_error("measurement: row count disagrees with header");
  phi.bits.resize(std::size_t(phi.rows) * phi.cols);
  for (int r = 0; r < phi.rows; ++r) {
    if (int(rows[std::size_t(r)].size()) != phi.cols)
      throw std::runtime_error("measurement: row length disagrees with header");
    for (int c = 0; c < phi.cols; ++c) {
      const char ch = rows[std::size_t(r)][std::size_t(c)];
      if (ch != '0' && ch != '1')
        throw std::runtime_error("measurement: non-binary bit");
      phi.at(r, c) = ch == '1' ? 1 : 0;
    }
  }
  return phi;
}

void save_pathplan_json(const PathPlan& plan, const std::string& path) {
  json waypoints = json::array();
  for (const auto& cell : plan.waypoints)
    waypoints.push_back({cell.row, cell.col});
  json j = {
      {"total_length", plan.total_length},
      {"waypoints", waypoints},
  };
  dump_json_file(j, path);
}

PathPlan load_pathplan_json(const std::string& path) {
  const json j = parse_json_file(path);
  PathPlan plan;
  plan.total_length = j.at("total_length").get<double>();
  for (const auto& wp : j.at("waypoints"))
    plan.waypoints.push_back({wp.at(0).get<int>(), wp.at(1).get<int>()});
  return plan;
}

void save_pathplan_csv(const PathPlan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "row,col\n";
  for (const auto& cell : plan.waypoints)
    out << cell.row << ',' << cell.col << '\n';
}

void save_trace_csv(const std::vector<CandidateEvaluation>& trace,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "r,E,L,mu,C\n";
  for (const auto& e : trace)
    out << e.candidate_index << ',' << format_double(e.recon_error) << ','
        << format_double(e.path_length) << ',' << format_double(e.incoherence)
        << ',' << format_double(e.total_cost) << '\n';
}

std::vector<CandidateEvaluation> load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<CandidateEvaluation> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = parse_csv_row(line);
    if (cells.size() != 5) throw std::runtime_error("trace: bad row in " + path);
    CandidateEvaluation e;
    e.candidate_index = int(cells[0]);
    e.recon_error = cells[1];
    e.path_length = cells[2];
    e.incoherence = cells[3];
    e.total_cost = cells[4];
    trace.push_back(e);
  }
  return trace;
}

void save_dataset(const PatchDataset& ds, const std::string& dir) {
  fs::create_directories(dir);
  std::string assignment;
  assignment.reserve(ds.assignment.size());
  for (auto s : ds.assignment)
    assignment += s == Split::train ? 't' : (s == Split::valid ? 'v' : 'e');
  json j = {
      {"patch_side", ds.patch_side},
      {"seed", ds.seed},
      {"n", ds.patches.rows()},
      {"assignment", assignment},
      {"counts",
       {{"train", ds.count(Split::train)},
        {"valid", ds.count(Split::valid)},
        {"test", ds.count(Split::test)}}},
      {"patches_file", "patches.csv"},
  };
  dump_json_file(j, (fs::path(dir) / "dataset.json").string());
  save_matrix_csv(ds.patches, (fs::path(dir) / "patches.csv").string());
}

PatchDataset load_dataset(const std::string& dir) {
  const json j = parse_json_file((fs::path(dir) / "dataset.json").string());
  PatchDataset ds;
  ds.patch_side = j.at("patch_side").get<int>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  const std::string assignment = j.at("assignment").get<std::string>();
  for (char ch : assignment) {
    switch (ch) {
      case 't': ds.assignment.push_back(Split::train); break;
      case 'v': ds.assignment.push_back(Split::valid); break;
      case 'e': ds.assignment.push_back(Split::test); break;
      default: throw std::runtime_error("dataset: bad assignment char");
    }
  }
  const std::string payload = j.at("patches_file").get<std::string>();
  ds.patches = load_matrix_csv((fs::path(dir) / payload).string());
  if (ds.patches.rows() != Eigen::Index(ds.assignment.size()))
    throw std::runtime_error("dataset: assignment length != patch count");
  if (ds.patches.cols() != Eigen::Index(ds.patch_side) * ds.patch_side)
    throw std::runtime_error("dataset: patch length != side^2");
  return ds;
}

void save_sweep_runs_csv(const std::vector<SweepRun>& runs,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "knob_name,knob_value,theta,repeat,seed,valid_error,path_length,"
         "incoherence,total_cost,test_mse,test_relative,coverage\n";
  for (const auto& run : runs)
    out << run.knob_name << ',' << format_double(run.knob_value) << ','
        << run.theta << ',' << run.repeat << ',' << run.seed << ','
        << format_double(run.best.recon_error) << ','
        << format_double(run.best.path_length) << ','
        << format_double(run.best.incoherence) << ','
        << format_double(run.best.total_cost) << ','
        << format_double(run.test_mse) << ','
        << format_double(run.test_relative) << ','
        << format_double(run.coverage) << '\n';
}

std::vector<SweepRun> load_sweep_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<SweepRun> runs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12)
      throw std::runtime_error("sweep runs: bad row in " + path);
    SweepRun run;
    run.knob_name = cells[0];
    run.knob_value = std::stod(cells[1]);
    run.theta = std::stoi(cells[2]);
    run.repeat = std::stoi(cells[3]);
    run.seed = std::stoull(cells[4]);
    run.best.recon_error = std::stod(cells[5]);
    run.best.path_length = std::stod(cells[6]);
    run.best.incoherence = std::stod(cells[7]);
    run.best.total_cost = std::stod(cells[8]);
    run.test_mse = std::stod(cells[9]);
    run.test_relative = std::stod(cells[10]);
    run.coverage = std::stod(cells[11]);
    runs.push_back(std::move(run));
  }
  return runs;
}

void save_sweep_points_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "knob_name,knob_value,theta,repeats,mean_test_mse,std_test_mse,"
         "mean_test_relative,std_test_relative,mean_path_length,"
         "std_path_length,mean_incoherence,std_incoherence,mean_coverage,"
         "std_coverage\n";
  for (const auto& pt : result.points)
    out << result.knob_name << ',' << format_double(pt.knob_value) << ','
        << pt.theta << ',' << pt.repeats << ','
        << format_double(pt.mean_test_mse) << ','
        << format_double(pt.std_test_mse) << ','
        << format_double(pt.mean_test_relative) << ','
        << format_double(pt.std_test_relative) << ','
        << format_double(pt.mean_path_length) << ','
        << format_double(pt.std_path_length) << ','
        << format_double(pt.mean_incoherence) << ','
        << format_double(pt.std_incoherence) << ','
        << format_double(pt.mean_coverage) << ','
        << format_double(pt.std_coverage) << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << contents;
}

}  // namespace cspath
