#include "pointforce/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {

[[noreturn]] void parse_fail(const std::string& path, long line, const std::string& message) {
  throw DataError(path + ":" + std::to_string(line) + ": " + message);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct PlyProperty {
  std::string name;
  int byte_size = 0;       // scalar size; 0 for lists
  bool is_float = false;   // float32/float64
  bool is_list = false;
  int list_count_size = 0;
  int list_elem_size = 0;
};

struct PlyElement {
  std::string name;
  long count = 0;
  std::vector<PlyProperty> properties;
};

int ply_type_size(const std::string& t) {
  if (t == "char" || t == "int8" || t == "uchar" || t == "uint8") return 1;
  if (t == "short" || t == "int16" || t == "ushort" || t == "uint16") return 2;
  if (t == "int" || t == "int32" || t == "uint" || t == "uint32") return 4;
  if (t == "float" || t == "float32") return 4;
  if (t == "double" || t == "float64") return 8;
  return 0;
}

bool ply_type_is_float(const std::string& t) {
  return t == "float" || t == "float32" || t == "double" || t == "float64";
}

double read_binary_scalar(std::istream& in, int size, bool is_float, const std::string& path) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), size))
    throw DataError(path + ": truncated binary payload");
  if (is_float && size == 4) {
    float f;
    std::memcpy(&f, buf, 4);
    return static_cast<double>(f);
  }
  if (is_float && size == 8) {
    double d;
    std::memcpy(&d, buf, 8);
    return d;
  }
  // Integers are only ever skipped or used as list counts.
  std::uint64_t v = 0;
  for (int b = size - 1; b >= 0; --b) v = (v << 8) | buf[b];
  return static_cast<double>(v);
}

PointCloud read_ply_impl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);

  long line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) parse_fail(path, line_no + 1, "unexpected end of header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (lower(next_line()) != "ply") parse_fail(path, line_no, "not a PLY file");

  bool binary = false;
  bool have_format = false;
  std::vector<PlyElement> elements;
  for (;;) {
    std::istringstream ls(next_line());
    std::string keyword;
    ls >> keyword;
    keyword = lower(keyword);
    if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
    if (keyword == "format") {
      std::string kind, version;
      ls >> kind >> version;
      kind = lower(kind);
      if (kind == "ascii")
        binary = false;
      else if (kind == "binary_little_endian")
        binary = true;
      else
        parse_fail(path, line_no, "unsupported PLY format: " + kind);
      have_format = true;
      continue;
    }
    if (keyword == "element") {
      PlyElement e;
      if (!(ls >> e.name >> e.count)) parse_fail(path, line_no, "malformed element line");
      elements.push_back(e);
      continue;
    }
    if (keyword == "property") {
      if (elements.empty()) parse_fail(path, line_no, "property before any element");
      PlyProperty p;
      std::string type;
      ls >> type;
      type = lower(type);
      if (type == "list") {
        std::string count_type, elem_type;
        if (!(ls >> count_type >> elem_type >> p.name))
          parse_fail(path, line_no, "malformed list property");
        p.is_list = true;
        p.list_count_size = ply_type_size(lower(count_type));
        p.list_elem_size = ply_type_size(lower(elem_type));
        if (p.list_count_size == 0 || p.list_elem_size == 0)
          parse_fail(path, line_no, "unknown list property type");
      } else {
        if (!(ls >> p.name)) parse_fail(path, line_no, "malformed property line");
        p.byte_size = ply_type_size(type);
        p.is_float = ply_type_is_float(type);
        if (p.byte_size == 0) parse_fail(path, line_no, "unknown property type: " + type);
      }
      elements.back().properties.push_back(p);
      continue;
    }
    if (keyword == "end_header") break;
    parse_fail(path, line_no, "unknown header keyword: " + keyword);
  }
  if (!have_format) parse_fail(path, line_no, "missing format line");

  const auto vertex_it =
      std::find_if(elements.begin(), elements.end(),
                   [](const PlyElement& e) { return lower(e.name) == "vertex"; });
  if (vertex_it == elements.end()) parse_fail(path, line_no, "no vertex element");
  int ix = -1, iy = -1, iz = -1;
  for (int k = 0; k < static_cast<int>(vertex_it->properties.size()); ++k) {
    const PlyProperty& p = vertex_it->properties[k];
    if (p.is_list) continue;
    const std::string nm = lower(p.name);
    if (nm == "x") ix = k;
    if (nm == "y") iy = k;
    if (nm == "z") iz = k;
  }
  if (ix < 0 || iy < 0 || iz < 0) parse_fail(path, line_no, "vertex element lacks x/y/z");
  if (vertex_it->count < 1) parse_fail(path, line_no, "empty vertex element");

  PointCloud cloud;
  cloud.reserve(static_cast<std::size_t>(vertex_it->count));

  for (const PlyElement& element : elements) {
    const bool is_vertex = (&element == &*vertex_it);
    for (long row = 0; row < element.count; ++row) {
      double coords[3] = {0, 0, 0};
      if (!binary) {
        std::string data_line;
        if (!std::getline(in, data_line)) parse_fail(path, line_no + 1, "unexpected end of data");
        ++line_no;
        std::istringstream ls(data_line);
        for (int k = 0; k < static_cast<int>(element.properties.size()); ++k) {
          const PlyProperty& p = element.properties[k];
          if (p.is_list) {
            long count;
            if (!(ls >> count)) parse_fail(path, line_no, "malformed list value");
            double skip;
            for (long c = 0; c < count; ++c) {
              if (!(ls >> skip)) parse_fail(path, line_no, "truncated list value");
            }
            continue;
          }
          double value;
          if (!(ls >> value)) parse_fail(path, line_no, "malformed numeric value");
          if (is_vertex) {
            if (k == ix) coords[0] = value;
            if (k == iy) coords[1] = value;
            if (k == iz) coords[2] = value;
          }
        }
      } else {
        for (int k = 0; k < static_cast<int>(element.properties.size()); ++k) {
          const PlyProperty& p = element.properties[k];
          if (p.is_list) {
            const double count = read_binary_scalar(in, p.list_count_size, false, path);
            in.ignore(static_cast<std::streamsize>(count) * p.list_elem_size);
            continue;
          }
          const double value = read_binary_scalar(in, p.byte_size, p.is_float, path);
          if (is_vertex) {
            if (k == ix) coords[0] = value;
            if (k == iy) coords[1] = value;
            if (k == iz) coords[2] = value;
          }
        }
      }
      if (is_vertex) {
        const Vec3 v{coords[0], coords[1], coords[2]};
        if (!is_finite(v)) parse_fail(path, line_no, "non-finite coordinate");
        cloud.push_back(v);
      }
    }
  }
  return cloud;
}

std::string ascii_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_ply_impl(const std::string& path, const PointCloud& cloud,
                    const std::vector<Rgb>* colors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (colors) {
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  }
  out << "end_header\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud[i];
    out << ascii_coord(p.x) << ' ' << ascii_coord(p.y) << ' ' << ascii_coord(p.z);
    if (colors) {
      const Rgb& c = (*colors)[i];
      out << ' ' << static_cast<int>(c[0]) << ' ' << static_cast<int>(c[1]) << ' '
          << static_cast<int>(c[2]);
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, ',')) fields.push_back(field);
  return fields;
}

long parse_long(const std::string& s, const std::string& path, long line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    parse_fail(path, line, "malformed integer: " + s);
  return value;
}

double parse_double(const std::string& s, const std::string& path, long line) {
  double value = 0.0;
  std::size_t used = 0;
  bool ok = true;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    ok = false;
  }
  if (!ok || used != s.size()) parse_fail(path, line, "malformed number: " + s);
  return value;
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

void expect_header(std::ifstream& in, const std::string& path, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) parse_fail(path, 1, "expected header '" + header + "'");
}

}  // namespace

PointCloud read_cloud(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
  if (ext == "ply") return read_ply(path);
  if (ext == "xyz" || ext == "txt") return read_xyz(path);
  throw DataError("unsupported cloud format: " + path);
}

PointCloud read_ply(const std::string& path) { return read_ply_impl(path); }

void write_ply(const std::string& path, const PointCloud& cloud) {
  write_ply_impl(path, cloud, nullptr);
}

void write_ply(const std::string& path, const PointCloud& cloud, const std::vector<Rgb>& colors) {
  if (colors.size() != cloud.size()) throw ConfigError("color count does not match cloud");
  write_ply_impl(path, cloud, &colors);
}

PointCloud read_xyz(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  PointCloud cloud;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    Vec3 p;
    if (!(ls >> p.x)) continue;  // blank line
    if (!(ls >> p.y >> p.z)) parse_fail(path, line_no, "expected three coordinates");
    if (!is_finite(p)) parse_fail(path, line_no, "non-finite coordinate");
    cloud.push_back(p);
  }
  if (cloud.empty()) parse_fail(path, line_no, "no points in file");
  return cloud;
}

void write_xyz(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  for (const Vec3& p : cloud) {
    out << ascii_coord(p.x) << ' ' << ascii_coord(p.y) << ' ' << ascii_coord(p.z) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

void write_truth_csv(const std::string& path, const std::vector<std::uint8_t>& truth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "index,truth\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out << i << ',' << static_cast<int>(truth[i] != 0) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::uint8_t> read_truth_csv(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  expect_header(in, path, "index,truth");
  std::vector<std::uint8_t> truth;
  std::string line;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) parse_fail(path, line_no, "expected 2 columns");
    if (parse_long(fields[0], path, line_no) != static_cast<long>(truth.size()))
      parse_fail(path, line_no, "rows must be index-sorted from 0");
    truth.push_back(parse_long(fields[1], path, line_no) != 0);
  }
  return truth;
}

void write_labels_csv(const std::string& path, const std::vector<int>& orig_index,
                      const std::vector<std::uint8_t>& labels) {
  if (orig_index.size() != labels.size()) throw ConfigError("label row length mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "index,orig_index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << ',' << orig_index[i] << ',' << static_cast<int>(labels[i] != 0) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

LabelRows read_labels_csv(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  expect_header(in, path, "index,orig_index,label");
  LabelRows rows;
  std::string line;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) parse_fail(path, line_no, "expected 3 columns");
    if (parse_long(fields[0], path, line_no) != static_cast<long>(rows.labels.size()))
      parse_fail(path, line_no, "rows must be index-sorted from 0");
    rows.orig_index.push_back(static_cast<int>(parse_long(fields[1], path, line_no)));
    rows.labels.push_back(parse_long(fields[2], path, line_no) != 0);
  }
  return rows;
}

void write_scores_csv(const std::string& path, const std::vector<int>& orig_index,
                      const std::vector<double>& scores,
                      const std::vector<double>& displacements) {
  if (orig_index.size() != scores.size() || scores.size() != displacements.size())
    throw ConfigError("score row length mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "index,orig_index,score,displacement\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << i << ',' << orig_index[i] << ',' << format_double(scores[i]) << ','
        << format_double(displacements[i]) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

ScoreRows read_scores_csv(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  expect_header(in, path, "index,orig_index,score,displacement");
  ScoreRows rows;
  std::string line;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) parse_fail(path, line_no, "expected 4 columns");
    if (parse_long(fields[0], path, line_no) != static_cast<long>(rows.scores.size()))
      parse_fail(path, line_no, "rows must be index-sorted from 0");
    rows.orig_index.push_back(static_cast<int>(parse_long(fields[1], path, line_no)));
    rows.scores.push_back(parse_double(fields[2], path, line_no));
    rows.displacements.push_back(parse_double(fields[3], path, line_no));
  }
  return rows;
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_double(value)); }
void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }
void Manifest::set(const std::string& key, bool value) {
  set(key, std::string(value ? "true" : "false"));
}

std::string Manifest::to_text() const {
  std::string text;
  for (const auto& [key, value] : entries_) {
    text += key;
    text += " = ";
    text += value;
    text += '\n';
  }
  return text;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

std::string metrics_to_text(const MetricsReport& report) {
  Manifest m;
  m.set("precision", report.precision);
  m.set("recall", report.recall);
  m.set("f1", report.f1);
  if (report.auroc_defined)
    m.set("auroc", report.auroc);
  else
    m.set("auroc", std::string("undefined"));
  m.set("tp", static_cast<long long>(report.counts.tp));
  m.set("fp", static_cast<long long>(report.counts.fp));
  m.set("tn", static_cast<long long>(report.counts.tn));
  m.set("fn", static_cast<long long>(report.counts.fn));
  return m.to_text();
}

std::string theorem_report_to_text(const TheoremReport& report, bool per_point) {
  Manifest m;
  m.set("points", static_cast<long long>(report.points.size()));
  m.set("checked", report.checked);
  m.set("skipped_isolated", report.skipped_isolated);
  m.set("skipped_zero_kappa", report.skipped_zero_kappa);
  m.set("violations", report.violations);
  if (report.checked > 0) {
    m.set("min_slack", report.min_slack);
    m.set("min_cauchy_slack", report.min_cauchy_slack);
  }
  std::string text = m.to_text();
  if (per_point) {
    text += "index,kappa,force,projection,alpha,beta,bound,checked,satisfied\n";
    for (const TheoremPointRecord& r : report.points) {
      text += std::to_string(r.index) + ',' + format_double(r.kappa_norm) + ',' +
              format_double(r.force_norm) + ',' + format_double(r.projection) + ',' +
              format_double(r.alpha) + ',' + format_double(r.beta) + ',' +
              format_double(r.bound) + ',' + (r.checked ? "1" : "0") + ',' +
              (r.satisfied ? "1" : "0") + '\n';
    }
  }
  return text;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace pointforce
