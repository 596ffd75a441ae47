#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pointforce/geometry.hpp"
#include "pointforce/metrics.hpp"
#include "pointforce/theorem.hpp"

namespace pointforce {

using Rgb = std::array<std::uint8_t, 3>;

// Dispatches on extension: .ply or .xyz.
PointCloud read_cloud(const std::string& path);

// ASCII and binary_little_endian PLY vertex clouds. Extra vertex properties
// and non-vertex elements are skipped.
PointCloud read_ply(const std::string& path);
// ASCII PLY with 9 significant digits per coordinate; optional per-vertex color.
void write_ply(const std::string& path, const PointCloud& cloud);
void write_ply(const std::string& path, const PointCloud& cloud, const std::vector<Rgb>& colors);

// Whitespace-separated x y z, one point per line. '#' starts a comment.
PointCloud read_xyz(const std::string& path);
void write_xyz(const std::string& path, const PointCloud& cloud);

void write_truth_csv(const std::string& path, const std::vector<std::uint8_t>& truth);
std::vector<std::uint8_t> read_truth_csv(const std::string& path);

struct LabelRows {
  std::vector<int> orig_index;
  std::vector<std::uint8_t> labels;
};
void write_labels_csv(const std::string& path, const std::vector<int>& orig_index,
                      const std::vector<std::uint8_t>& labels);
LabelRows read_labels_csv(const std::string& path);

struct ScoreRows {
  std::vector<int> orig_index;
  std::vector<double> scores;
  std::vector<double> displacements;
};
void write_scores_csv(const std::string& path, const std::vector<int>& orig_index,
                      const std::vector<double>& scores,
                      const std::vector<double>& displacements);
ScoreRows read_scores_csv(const std::string& path);

// Ordered key = value document; emission order is insertion order.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void set(const std::string& key, bool value);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_text_file(const std::string& path, const std::string& content);

std::string metrics_to_text(const MetricsReport& report);
std::string theorem_report_to_text(const TheoremReport& report, bool per_point = false);

// Shortest decimal that round-trips the double exactly.
std::string format_double(double value);

}  // namespace pointforce
