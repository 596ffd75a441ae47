#pragma once

#include <cstdint>
#include <vector>

namespace pointforce {

// Positive class = anomaly.
struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  long total() const { return tp + fp + tn + fn; }
};

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  ConfusionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auroc = 0.0;
  bool auroc_defined = false;
};

ConfusionCounts confusion(const std::vector<std::uint8_t>& pred,
                          const std::vector<std::uint8_t>& truth);

// Degenerate conventions: tp+fp = 0 gives precision 0, tp+fn = 0 gives
// recall 0, precision+recall = 0 gives f1 0.
PrfScores prf(const ConfusionCounts& counts);

// Area under the ROC curve as the Mann-Whitney statistic with half credit
// for ties. Throws DataError when truth holds a single class.
double auroc(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth);

MetricsReport evaluate(const std::vector<std::uint8_t>& pred, const std::vector<double>& scores,
                       const std::vector<std::uint8_t>& truth);

}  // namespace pointforce
