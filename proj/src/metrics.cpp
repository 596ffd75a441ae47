#include "pointforce/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "pointforce/errors.hpp"

namespace pointforce {

ConfusionCounts confusion(const std::vector<std::uint8_t>& pred,
                          const std::vector<std::uint8_t>& truth) {
  if (pred.size() != truth.size()) throw DataError("prediction/truth length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool t = truth[i] != 0;
    if (p && t)
      ++c.tp;
    else if (p && !t)
      ++c.fp;
    else if (!p && t)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

PrfScores prf(const ConfusionCounts& counts) {
  PrfScores s;
  const double tp = static_cast<double>(counts.tp);
  s.precision = counts.tp + counts.fp == 0 ? 0.0 : tp / (counts.tp + counts.fp);
  s.recall = counts.tp + counts.fn == 0 ? 0.0 : tp / (counts.tp + counts.fn);
  s.f1 = s.precision + s.recall == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

double auroc(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth) {
  if (scores.size() != truth.size()) throw DataError("score/truth length mismatch");
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (std::uint8_t t : truth) positives += t != 0;
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw DataError("AUROC undefined: single-class truth");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] < scores[b]; });

  // Mann-Whitney U from average ranks; tied scores share their mean rank,
  // which yields the half-credit convention.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // ranks are 1-based
    for (std::size_t k = i; k <= j; ++k) {
      if (truth[order[k]] != 0) positive_rank_sum += mean_rank;
    }
    i = j + 1;
  }

  const double u = positive_rank_sum -
                   0.5 * static_cast<double>(positives) * static_cast<double>(positives + 1);
  return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

MetricsReport evaluate(const std::vector<std::uint8_t>& pred, const std::vector<double>& scores,
                       const std::vector<std::uint8_t>& truth) {
  MetricsReport report;
  report.counts = confusion(pred, truth);
  const PrfScores s = prf(report.counts);
  report.precision = s.precision;
  report.recall = s.recall;
  report.f1 = s.f1;
  try {
    report.auroc = auroc(scores, truth);
    report.auroc_defined = true;
  } catch (const DataError&) {
    report.auroc = 0.0;
    report.auroc_defined = false;
  }
  return report;
}

}  // namespace pointforce
