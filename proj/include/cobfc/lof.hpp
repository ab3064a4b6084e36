#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "cobfc/encoding.hpp"
#include "cobfc/json.hpp"

namespace cobfc {

struct LofParams {
    int min_pts = 10;
    double threshold = 1.5;
};

// Coincident-point guard: >= min_pts+1 duplicates make the mean reachability
// distance 0; the density is capped here instead of going infinite.
inline constexpr double kLrdCap = 1e12;

/// LOF scores for `subset` (instance ids into the view), using distances in
/// the full encoded space. k-distance neighborhoods include all ties at the
/// k-th distance. Neighbor sums accumulate in ascending instance-id order so
/// results are schedule-independent.
/// Precondition: |subset| > min_pts >= 1 (throws std::invalid_argument).
/// Returns (id, score) pairs in ascending id order.
std::vector<std::pair<int, double>> lof_scores(const EncodedView& view,
                                               const std::vector<int>& subset,
                                               const LofParams& params);

/// Per-class LOF scoring and the selected class-outlier set.
struct ClassOutlierReport {
    // label index -> (id, score) ascending; only classes large enough to score
    std::map<int, std::vector<std::pair<int, double>>> scores_by_class;
    std::set<int> outliers;                  // union over classes
    std::map<int, int> outlier_count_by_class;  // every present class, possibly 0
    int classes_without_outliers = 0;        // present classes that ended with 0 outliers
};

/// Runs LOF within each class partition (distances still in the full encoded
/// space) and flags ids with score > params.threshold. Classes with
/// |D_c| <= min_pts are skipped: too small for class outliers to be
/// meaningful; they end up in classes_without_outliers.
/// Precondition: dataset has >= 2 labels present.
ClassOutlierReport detect_class_outliers(const Dataset& data, const EncodedView& view,
                                         const LofParams& params);

Json to_json(const ClassOutlierReport& report, const Dataset& data);

}  // namespace cobfc
