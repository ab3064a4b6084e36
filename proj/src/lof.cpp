#include "cobfc/lof.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace cobfc {

std::vector<std::pair<int, double>> lof_scores(const EncodedView& view,
                                               const std::vector<int>& subset,
                                               const LofParams& params) {
    if (params.min_pts < 1) throw std::invalid_argument("lof_scores: min_pts must be >= 1");
    const int n = static_cast<int>(subset.size());
    if (n <= params.min_pts)
        throw std::invalid_argument("lof_scores: subset size " + std::to_string(n) +
                                    " must exceed min_pts " + std::to_string(params.min_pts));
    std::vector<int> ids = subset;
    std::sort(ids.begin(), ids.end());

    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = view.distance(ids[i], ids[j]);
            dist[static_cast<std::size_t>(i) * n + j] = d;
            dist[static_cast<std::size_t>(j) * n + i] = d;
        }

    // k-distance and neighborhood (all ties at the k-th rank included),
    // neighbors kept in ascending id order.
    const int k = params.min_pts;
    std::vector<double> k_distance(n);
    std::vector<std::vector<int>> neighbors(n);
    std::vector<double> sorted;
    for (int i = 0; i < n; ++i) {
        sorted.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) sorted.push_back(dist[static_cast<std::size_t>(i) * n + j]);
        std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
        k_distance[i] = sorted[k - 1];
        for (int j = 0; j < n; ++j)
            if (j != i && dist[static_cast<std::size_t>(i) * n + j] <= k_distance[i])
                neighbors[i].push_back(j);
    }

    std::vector<double> lrd(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j : neighbors[i])
            sum += std::max(k_distance[j], dist[static_cast<std::size_t>(i) * n + j]);
        double mean = sum / static_cast<double>(neighbors[i].size());
        lrd[i] = mean > 0.0 ? std::min(1.0 / mean, kLrdCap) : kLrdCap;
    }

    std::vector<std::pair<int, double>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j : neighbors[i]) sum += lrd[j] / lrd[i];
        out.emplace_back(ids[i], sum / static_cast<double>(neighbors[i].size()));
    }
    return out;
}

ClassOutlierReport detect_class_outliers(const Dataset& data, const EncodedView& view,
                                         const LofParams& params) {
    if (data.labels_present() < 2)
        throw std::invalid_argument("detect_class_outliers: need >= 2 classes present");

    std::vector<std::vector<int>> by_class(data.n_classes());
    for (const auto& inst : data.instances) by_class[inst.label].push_back(inst.id);

    struct ClassResult {
        std::vector<std::pair<int, double>> scores;
        std::vector<int> outliers;
        bool scored = false;
    };
    auto score_class = [&](int c) {
        ClassResult r;
        const auto& ids = by_class[c];
        if (static_cast<int>(ids.size()) <= params.min_pts) return r;  // size guard
        r.scored = true;
        r.scores = lof_scores(view, ids, params);
        for (const auto& [id, s] : r.scores)
            if (s > params.threshold) r.outliers.push_back(id);
        return r;
    };

    // Classes are independent; score them concurrently, merge in label order.
    std::vector<std::future<ClassResult>> futs;
    futs.reserve(by_class.size());
    for (int c = 0; c < data.n_classes(); ++c)
        futs.push_back(std::async(std::launch::async, score_class, c));

    ClassOutlierReport report;
    for (int c = 0; c < data.n_classes(); ++c) {
        ClassResult r = futs[c].get();
        if (by_class[c].empty()) continue;  // label absent from this dataset
        if (r.scored) report.scores_by_class.emplace(c, std::move(r.scores));
        report.outlier_count_by_class[c] = static_cast<int>(r.outliers.size());
        if (r.outliers.empty()) ++report.classes_without_outliers;
        report.outliers.insert(r.outliers.begin(), r.outliers.end());
    }
    return report;
}

Json to_json(const ClassOutlierReport& report, const Dataset& data) {
    Json j;
    j["classes"] = Json::array();
    for (const auto& [label, count] : report.outlier_count_by_class) {
        Json c;
        c["label"] = data.label_name(label);
        c["outliers"] = count;
        auto it = report.scores_by_class.find(label);
        if (it != report.scores_by_class.end()) {
            Json scores = Json::array();
            for (const auto& [id, s] : it->second) scores.push_back(Json::array({id, s}));
            c["scores"] = std::move(scores);
        } else {
            c["scores"] = nullptr;  // class too small to score
        }
        j["classes"].push_back(std::move(c));
    }
    j["outliers"] = Json::array();
    for (int id : report.outliers) j["outliers"].push_back(id);
    j["classes_without_outliers"] = report.classes_without_outliers;
    return j;
}

}  // namespace cobfc
