#pragma once

#include <cstdint>
#include <vector>

#include "cobfc/dataset.hpp"

namespace cobfc {

enum class Metric { EuclideanNormalized, ManhattanBinarized };

/// Deterministic metric choice for mixed datasets: euclidean when >50% of
/// the non-class attributes are numeric, manhattan otherwise. Either way the
/// minority-kind attributes are encoded too (one-hot resp. min/max-scaled).
Metric choose_metric(const Dataset& data);

const char* metric_name(Metric m);

/// Numeric encoding of a dataset for distance computation. Numeric
/// attributes become one coordinate scaled to [0,1] by the min/max of the
/// dataset the view was built from (constant columns pin to 0); nominal
/// attributes become |dom| indicator coordinates (missing: all 0). Values
/// projected through an existing view are clamped into [0,1] for distance
/// purposes only; the Dataset itself is never touched.
class EncodedView {
  public:
    struct Block {
        AttributeKind kind;
        int offset;
        int width;
        double min;  // numeric blocks only
        double max;
    };

    const Dataset* source = nullptr;
    Metric metric = Metric::EuclideanNormalized;

    int n() const { return rows_; }
    int dim() const { return dim_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    /// Encode one instance against this view's stats.
    void project(const Instance& inst, std::vector<double>& coords,
                 std::vector<std::uint8_t>& miss) const;

    /// Metric distance between two encoded rows. Missing coordinates are
    /// maximally distant from present ones (1 per numeric coordinate, 2
    /// across a one-hot block) and at distance 0 from each other, keeping
    /// the metric axioms intact.
    double distance(int i, int j) const;

    const double* row(int i) const { return coords_.data() + static_cast<std::size_t>(i) * dim_; }
    bool is_missing(int i, int attr) const {
        return miss_[static_cast<std::size_t>(i) * blocks_.size() + attr] != 0;
    }

  private:
    friend EncodedView encode(const Dataset&, Metric);
    double row_distance(const double* a, const std::uint8_t* ma, const double* b,
                        const std::uint8_t* mb) const;

    int rows_ = 0;
    int dim_ = 0;
    std::vector<Block> blocks_;
    std::vector<double> coords_;        // rows_ x dim_, row-major
    std::vector<std::uint8_t> miss_;    // rows_ x n_attributes
};

/// Build the view from `data` (callers pass training folds only; the
/// min/max stats deliberately see nothing else).
/// Preconditions: euclidean needs >=1 numeric attribute, manhattan >=1
/// nominal attribute; violations throw std::invalid_argument.
EncodedView encode(const Dataset& data, Metric metric);

inline double distance(const EncodedView& view, int i, int j) { return view.distance(i, j); }

}  // namespace cobfc
