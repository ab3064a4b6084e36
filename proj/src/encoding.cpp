#include "cobfc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cobfc {

Metric choose_metric(const Dataset& data) {
    if (data.attributes.empty())
        throw std::invalid_argument("choose_metric: dataset has no attributes");
    int numeric = 0;
    for (const auto& a : data.attributes) numeric += a.is_numeric() ? 1 : 0;
    return 2 * numeric > data.n_attributes() ? Metric::EuclideanNormalized
                                             : Metric::ManhattanBinarized;
}

const char* metric_name(Metric m) {
    return m == Metric::EuclideanNormalized ? "euclidean_normalized" : "manhattan_binarized";
}

EncodedView encode(const Dataset& data, Metric metric) {
    int numeric = 0, nominal = 0;
    for (const auto& a : data.attributes) (a.is_numeric() ? numeric : nominal)++;
    if (metric == Metric::EuclideanNormalized && numeric == 0)
        throw std::invalid_argument("euclidean_normalized requires at least one numeric attribute");
    if (metric == Metric::ManhattanBinarized && nominal == 0)
        throw std::invalid_argument("manhattan_binarized requires at least one nominal attribute");

    EncodedView view;
    view.source = &data;
    view.metric = metric;
    view.rows_ = data.n_instances();

    int offset = 0;
    for (const auto& a : data.attributes) {
        EncodedView::Block b;
        b.kind = a.kind;
        b.offset = offset;
        b.width = a.is_numeric() ? 1 : static_cast<int>(a.values.size());
        b.min = std::numeric_limits<double>::infinity();
        b.max = -std::numeric_limits<double>::infinity();
        if (a.is_numeric()) {
            for (const auto& inst : data.instances) {
                const Value& v = inst.values[a.index];
                if (v.is_missing()) continue;
                b.min = std::min(b.min, v.num());
                b.max = std::max(b.max, v.num());
            }
            if (!std::isfinite(b.min)) b.min = b.max = 0.0;  // all-missing column
        }
        offset += b.width;
        view.blocks_.push_back(b);
    }
    view.dim_ = offset;

    view.coords_.assign(static_cast<std::size_t>(view.rows_) * view.dim_, 0.0);
    view.miss_.assign(static_cast<std::size_t>(view.rows_) * view.blocks_.size(), 0);
    std::vector<double> coords;
    std::vector<std::uint8_t> miss;
    for (int i = 0; i < view.rows_; ++i) {
        view.project(data.instances[i], coords, miss);
        std::copy(coords.begin(), coords.end(),
                  view.coords_.begin() + static_cast<std::size_t>(i) * view.dim_);
        std::copy(miss.begin(), miss.end(),
                  view.miss_.begin() + static_cast<std::size_t>(i) * view.blocks_.size());
    }
    return view;
}

void EncodedView::project(const Instance& inst, std::vector<double>& coords,
                          std::vector<std::uint8_t>& miss) const {
    coords.assign(dim_, 0.0);
    miss.assign(blocks_.size(), 0);
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
        const Block& b = blocks_[a];
        const Value& v = inst.values[a];
        if (v.is_missing()) {
            miss[a] = 1;
            continue;
        }
        if (b.kind == AttributeKind::Numeric) {
            double x = b.max > b.min ? (v.num() - b.min) / (b.max - b.min) : 0.0;
            coords[b.offset] = std::clamp(x, 0.0, 1.0);
        } else {
            coords[b.offset + v.sym()] = 1.0;
        }
    }
}

double EncodedView::row_distance(const double* a, const std::uint8_t* ma, const double* b,
                                 const std::uint8_t* mb) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const Block& blk = blocks_[k];
        const bool miss_a = ma[k] != 0, miss_b = mb[k] != 0;
        if (miss_a && miss_b) continue;
        if (blk.kind == AttributeKind::Numeric) {
            double d = (miss_a || miss_b) ? 1.0 : std::abs(a[blk.offset] - b[blk.offset]);
            acc += metric == Metric::EuclideanNormalized ? d * d : d;
        } else {
            double d = 2.0;  // max over a one-hot block
            if (!miss_a && !miss_b) {
                d = 0.0;
                for (int c = 0; c < blk.width; ++c) d += std::abs(a[blk.offset + c] - b[blk.offset + c]);
            }
            acc += d;  // equals the squared L2 contribution as well (0 or 2)
        }
    }
    return metric == Metric::EuclideanNormalized ? std::sqrt(acc) : acc;
}

double EncodedView::distance(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= rows_)
        throw std::invalid_argument("distance: instance id out of range");
    if (i == j) return 0.0;
    const std::size_t na = blocks_.size();
    return row_distance(row(i), miss_.data() + static_cast<std::size_t>(i) * na, row(j),
                        miss_.data() + static_cast<std::size_t>(j) * na);
}

}  // namespace cobfc
