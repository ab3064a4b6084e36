#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobfc {

enum class AttributeKind { Numeric, Nominal };

/// One attribute of a dataset schema. Nominal attributes carry their value
/// domain in declaration/observation order; that order is load-bearing
/// (one-hot layout, class tie-breaking) and must stay stable.
struct AttributeSchema {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    std::vector<std::string> values;  // nominal domain; empty for numeric
    int index = -1;                   // ordinal position within the schema

    bool is_numeric() const { return kind == AttributeKind::Numeric; }

    // Index of `v` in the nominal domain, -1 if absent.
    int value_index(const std::string& v) const {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] == v) return static_cast<int>(i);
        return -1;
    }
};

/// A single cell: numeric scalar, nominal symbol (index into the attribute's
/// domain), or missing.
class Value {
  public:
    static Value missing() { return Value(); }
    static Value numeric(double v) {
        Value x;
        x.num_ = v;
        x.missing_ = false;
        return x;
    }
    static Value nominal(int symbol) {
        Value x;
        x.sym_ = symbol;
        x.missing_ = false;
        return x;
    }

    bool is_missing() const { return missing_; }
    double num() const { return num_; }
    int sym() const { return sym_; }

    bool operator==(const Value& o) const {
        if (missing_ != o.missing_) return false;
        if (missing_) return true;
        return num_ == o.num_ && sym_ == o.sym_;
    }

  private:
    double num_ = std::nan("");
    int sym_ = -1;
    bool missing_ = true;
};

struct Instance {
    int id = -1;                 // stable ordinal within its dataset
    std::vector<Value> values;   // one slot per non-class attribute
    int label = -1;              // index into the class domain
};

/// Immutable-after-construction tabular dataset: typed attributes, a nominal
/// class attribute, and instances. All pipeline stages share this model.
struct Dataset {
    std::string relation = "data";
    std::vector<AttributeSchema> attributes;
    AttributeSchema class_attribute;
    std::vector<Instance> instances;

    // Original ids in the parent dataset when this is a derived subset;
    // empty for datasets created by the parser. Used by the leakage audit.
    std::vector<int> provenance;

    int n_instances() const { return static_cast<int>(instances.size()); }
    int n_attributes() const { return static_cast<int>(attributes.size()); }
    int n_classes() const { return static_cast<int>(class_attribute.values.size()); }

    const std::string& label_name(int label) const { return class_attribute.values.at(label); }

    // Number of distinct labels actually present among instances.
    int labels_present() const;

    // Throws std::invalid_argument on any violated invariant (duplicate
    // attribute names, empty nominal domains, kind mismatches, bad labels).
    void validate() const;
};

/// Dataset restricted to `ids` (ascending order enforced for determinism).
/// Instances are renumbered 0..n-1; provenance records the source ids
/// (composed through an existing provenance when present).
Dataset subset_dataset(const Dataset& data, const std::vector<int>& ids);

}  // namespace cobfc
