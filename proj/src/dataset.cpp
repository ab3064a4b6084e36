#include "cobfc/dataset.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace cobfc {

int Dataset::labels_present() const {
    std::set<int> seen;
    for (const auto& inst : instances) seen.insert(inst.label);
    return static_cast<int>(seen.size());
}

void Dataset::validate() const {
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        const auto& a = attributes[i];
        if (a.index != static_cast<int>(i))
            throw std::invalid_argument("attribute '" + a.name + "' has wrong index");
        if (!names.insert(a.name).second)
            throw std::invalid_argument("duplicate attribute name '" + a.name + "'");
        if (a.kind == AttributeKind::Nominal) {
            if (a.values.empty())
                throw std::invalid_argument("nominal attribute '" + a.name + "' has empty domain");
            std::unordered_set<std::string> vals(a.values.begin(), a.values.end());
            if (vals.size() != a.values.size())
                throw std::invalid_argument("nominal attribute '" + a.name + "' has duplicate values");
        }
    }
    if (class_attribute.kind != AttributeKind::Nominal || class_attribute.values.empty())
        throw std::invalid_argument("class attribute must be nominal with a non-empty domain");
    if (names.count(class_attribute.name))
        throw std::invalid_argument("class attribute name collides with '" + class_attribute.name + "'");

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        if (inst.id != static_cast<int>(i))
            throw std::invalid_argument("instance id mismatch at position " + std::to_string(i));
        if (inst.values.size() != attributes.size())
            throw std::invalid_argument("instance " + std::to_string(i) + " has wrong arity");
        if (inst.label < 0 || inst.label >= n_classes())
            throw std::invalid_argument("instance " + std::to_string(i) + " has label outside dom(C)");
        for (std::size_t a = 0; a < attributes.size(); ++a) {
            const Value& v = inst.values[a];
            if (v.is_missing()) continue;
            if (attributes[a].is_numeric()) {
                if (!std::isfinite(v.num()))
                    throw std::invalid_argument("instance " + std::to_string(i) +
                                                ": non-finite numeric value");
            } else {
                if (v.sym() < 0 || v.sym() >= static_cast<int>(attributes[a].values.size()))
                    throw std::invalid_argument("instance " + std::to_string(i) +
                                                ": nominal symbol outside domain of '" +
                                                attributes[a].name + "'");
            }
        }
    }
    if (!provenance.empty() && provenance.size() != instances.size())
        throw std::invalid_argument("provenance size mismatch");
}

Dataset subset_dataset(const Dataset& data, const std::vector<int>& ids) {
    if (!std::is_sorted(ids.begin(), ids.end()))
        throw std::invalid_argument("subset_dataset: ids must be ascending");
    Dataset out;
    out.relation = data.relation;
    out.attributes = data.attributes;
    out.class_attribute = data.class_attribute;
    out.instances.reserve(ids.size());
    out.provenance.reserve(ids.size());
    for (int id : ids) {
        if (id < 0 || id >= data.n_instances())
            throw std::invalid_argument("subset_dataset: id out of range");
        Instance inst = data.instances[id];
        inst.id = static_cast<int>(out.instances.size());
        out.instances.push_back(std::move(inst));
        out.provenance.push_back(data.provenance.empty() ? id : data.provenance[id]);
    }
    return out;
}

}  // namespace cobfc
