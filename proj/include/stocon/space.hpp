#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stocon {

/// A named finite carrier set with distinct string labels. The label order
/// is fixed at construction; every internal index refers to that order.
class FiniteSpace {
public:
    FiniteSpace(std::string name, std::vector<std::string> labels);

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws MalformedInputError if the label is unknown.
    std::size_t index_of(const std::string& label) const;

    bool operator==(const FiniteSpace& o) const { return name_ == o.name_ && labels_ == o.labels_; }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::string name, std::vector<std::string> labels);

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Cartesian product with pair labels "(l,r)". Element (l, r) has index
/// l * |right| + r.
SpacePtr product_space(const SpacePtr& left, const SpacePtr& right);

inline std::size_t pair_index(std::size_t l, std::size_t r, std::size_t right_size) {
    return l * right_size + r;
}
inline std::pair<std::size_t, std::size_t> pair_split(std::size_t k, std::size_t right_size) {
    return {k / right_size, k % right_size};
}

/// Rendering of an index word over `base`: plain concatenation when every
/// label is a single character, otherwise comma-separated.
std::string word_label(const FiniteSpace& base, const std::vector<std::size_t>& word);

/// n-fold power with word labels, lexicographic index order. Materializes
/// |base|^n labels; guarded against accidental blow-up.
SpacePtr word_space(const SpacePtr& base, std::size_t n);

/// Resolves labels to indices; throws MalformedInputError on unknown labels.
std::vector<std::size_t> to_indices(const FiniteSpace& space, const std::vector<std::string>& labels);

} // namespace stocon
