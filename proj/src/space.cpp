#include "stocon/space.hpp"

#include "stocon/errors.hpp"

namespace stocon {

FiniteSpace::FiniteSpace(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw MalformedInputError("space '" + name_ + "' has no elements");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second) {
            throw MalformedInputError("space '" + name_ + "': duplicate label '" + labels_[i] + "'");
        }
    }
}

std::optional<std::size_t> FiniteSpace::find(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteSpace::index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) {
        throw MalformedInputError("unknown label '" + label + "' in space '" + name_ + "'");
    }
    return *i;
}

SpacePtr make_space(std::string name, std::vector<std::string> labels) {
    return std::make_shared<const FiniteSpace>(std::move(name), std::move(labels));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

SpacePtr product_space(const SpacePtr& left, const SpacePtr& right) {
    std::vector<std::string> labels;
    labels.reserve(left->size() * right->size());
    for (const auto& l : left->labels()) {
        for (const auto& r : right->labels()) {
            labels.push_back("(" + l + "," + r + ")");
        }
    }
    return make_space(left->name() + "*" + right->name(), std::move(labels));
}

std::string word_label(const FiniteSpace& base, const std::vector<std::size_t>& word) {
    bool single = true;
    for (const auto& l : base.labels()) {
        if (l.size() != 1) { single = false; break; }
    }
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!single && i > 0) out += ",";
        out += base.label(word[i]);
    }
    return out;
}

SpacePtr word_space(const SpacePtr& base, std::size_t n) {
    if (n == 0) throw PreconditionError("word space needs length >= 1");
    constexpr std::size_t kMaxElements = 1u << 20;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= base->size();
        if (total > kMaxElements) {
            throw PreconditionError("word space " + base->name() + "^" + std::to_string(n) +
                                    " too large to enumerate");
        }
    }
    std::vector<std::string> labels;
    labels.reserve(total);
    std::vector<std::size_t> word(n, 0);
    for (std::size_t k = 0; k < total; ++k) {
        labels.push_back(word_label(*base, word));
        for (std::size_t pos = n; pos-- > 0;) {
            if (++word[pos] < base->size()) break;
            word[pos] = 0;
        }
    }
    return make_space(base->name() + "^" + std::to_string(n), std::move(labels));
}

std::vector<std::size_t> to_indices(const FiniteSpace& space, const std::vector<std::string>& labels) {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(space.index_of(l));
    return out;
}

} // namespace stocon
