#include "stocon/streams.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "stocon/errors.hpp"

namespace stocon {

namespace {

using SparseLaw = std::map<WordDistribution::Key, Rational>;

void check_letter(const StochasticAutomaton& a, std::size_t letter) {
    if (letter >= a.inputs()->size()) {
        throw MalformedInputError("input letter outside '" + a.inputs()->name() + "'");
    }
}

SparseLaw seed_law(const StochasticAutomaton& a, std::size_t letter, std::size_t state) {
    SparseLaw law;
    const std::size_t ny = a.outputs()->size();
    for (const auto& [k, w] : a.row(letter, state).weights()) {
        const auto [z, y] = pair_split(k, ny);
        law.emplace(WordDistribution::Key{z, {y}}, w);
    }
    return law;
}

// One sequential step: feed `letter` in every intermediate state and
// append the produced output letter.
SparseLaw step_law(const StochasticAutomaton& a, const SparseLaw& law, std::size_t letter) {
    SparseLaw next;
    const std::size_t ny = a.outputs()->size();
    for (const auto& [key, w] : law) {
        const auto& [mid_state, word] = key;
        for (const auto& [k, w2] : a.row(letter, mid_state).weights()) {
            const auto [z2, y] = pair_split(k, ny);
            std::vector<std::size_t> extended = word;
            extended.push_back(y);
            next[WordDistribution::Key{z2, std::move(extended)}] += w * w2;
        }
    }
    return next;
}

std::string render_state_word(const StochasticAutomaton& a, const std::vector<std::size_t>& word,
                              std::size_t state) {
    return "(" + word_label(*a.inputs(), word) + "," + a.states()->label(state) + ")";
}

std::string class_label(const Partition& p, std::size_t block) {
    return "⟨" + p.space()->label(p.block(block).front()) + "⟩";
}

std::string beta_tuple_label(const Partition& beta, const std::vector<std::size_t>& blocks) {
    std::string out;
    for (std::size_t b : blocks) out += class_label(beta, b);
    return out;
}

std::size_t lcm_positive(std::size_t a, std::size_t b) {
    return a / std::gcd(a, b) * b;
}

} // namespace

WordDistribution::WordDistribution(SpacePtr states, SpacePtr outputs, std::size_t length,
                                   std::map<Key, Rational> weights)
    : states_(std::move(states)), outputs_(std::move(outputs)), length_(length),
      weights_(std::move(weights)) {
    if (length_ == 0) throw PreconditionError("word distribution needs length >= 1");
    for (auto it = weights_.begin(); it != weights_.end();) {
        const auto& [state, word] = it->first;
        if (state >= states_->size() || word.size() != length_ ||
            std::any_of(word.begin(), word.end(),
                        [&](std::size_t y) { return y >= outputs_->size(); })) {
            throw MalformedInputError("word distribution entry outside its space");
        }
        if (it->second.sign() < 0) {
            throw MalformedInputError("negative weight in word distribution");
        }
        if (it->second.is_zero()) {
            it = weights_.erase(it);
        } else {
            mass_ += it->second;
            ++it;
        }
    }
}

Rational OutputWordDistribution::mass() const {
    Rational m;
    for (const auto& [w, p] : weights) m += p;
    return m;
}

WordDistribution extend_word(const StochasticAutomaton& a, const std::vector<std::size_t>& word,
                             std::size_t state) {
    if (word.empty()) throw PreconditionError("extend_word needs a word of length >= 1");
    if (state >= a.states()->size()) {
        throw MalformedInputError("start state outside '" + a.states()->name() + "'");
    }
    for (std::size_t letter : word) check_letter(a, letter);
    SparseLaw law = seed_law(a, word[0], state);
    for (std::size_t i = 1; i < word.size(); ++i) law = step_law(a, law, word[i]);
    return WordDistribution(a.states(), a.outputs(), word.size(), std::move(law));
}

OutputWordDistribution word_behavior(const StochasticAutomaton& a, const InitialDistribution& mu,
                                     const std::vector<std::size_t>& word) {
    if (!same_space(mu.space(), a.states())) {
        throw PreconditionError("word_behavior: mu is not over the state space");
    }
    OutputWordDistribution out{a.outputs(), word.size(), {}};
    for (const auto& [z0, m0] : mu.weights()) {
        const WordDistribution wd = extend_word(a, word, z0);
        for (const auto& [key, w] : wd.weights()) out.weights[key.second] += m0 * w;
    }
    return out;
}

OutputWordDistribution black_box(const StochasticAutomaton& a, const InitialDistribution& mu,
                                 const std::vector<std::size_t>& word) {
    return word_behavior(a, mu, word);
}

OutputWordDistribution marginal_prefix(const OutputWordDistribution& d, std::size_t n) {
    if (n == 0 || n > d.length) {
        throw PreconditionError("marginal_prefix: prefix length out of range");
    }
    OutputWordDistribution out{d.outputs, n, {}};
    for (const auto& [w, p] : d.weights) {
        out.weights[std::vector<std::size_t>(w.begin(), w.begin() + n)] += p;
    }
    return out;
}

std::optional<std::size_t> StreamPresentation::length() const {
    if (is_infinite()) return std::nullopt;
    return prefix.size();
}

const std::string& StreamPresentation::letter_at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (period.empty()) throw PreconditionError("stream index past the end of a finite word");
    return period[(i - prefix.size()) % period.size()];
}

std::vector<std::string> StreamPresentation::truncate(std::size_t n) const {
    if (!is_infinite() && prefix.size() < n) {
        throw PreconditionError("stream denotes a word shorter than the requested depth");
    }
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(letter_at(i));
    return out;
}

bool stream_equal(const StreamPresentation& a, const StreamPresentation& b) {
    if (a.is_infinite() != b.is_infinite()) return false;
    if (!a.is_infinite()) return a.prefix == b.prefix;
    const std::size_t horizon =
        a.prefix.size() + b.prefix.size() + lcm_positive(a.period.size(), b.period.size());
    for (std::size_t i = 0; i < horizon; ++i) {
        if (a.letter_at(i) != b.letter_at(i)) return false;
    }
    return true;
}

bool is_prefix_of(const StreamPresentation& p, const StreamPresentation& q) {
    if (p.is_infinite()) return q.is_infinite() && stream_equal(p, q);
    if (!q.is_infinite() && q.prefix.size() < p.prefix.size()) return false;
    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
        if (p.prefix[i] != q.letter_at(i)) return false;
    }
    return true;
}

PrefixTree::PrefixTree(std::vector<StreamPresentation> paths) : paths_(std::move(paths)) {
    for (const auto& p : paths_) {
        if (p.prefix.empty() && p.period.empty()) {
            throw MalformedInputError("tree path denotes the empty word");
        }
    }
    std::sort(paths_.begin(), paths_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.prefix, a.period) < std::tie(b.prefix, b.period);
    });
    // Collapse different presentations of one word, then require prefix-freeness.
    std::vector<StreamPresentation> unique;
    for (auto& p : paths_) {
        const bool dup = std::any_of(unique.begin(), unique.end(),
                                     [&](const auto& q) { return stream_equal(p, q); });
        if (!dup) unique.push_back(std::move(p));
    }
    paths_ = std::move(unique);
    if (paths_.empty()) throw MalformedInputError("tree has no paths");
    for (std::size_t i = 0; i < paths_.size(); ++i) {
        for (std::size_t j = 0; j < paths_.size(); ++j) {
            if (i == j) continue;
            if (is_prefix_of(paths_[i], paths_[j])) {
                throw MalformedInputError("tree is not prefix free: a path is a proper prefix "
                                          "of another");
            }
        }
    }
}

Rational cylinder_probability(const StochasticAutomaton& a, const InitialDistribution& mu,
                              const StreamPresentation& tau, std::size_t depth,
                              const std::vector<std::vector<std::size_t>>& word_set) {
    if (!a.is_fully_probabilistic()) {
        throw FullProbabilityRequiredError(
            "cylinder_probability requires a fully probabilistic automaton");
    }
    if (!same_space(mu.space(), a.states()) || !mu.has_full_mass()) {
        throw FullProbabilityRequiredError(
            "cylinder_probability requires an initial distribution of mass one");
    }
    if (depth == 0) throw PreconditionError("cylinder depth must be >= 1");
    const auto tau_n = to_indices(*a.inputs(), tau.truncate(depth));
    const OutputWordDistribution behavior = word_behavior(a, mu, tau_n);
    std::set<std::vector<std::size_t>> wanted;
    for (const auto& w : word_set) {
        if (w.size() != depth) {
            throw MalformedInputError("cylinder word set contains a word of the wrong length");
        }
        for (std::size_t y : w) {
            if (y >= a.outputs()->size()) {
                throw MalformedInputError("cylinder word set letter outside the output space");
            }
        }
        wanted.insert(w);
    }
    Rational total;
    for (const auto& w : wanted) {
        auto it = behavior.weights.find(w);
        if (it != behavior.weights.end()) total += it->second;
    }
    return total;
}

OutputWordDistribution decorate_tree(const StochasticAutomaton& a, const InitialDistribution& mu,
                                     const PrefixTree& tree,
                                     const std::vector<std::string>& prefix_word) {
    if (!a.is_fully_probabilistic()) {
        throw FullProbabilityRequiredError("decorate_tree requires a fully probabilistic automaton");
    }
    if (!same_space(mu.space(), a.states()) || !mu.has_full_mass()) {
        throw FullProbabilityRequiredError(
            "decorate_tree requires an initial distribution of mass one");
    }
    if (prefix_word.empty()) throw PreconditionError("tree prefix must have length >= 1");
    const std::size_t n = prefix_word.size();
    const StreamPresentation as_stream{prefix_word, {}};

    std::vector<OutputWordDistribution> values;
    for (const auto& path : tree.paths()) {
        if (!is_prefix_of(as_stream, path)) continue;
        if (path.is_infinite()) {
            // The projective-limit marginal at depth n is the depth-n behavior.
            values.push_back(word_behavior(a, mu, to_indices(*a.inputs(), path.truncate(n))));
        } else {
            const auto full = to_indices(*a.inputs(), path.prefix);
            values.push_back(marginal_prefix(word_behavior(a, mu, full), n));
        }
    }
    if (values.empty()) {
        throw NotInTreeError("word '" + word_label(*a.inputs(),
                                                   to_indices(*a.inputs(), prefix_word)) +
                             "' is not a prefix of any tree path");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] == values[0])) {
            throw InternalConsistencyError("tree decoration differs between containing paths");
        }
    }
    return values.front();
}

Rational leaf_output(const StochasticAutomaton& a, const InitialDistribution& mu,
                     const PrefixTree& tree, const std::vector<std::string>& prefix_word,
                     const std::vector<std::string>& final_outputs) {
    const OutputWordDistribution t = decorate_tree(a, mu, tree, prefix_word);
    std::set<std::size_t> wanted;
    for (const auto& label : final_outputs) wanted.insert(a.outputs()->index_of(label));
    Rational total;
    for (const auto& [w, p] : t.weights) {
        if (wanted.count(w.back())) total += p;
    }
    return total;
}

Partition power_partition(const Partition& p, std::size_t n) {
    if (n == 0) throw PreconditionError("power_partition needs n >= 1");
    const SpacePtr space = word_space(p.space(), n);
    const std::size_t base = p.space()->size();

    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> tuple(n, 0); // block indices per position
    while (true) {
        std::vector<std::size_t> members;
        std::vector<std::size_t> pick(n, 0); // member index inside each block
        while (true) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i) idx = idx * base + p.block(tuple[i])[pick[i]];
            members.push_back(idx);
            std::size_t pos = n;
            while (pos-- > 0) {
                if (++pick[pos] < p.block(tuple[pos]).size()) break;
                pick[pos] = 0;
                if (pos == 0) goto tuple_done;
            }
        }
    tuple_done:
        blocks.push_back(std::move(members));
        std::size_t pos = n;
        while (pos-- > 0) {
            if (++tuple[pos] < p.block_count()) break;
            tuple[pos] = 0;
            if (pos == 0) return Partition(space, std::move(blocks));
        }
    }
}

FriendshipReport check_power_friendship(const StochasticAutomaton& a, const CongruenceTriple& c,
                                        std::size_t n, const std::optional<SubDistribution>& mu) {
    const FriendshipReport base = is_congruence(a, c);
    if (!base.friendly) {
        throw NotACongruenceError("check_power_friendship: the triple is not a congruence", base);
    }
    if (n == 0) throw PreconditionError("check_power_friendship needs n >= 1");

    SubDistribution initial = [&] {
        if (mu) {
            if (!same_space(mu->space(), a.states())) {
                throw PreconditionError("check_power_friendship: mu is not over the state space");
            }
            return *mu;
        }
        std::map<std::size_t, Rational> uniform;
        const long nz = static_cast<long>(a.states()->size());
        for (std::size_t z = 0; z < a.states()->size(); ++z) uniform.emplace(z, Rational(1, nz));
        return SubDistribution(a.states(), std::move(uniform));
    }();

    const std::size_t nx = a.inputs()->size();
    const std::size_t nz = a.states()->size();

    // Sparse invariant-mass keys: gamma-block of the final state plus the
    // componentwise beta-blocks of the output word. Word spaces are never
    // enumerated.
    using ExtKey = std::pair<std::size_t, std::vector<std::size_t>>;
    using ExtMass = std::map<ExtKey, Rational>;
    using BehaviorMass = std::map<std::vector<std::size_t>, Rational>;

    struct ExtGroup { std::string label; ExtMass mass; };
    struct BehGroup { std::string label; BehaviorMass mass; };
    std::map<std::pair<std::vector<std::size_t>, std::size_t>, ExtGroup> ext_groups;
    std::map<std::vector<std::size_t>, BehGroup> beh_groups;

    std::optional<FriendshipReport> failure;

    auto ext_mass_of = [&](const SparseLaw& law) {
        ExtMass mass;
        for (const auto& [key, w] : law) {
            std::vector<std::size_t> beta_blocks;
            beta_blocks.reserve(key.second.size());
            for (std::size_t y : key.second) beta_blocks.push_back(c.beta.block_of(y));
            mass[ExtKey{c.gamma.block_of(key.first), std::move(beta_blocks)}] += w;
        }
        return mass;
    };

    auto first_difference = [](const auto& lhs, const auto& rhs) {
        // First key (in map order) where the two mass maps disagree; the
        // maps are known to differ.
        auto li = lhs.begin();
        auto ri = rhs.begin();
        while (li != lhs.end() && ri != rhs.end()) {
            if (li->first < ri->first) return std::make_pair(li->first, std::make_pair(li->second, Rational(0)));
            if (ri->first < li->first) return std::make_pair(ri->first, std::make_pair(Rational(0), ri->second));
            if (!(li->second == ri->second)) {
                return std::make_pair(li->first, std::make_pair(li->second, ri->second));
            }
            ++li, ++ri;
        }
        if (li != lhs.end()) return std::make_pair(li->first, std::make_pair(li->second, Rational(0)));
        if (ri != rhs.end()) return std::make_pair(ri->first, std::make_pair(Rational(0), ri->second));
        throw InternalConsistencyError("first_difference called on equal mass maps");
    };

    auto visit_word = [&](const std::vector<std::size_t>& word,
                          const std::vector<SparseLaw>& per_state) {
        if (failure) return;
        std::vector<std::size_t> alpha_tuple;
        alpha_tuple.reserve(word.size());
        for (std::size_t x : word) alpha_tuple.push_back(c.alpha.block_of(x));

        // Extended relation: rows are (word, start state) pairs.
        for (std::size_t z0 = 0; z0 < nz && !failure; ++z0) {
            ExtMass mass = ext_mass_of(per_state[z0]);
            const auto key = std::make_pair(alpha_tuple, c.gamma.block_of(z0));
            auto [it, inserted] =
                ext_groups.try_emplace(key, ExtGroup{render_state_word(a, word, z0), {}});
            if (inserted) {
                it->second.mass = std::move(mass);
            } else if (!(it->second.mass == mass)) {
                const auto [diff_key, masses] = first_difference(it->second.mass, mass);
                failure = FriendshipReport{
                    false, FriendshipWitness{it->second.label, render_state_word(a, word, z0),
                                             {"(" + class_label(c.gamma, diff_key.first) + "," +
                                              beta_tuple_label(c.beta, diff_key.second) + ")"},
                                             masses.first, masses.second}};
            }
        }
        if (failure) return;

        // Output-word law at the initial distribution: rows are words.
        BehaviorMass behavior;
        for (const auto& [z0, m0] : initial.weights()) {
            for (const auto& [key, w] : per_state[z0]) {
                std::vector<std::size_t> beta_blocks;
                beta_blocks.reserve(key.second.size());
                for (std::size_t y : key.second) beta_blocks.push_back(c.beta.block_of(y));
                behavior[std::move(beta_blocks)] += m0 * w;
            }
        }
        auto [it, inserted] = beh_groups.try_emplace(
            alpha_tuple, BehGroup{word_label(*a.inputs(), word), {}});
        if (inserted) {
            it->second.mass = std::move(behavior);
        } else if (!(it->second.mass == behavior)) {
            const auto [diff_key, masses] = first_difference(it->second.mass, behavior);
            failure = FriendshipReport{
                false, FriendshipWitness{it->second.label, word_label(*a.inputs(), word),
                                         {beta_tuple_label(c.beta, diff_key)},
                                         masses.first, masses.second}};
        }
    };

    // Depth-first walk over X^n in lexicographic order, extending the
    // per-start-state laws one letter at a time.
    std::vector<std::size_t> word;
    auto walk = [&](auto&& self, const std::vector<SparseLaw>& per_state) -> void {
        if (failure) return;
        if (word.size() == n) {
            visit_word(word, per_state);
            return;
        }
        for (std::size_t x = 0; x < nx && !failure; ++x) {
            word.push_back(x);
            std::vector<SparseLaw> next;
            next.reserve(nz);
            for (std::size_t z0 = 0; z0 < nz; ++z0) {
                next.push_back(word.size() == 1 ? seed_law(a, x, z0)
                                                : step_law(a, per_state[z0], x));
            }
            self(self, next);
            word.pop_back();
        }
    };
    walk(walk, std::vector<SparseLaw>(nz));

    return failure.value_or(FriendshipReport{true, std::nullopt});
}

} // namespace stocon
