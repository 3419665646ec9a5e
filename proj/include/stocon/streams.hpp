#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stocon/automaton.hpp"
#include "stocon/congruence.hpp"
#include "stocon/distribution.hpp"
#include "stocon/friendship.hpp"
#include "stocon/partition.hpp"
#include "stocon/rational.hpp"

namespace stocon {

/// Law of the word-extended relation for a fixed start state: sparse
/// weights on (final state, output word) pairs, all words of one length.
/// Word spaces are never enumerated; supports stay sparse.
class WordDistribution {
public:
    using Key = std::pair<std::size_t, std::vector<std::size_t>>; // (state, output word)

    WordDistribution(SpacePtr states, SpacePtr outputs, std::size_t length,
                     std::map<Key, Rational> weights);

    const SpacePtr& states() const { return states_; }
    const SpacePtr& outputs() const { return outputs_; }
    std::size_t length() const { return length_; }
    const std::map<Key, Rational>& weights() const { return weights_; }
    const Rational& mass() const { return mass_; }

    bool operator==(const WordDistribution& o) const {
        return length_ == o.length_ && weights_ == o.weights_;
    }

private:
    SpacePtr states_, outputs_;
    std::size_t length_;
    std::map<Key, Rational> weights_;
    Rational mass_;
};

/// Distribution over the start states. Any subprobability works for word
/// laws; cylinder and tree queries insist on mass one.
using InitialDistribution = SubDistribution;

/// Distribution of output words of a fixed length, states hidden.
struct OutputWordDistribution {
    SpacePtr outputs;
    std::size_t length = 0;
    std::map<std::vector<std::size_t>, Rational> weights; // zero-free

    Rational mass() const;
    bool operator==(const OutputWordDistribution& o) const {
        return length == o.length && weights == o.weights;
    }
};

/// Extends the law along an input word: one transition per letter,
/// averaging over the intermediate states.
WordDistribution extend_word(const StochasticAutomaton& a, const std::vector<std::size_t>& word,
                             std::size_t state);

/// Output-word law K^n_mu: start states drawn from mu, final state
/// marginalized out.
OutputWordDistribution word_behavior(const StochasticAutomaton& a, const InitialDistribution& mu,
                                     const std::vector<std::size_t>& word);

/// The black box: dispatches on the word's length, then behaves exactly
/// like word_behavior restricted to words of that length.
OutputWordDistribution black_box(const StochasticAutomaton& a, const InitialDistribution& mu,
                                 const std::vector<std::size_t>& word);

/// Marginal onto the first n letters.
OutputWordDistribution marginal_prefix(const OutputWordDistribution& d, std::size_t n);

/// Finite or eventually periodic input word: prefix followed by period
/// repeated forever; empty period denotes the finite word `prefix`.
struct StreamPresentation {
    std::vector<std::string> prefix;
    std::vector<std::string> period;

    bool is_infinite() const { return !period.empty(); }
    /// nullopt for infinite streams.
    std::optional<std::size_t> length() const;
    const std::string& letter_at(std::size_t i) const;
    /// First n letters; throws PreconditionError if the stream is shorter.
    std::vector<std::string> truncate(std::size_t n) const;
};

/// Exact equality of the denoted words; two eventually periodic words are
/// compared up to the decidable horizon |p1| + |p2| + lcm of the periods.
bool stream_equal(const StreamPresentation& a, const StreamPresentation& b);

/// Non-strict prefix relation on the denoted words.
bool is_prefix_of(const StreamPresentation& p, const StreamPresentation& q);

/// Finite set of paths, required to be prefix-free: no denoted path is a
/// proper prefix of another. Duplicate presentations of the same word are
/// collapsed.
class PrefixTree {
public:
    explicit PrefixTree(std::vector<StreamPresentation> paths);
    const std::vector<StreamPresentation>& paths() const { return paths_; }

private:
    std::vector<StreamPresentation> paths_;
};

/// Probability that the first `depth` output letters fall into `word_set`,
/// i.e. the projective-limit value on the cylinder over the set. Requires
/// a fully probabilistic automaton and a mass-one initial distribution.
Rational cylinder_probability(const StochasticAutomaton& a, const InitialDistribution& mu,
                              const StreamPresentation& tau, std::size_t depth,
                              const std::vector<std::vector<std::size_t>>& word_set);

/// Output distribution at a path prefix of the tree: the marginal onto the
/// first |prefix_word| letters of the behavior along any containing path.
/// All containing paths are evaluated and must agree (full probability
/// makes this path-independent); disagreement raises
/// InternalConsistencyError.
OutputWordDistribution decorate_tree(const StochasticAutomaton& a, const InitialDistribution& mu,
                                     const PrefixTree& tree,
                                     const std::vector<std::string>& prefix_word);

/// Probability that the final output letter lies in `final_outputs` after
/// following `prefix_word` into the tree.
Rational leaf_output(const StochasticAutomaton& a, const InitialDistribution& mu,
                     const PrefixTree& tree, const std::vector<std::string>& prefix_word,
                     const std::vector<std::string>& final_outputs);

/// Componentwise power: blocks are n-fold rectangles of p-blocks over
/// word_space(p.space, n).
Partition power_partition(const Partition& p, std::size_t n);

/// Verifies at depth n that the congruence survives sequential work:
/// alpha^n x gamma friendly to gamma x beta^n for the word-extended law,
/// and alpha^n friendly to beta^n for the output-word law at mu (uniform
/// mass-one when omitted). A failure would falsify the implementation, not
/// the theory.
FriendshipReport check_power_friendship(const StochasticAutomaton& a, const CongruenceTriple& c,
                                        std::size_t n,
                                        const std::optional<SubDistribution>& mu = std::nullopt);

} // namespace stocon
