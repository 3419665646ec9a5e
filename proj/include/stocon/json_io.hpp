#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "stocon/automaton.hpp"
#include "stocon/congruence.hpp"
#include "stocon/distribution.hpp"
#include "stocon/factor.hpp"
#include "stocon/friendship.hpp"
#include "stocon/morphism.hpp"
#include "stocon/partition.hpp"
#include "stocon/streams.hpp"

namespace stocon {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON document; parse errors carry the file name and
/// position. All parse_* functions throw MalformedInputError with a
/// diagnostic naming the offending field or label.
json load_json(const std::string& path);

StochasticAutomaton parse_automaton(const json& j, const std::string& where = "automaton");
json serialize_automaton(const StochasticAutomaton& a);

/// `roles` maps admissible values of the "space" field to actual spaces
/// (e.g. inputs/outputs/states of an automaton, or source/target of a
/// relation).
Partition parse_partition(const json& j, const std::map<std::string, SpacePtr>& roles,
                          const std::string& where = "partition");
/// Same, but the partition must be over the single named role.
Partition parse_partition_for(const json& j, const std::string& role, const SpacePtr& space,
                              const std::string& where = "partition");
json serialize_partition(const Partition& p);

CongruenceTriple parse_triple(const json& j, const StochasticAutomaton& a,
                              const std::string& where = "triple");
json serialize_triple(const CongruenceTriple& c);

SubDistribution parse_distribution(const json& j, const SpacePtr& space,
                                   const std::string& where = "distribution");
json serialize_distribution(const SubDistribution& d);

StochasticRelation parse_relation(const json& j, const std::string& where = "relation");
json serialize_relation(const StochasticRelation& r);

StreamPresentation parse_stream(const json& j, const SpacePtr& inputs,
                                const std::string& where = "stream");
json serialize_stream(const StreamPresentation& s);

PrefixTree parse_tree(const json& j, const SpacePtr& inputs, const std::string& where = "tree");

/// CLI word syntax: a JSON array of labels, or plain concatenation when
/// every label of the space is a single character.
std::vector<std::size_t> parse_word(const std::string& text, const SpacePtr& space,
                                    const std::string& where = "word");
std::vector<std::vector<std::size_t>> parse_word_set(const std::string& text, const SpacePtr& space,
                                                     std::size_t expected_length,
                                                     const std::string& where = "word set");

Morphism parse_morphism(const json& j, StochasticAutomaton source, StochasticAutomaton target,
                        const std::string& where = "morphism");
/// Label-to-label maps {"f": {...}, "g": {...}, "h": {...}}.
json serialize_morphism_maps(const Morphism& m);

json serialize_word_distribution(const OutputWordDistribution& d);
json serialize_factor_result(const FactorResult& fr);
json serialize_friendship(const FriendshipReport& r);

} // namespace stocon
