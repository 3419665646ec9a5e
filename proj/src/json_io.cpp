#include "stocon/json_io.hpp"

#include <fstream>
#include <set>

#include "stocon/errors.hpp"

namespace stocon {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw MalformedInputError(where + ": " + what);
}

const json& expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
}

const json& field(const json& j, const char* key, const std::string& where) {
    expect_object(j, where);
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::vector<std::string> string_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string()) fail(where, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::string string_field(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

Rational rational_field(const json& j, const char* key, const std::string& where) {
    const std::string text = string_field(j, key, where);
    try {
        return Rational::parse(text);
    } catch (const MalformedInputError& e) {
        fail(where + "." + key, e.what());
    }
}

SpacePtr parse_space(const json& j, const char* key, const std::string& where) {
    const auto labels = string_array(field(j, key, where), where + "." + key);
    try {
        return make_space(key, labels);
    } catch (const MalformedInputError& e) {
        fail(where + "." + key, e.what());
    }
}

} // namespace

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(path + ": " + e.what());
    }
}

StochasticAutomaton parse_automaton(const json& j, const std::string& where) {
    const SpacePtr inputs = parse_space(j, "inputs", where);
    const SpacePtr outputs = parse_space(j, "outputs", where);
    const SpacePtr states = parse_space(j, "states", where);
    const SpacePtr row_space = product_space(states, outputs);

    const json& law = field(j, "law", where);
    if (!law.is_array()) fail(where + ".law", "expected an array of rows");

    std::map<StochasticAutomaton::RowKey, SubDistribution> rows;
    std::size_t i = 0;
    for (const auto& row : law) {
        const std::string rw = where + ".law[" + std::to_string(i++) + "]";
        const std::string input = string_field(row, "input", rw);
        const std::string state = string_field(row, "state", rw);
        auto xi = inputs->find(input);
        if (!xi) fail(rw, "unknown input label '" + input + "'");
        auto zi = states->find(state);
        if (!zi) fail(rw, "unknown state label '" + state + "'");

        const json& moves = field(row, "moves", rw);
        if (!moves.is_array()) fail(rw + ".moves", "expected an array");
        std::map<std::size_t, Rational> weights;
        std::size_t k = 0;
        for (const auto& move : moves) {
            const std::string mw = rw + ".moves[" + std::to_string(k++) + "]";
            const std::string next = string_field(move, "next", mw);
            const std::string out = string_field(move, "out", mw);
            auto ni = states->find(next);
            if (!ni) fail(mw, "unknown state label '" + next + "'");
            auto oi = outputs->find(out);
            if (!oi) fail(mw, "unknown output label '" + out + "'");
            const Rational p = rational_field(move, "p", mw);
            if (p.sign() < 0) fail(mw, "negative weight " + p.str());
            const std::size_t idx = pair_index(*ni, *oi, outputs->size());
            if (weights.count(idx)) {
                fail(mw, "duplicate move (" + next + "," + out + ") in one row");
            }
            weights.emplace(idx, p);
        }
        if (rows.count({*xi, *zi})) fail(rw, "duplicate row (" + input + "," + state + ")");
        rows.emplace(StochasticAutomaton::RowKey{*xi, *zi},
                     SubDistribution(row_space, std::move(weights)));
    }
    return StochasticAutomaton(inputs, outputs, states, std::move(rows));
}

json serialize_automaton(const StochasticAutomaton& a) {
    json j;
    j["inputs"] = a.inputs()->labels();
    j["outputs"] = a.outputs()->labels();
    j["states"] = a.states()->labels();
    json law = json::array();
    for (const auto& [key, row] : a.law()) {
        json moves = json::array();
        for (const auto& [idx, p] : row.weights()) {
            const auto [z, y] = pair_split(idx, a.outputs()->size());
            moves.push_back({{"next", a.states()->label(z)},
                             {"out", a.outputs()->label(y)},
                             {"p", p.str()}});
        }
        law.push_back({{"input", a.inputs()->label(key.first)},
                       {"state", a.states()->label(key.second)},
                       {"moves", std::move(moves)}});
    }
    j["law"] = std::move(law);
    return j;
}

Partition parse_partition(const json& j, const std::map<std::string, SpacePtr>& roles,
                          const std::string& where) {
    const std::string space_name = string_field(j, "space", where);
    auto it = roles.find(space_name);
    if (it == roles.end()) fail(where + ".space", "unknown space '" + space_name + "'");
    const SpacePtr& space = it->second;

    const json& blocks = field(j, "blocks", where);
    if (!blocks.is_array()) fail(where + ".blocks", "expected an array of arrays");
    std::vector<std::vector<std::string>> label_blocks;
    std::size_t i = 0;
    for (const auto& b : blocks) {
        label_blocks.push_back(string_array(b, where + ".blocks[" + std::to_string(i++) + "]"));
    }
    try {
        return Partition::from_label_blocks(space, label_blocks);
    } catch (const MalformedInputError& e) {
        fail(where, e.what());
    }
}

Partition parse_partition_for(const json& j, const std::string& role, const SpacePtr& space,
                              const std::string& where) {
    const std::string space_name = string_field(j, "space", where);
    if (space_name != role) {
        fail(where + ".space", "must partition '" + role + "', got '" + space_name + "'");
    }
    return parse_partition(j, {{role, space}}, where);
}

json serialize_partition(const Partition& p) {
    json blocks = json::array();
    for (std::size_t b = 0; b < p.block_count(); ++b) blocks.push_back(p.block_labels(b));
    return {{"space", p.space()->name()}, {"blocks", std::move(blocks)}};
}

CongruenceTriple parse_triple(const json& j, const StochasticAutomaton& a,
                              const std::string& where) {
    return CongruenceTriple{
        parse_partition_for(field(j, "alpha", where), "inputs", a.inputs(), where + ".alpha"),
        parse_partition_for(field(j, "beta", where), "outputs", a.outputs(), where + ".beta"),
        parse_partition_for(field(j, "gamma", where), "states", a.states(), where + ".gamma")};
}

json serialize_triple(const CongruenceTriple& c) {
    return {{"alpha", serialize_partition(c.alpha)},
            {"beta", serialize_partition(c.beta)},
            {"gamma", serialize_partition(c.gamma)}};
}

SubDistribution parse_distribution(const json& j, const SpacePtr& space,
                                   const std::string& where) {
    expect_object(j, where);
    std::map<std::size_t, Rational> weights;
    for (const auto& [label, value] : j.items()) {
        auto idx = space->find(label);
        if (!idx) fail(where, "unknown label '" + label + "' in space '" + space->name() + "'");
        if (!value.is_string()) fail(where + "." + label, "expected a rational string");
        Rational p;
        try {
            p = Rational::parse(value.get<std::string>());
        } catch (const MalformedInputError& e) {
            fail(where + "." + label, e.what());
        }
        if (p.sign() < 0) fail(where + "." + label, "negative weight " + p.str());
        weights.emplace(*idx, p);
    }
    SubDistribution d(space, std::move(weights));
    if (!d.is_subprobability()) fail(where, "mass-exceeds-one: total mass " + d.mass().str());
    return d;
}

json serialize_distribution(const SubDistribution& d) {
    json j = json::object();
    for (const auto& [idx, p] : d.weights()) j[d.space()->label(idx)] = p.str();
    return j;
}

StochasticRelation parse_relation(const json& j, const std::string& where) {
    const SpacePtr source = parse_space(j, "source", where);
    const SpacePtr target = parse_space(j, "target", where);

    const json& rows_json = field(j, "rows", where);
    if (!rows_json.is_array()) fail(where + ".rows", "expected an array");
    std::map<std::size_t, SubDistribution> by_index;
    std::size_t i = 0;
    for (const auto& row : rows_json) {
        const std::string rw = where + ".rows[" + std::to_string(i++) + "]";
        const std::string from = string_field(row, "from", rw);
        auto fi = source->find(from);
        if (!fi) fail(rw, "unknown source label '" + from + "'");
        if (by_index.count(*fi)) fail(rw, "duplicate row '" + from + "'");
        const json& moves = field(row, "moves", rw);
        if (!moves.is_array()) fail(rw + ".moves", "expected an array");
        std::map<std::size_t, Rational> weights;
        std::size_t k = 0;
        for (const auto& move : moves) {
            const std::string mw = rw + ".moves[" + std::to_string(k++) + "]";
            const std::string to = string_field(move, "to", mw);
            auto ti = target->find(to);
            if (!ti) fail(mw, "unknown target label '" + to + "'");
            const Rational p = rational_field(move, "p", mw);
            if (p.sign() < 0) fail(mw, "negative weight " + p.str());
            if (weights.count(*ti)) fail(mw, "duplicate move '" + to + "' in one row");
            weights.emplace(*ti, p);
        }
        SubDistribution d(target, std::move(weights));
        if (!d.is_subprobability()) fail(rw, "mass-exceeds-one: total mass " + d.mass().str());
        by_index.emplace(*fi, std::move(d));
    }
    if (by_index.size() != source->size()) {
        for (std::size_t e = 0; e < source->size(); ++e) {
            if (!by_index.count(e)) fail(where, "missing row '" + source->label(e) + "'");
        }
    }
    std::vector<SubDistribution> rows;
    rows.reserve(source->size());
    for (auto& [unused, d] : by_index) rows.push_back(std::move(d));
    return StochasticRelation(source, target, std::move(rows));
}

json serialize_relation(const StochasticRelation& r) {
    json rows = json::array();
    for (std::size_t x = 0; x < r.source->size(); ++x) {
        json moves = json::array();
        for (const auto& [idx, p] : r.rows[x].weights()) {
            moves.push_back({{"to", r.target->label(idx)}, {"p", p.str()}});
        }
        rows.push_back({{"from", r.source->label(x)}, {"moves", std::move(moves)}});
    }
    return {{"source", r.source->labels()}, {"target", r.target->labels()}, {"rows", std::move(rows)}};
}

StreamPresentation parse_stream(const json& j, const SpacePtr& inputs, const std::string& where) {
    StreamPresentation s;
    s.prefix = string_array(field(j, "prefix", where), where + ".prefix");
    if (j.contains("period")) {
        s.period = string_array(j.at("period"), where + ".period");
    }
    if (s.prefix.empty() && s.period.empty()) fail(where, "stream denotes the empty word");
    for (const auto& l : s.prefix) {
        if (!inputs->find(l)) fail(where + ".prefix", "unknown input label '" + l + "'");
    }
    for (const auto& l : s.period) {
        if (!inputs->find(l)) fail(where + ".period", "unknown input label '" + l + "'");
    }
    return s;
}

json serialize_stream(const StreamPresentation& s) {
    return {{"prefix", s.prefix}, {"period", s.period}};
}

PrefixTree parse_tree(const json& j, const SpacePtr& inputs, const std::string& where) {
    const json& paths = field(j, "paths", where);
    if (!paths.is_array()) fail(where + ".paths", "expected an array");
    std::vector<StreamPresentation> out;
    std::size_t i = 0;
    for (const auto& p : paths) {
        out.push_back(parse_stream(p, inputs, where + ".paths[" + std::to_string(i++) + "]"));
    }
    try {
        return PrefixTree(std::move(out));
    } catch (const MalformedInputError& e) {
        fail(where, e.what());
    }
}

std::vector<std::size_t> parse_word(const std::string& text, const SpacePtr& space,
                                    const std::string& where) {
    std::vector<std::string> labels;
    if (!text.empty() && text[0] == '[') {
        json arr;
        try {
            arr = json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            fail(where, e.what());
        }
        labels = string_array(arr, where);
    } else {
        for (char ch : text) labels.emplace_back(1, ch);
    }
    if (labels.empty()) fail(where, "empty word");
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        auto idx = space->find(l);
        if (!idx) {
            fail(where, "unknown label '" + l + "' in space '" + space->name() +
                            "' (use a JSON array for multi-character labels)");
        }
        out.push_back(*idx);
    }
    return out;
}

std::vector<std::vector<std::size_t>> parse_word_set(const std::string& text,
                                                     const SpacePtr& space,
                                                     std::size_t expected_length,
                                                     const std::string& where) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(where, e.what());
    }
    if (!arr.is_array()) fail(where, "expected a JSON array of words");
    std::vector<std::vector<std::size_t>> out;
    std::size_t i = 0;
    for (const auto& w : arr) {
        const std::string ww = where + "[" + std::to_string(i++) + "]";
        std::vector<std::size_t> word;
        if (w.is_string()) {
            word = parse_word(w.get<std::string>(), space, ww);
        } else if (w.is_array()) {
            word = to_indices(*space, string_array(w, ww));
        } else {
            fail(ww, "expected a word (string or array of labels)");
        }
        if (word.size() != expected_length) {
            fail(ww, "expected a word of length " + std::to_string(expected_length));
        }
        out.push_back(std::move(word));
    }
    return out;
}

Morphism parse_morphism(const json& j, StochasticAutomaton source, StochasticAutomaton target,
                        const std::string& where) {
    auto component = [&](const char* key, const SpacePtr& dom, const SpacePtr& cod) {
        const json& m = field(j, key, where);
        expect_object(m, where + "." + key);
        std::vector<std::size_t> out(dom->size(), cod->size());
        for (const auto& [from, to] : m.items()) {
            auto di = dom->find(from);
            if (!di) fail(where + "." + key, "unknown label '" + from + "'");
            if (!to.is_string()) fail(where + "." + key, "expected a label string");
            auto ci = cod->find(to.get<std::string>());
            if (!ci) fail(where + "." + key, "unknown target label '" + to.get<std::string>() + "'");
            out[*di] = *ci;
        }
        for (std::size_t e = 0; e < dom->size(); ++e) {
            if (out[e] == cod->size()) {
                fail(where + "." + key, "missing entry for '" + dom->label(e) + "'");
            }
        }
        return out;
    };
    auto f = component("f", source.inputs(), target.inputs());
    auto g = component("g", source.outputs(), target.outputs());
    auto h = component("h", source.states(), target.states());
    return Morphism(std::move(source), std::move(target), std::move(f), std::move(g), std::move(h));
}

json serialize_morphism_maps(const Morphism& m) {
    auto component = [](const SpacePtr& dom, const SpacePtr& cod,
                        const std::vector<std::size_t>& v) {
        json out = json::object();
        for (std::size_t i = 0; i < v.size(); ++i) out[dom->label(i)] = cod->label(v[i]);
        return out;
    };
    return {{"f", component(m.source().inputs(), m.target().inputs(), m.f())},
            {"g", component(m.source().outputs(), m.target().outputs(), m.g())},
            {"h", component(m.source().states(), m.target().states(), m.h())}};
}

json serialize_word_distribution(const OutputWordDistribution& d) {
    json j = json::object();
    for (const auto& [w, p] : d.weights) j[word_label(*d.outputs, w)] = p.str();
    return j;
}

json serialize_factor_result(const FactorResult& fr) {
    auto classes = [](const Partition& p, const SpacePtr& q) {
        json out = json::object();
        for (std::size_t b = 0; b < p.block_count(); ++b) out[q->label(b)] = p.block_labels(b);
        return out;
    };
    const auto& m = fr.canonical;
    const CongruenceTriple triple{kernel_partition(m.source().inputs(), m.f()),
                                  kernel_partition(m.source().outputs(), m.g()),
                                  kernel_partition(m.source().states(), m.h())};
    json j = serialize_automaton(fr.factor);
    j["classes"] = {{"inputs", classes(triple.alpha, fr.factor.inputs())},
                    {"outputs", classes(triple.beta, fr.factor.outputs())},
                    {"states", classes(triple.gamma, fr.factor.states())}};
    return j;
}

json serialize_friendship(const FriendshipReport& r) {
    json j;
    j["friendly"] = r.friendly;
    if (r.witness) {
        j["witness"] = {{"left", r.witness->left},
                        {"right", r.witness->right},
                        {"block", r.witness->block},
                        {"left_mass", r.witness->left_mass.str()},
                        {"right_mass", r.witness->right_mass.str()}};
    }
    return j;
}

} // namespace stocon
