#include "stocon/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "stocon/congruence.hpp"
#include "stocon/errors.hpp"
#include "stocon/factor.hpp"
#include "stocon/friendship.hpp"
#include "stocon/json_io.hpp"
#include "stocon/randomization.hpp"
#include "stocon/streams.hpp"

#include "testgen/generators.hpp"

namespace stocon {

namespace {

struct Report {
    explicit Report(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    std::string status = "ok"; // ok | violation
    json payload = json::object();
    std::vector<std::string> text_lines;
};

std::string render_json(const Report& r) {
    json j;
    j["command"] = r.command;
    j["status"] = r.status;
    for (const auto& [k, v] : r.payload.items()) j[k] = v;
    return j.dump(2) + "\n";
}

std::string render_text(const Report& r) {
    std::string out = "command: " + r.command + "\nstatus: " + r.status + "\n";
    for (const auto& line : r.text_lines) out += line + "\n";
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        if (!f) throw Error("cannot write report to '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string friendship_text(const FriendshipReport& rep) {
    if (rep.friendly) return "friendly: true";
    std::string out = "friendly: false\nwitness: " + rep.witness->left + " vs " +
                      rep.witness->right + " on block {";
    for (std::size_t i = 0; i < rep.witness->block.size(); ++i) {
        if (i) out += ",";
        out += rep.witness->block[i];
    }
    out += "} with masses " + rep.witness->left_mass.str() + " vs " +
           rep.witness->right_mass.str();
    return out;
}

StochasticAutomaton load_automaton(const std::string& path, bool must_be_valid = true) {
    StochasticAutomaton a = parse_automaton(load_json(path), path);
    if (must_be_valid) require_valid(a);
    return a;
}

std::vector<std::string> law_text_lines(const StochasticAutomaton& a) {
    std::vector<std::string> out;
    for (const auto& [key, row] : a.law()) {
        std::string line = "K(" + a.inputs()->label(key.first) + "," +
                           a.states()->label(key.second) + ") = {";
        bool first = true;
        for (const auto& [idx, p] : row.weights()) {
            const auto [z, y] = pair_split(idx, a.outputs()->size());
            line += std::string(first ? " " : ", ") + "(" + a.states()->label(z) + "," +
                    a.outputs()->label(y) + "): " + p.str();
            first = false;
        }
        line += " }";
        out.push_back(std::move(line));
    }
    return out;
}

std::string partition_text(const char* name, const Partition& p) {
    std::string out = std::string(name) + ":";
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        out += " {";
        const auto labels = p.block_labels(b);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i) out += ",";
            out += labels[i];
        }
        out += "}";
    }
    return out;
}

// ---- subcommand handlers ----------------------------------------------

Report cmd_validate(const std::string& automaton_path) {
    Report r{"validate"};
    const StochasticAutomaton a = load_automaton(automaton_path, /*must_be_valid=*/false);
    const auto violations = validate_automaton(a);
    json list = json::array();
    for (const auto& v : violations) {
        list.push_back({{"code", v.code}, {"at", v.where}});
        r.text_lines.push_back(v.code + " at " + v.where);
    }
    r.status = violations.empty() ? "ok" : "violation";
    r.payload["violations"] = std::move(list);
    if (violations.empty()) {
        r.payload["fully_probabilistic"] = a.is_fully_probabilistic();
        r.text_lines.push_back(std::string("fully_probabilistic: ") +
                               (a.is_fully_probabilistic() ? "true" : "false"));
    }
    return r;
}

Report cmd_check_friendly(const std::string& relation_path, const std::string& xi_path,
                          const std::string& theta_path) {
    Report r{"check-friendly"};
    const StochasticRelation rel = parse_relation(load_json(relation_path), relation_path);
    const Partition xi = parse_partition_for(load_json(xi_path), "source", rel.source, xi_path);
    const Partition theta =
        parse_partition_for(load_json(theta_path), "target", rel.target, theta_path);
    const FriendshipReport rep = is_friendly(rel, xi, theta);
    r.status = rep.friendly ? "ok" : "violation";
    r.payload = serialize_friendship(rep);
    r.text_lines.push_back(friendship_text(rep));
    return r;
}

Report cmd_check_congruence(const std::string& automaton_path, const std::string& triple_path) {
    Report r{"check-congruence"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const CongruenceTriple c = parse_triple(load_json(triple_path), a, triple_path);
    const FriendshipReport rep = is_congruence(a, c);
    r.status = rep.friendly ? "ok" : "violation";
    r.payload = serialize_friendship(rep);
    r.text_lines.push_back(friendship_text(rep));
    return r;
}

Report cmd_coarsest(const std::string& automaton_path, const std::string& alpha_path,
                    const std::string& beta_path, const std::string& seed_path) {
    Report r{"coarsest"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const Partition alpha =
        alpha_path.empty() ? Partition::discrete(a.inputs())
                           : parse_partition_for(load_json(alpha_path), "inputs", a.inputs(), alpha_path);
    const Partition beta =
        beta_path.empty() ? Partition::discrete(a.outputs())
                          : parse_partition_for(load_json(beta_path), "outputs", a.outputs(), beta_path);
    const Partition seed =
        seed_path.empty() ? Partition::one_block(a.states())
                          : parse_partition_for(load_json(seed_path), "states", a.states(), seed_path);
    const Partition gamma = coarsest_state_congruence(a, alpha, beta, seed);
    const FriendshipReport rep = is_congruence(a, CongruenceTriple{alpha, beta, gamma});
    r.status = rep.friendly ? "ok" : "violation";
    r.payload["gamma"] = serialize_partition(gamma);
    r.payload["is_congruence"] = rep.friendly;
    if (!rep.friendly) r.payload["witness"] = serialize_friendship(rep)["witness"];
    r.text_lines.push_back(partition_text("gamma", gamma));
    return r;
}

Report cmd_factor(const std::string& automaton_path, const std::string& triple_path) {
    Report r{"factor"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const CongruenceTriple c = parse_triple(load_json(triple_path), a, triple_path);
    const FactorResult fr = factor_automaton(a, c);
    r.payload["factor"] = serialize_factor_result(fr);
    r.payload["canonical"] = serialize_morphism_maps(fr.canonical);
    for (auto& line : law_text_lines(fr.factor)) r.text_lines.push_back(std::move(line));
    return r;
}

Report cmd_stepwise(const std::string& automaton_path, const std::string& triple_path,
                    const std::string& order_name) {
    Report r{"stepwise"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const CongruenceTriple c = parse_triple(load_json(triple_path), a, triple_path);
    const ReductionOrder order =
        order_name == "io-first" ? ReductionOrder::io_first : ReductionOrder::states_first;
    const FactorResult fr = stepwise_reduction(a, c, order);
    r.payload["order"] = order_name;
    r.payload["factor"] = serialize_factor_result(fr);
    r.payload["canonical"] = serialize_morphism_maps(fr.canonical);
    r.text_lines.push_back("order: " + order_name);
    for (auto& line : law_text_lines(fr.factor)) r.text_lines.push_back(std::move(line));
    return r;
}

Report cmd_refactor_check(const std::string& automaton_path, const std::string& triple_path,
                          const std::string& upper_triple_path) {
    Report r{"refactor-check"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const CongruenceTriple c = parse_triple(load_json(triple_path), a, triple_path);
    const StochasticAutomaton factor = factor_automaton(a, c).factor;
    const CongruenceTriple c_prime =
        parse_triple(load_json(upper_triple_path), factor, upper_triple_path);
    const CongruenceTriple composed = compose_congruences(a, c, c_prime);
    const auto [fwd, bwd] = refactor_isomorphism(a, c, c_prime);
    const bool match = is_morphism(fwd).ok && is_morphism(bwd).ok;
    r.status = match ? "ok" : "violation";
    r.payload["composed"] = serialize_triple(composed);
    r.payload["iso_forward"] = serialize_morphism_maps(fwd);
    r.payload["iso_backward"] = serialize_morphism_maps(bwd);
    r.payload["tables_match"] = match;
    r.text_lines.push_back(std::string("tables_match: ") + (match ? "true" : "false"));
    return r;
}

Report cmd_kernel(const std::string& source_path, const std::string& target_path,
                  const std::string& map_path) {
    Report r{"kernel"};
    StochasticAutomaton src = load_automaton(source_path);
    StochasticAutomaton tgt = load_automaton(target_path);
    const Morphism m =
        parse_morphism(load_json(map_path), std::move(src), std::move(tgt), map_path);
    const CongruenceTriple triple = kernel_congruence(m);
    r.payload["triple"] = serialize_triple(triple);
    r.payload["is_congruence"] = true; // re-verified inside kernel_congruence
    r.text_lines.push_back(partition_text("alpha", triple.alpha));
    r.text_lines.push_back(partition_text("beta", triple.beta));
    r.text_lines.push_back(partition_text("gamma", triple.gamma));
    return r;
}

Report cmd_em_factor(const std::string& source_path, const std::string& target_path,
                     const std::string& map_path) {
    Report r{"em-factor"};
    StochasticAutomaton src = load_automaton(source_path);
    StochasticAutomaton tgt = load_automaton(target_path);
    const Morphism m =
        parse_morphism(load_json(map_path), std::move(src), std::move(tgt), map_path);
    const auto [canonical, mono] = em_factorization(m);
    r.payload["factor"] = serialize_automaton(canonical.target());
    r.payload["canonical"] = serialize_morphism_maps(canonical);
    r.payload["mono"] = serialize_morphism_maps(mono);
    for (auto& line : law_text_lines(canonical.target())) r.text_lines.push_back(std::move(line));
    return r;
}

Report cmd_run_word(const std::string& automaton_path, const std::string& word_text,
                    const std::string& state_label) {
    Report r{"run-word"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const auto word = parse_word(word_text, a.inputs(), "--word");
    const std::size_t state = a.states()->index_of(state_label);
    const WordDistribution wd = extend_word(a, word, state);
    json rows = json::array();
    for (const auto& [key, p] : wd.weights()) {
        rows.push_back({{"state", a.states()->label(key.first)},
                        {"word", word_label(*a.outputs(), key.second)},
                        {"p", p.str()}});
        r.text_lines.push_back("(" + a.states()->label(key.first) + "," +
                               word_label(*a.outputs(), key.second) + ") -> " + p.str());
    }
    r.payload["length"] = wd.length();
    r.payload["rows"] = std::move(rows);
    r.payload["mass"] = wd.mass().str();
    return r;
}

Report cmd_blackbox(const std::string& automaton_path, const std::string& mu_path,
                    const std::string& word_text) {
    Report r{"blackbox"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const SubDistribution mu = parse_distribution(load_json(mu_path), a.states(), mu_path);
    const auto word = parse_word(word_text, a.inputs(), "--word");
    const OutputWordDistribution d = black_box(a, mu, word);
    r.payload["length"] = d.length;
    r.payload["distribution"] = serialize_word_distribution(d);
    r.payload["mass"] = d.mass().str();
    for (const auto& [w, p] : d.weights) {
        r.text_lines.push_back(word_label(*a.outputs(), w) + " -> " + p.str());
    }
    return r;
}

Report cmd_cylinder(const std::string& automaton_path, const std::string& mu_path,
                    const std::string& stream_path, std::size_t depth,
                    const std::string& set_text) {
    Report r{"cylinder"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const SubDistribution mu = parse_distribution(load_json(mu_path), a.states(), mu_path);
    const StreamPresentation tau = parse_stream(load_json(stream_path), a.inputs(), stream_path);
    const auto word_set = parse_word_set(set_text, a.outputs(), depth, "--set");
    const Rational p = cylinder_probability(a, mu, tau, depth, word_set);
    r.payload["depth"] = depth;
    r.payload["probability"] = p.str();
    r.text_lines.push_back("probability: " + p.str());
    return r;
}

Report cmd_tree(const std::string& automaton_path, const std::string& mu_path,
                const std::string& tree_path, const std::string& prefix_text,
                const std::string& leaf_set_text) {
    Report r{"tree"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const SubDistribution mu = parse_distribution(load_json(mu_path), a.states(), mu_path);
    const PrefixTree tree = parse_tree(load_json(tree_path), a.inputs(), tree_path);
    const auto prefix_idx = parse_word(prefix_text, a.inputs(), "--prefix");
    std::vector<std::string> prefix;
    for (std::size_t x : prefix_idx) prefix.push_back(a.inputs()->label(x));
    const OutputWordDistribution d = decorate_tree(a, mu, tree, prefix);
    r.payload["distribution"] = serialize_word_distribution(d);
    for (const auto& [w, p] : d.weights) {
        r.text_lines.push_back(word_label(*a.outputs(), w) + " -> " + p.str());
    }
    if (!leaf_set_text.empty()) {
        json arr = json::parse(leaf_set_text, nullptr, false);
        std::vector<std::string> labels;
        if (arr.is_array()) {
            for (const auto& e : arr) {
                if (e.is_string()) labels.push_back(e.get<std::string>());
            }
        }
        if (!arr.is_array() || labels.size() != arr.size()) {
            throw MalformedInputError("--leaf-set: expected a JSON array of output labels");
        }
        const Rational lp = leaf_output(a, mu, tree, prefix, labels);
        r.payload["leaf_probability"] = lp.str();
        r.text_lines.push_back("leaf probability: " + lp.str());
    }
    return r;
}

Report cmd_power_friendship(const std::string& automaton_path, const std::string& triple_path,
                            std::size_t n, const std::string& mu_path) {
    Report r{"power-friendship"};
    const StochasticAutomaton a = load_automaton(automaton_path);
    const CongruenceTriple c = parse_triple(load_json(triple_path), a, triple_path);
    std::optional<SubDistribution> mu;
    if (!mu_path.empty()) {
        mu = parse_distribution(load_json(mu_path), a.states(), mu_path);
    }
    const FriendshipReport rep = check_power_friendship(a, c, n, mu);
    r.status = rep.friendly ? "ok" : "violation";
    r.payload["n"] = n;
    const json friendship = serialize_friendship(rep);
    for (const auto& [k, v] : friendship.items()) r.payload[k] = v;
    r.text_lines.push_back("n: " + std::to_string(n));
    r.text_lines.push_back(friendship_text(rep));
    return r;
}

Report cmd_random_friend(const std::string& relation_path, const std::string& xi_path,
                         const std::string& zeta_path) {
    Report r{"random-friend"};
    const StochasticRelation rel = parse_relation(load_json(relation_path), relation_path);
    const Partition xi = parse_partition_for(load_json(xi_path), "source", rel.source, xi_path);
    const Partition zeta =
        parse_partition_for(load_json(zeta_path), "target", rel.target, zeta_path);
    const RandomFriendReport rep = is_random_friend(rel, xi, zeta);
    r.status = rep.friendly ? "ok" : "violation";
    r.payload["friendly"] = rep.friendly;
    if (rep.witness) {
        r.payload["witness"] = {{"left", serialize_distribution(rep.witness->first)},
                                {"right", serialize_distribution(rep.witness->second)}};
    }
    r.text_lines.push_back(std::string("friendly: ") + (rep.friendly ? "true" : "false"));
    return r;
}

Report cmd_selftest(unsigned long seed, std::size_t count) {
    Report r{"selftest"};
    testgen::Rng rng(seed);
    std::size_t checks = 0;
    std::vector<std::string> failures;

    for (std::size_t i = 0; i < count; ++i) {
        // Friendship decided two ways must agree.
        {
            const StochasticRelation rel = testgen::random_relation(rng, 5, 5);
            const Partition xi = testgen::random_partition(rng, rel.source);
            const Partition zeta = testgen::random_partition(rng, rel.target);
            if (is_random_friend(rel, xi, zeta).friendly !=
                is_friendly(rel, xi, zeta).friendly) {
                failures.push_back("random-friend mismatch at instance " + std::to_string(i));
            }
            ++checks;
        }
        // Kernel congruences of generated morphisms; both calls re-verify
        // their postconditions internally.
        {
            const testgen::BlowUp bu = testgen::random_blowup(rng, {});
            const CongruenceTriple kc = kernel_congruence(bu.onto_base);
            factor_automaton(bu.big, kc);
            ++checks;
        }
        // Projective consistency on a fully probabilistic instance.
        {
            testgen::AutomatonOptions opts;
            opts.fully_probabilistic = true;
            const StochasticAutomaton a = testgen::random_automaton(rng, opts);
            const SubDistribution mu = testgen::uniform_distribution(a.states());
            const auto word = testgen::random_input_word(rng, a, 3);
            const OutputWordDistribution full = word_behavior(a, mu, word);
            for (std::size_t k = 1; k < word.size(); ++k) {
                const std::vector<std::size_t> head(word.begin(), word.begin() + k);
                if (!(marginal_prefix(full, k) == word_behavior(a, mu, head))) {
                    failures.push_back("projective consistency failed at instance " +
                                       std::to_string(i));
                }
            }
            ++checks;
        }
    }
    r.status = failures.empty() ? "ok" : "violation";
    r.payload["seed"] = seed;
    r.payload["instances"] = count;
    r.payload["checks"] = checks;
    r.payload["failures"] = failures;
    r.text_lines.push_back("checks: " + std::to_string(checks));
    for (const auto& f : failures) r.text_lines.push_back("failed: " + f);
    return r;
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Exact congruence toolkit for finite stochastic automata"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("-o,--out", out_path, "Write the report to a file (atomically)");

    std::function<Report()> action;

    // validate
    {
        auto* sub = app.add_subcommand("validate", "Check automaton invariants");
        auto path = std::make_shared<std::string>();
        sub->add_option("automaton", *path, "Automaton JSON file")->required();
        sub->callback([path, &action] { action = [path] { return cmd_validate(*path); }; });
    }
    // check-friendly
    {
        auto* sub = app.add_subcommand("check-friendly", "Friendship of xi to theta for a relation");
        auto rel = std::make_shared<std::string>();
        auto xi = std::make_shared<std::string>();
        auto theta = std::make_shared<std::string>();
        sub->add_option("relation", *rel, "Relation JSON file")->required();
        sub->add_option("--xi", *xi, "Partition of the source")->required();
        sub->add_option("--theta", *theta, "Partition of the target")->required();
        sub->callback([=, &action] { action = [=] { return cmd_check_friendly(*rel, *xi, *theta); }; });
    }
    // check-congruence
    {
        auto* sub = app.add_subcommand("check-congruence", "Check a congruence triple");
        auto a = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("triple", *t)->required();
        sub->callback([=, &action] { action = [=] { return cmd_check_congruence(*a, *t); }; });
    }
    // coarsest
    {
        auto* sub = app.add_subcommand("coarsest", "Coarsest congruence-completing state partition");
        auto a = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>();
        auto beta = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("--alpha", *alpha, "Input partition (default: discrete)");
        sub->add_option("--beta", *beta, "Output partition (default: discrete)");
        sub->add_option("--seed", *seed, "Seed state partition (default: one block)");
        sub->callback([=, &action] { action = [=] { return cmd_coarsest(*a, *alpha, *beta, *seed); }; });
    }
    // factor
    {
        auto* sub = app.add_subcommand("factor", "Factor automaton by a congruence");
        auto a = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("triple", *t)->required();
        sub->callback([=, &action] { action = [=] { return cmd_factor(*a, *t); }; });
    }
    // stepwise
    {
        auto* sub = app.add_subcommand("stepwise", "Two-stage factoring");
        auto a = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto order = std::make_shared<std::string>("states-first");
        sub->add_option("automaton", *a)->required();
        sub->add_option("triple", *t)->required();
        sub->add_option("--order", *order)->check(CLI::IsMember({"states-first", "io-first"}));
        sub->callback([=, &action] { action = [=] { return cmd_stepwise(*a, *t, *order); }; });
    }
    // refactor-check
    {
        auto* sub = app.add_subcommand("refactor-check", "Two-step factoring isomorphism");
        auto a = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto t2 = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("triple", *t)->required();
        sub->add_option("upper", *t2, "Congruence triple on the factor automaton")->required();
        sub->callback([=, &action] { action = [=] { return cmd_refactor_check(*a, *t, *t2); }; });
    }
    // kernel
    {
        auto* sub = app.add_subcommand("kernel", "Kernel congruence of a morphism");
        auto s = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto m = std::make_shared<std::string>();
        sub->add_option("source", *s)->required();
        sub->add_option("target", *t)->required();
        sub->add_option("map", *m, "Morphism maps JSON file")->required();
        sub->callback([=, &action] { action = [=] { return cmd_kernel(*s, *t, *m); }; });
    }
    // em-factor
    {
        auto* sub = app.add_subcommand("em-factor", "Epimorphism-monomorphism factorization");
        auto s = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto m = std::make_shared<std::string>();
        sub->add_option("source", *s)->required();
        sub->add_option("target", *t)->required();
        sub->add_option("map", *m)->required();
        sub->callback([=, &action] { action = [=] { return cmd_em_factor(*s, *t, *m); }; });
    }
    // run-word
    {
        auto* sub = app.add_subcommand("run-word", "Extend the law along an input word");
        auto a = std::make_shared<std::string>();
        auto w = std::make_shared<std::string>();
        auto z = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("--word", *w)->required();
        sub->add_option("--state", *z, "Start state label")->required();
        sub->callback([=, &action] { action = [=] { return cmd_run_word(*a, *w, *z); }; });
    }
    // blackbox
    {
        auto* sub = app.add_subcommand("blackbox", "Output-word distribution with hidden states");
        auto a = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto w = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("--mu", *mu, "Initial state distribution JSON file")->required();
        sub->add_option("--word", *w)->required();
        sub->callback([=, &action] { action = [=] { return cmd_blackbox(*a, *mu, *w); }; });
    }
    // cylinder
    {
        auto* sub = app.add_subcommand("cylinder", "Cylinder probability of a stream");
        auto a = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(1);
        auto set = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("--mu", *mu)->required();
        sub->add_option("--stream", *s, "Stream presentation JSON file")->required();
        sub->add_option("--depth", *depth)->required();
        sub->add_option("--set", *set, "JSON array of output words")->required();
        sub->callback([=, &action] { action = [=] { return cmd_cylinder(*a, *mu, *s, *depth, *set); }; });
    }
    // tree
    {
        auto* sub = app.add_subcommand("tree", "Decorate a prefix tree");
        auto a = std::make_shared<std::string>();
        auto mu = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto p = std::make_shared<std::string>();
        auto leaf = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("--mu", *mu)->required();
        sub->add_option("--tree", *t, "Prefix tree JSON file")->required();
        sub->add_option("--prefix", *p, "Path prefix word")->required();
        sub->add_option("--leaf-set", *leaf, "JSON array of final output labels");
        sub->callback([=, &action] { action = [=] { return cmd_tree(*a, *mu, *t, *p, *leaf); }; });
    }
    // power-friendship
    {
        auto* sub = app.add_subcommand("power-friendship", "Friendship of the word-extended law");
        auto a = std::make_shared<std::string>();
        auto t = std::make_shared<std::string>();
        auto n = std::make_shared<std::size_t>(1);
        auto mu = std::make_shared<std::string>();
        sub->add_option("automaton", *a)->required();
        sub->add_option("triple", *t)->required();
        sub->add_option("--n", *n, "Word length")->required();
        sub->add_option("--mu", *mu, "Initial distribution (default: uniform)");
        sub->callback([=, &action] { action = [=] { return cmd_power_friendship(*a, *t, *n, *mu); }; });
    }
    // random-friend
    {
        auto* sub = app.add_subcommand("random-friend", "Random friendship for a relation");
        auto rel = std::make_shared<std::string>();
        auto xi = std::make_shared<std::string>();
        auto zeta = std::make_shared<std::string>();
        sub->add_option("relation", *rel)->required();
        sub->add_option("--xi", *xi)->required();
        sub->add_option("--zeta", *zeta)->required();
        sub->callback([=, &action] { action = [=] { return cmd_random_friend(*rel, *xi, *zeta); }; });
    }
    // selftest
    {
        auto* sub = app.add_subcommand("selftest", "Seeded generator-backed smoke checks");
        auto seed = std::make_shared<unsigned long>(42);
        auto count = std::make_shared<std::size_t>(25);
        sub->add_option("--seed", *seed, "Generator seed");
        sub->add_option("--count", *count, "Instances per check");
        sub->callback([=, &action] { action = [=] { return cmd_selftest(*seed, *count); }; });
    }

    // Let --format/-o appear after the subcommand arguments too.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CliResult result;
    std::vector<const char*> argv;
    argv.push_back("stocon");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        result.out = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
        return result;
    }

    try {
        if (const char* env = std::getenv("STOCON_OUTPUT")) {
            const std::string v(env);
            if (v != "json" && v != "text") {
                throw MalformedInputError("STOCON_OUTPUT must be 'json' or 'text'");
            }
            format = v;
        }
        const Report report = action();
        const std::string rendered = format == "json" ? render_json(report) : render_text(report);
        if (out_path.empty()) {
            result.out = rendered;
        } else {
            write_atomic(out_path, rendered);
        }
        result.exit_code = report.status == "ok" ? 0 : 1;
    } catch (const InternalConsistencyError& e) {
        result.err = std::string("internal error: ") + e.what() + "\n";
        result.exit_code = 4;
    } catch (const MalformedInputError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const PreconditionError& e) {
        result.err = std::string("precondition failed: ") + e.what() + "\n";
        result.exit_code = 3;
    } catch (const std::exception& e) {
        result.err = std::string("internal error: ") + e.what() + "\n";
        result.exit_code = 4;
    }
    return result;
}

} // namespace stocon
