#include <catch2/catch_amalgamated.hpp>

#include "stocon/factor.hpp"
#include "stocon/streams.hpp"

#include "test_support.hpp"
#include "testgen/generators.hpp"

using namespace stocon;
using stocon::test::a0;
using stocon::test::automaton;
using stocon::test::dist;
using stocon::test::labels_partition;
using stocon::test::rat;

namespace {

std::vector<std::size_t> word_of(const StochasticAutomaton& a, const std::string& letters) {
    std::vector<std::size_t> out;
    for (char ch : letters) out.push_back(a.inputs()->index_of(std::string(1, ch)));
    return out;
}

PrefixTree tree_of(std::vector<StreamPresentation> paths) { return PrefixTree(std::move(paths)); }

std::map<std::string, Rational> by_label(const StochasticAutomaton& a,
                                         const OutputWordDistribution& d) {
    std::map<std::string, Rational> out;
    for (const auto& [w, p] : d.weights) out.emplace(word_label(*a.outputs(), w), p);
    return out;
}

// A subprobabilistic chain losing half the mass at every step.
StochasticAutomaton leaky() {
    return automaton({"a"}, {"0"}, {"s"}, {{"a", "s", {{"s", "0", "1/2"}}}});
}

} // namespace

TEST_CASE("extend_word") {
    const auto a = a0();

    SECTION("length one reindexes the row") {
        const auto wd = extend_word(a, word_of(a, "a"), a.states()->index_of("s"));
        CHECK(wd.length() == 1);
        CHECK(wd.mass() == rat("1"));
        CHECK(wd.weights().size() == 2);
        CHECK(wd.weights().at({0, {0}}) == rat("1/2")); // (s,"0")
        CHECK(wd.weights().at({1, {0}}) == rat("1/2")); // (t,"0")
    }
    SECTION("the word ab from s") {
        const auto wd = extend_word(a, word_of(a, "ab"), a.states()->index_of("s"));
        REQUIRE(wd.weights().size() == 2);
        CHECK(wd.weights().at({0, {0, 1}}) == rat("1/2")); // (s,"01")
        CHECK(wd.weights().at({1, {0, 1}}) == rat("1/2")); // (t,"01")
        CHECK(wd.mass() == rat("1"));
    }
    SECTION("mass multiplies along a leaky chain") {
        const auto l = leaky();
        const auto wd = extend_word(l, {0, 0, 0}, 0);
        CHECK(wd.mass() == rat("1/8"));
    }
    SECTION("bad inputs") {
        CHECK_THROWS_AS(extend_word(a, {}, 0), PreconditionError);
        CHECK_THROWS_AS(extend_word(a, {7}, 0), MalformedInputError);
        CHECK_THROWS_AS(extend_word(a, {0}, 9), MalformedInputError);
    }
}

TEST_CASE("word_behavior and black_box") {
    const auto a = a0();

    SECTION("deterministic first letter") {
        const auto d = word_behavior(a, dist(a.states(), {{"s", "1"}}), word_of(a, "a"));
        CHECK(by_label(a, d) == std::map<std::string, Rational>{{"0", rat("1")}});
    }
    SECTION("mixing the start states") {
        const auto d = word_behavior(a, dist(a.states(), {{"s", "1/2"}, {"t", "1/2"}}),
                                     word_of(a, "b"));
        CHECK(by_label(a, d) == std::map<std::string, Rational>{{"1", rat("1")}});
    }
    SECTION("zero initial mass gives the zero distribution") {
        const auto d = word_behavior(a, SubDistribution::zero(a.states()), word_of(a, "ab"));
        CHECK(d.weights.empty());
        CHECK(d.mass() == rat("0"));
    }
    SECTION("black_box is the length-dispatched behavior") {
        const auto mu = dist(a.states(), {{"s", "1"}});
        for (const char* w : {"a", "b", "ab", "ba", "abab"}) {
            CHECK(black_box(a, mu, word_of(a, w)) == word_behavior(a, mu, word_of(a, w)));
        }
    }
    SECTION("mass is one for fully probabilistic automata and mass-one mu") {
        testgen::Rng rng(111);
        for (int i = 0; i < 15; ++i) {
            testgen::AutomatonOptions opts;
            opts.fully_probabilistic = true;
            const auto r = testgen::random_automaton(rng, opts);
            const auto mu = testgen::random_subdistribution(rng, r.states(), true);
            const auto word = testgen::random_input_word(rng, r, 1 + i % 4);
            CHECK(word_behavior(r, mu, word).mass() == rat("1"));
        }
    }
}

TEST_CASE("mass law along words") {
    testgen::Rng rng(777);
    for (int i = 0; i < 15; ++i) {
        const auto r = testgen::random_automaton(rng);
        const auto word = testgen::random_input_word(rng, r, 1 + i % 4);
        for (std::size_t z = 0; z < r.states()->size(); ++z) {
            // Never more than the first step can deliver.
            CHECK(extend_word(r, word, z).mass() <= r.row(word[0], z).mass());
        }
    }
    // Uniform row mass m: the total mass is m^|v| for every start state.
    const auto half = automaton({"a", "b"}, {"0"}, {"s", "t"},
                                {{"a", "s", {{"s", "0", "1/4"}, {"t", "0", "1/4"}}},
                                 {"a", "t", {{"t", "0", "1/2"}}},
                                 {"b", "s", {{"s", "0", "1/2"}}},
                                 {"b", "t", {{"s", "0", "1/3"}, {"t", "0", "1/6"}}}});
    for (const char* w : {"a", "ab", "aba", "abba"}) {
        Rational expected(1);
        for (std::size_t k = 0; k < std::string(w).size(); ++k) expected *= rat("1/2");
        CHECK(extend_word(half, word_of(half, w), 0).mass() == expected);
        CHECK(extend_word(half, word_of(half, w), 1).mass() == expected);
    }
}

TEST_CASE("projective consistency of marginals") {
    testgen::Rng rng(222);
    for (int i = 0; i < 15; ++i) {
        testgen::AutomatonOptions opts;
        opts.fully_probabilistic = true;
        const auto r = testgen::random_automaton(rng, opts);
        const auto mu = testgen::uniform_distribution(r.states());
        const auto word = testgen::random_input_word(rng, r, 4);
        const auto full = word_behavior(r, mu, word);
        for (std::size_t n = 1; n < word.size(); ++n) {
            const std::vector<std::size_t> head(word.begin(), word.begin() + n);
            CHECK(marginal_prefix(full, n) == word_behavior(r, mu, head));
        }
    }
}

TEST_CASE("stream presentations") {
    const StreamPresentation finite{{"a", "b"}, {}};
    const StreamPresentation lasso{{"a", "b"}, {"a"}};
    const StreamPresentation pure_cycle{{}, {"a", "b"}};
    const StreamPresentation shifted{{"a", "b"}, {"a", "b"}};

    CHECK(!finite.is_infinite());
    CHECK(lasso.is_infinite());
    CHECK(finite.length() == std::size_t{2});
    CHECK(!lasso.length());
    CHECK(lasso.letter_at(3) == "a");
    CHECK(lasso.truncate(4) == std::vector<std::string>{"a", "b", "a", "a"});
    CHECK_THROWS_AS(finite.truncate(3), PreconditionError);

    SECTION("equality up to the periodic horizon") {
        CHECK(stream_equal(pure_cycle, shifted)); // (ab)^w both
        CHECK(!stream_equal(pure_cycle, lasso));
        CHECK(!stream_equal(finite, lasso));
        CHECK(stream_equal(finite, StreamPresentation{{"a", "b"}, {}}));
    }
    SECTION("prefix relation") {
        CHECK(is_prefix_of(finite, lasso));
        CHECK(is_prefix_of(StreamPresentation{{"a"}, {}}, finite));
        CHECK(!is_prefix_of(StreamPresentation{{"b"}, {}}, finite));
        CHECK(is_prefix_of(pure_cycle, shifted));
        CHECK(!is_prefix_of(lasso, finite)); // infinite never prefixes finite
    }
}

TEST_CASE("prefix trees") {
    SECTION("prefix-free sets are accepted, duplicates collapse") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}, {{"a", "a"}, {}}, {{"a", "b"}, {}}});
        CHECK(tree.paths().size() == 2);
    }
    SECTION("two presentations of one word collapse") {
        PrefixTree tree = tree_of({{{}, {"a", "b"}}, {{"a", "b"}, {"a", "b"}}});
        CHECK(tree.paths().size() == 1);
    }
    SECTION("a proper prefix is rejected") {
        CHECK_THROWS_AS(tree_of({{{"a"}, {}}, {{"a", "b"}, {}}}), MalformedInputError);
        CHECK_THROWS_AS(tree_of({{{"a"}, {}}, {{"a"}, {"b"}}}), MalformedInputError);
    }
    SECTION("the empty word is not a path") {
        CHECK_THROWS_AS(tree_of({{{}, {}}}), MalformedInputError);
    }
}

TEST_CASE("cylinder_probability") {
    const auto a = a0();
    const auto mu = dist(a.states(), {{"s", "1"}});
    const StreamPresentation tau{{"a", "b"}, {"a"}};

    SECTION("the full output space has probability one") {
        const std::vector<std::vector<std::size_t>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        CHECK(cylinder_probability(a, mu, tau, 2, all) == rat("1"));
    }
    SECTION("the A0 cylinder over 01") {
        CHECK(cylinder_probability(a, mu, tau, 2, {{0, 1}}) == rat("1"));
        CHECK(cylinder_probability(a, mu, tau, 2, {{1, 1}}) == rat("0"));
    }
    SECTION("the empty set has probability zero") {
        CHECK(cylinder_probability(a, mu, tau, 1, {}) == rat("0"));
    }
    SECTION("duplicate words in the set count once") {
        CHECK(cylinder_probability(a, mu, tau, 2, {{0, 1}, {0, 1}}) == rat("1"));
    }
    SECTION("full probability is required") {
        CHECK_THROWS_AS(cylinder_probability(leaky(), dist(leaky().states(), {{"s", "1"}}),
                                             StreamPresentation{{"a"}, {"a"}}, 1, {{0}}),
                        FullProbabilityRequiredError);
        CHECK_THROWS_AS(cylinder_probability(a, dist(a.states(), {{"s", "1/2"}}), tau, 2, {{0, 1}}),
                        FullProbabilityRequiredError);
    }
    SECTION("the stream must reach the requested depth") {
        CHECK_THROWS_AS(cylinder_probability(a, mu, StreamPresentation{{"a"}, {}}, 2, {{0, 1}}),
                        PreconditionError);
    }
}

TEST_CASE("decorate_tree") {
    const auto a = a0();
    const auto mu = dist(a.states(), {{"s", "1"}});

    SECTION("a full finite path gives the word behavior") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}});
        const auto t = decorate_tree(a, mu, tree, {"a", "b"});
        CHECK(t == word_behavior(a, mu, word_of(a, "ab")));
    }
    SECTION("marginal at depth one inside the ab tree") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}});
        const auto t = decorate_tree(a, mu, tree, {"a"});
        CHECK(by_label(a, t) == std::map<std::string, Rational>{{"0", rat("1")}});
    }
    SECTION("branching tree: both branches agree at the shared prefix") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}, {{"a", "a"}, {}}});
        const auto via_tree = decorate_tree(a, mu, tree, {"a"});
        const auto via_ab = marginal_prefix(word_behavior(a, mu, word_of(a, "ab")), 1);
        const auto via_aa = marginal_prefix(word_behavior(a, mu, word_of(a, "aa")), 1);
        CHECK(via_tree == via_ab);
        CHECK(via_tree == via_aa);
    }
    SECTION("infinite paths are queried at finite depth") {
        PrefixTree tree = tree_of({{{"a"}, {"b"}}});
        const auto t = decorate_tree(a, mu, tree, {"a", "b"});
        CHECK(t == word_behavior(a, mu, word_of(a, "ab")));
    }
    SECTION("words outside the tree are rejected") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}});
        CHECK_THROWS_AS(decorate_tree(a, mu, tree, {"b"}), NotInTreeError);
        CHECK_THROWS_AS(decorate_tree(a, mu, tree, {"a", "b", "a"}), NotInTreeError);
    }
    SECTION("subprobability is rejected") {
        const auto l = leaky();
        PrefixTree tree = tree_of({{{"a"}, {}}});
        CHECK_THROWS_AS(decorate_tree(l, dist(l.states(), {{"s", "1"}}), tree, {"a"}),
                        FullProbabilityRequiredError);
    }
    SECTION("leaf output probability") {
        PrefixTree tree = tree_of({{{"a", "b"}, {}}});
        CHECK(leaf_output(a, mu, tree, {"a", "b"}, {"1"}) == rat("1"));
        CHECK(leaf_output(a, mu, tree, {"a", "b"}, {"0"}) == rat("0"));
        CHECK(leaf_output(a, mu, tree, {"a"}, {"0"}) == rat("1"));
    }
}

TEST_CASE("check_power_friendship") {
    const auto a = a0();
    const CongruenceTriple c{Partition::discrete(a.inputs()), Partition::discrete(a.outputs()),
                             labels_partition(a.states(), {{"s", "t"}})};

    SECTION("n = 1 restates the congruence") {
        CHECK(check_power_friendship(a, c, 1).friendly);
    }
    SECTION("A0 at n = 2 and n = 3") {
        CHECK(check_power_friendship(a, c, 2).friendly);
        CHECK(check_power_friendship(a, c, 3).friendly);
    }
    SECTION("an explicit mu works too") {
        CHECK(check_power_friendship(a, c, 2, dist(a.states(), {{"s", "1/3"}, {"t", "1/3"}}))
                  .friendly);
    }
    SECTION("a non-congruence is rejected up front") {
        CongruenceTriple bad{Partition::one_block(a.inputs()), Partition::discrete(a.outputs()),
                             Partition::discrete(a.states())};
        REQUIRE(!is_congruence(a, bad).friendly);
        CHECK_THROWS_AS(check_power_friendship(a, bad, 2), NotACongruenceError);
    }
    SECTION("generated congruent instances stay friendly up to n = 3") {
        testgen::Rng rng(333);
        for (int i = 0; i < 8; ++i) {
            testgen::BlowUpOptions opts;
            opts.uniform_split = i % 2 == 0;
            opts.fully_probabilistic = i % 3 != 0;
            const auto bu = testgen::random_blowup(rng, opts);
            for (std::size_t n = 1; n <= 3; ++n) {
                CHECK(check_power_friendship(bu.big, bu.kernel, n).friendly);
            }
        }
    }
}

// Same verdict via a fully materialized route: enumerate the word spaces,
// build the extended relation as plain rows over (X^n)*Z -> Z*(Y^n), and
// run the generic friendship check on product/power partitions.
TEST_CASE("check_power_friendship agrees with the materialized route") {
    testgen::Rng rng(444);
    auto materialized = [](const StochasticAutomaton& a, const CongruenceTriple& c,
                           std::size_t n, const SubDistribution& mu) {
        const auto xwords = word_space(a.inputs(), n);
        const auto ywords = word_space(a.outputs(), n);
        const auto domain = product_space(xwords, a.states());
        const auto codomain = product_space(a.states(), ywords);
        const std::size_t nx = a.inputs()->size();
        const std::size_t nz = a.states()->size();

        auto word_at = [&](std::size_t k) {
            std::vector<std::size_t> w(n);
            for (std::size_t pos = n; pos-- > 0; k /= nx) w[pos] = k % nx;
            return w;
        };
        auto yindex = [&](const std::vector<std::size_t>& w) {
            std::size_t k = 0;
            for (std::size_t y : w) k = k * a.outputs()->size() + y;
            return k;
        };

        std::vector<SubDistribution> ext_rows;
        std::vector<std::map<std::size_t, Rational>> beh(xwords->size());
        for (std::size_t v = 0; v < xwords->size(); ++v) {
            const auto word = word_at(v);
            for (std::size_t z = 0; z < nz; ++z) {
                const WordDistribution wd = extend_word(a, word, z);
                std::map<std::size_t, Rational> weights;
                for (const auto& [key, p] : wd.weights()) {
                    weights[pair_index(key.first, yindex(key.second), ywords->size())] += p;
                    beh[v][yindex(key.second)] += mu.at(z) * p;
                }
                ext_rows.emplace_back(codomain, std::move(weights));
            }
        }
        const bool part1 =
            is_friendly(ext_rows, product_partition(power_partition(c.alpha, n), c.gamma),
                        product_partition(c.gamma, power_partition(c.beta, n)))
                .friendly;

        std::vector<SubDistribution> beh_rows;
        for (auto& w : beh) beh_rows.emplace_back(ywords, std::move(w));
        const bool part2 = is_friendly(beh_rows, power_partition(c.alpha, n),
                                       power_partition(c.beta, n))
                               .friendly;
        return part1 && part2;
    };

    for (int i = 0; i < 6; ++i) {
        testgen::BlowUpOptions opts;
        opts.base_max = 2;
        opts.uniform_split = i % 2 == 0;
        opts.fully_probabilistic = i % 3 != 0;
        const auto bu = testgen::random_blowup(rng, opts);
        const auto mu = testgen::uniform_distribution(bu.big.states());
        for (std::size_t n = 1; n <= 2; ++n) {
            CHECK(check_power_friendship(bu.big, bu.kernel, n, mu).friendly ==
                  materialized(bu.big, bu.kernel, n, mu));
        }
    }
}

TEST_CASE("degenerate instances") {
    SECTION("rows may be empty and carry zero mass") {
        auto a = automaton({"a"}, {"0"}, {"s", "t"},
                           {{"a", "s", {}}, {"a", "t", {{"t", "0", "1/2"}}}});
        CHECK(validate_automaton(a).empty());
        CHECK(extend_word(a, {0, 0}, 0).mass() == rat("0"));
        const auto gamma = coarsest_state_congruence(a, Partition::discrete(a.inputs()),
                                                     Partition::discrete(a.outputs()),
                                                     Partition::one_block(a.states()));
        CHECK(gamma == Partition::discrete(a.states())); // 0 mass vs 1/2 mass splits
    }
    SECTION("one-element spaces everywhere") {
        auto a = automaton({"a"}, {"0"}, {"s"}, {{"a", "s", {{"s", "0", "1"}}}});
        const CongruenceTriple c{Partition::one_block(a.inputs()),
                                 Partition::one_block(a.outputs()),
                                 Partition::one_block(a.states())};
        REQUIRE(is_congruence(a, c).friendly);
        CHECK(factor_automaton(a, c).factor.states()->size() == 1);
        CHECK(check_power_friendship(a, c, 3).friendly);
    }
    SECTION("word spaces refuse to blow up") {
        std::vector<std::string> labels;
        for (int i = 0; i < 64; ++i) labels.push_back("x" + std::to_string(i));
        auto m = make_space("M", labels);
        CHECK_THROWS_AS(word_space(m, 5), PreconditionError);
    }
}
