#include <catch2/catch_amalgamated.hpp>

#include "stocon/errors.hpp"
#include "stocon/partition.hpp"
#include "stocon/streams.hpp"

#include "test_support.hpp"
#include "testgen/generators.hpp"

using namespace stocon;
using stocon::test::labels_partition;

TEST_CASE("Partition: canonical form and validation") {
    auto f = make_space("F", {"u", "v", "w"});
    Partition p(f, {{2}, {1, 0}});
    CHECK(p.blocks() == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
    CHECK(p.block_of(2) == 1);
    CHECK(p.block_labels(0) == std::vector<std::string>{"u", "v"});

    CHECK_THROWS_AS(Partition(f, {{0, 1}}), MalformedInputError);          // not covering
    CHECK_THROWS_AS(Partition(f, {{0, 1}, {1, 2}}), MalformedInputError);  // overlap
    CHECK_THROWS_AS(Partition(f, {{0, 1, 2}, {}}), MalformedInputError);   // empty block
    CHECK_THROWS_AS(Partition(f, {{0, 1, 3}}), MalformedInputError);       // out of range
    CHECK_THROWS_AS(labels_partition(f, {{"u", "x"}}), MalformedInputError);

    CHECK(Partition::discrete(f).block_count() == 3);
    CHECK(Partition::one_block(f).block_count() == 1);
}

TEST_CASE("Partition: refinement order") {
    auto f = make_space("F", {"u", "v", "w"});
    auto disc = Partition::discrete(f);
    auto one = Partition::one_block(f);
    auto mid = labels_partition(f, {{"u", "v"}, {"w"}});
    CHECK(disc.refines(mid));
    CHECK(mid.refines(one));
    CHECK(!one.refines(mid));
    CHECK(mid.refines(mid));
}

TEST_CASE("product_partition") {
    auto f = make_space("F", {"s", "t"});
    auto h = make_space("H", {"0", "1"});

    SECTION("discrete times discrete is discrete") {
        auto p = product_partition(Partition::discrete(f), Partition::discrete(h));
        CHECK(p.block_count() == 4);
    }
    SECTION("one block times one block") {
        auto p = product_partition(Partition::one_block(f), Partition::one_block(h));
        CHECK(p.block_count() == 1);
        CHECK(p.block(0).size() == 4);
    }
    SECTION("rectangles") {
        auto p = product_partition(labels_partition(f, {{"s", "t"}}), Partition::discrete(h));
        REQUIRE(p.block_count() == 2);
        CHECK(p.block_labels(0) == std::vector<std::string>{"(s,0)", "(t,0)"});
        CHECK(p.block_labels(1) == std::vector<std::string>{"(s,1)", "(t,1)"});
    }
    SECTION("block count multiplies") {
        testgen::Rng rng(5);
        for (int i = 0; i < 25; ++i) {
            auto a = testgen::random_space(rng, "A", "a", 1, 5);
            auto b = testgen::random_space(rng, "B", "b", 1, 5);
            auto pa = testgen::random_partition(rng, a);
            auto pb = testgen::random_partition(rng, b);
            CHECK(product_partition(pa, pb).block_count() == pa.block_count() * pb.block_count());
        }
    }
}

TEST_CASE("kernel_partition") {
    auto f = make_space("F", {"u", "v", "w"});
    CHECK(kernel_partition(f, {0, 1, 2}) == Partition::discrete(f));
    CHECK(kernel_partition(f, {0, 0, 0}) == Partition::one_block(f));
    CHECK(kernel_partition(f, {0, 0, 1}) == labels_partition(f, {{"u", "v"}, {"w"}}));
    CHECK_THROWS_AS(kernel_partition(f, {0, 1}), PreconditionError);
}

TEST_CASE("quotient_space labels") {
    auto f = make_space("F", {"u", "v", "w"});
    auto q = quotient_space(labels_partition(f, {{"u", "v"}, {"w"}}));
    CHECK(q->labels() == std::vector<std::string>{"⟨u⟩", "⟨w⟩"});
    CHECK(q->name() == "F");
}

TEST_CASE("lift_partition") {
    auto f = make_space("F", {"u", "v", "w"});
    auto xi = Partition::discrete(f);
    auto classes = quotient_space(xi);

    SECTION("discrete zeta lifts to xi itself") {
        CHECK(lift_partition(xi, Partition::discrete(classes)) == xi);
    }
    SECTION("one-block zeta lifts to one block") {
        CHECK(lift_partition(xi, Partition::one_block(classes)) == Partition::one_block(f));
    }
    SECTION("merging two classes merges their blocks") {
        auto zeta = labels_partition(classes, {{"⟨u⟩", "⟨v⟩"}, {"⟨w⟩"}});
        CHECK(lift_partition(xi, zeta) == labels_partition(f, {{"u", "v"}, {"w"}}));
    }
    SECTION("zeta over the wrong space is rejected") {
        CHECK_THROWS_AS(lift_partition(xi, Partition::discrete(f)), PreconditionError);
    }
    SECTION("the lift is coarser than or equal to xi") {
        testgen::Rng rng(17);
        for (int i = 0; i < 30; ++i) {
            auto space = testgen::random_space(rng, "F", "e", 1, 6);
            auto base = testgen::random_partition(rng, space);
            auto zeta = testgen::random_partition(rng, quotient_space(base));
            CHECK(base.refines(lift_partition(base, zeta)));
        }
    }
}

TEST_CASE("power_partition") {
    auto y = make_space("outputs", {"0", "1"});

    SECTION("discrete power is discrete") {
        CHECK(power_partition(Partition::discrete(y), 2).block_count() == 4);
    }
    SECTION("one-block power is one block") {
        auto p = power_partition(Partition::one_block(y), 2);
        REQUIRE(p.block_count() == 1);
        CHECK(p.block_labels(0) == std::vector<std::string>{"00", "01", "10", "11"});
    }
    SECTION("mixed blocks are rectangles of words") {
        auto f = make_space("F", {"0", "1", "2"});
        auto p = power_partition(labels_partition(f, {{"0", "1"}, {"2"}}), 2);
        CHECK(p.block_count() == 4);
        CHECK(p.block_labels(0) == std::vector<std::string>{"00", "01", "10", "11"});
    }
}
