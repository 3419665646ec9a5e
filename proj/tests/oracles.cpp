#include "oracles.hpp"

namespace stocon::oracle {

namespace {

Rational mass_on_union(const SubDistribution& d, const Partition& theta, unsigned mask) {
    Rational total;
    for (const auto& [e, w] : d.weights()) {
        if (mask & (1u << theta.block_of(e))) total += w;
    }
    return total;
}

} // namespace

bool brute_force_friendly(const std::vector<SubDistribution>& rows, const Partition& xi,
                          const Partition& theta) {
    const unsigned sets = 1u << theta.block_count();
    for (const auto& block : xi.blocks()) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            for (std::size_t j = i + 1; j < block.size(); ++j) {
                for (unsigned mask = 0; mask < sets; ++mask) {
                    if (!(mass_on_union(rows[block[i]], theta, mask) ==
                          mass_on_union(rows[block[j]], theta, mask))) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

std::vector<Partition> all_partitions(const SpacePtr& space) {
    std::vector<Partition> out;
    const std::size_t n = space->size();
    std::vector<std::size_t> assign(n, 0);

    auto emit = [&] {
        std::size_t k = 0;
        for (std::size_t a : assign) k = std::max(k, a + 1);
        std::vector<std::vector<std::size_t>> blocks(k);
        for (std::size_t e = 0; e < n; ++e) blocks[assign[e]].push_back(e);
        out.emplace_back(space, std::move(blocks));
    };
    // Restricted growth strings: assign[0] = 0, assign[i] <= 1 + max(prefix).
    auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
        if (i == n) {
            emit();
            return;
        }
        for (std::size_t b = 0; b <= max_used + 1 && b < n; ++b) {
            assign[i] = b;
            self(self, i + 1, std::max(max_used, b));
        }
    };
    if (n == 0) return out;
    assign[0] = 0;
    rec(rec, 1, 0);
    return out;
}

Rational integrate_block_constant(const SubDistribution& d, const Partition& theta,
                                  const std::vector<Rational>& block_values) {
    Rational total;
    for (const auto& [e, w] : d.weights()) total += block_values.at(theta.block_of(e)) * w;
    return total;
}

} // namespace stocon::oracle
