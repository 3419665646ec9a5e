#include "stocon/factor.hpp"

#include <utility>

namespace stocon {

namespace {

std::vector<std::size_t> pair_map(const std::vector<std::size_t>& left,
                                  const std::vector<std::size_t>& right,
                                  std::size_t right_size_in, std::size_t right_size_out) {
    std::vector<std::size_t> out(left.size() * right_size_in);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto [l, r] = pair_split(k, right_size_in);
        out[k] = pair_index(left[l], right[r], right_size_out);
    }
    return out;
}

Partition transport_over_relabel(const Partition& p, const SpacePtr& relabeled) {
    // Valid only when the relabeled space came from a discrete quotient,
    // i.e. element i corresponds to class i.
    return Partition(relabeled, p.blocks());
}

} // namespace

QuotientSpace make_quotient(const Partition& p) {
    return QuotientSpace{p.space(), p, quotient_space(p), p.block_index()};
}

FactorResult factor_automaton(const StochasticAutomaton& a, const CongruenceTriple& c) {
    const FriendshipReport rep = is_congruence(a, c);
    if (!rep.friendly) {
        throw NotACongruenceError("factor_automaton: the triple is not a congruence", rep);
    }
    const QuotientSpace qx = make_quotient(c.alpha);
    const QuotientSpace qy = make_quotient(c.beta);
    const QuotientSpace qz = make_quotient(c.gamma);
    const SpacePtr factor_rows = product_space(qz.classes, qy.classes);
    const std::vector<std::size_t> eta_zy =
        pair_map(qz.eta, qy.eta, a.outputs()->size(), qy.classes->size());

    std::map<StochasticAutomaton::RowKey, SubDistribution> law;
    for (std::size_t ai = 0; ai < c.alpha.block_count(); ++ai) {
        for (std::size_t ci = 0; ci < c.gamma.block_count(); ++ci) {
            const std::size_t x0 = c.alpha.block(ai).front();
            const std::size_t z0 = c.gamma.block(ci).front();
            SubDistribution row = push_forward(a.row(x0, z0), eta_zy, factor_rows);
            // Representative independence, re-verified for every class pair.
            for (std::size_t x : c.alpha.block(ai)) {
                for (std::size_t z : c.gamma.block(ci)) {
                    if (x == x0 && z == z0) continue;
                    if (!(push_forward(a.row(x, z), eta_zy, factor_rows) == row)) {
                        throw InternalConsistencyError(
                            "factor row depends on the representative at class pair (" +
                            qx.classes->label(ai) + "," + qz.classes->label(ci) + ")");
                    }
                }
            }
            law.emplace(StochasticAutomaton::RowKey{ai, ci}, std::move(row));
        }
    }
    StochasticAutomaton factor(qx.classes, qy.classes, qz.classes, std::move(law));
    Morphism canonical(a, factor, qx.eta, qy.eta, qz.eta);
    if (!is_morphism(canonical).ok) {
        throw InternalConsistencyError("canonical projection onto the factor is not a morphism");
    }
    return FactorResult{std::move(factor), std::move(canonical)};
}

std::pair<Morphism, Morphism> em_factorization(const Morphism& m) {
    const MorphismCheck chk = is_morphism(m);
    if (!chk.ok) {
        throw NotAMorphismError("em_factorization: the diagram does not commute", chk);
    }
    const CongruenceTriple kc = kernel_congruence(m);
    FactorResult fr = factor_automaton(m.source(), kc);

    // The injective part sends each kernel class to the common image of
    // its members.
    auto mono_component = [](const Partition& kern, const std::vector<std::size_t>& comp) {
        std::vector<std::size_t> out(kern.block_count());
        for (std::size_t b = 0; b < kern.block_count(); ++b) out[b] = comp[kern.block(b).front()];
        return out;
    };
    Morphism mono(fr.factor, m.target(), mono_component(kc.alpha, m.f()),
                  mono_component(kc.beta, m.g()), mono_component(kc.gamma, m.h()));
    if (!is_morphism(mono).ok) {
        throw InternalConsistencyError("mono part of the em-factorization is not a morphism");
    }
    const Morphism recomposed = compose(mono, fr.canonical);
    if (recomposed.f() != m.f() || recomposed.g() != m.g() || recomposed.h() != m.h()) {
        throw InternalConsistencyError("em-factorization does not reproduce the morphism");
    }
    return {std::move(fr.canonical), std::move(mono)};
}

std::pair<Morphism, Morphism> refactor_isomorphism(const StochasticAutomaton& a,
                                                   const CongruenceTriple& c,
                                                   const CongruenceTriple& c_prime) {
    const CongruenceTriple composed = compose_congruences(a, c, c_prime);
    const StochasticAutomaton one_step = factor_automaton(a, composed).factor;
    const StochasticAutomaton two_step =
        factor_automaton(factor_automaton(a, c).factor, c_prime).factor;

    // Class of x under the lifted relation -> class of the class of x.
    auto forward_component = [](const Partition& lifted, const Partition& base,
                                const Partition& upper) {
        std::vector<std::size_t> out(lifted.block_count());
        for (std::size_t b = 0; b < lifted.block_count(); ++b) {
            out[b] = upper.block_of(base.block_of(lifted.block(b).front()));
        }
        return out;
    };
    const std::vector<std::size_t> fa = forward_component(composed.alpha, c.alpha, c_prime.alpha);
    const std::vector<std::size_t> fb = forward_component(composed.beta, c.beta, c_prime.beta);
    const std::vector<std::size_t> fc = forward_component(composed.gamma, c.gamma, c_prime.gamma);

    auto invert = [](const std::vector<std::size_t>& fwd, std::size_t codomain) {
        if (fwd.size() != codomain) {
            throw InternalConsistencyError("refactor isomorphism components are not bijective");
        }
        std::vector<std::size_t> inv(codomain, codomain);
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            if (inv[fwd[i]] != codomain) {
                throw InternalConsistencyError("refactor isomorphism components are not bijective");
            }
            inv[fwd[i]] = i;
        }
        return inv;
    };
    const std::vector<std::size_t> ba = invert(fa, two_step.inputs()->size());
    const std::vector<std::size_t> bb = invert(fb, two_step.outputs()->size());
    const std::vector<std::size_t> bc = invert(fc, two_step.states()->size());

    Morphism fwd(one_step, two_step, fa, fb, fc);
    Morphism bwd(two_step, one_step, ba, bb, bc);
    if (!is_morphism(fwd).ok || !is_morphism(bwd).ok) {
        throw InternalConsistencyError("refactor isomorphism direction fails the diagram check");
    }
    return {std::move(fwd), std::move(bwd)};
}

FactorResult stepwise_reduction(const StochasticAutomaton& a, const CongruenceTriple& c,
                                ReductionOrder order) {
    const FriendshipReport rep = is_congruence(a, c);
    if (!rep.friendly) {
        throw NotACongruenceError("stepwise_reduction: the triple is not a congruence", rep);
    }
    const CongruenceTriple stage1 =
        order == ReductionOrder::states_first
            ? CongruenceTriple{Partition::discrete(a.inputs()), Partition::discrete(a.outputs()),
                               c.gamma}
            : CongruenceTriple{c.alpha, c.beta, Partition::discrete(a.states())};
    const FriendshipReport r1 = is_congruence(a, stage1);
    if (!r1.friendly) {
        throw StageDecompositionError("stepwise_reduction: stage-one triple is not a congruence",
                                      1, r1);
    }
    FactorResult f1 = factor_automaton(a, stage1);

    // Untouched components were factored by the identity, so their classes
    // are relabeled copies and the remaining partitions transport verbatim.
    const CongruenceTriple stage2 =
        order == ReductionOrder::states_first
            ? CongruenceTriple{transport_over_relabel(c.alpha, f1.factor.inputs()),
                               transport_over_relabel(c.beta, f1.factor.outputs()),
                               Partition::discrete(f1.factor.states())}
            : CongruenceTriple{Partition::discrete(f1.factor.inputs()),
                               Partition::discrete(f1.factor.outputs()),
                               transport_over_relabel(c.gamma, f1.factor.states())};
    const FriendshipReport r2 = is_congruence(f1.factor, stage2);
    if (!r2.friendly) {
        throw StageDecompositionError("stepwise_reduction: stage-two triple is not a congruence",
                                      2, r2);
    }
    FactorResult f2 = factor_automaton(f1.factor, stage2);
    Morphism canonical = compose(f2.canonical, f1.canonical);
    return FactorResult{std::move(f2.factor), std::move(canonical)};
}

} // namespace stocon
