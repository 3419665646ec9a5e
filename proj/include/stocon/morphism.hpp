#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stocon/automaton.hpp"
#include "stocon/errors.hpp"
#include "stocon/rational.hpp"

namespace stocon {

struct MorphismCounterexample {
    std::string input, state;       // source labels x, z
    std::string next_state, output; // target labels z', y'
    Rational target_mass, pushed_mass;
};

struct MorphismCheck {
    bool ok = true;
    std::optional<MorphismCounterexample> counterexample;
};

/// Triple of total surjections (f on inputs, g on outputs, h on states)
/// between two automata. Surjectivity is enforced at construction; whether
/// the transition diagram commutes is a separate question (is_morphism).
class Morphism {
public:
    Morphism(StochasticAutomaton source, StochasticAutomaton target,
             std::vector<std::size_t> f, std::vector<std::size_t> g, std::vector<std::size_t> h);

    const StochasticAutomaton& source() const { return source_; }
    const StochasticAutomaton& target() const { return target_; }
    const std::vector<std::size_t>& f() const { return f_; }
    const std::vector<std::size_t>& g() const { return g_; }
    const std::vector<std::size_t>& h() const { return h_; }

private:
    StochasticAutomaton source_, target_;
    std::vector<std::size_t> f_, g_, h_;
};

/// The diagram condition on singletons: K'(f(x), h(z)) equals the image of
/// K(x, z) under h x g, for every row. Singletons suffice on finite spaces.
/// Reports the first failing entry in canonical (x, z, (z', y')) order.
MorphismCheck is_morphism(const Morphism& m);

/// Thrown when an operation requires a commuting morphism but the diagram
/// check fails.
class NotAMorphismError : public PreconditionError {
public:
    NotAMorphismError(const std::string& what, MorphismCheck check)
        : PreconditionError(what), check(std::move(check)) {}
    MorphismCheck check;
};

Morphism identity_morphism(const StochasticAutomaton& a);

/// Componentwise composition outer . inner; requires inner.target == outer.source.
Morphism compose(const Morphism& outer, const Morphism& inner);

} // namespace stocon
