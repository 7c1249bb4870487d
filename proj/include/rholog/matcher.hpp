#pragma once

#include "rholog/core.hpp"
#include "rholog/generator.hpp"

namespace rholog {

struct MatchOptions {
  // Order in which context variables try hole positions.
  Traversal traversal = Traversal::leftmost_outermost;
};

using MatcherStream = Generator<Substitution>;

// Enumerates all matchers of pattern against a ground, hole-free subject.
//
// The enumeration is lazy and finite, and emits each substitution once. The
// order is canonical: the leftmost unresolved pattern element is decomposed
// first, sequence variables try shorter hedges before longer ones, and
// context variables try hole positions in the traversal order of `options`.
// Anonymous variables drive choice points but are never recorded.
MatcherStream match_hedge(Hedge pattern, Hedge subject, MatchOptions options = {});

MatcherStream match_term(Term pattern, Term subject, MatchOptions options = {});

}  // namespace rholog
