#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafchar/cech/presentation.hpp"

namespace leafchar {

/// Set of morphism indices (sorted) with a common target.
using Sieve = std::vector<std::size_t>;

struct SiteMorphism {
  std::string name;
  std::size_t source = 0, target = 0;
};

/// Finite category with a candidate Grothendieck topology.
struct FiniteSite {
  std::vector<std::string> objects;
  std::vector<SiteMorphism> morphisms;
  /// identities[a] is the identity morphism of object a.
  std::vector<std::size_t> identities;
  /// compose[g][f] = index of g after f, or -1 when target(f) != source(g).
  std::vector<std::vector<long>> compose;
  /// covers[a] lists the covering sieves on object a.
  std::vector<std::vector<Sieve>> covers;
};

/// Sieves are closed under precomposition and all members end at a.
bool is_sieve(const FiniteSite& s, std::size_t object, const Sieve& sieve);
Sieve maximal_sieve(const FiniteSite& s, std::size_t object);
/// Smallest sieve containing the given morphisms into `object`.
Sieve generated_sieve(const FiniteSite& s, std::size_t object, const std::vector<std::size_t>& morphisms);
/// f^*S = { h : f h in S } for f : b -> a and S on a.
Sieve pullback_sieve(const FiniteSite& s, std::size_t f, const Sieve& sieve);
/// Every sieve on `object`; throws ResourceBudgetExceeded when more than
/// 20 morphisms end at it.
std::vector<Sieve> all_sieves(const FiniteSite& s, std::size_t object);

std::string to_string(const FiniteSite& s, const Sieve& sieve);

struct AxiomResult {
  unsigned axiom = 0;
  std::string statement;
  bool passed = false;
  std::string witness;  ///< empty when passed
};

struct SiteReport {
  std::vector<AxiomResult> axioms;
  bool passed() const;
};

/// Axiom 1: the maximal sieve covers. Axiom 2: covers are stable under
/// pullback. Axiom 3: a sieve that is locally covering along a cover is a
/// cover. Throws MalformedSite if the category data are inconsistent or a
/// listed cover is not a sieve.
SiteReport verify_site_axioms(const FiniteSite& s);

/// Chart category of a presentation whose reduced words form a finite set;
/// covers are the maximal sieves. Throws ResourceBudgetExceeded when more
/// than max_morphisms arrows are found.
FiniteSite induced_site(const AtlasPresentation& p, std::size_t max_morphisms = 256);

/// One-object site with only the identity and the maximal sieve.
FiniteSite trivial_site(const std::string& object = "pt");

/// Single-axiom mutations for a site with objects a and b and a morphism
/// b -> a. Axiom 1: drop every cover. Axiom 2: every sieve on a covers, only
/// the maximal sieve on b does, so the empty sieve pulls back badly along
/// b -> a. Axiom 3: covers on a are the maximal sieve and the sieve of all
/// morphisms from b, covers on b are the maximal and the empty sieve.
FiniteSite mutate_site(const FiniteSite& s, unsigned axiom, std::size_t a, std::size_t b);

}  // namespace leafchar
