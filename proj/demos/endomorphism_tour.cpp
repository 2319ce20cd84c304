// Walkthrough: build the complex of the coordinate sequence on the plane,
// measure its endomorphism cohomology, and compare against the wedge algebra
// through the certified contraction.  Prints what it finds.

#include <iostream>

#include "koszul/cohomology.hpp"
#include "koszul/dgla.hpp"
#include "koszul/koszul_complex.hpp"

using namespace koszul;

int main() {
  RingPtr R = PolyRing::make_str({"x", "y"}, {});
  KoszulComplex K = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});

  std::cout << "complex ranks:";
  for (int k = K.K->lo; k <= K.K->hi; ++k) std::cout << " " << K.K->rank(k);
  std::cout << "\n";

  EndoDGLA E = endo_dgla(K.K);
  std::cout << "endomorphism ranks:";
  for (int k = E.E.H->lo; k <= E.E.H->hi; ++k) std::cout << " " << E.E.H->rank(k);
  std::cout << "\n";

  for (int k = 0; k <= K.n; ++k)
    std::cout << "dim H^" << k << "(End) = " << h_dim(E.E.H, k) << "\n";

  ContractionMorphism cm = contraction_morphism(K);
  HSurjectivity hs = surjective_in_cohomology(cm.i);
  std::cout << "contraction from the wedge algebra: chain map, multiplicative, "
            << (cm.injective ? "no kernel" : "kernel!") << ", "
            << (hs.surjective ? "surjective in cohomology" : "misses a class") << "\n";

  HomotopyDecision dec = is_bracket_null_homotopic(E);
  std::cout << "bracket null homotopy: " << (dec.feasible ? "found" : "infeasible, ")
            << (dec.feasible ? "" : std::to_string(dec.residues.size()) + " residue rows")
            << "\n";
  return 0;
}
