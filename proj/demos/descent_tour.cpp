// Walkthrough: deformations of a double point, first over one affine piece,
// then glued over a two-chart cover of the line.  Shows lifting through a
// nilpotent coefficient ring and the death of the obstruction class chart by
// chart.

#include <iostream>

#include "koszul/cech.hpp"
#include "koszul/deformation.hpp"
#include "koszul/koszul_complex.hpp"

using namespace koszul;

int main() {
  RingPtr R = PolyRing::make_str({"x"}, {});
  KoszulComplex K = koszul_complex(R, {re_parse(R, "x^2")});

  // one affine piece: solve the deformation equation through t^3
  EndoDGLA E = endo_dgla(K.K);
  ArtinRing A = make_artin({"t"}, {"t^3"});
  CohomologyPresentation H1 = cohomology_presentation(E.E.H, 1);
  std::cout << "tangent space dimension: " << kdim(H1.pres) << "\n";
  int lifted = 0;
  for (const auto& [gen, mono] : standard_basis(H1.pres)) {
    RingElement scale{R, poly_mono(mono)};
    std::vector<RingElement> xi;
    for (int r = 0; r < H1.kernel_gens.rows; ++r)
      xi.push_back(H1.kernel_gens.get(r, gen) * scale);
    TensorElement seed;
    seed.deg = 1;
    seed.c.emplace(A.index_of(Monomial::var(0)), xi);
    if (mc_solve(E.L, A, seed).lifted) ++lifted;
  }
  std::cout << "first-order directions lifted through t^3: " << lifted << "\n";

  // two charts: glue local families and push the obstruction to the charts
  CechEnd L = cech_end(affine_cover(R, {re_var(R, 0), re_parse(R, "x-1")}), K.K);
  ArtinRing B = make_artin({"t"}, {"t^2"});
  DescentEnumeration en = descent_mc(L, B);
  std::cout << "glued first-order dimension over the cover: " << en.first_order_dim
            << ", certified data: " << en.reps.size() << "\n";

  SmallExtension ext = small_extension(make_artin({"t"}, {"t^3"}), B);
  DescentObstruction ob = descent_obstruction(L, ext, en.reps.front());
  std::cout << "obstruction to lifting once more: "
            << (ob.vanishes ? "vanishes globally" : "survives") << ", "
            << (ob.edge_killed ? "dies on every chart" : "survives on a chart") << "\n";
  return 0;
}
