// Builds two small root-graded algebras and prints what the checks say.

#include <iostream>

#include "rootgrade/extensions.hpp"

using namespace rootgrade;

int main() {
  for (const char* name : {"bc-symplectic-rank1", "bc-exchange"}) {
    GradedAlgebra L(catalog(name), IndexData(4, 4));
    auto d = L.summand_dims();
    std::cout << name << ": dim " << L.dim() << " = " << d[0] << " + " << d[1] << " + " << d[2] << " + " << d[3] << "\n";
    for (const auto& c : check_graded(L).checks) std::cout << "  " << c.name << (c.passed ? " ok" : " FAILED") << "\n";
  }

  // the square-zero example has {b,b} = HF(b), all of it uniform
  CoordinateQuadruple q = catalog("bc-square-zero3");
  Subspace hf = BBSpace(BAlgebra(q), 4).compute_hf();
  UniversalExtension u = universal_extension(q, IndexData(4, 4), hf);
  std::cout << "universal extension of L(" << q.name << ", HF): " << u.univ.dim() << " -> " << u.target.dim()
            << ", kernel " << u.kernel_dim << ", center " << u.center_dim << (u.passed() ? ", certified" : ", FAILED")
            << "\n";
  return u.passed() ? 0 : 1;
}
