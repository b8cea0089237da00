// Amplitude damping of a qubit: forward map, CP check, inverse map and evolution.

#include <cmath>
#include <iostream>

#include <lindblad/lindblad.hpp>

int main() {
  using namespace lindblad;
  const NiceBasis b = generate_gell_mann(2);

  CMatrix H = CMatrix::Zero(2, 2);
  H(0, 0) = 1.0;
  H(1, 1) = -1.0;
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = a(1, 1) = 0.5;
  a(0, 1) = cplx(0.0, -0.5);
  a(1, 0) = cplx(0.0, 0.5);

  const OdePair pair = forward_map(MasterEqParams::make(H, a), b);
  std::cout << "G =\n" << pair.G << "\nc = " << pair.c.transpose() << "\n";

  const CPReport cp = check_lindblad(pair, b);
  std::cout << "Lindblad: " << std::boolalpha << cp.is_lindblad << "\n";

  const MasterEqParams back = inverse_map(pair, b);
  std::cout << "recovered H =\n" << back.H << "\n";

  CMatrix rho0 = CMatrix::Zero(2, 2);
  rho0(1, 1) = 1.0;
  for (const CMatrix& rho : evolve_density(back, rho0, {0.0, 0.5, 1.0, 4.0}, b))
    std::cout << "rho_00 = " << rho(0, 0).real() << "\n";
  return 0;
}
