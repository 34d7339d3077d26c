// Certifies n^(2n) for a few Kobayashi dimensions and prints one JSON line each.
#include <iostream>

#include "hypercert/certifier.hpp"

int main() {
  using namespace hypercert;
  const CertificationMode mode = paper_mode();
  for (int n : {10, 23, 50}) {
    const Certificate cert = verify_kobayashi(n, Rat(3), Variant::rational_base, mode);
    std::cout << to_json(cert) << "\n";
  }
}
