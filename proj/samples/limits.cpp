// Limit report for the majorant product as the dimension doubles.
#include <iostream>

#include "hypercert/asymptotics.hpp"

int main() {
  using namespace hypercert;
  const auto report = limit_report(Quantity::c_hat, {25, 50, 100, 200}, Rat(3), Variant::rational_base,
                                   paper_mode(Rat(1)));
  std::cout << report.render();
}
