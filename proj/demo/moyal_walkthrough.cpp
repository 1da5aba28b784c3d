// Small tour of the Moyal product on the symplectic plane: star products,
// commutators, star powers and the associativity certificate.

#include <iostream>

#include "naq/naq.hpp"

using namespace naq;

int main() {
    const int k = 3;
    StarProduct moyal = make_moyal(Bivector::symplectic2(), k);
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);

    std::cout << "Moyal product at truncation order " << k << " on R^2, P^{12} = 1\n";
    std::cout << "  x1 * x2      = " << moyal.star(x1, x2).str() << "\n";
    std::cout << "  x2 * x1      = " << moyal.star(x2, x1).str() << "\n";
    std::cout << "  [x1, x2]     = "
              << moyal.commutator(LambdaSeries::from_poly(x1, k), LambdaSeries::from_poly(x2, k)).str()
              << "\n";
    std::cout << "  x1^2 * x2^2  = " << moyal.star(x1 * x1, x2 * x2).str() << "\n";

    LambdaSeries f = LambdaSeries::from_poly(x1 + x2, k);
    std::cout << "  (x1 + x2)^*3 = " << moyal.power(f, 3, Assoc::left).str() << "\n";

    IdentityVerdict assoc = check_associative(moyal);
    std::cout << "associativity: " << (assoc.holds() ? "holds on certificate" : "fails")
              << " (swept monomial degree " << assoc.certificate_degree << " per slot)\n";

    NilpotencyVerdict probe = nilpotency_probe(moyal, f, 3);
    std::cout << "nilpotency probe of (x1 + x2), k = 3: "
              << (probe.status == NilpotencyVerdict::Status::pass ? "pass" : "not conclusive")
              << ", lambda^0 coefficient " << probe.coefficient.str() << "\n";
    return 0;
}
