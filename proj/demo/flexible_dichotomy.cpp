// Walks the monopole example end to end: a bracket that violates Jacobi,
// the flexible product on top of it, and the identity checks that separate
// flexibility from associativity.

#include <iostream>

#include "naq/naq.hpp"

using namespace naq;

int main() {
    Bivector mono = Bivector::monopole_linear();
    std::cout << "monopole bivector on R^6 with B(x) = (x1, x2, x3)\n";
    std::cout << "  {p1, p2} = " << mono.bracket(Polynomial::variable(6, 3),
                                                 Polynomial::variable(6, 4)).str() << "\n";

    JacobiVerdict jacobi = jacobi_check(mono);
    std::cout << "jacobi: " << (jacobi.holds ? "holds" : "fails") << "\n";
    if (jacobi.witness) {
        std::cout << "  J^(" << jacobi.witness->indices[0] + 1 << ","
                  << jacobi.witness->indices[1] + 1 << "," << jacobi.witness->indices[2] + 1
                  << ") = " << jacobi.witness->value.str() << " at a rational point\n";
    }

    BracketVerdict malcev = malcev_check(mono, malcev_certificate_bound());
    std::cout << "malcev: " << (malcev.holds() ? "holds on certificate" : "fails") << "\n";
    if (malcev.witness) {
        std::cout << "  witness f = " << malcev.witness->arguments[0].str()
                  << ", g = " << malcev.witness->arguments[1].str()
                  << ", h = " << malcev.witness->arguments[2].str()
                  << ", defect = " << malcev.witness->defect.str() << "\n";
    }

    StarProduct flex = make_flexible(mono, 2);
    IdentityVerdict flexible = check_flexible(flex);
    IdentityVerdict assoc = check_associative(flex);
    std::cout << "flexible product: flexibility "
              << (flexible.holds() ? "holds on certificate" : "fails") << ", associativity "
              << (assoc.holds() ? "holds" : "fails") << "\n";
    if (assoc.witness) {
        std::cout << "  associator witness (f, g, h) = (" << assoc.witness->arguments[0].str()
                  << ", " << assoc.witness->arguments[1].str() << ", "
                  << assoc.witness->arguments[2].str() << ") with lambda^"
                  << assoc.witness->lambda_order << " defect " << assoc.witness->defect.str()
                  << "\n";
    }
    return 0;
}
