#pragma once

#include "talg/algebra.hpp"

#include <string>
#include <vector>

namespace talg::zoo {

/// One element, one binary operation "f".
FiniteAlgebra trivial();
/// ({0,1}, meet).
FiniteAlgebra boolean_semilattice();
/// ({0..n-1}, meet = min).
FiniteAlgebra chain_semilattice(std::uint32_t n);
/// ({0,1}, majority "m").
FiniteAlgebra boolean_majority();
/// ({0,1}, minority "p" = x+y+z mod 2); the affine Z_2 algebra.
FiniteAlgebra boolean_affine();
/// ({0,1}, first projection "proj"); every term operation is a projection.
FiniteAlgebra boolean_projections();
/// ({0,1,2}, median "m" of the chain 0<1<2).
FiniteAlgebra median3();
/// ({0,1,2}, Maltsev "p" = x-y+z mod 3); the affine Z_3 algebra.
FiniteAlgebra affine_z3();
/// ({0,1,2}, "f" = rock-paper-scissors: the winner of x and y, where 1 beats 0,
/// 2 beats 1, 0 beats 2).
FiniteAlgebra rock_paper_scissors();

struct Named {
    std::string name;
    FiniteAlgebra algebra;
};

/// Algebras with a Taylor term used by the property suites, sizes 2 and 3.
std::vector<Named> taylor_suite();
FiniteAlgebra by_name(const std::string& name);

/// Every idempotent algebra on {0,1} with a single basic operation of arity
/// 1, 2 or 3, one per table.
std::vector<FiniteAlgebra> idempotent_two_element_algebras();

} // namespace talg::zoo
