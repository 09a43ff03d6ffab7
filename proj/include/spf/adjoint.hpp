#pragma once

#include "spf/constructions.hpp"

namespace spf {

// (X, Y) -> Hom(B, J_{d,X,d,Y}^{(1)}) for B of bidegree (pd, pd), evaluated at X = Y = k^d on sides of the given kind.
// The action on X and Y comes from the parameter action on J.
std::shared_ptr<const MatrixModule> ell_dual(ModulePtr B, uint32_t d, SchurSide::Kind kind = SchurSide::Kind::Dominant);

// The left adjoint of precomposition by the Frobenius twist: the dual of ell_dual.
ModulePtr ell(ModulePtr B, uint32_t d, SchurSide::Kind kind = SchurSide::Kind::Dominant);

// The endomorphism of an evaluated bifunctor with a parameter given by a monomial acting on that parameter.
ModuleMap parameter_action(std::shared_ptr<const EvaluatedModule> m, Side side, const Mono& h);

} // namespace spf
