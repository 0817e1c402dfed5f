#pragma once
#include <vector>

#include "ftqlab/circuit.hpp"
#include "ftqlab/pauli.hpp"

namespace ftqlab {

// Heisenberg propagation of a Pauli through unitary layers. forward
// gives U P U^-1 (P commuted from the input side to the output side),
// backward gives U^-1 P U. Signs are folded into the i^phase exponent.
// Only unitary kinds are legal; prep/meas/control ops throw.
void conjugate_op(PauliOp& p, const Op& op, bool forward);

PauliOp conjugate_through(PauliOp p, const std::vector<std::vector<Op>>& layers,
                          bool forward);

} // namespace ftqlab
