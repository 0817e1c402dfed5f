#pragma once
#include <cstdint>
#include <vector>

#include "ftqlab/circuit.hpp"
#include "ftqlab/css_code.hpp"

namespace ftqlab {

// Fanout synthesis of CSS encoding unitaries, wire q = code qubit q.
//
// The circuit is an H on every pivot of the reduced X-type row basis,
// then a CNOT fanout from each data wire over its reduced logical X
// support, then one fanout per basis row from the row's pivot. Under
// conjugation by the resulting U:
//   X on data[i]   ->  X^{xbar[i]}     (logical X rep)
//   Z on data[i]   ->  Z^{zbar[i]}     (logical Z rep)
//   Z on pivots[r] ->  X^{xrows[r]}
//   Z on others[j] ->  Z^{trows[j]}    (inside the Z-generator span)
// so |0..0> maps to the all-zeros logical Z-basis state and |+> on a
// data wire moves that logical to the X basis. All output signs are +.
//
// Validity needs the data fanout supports to avoid each other's data
// wires; build_encoder picks wires that satisfy this and throws
// std::runtime_error when the code admits none.
struct Encoder {
    uint32_t n = 0;
    uint32_t k = 0;
    std::vector<uint32_t> data;
    std::vector<uint32_t> pivots;
    std::vector<uint32_t> others;
    std::vector<BitRow> xrows;   // reduced X basis, pivot order
    std::vector<BitRow> xbar;    // per logical, fanout support of data[i]
    std::vector<BitRow> zbar;    // per logical
    std::vector<BitRow> trows;   // per others[j]
    std::vector<std::vector<Op>> layers;

    // Same gates reversed; every op is self-inverse.
    std::vector<std::vector<Op>> inverse_layers() const;
};

Encoder build_encoder(const CssCode& code);

// k = 0 flavour over an arbitrary X-side row set: prepares the joint +1
// eigenstate of <X^rows, every commuting Z-type operator>. data/xbar/zbar
// stay empty.
Encoder build_group_prep(uint32_t n, std::vector<BitRow> xrows_in);

} // namespace ftqlab
