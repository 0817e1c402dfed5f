#pragma once
#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "ftqlab/circuit.hpp"
#include "ftqlab/css_code.hpp"
#include "ftqlab/decoder_lookup.hpp"

namespace ftqlab {

// Cat-state generator measurement with verification, repeated rounds until
// t+1 consecutive rounds report identical full syndrome strings, hard cap
// (t+1)^2 rounds (statically unrolled, later rounds guarded off once a
// window agrees). Exhaustion falls back to the last round's string.
//
// Per generator of weight w and attempt: one prep layer (|+> seed + |0>
// rest + |0> check ancillas), w-1 chain CNOT layers, two staggered layers
// of adjacent-pair parity CNOTs onto w-1 check ancillas, one check-measure
// layer. Any check bit = 1 discards the cat and triggers the next attempt
// (3 max; final attempt proceeds unverified). Then one coupling layer
// (CNOT onto data for X-type rows, CZ for Z-type), one H layer, one
// measure layer; the row's syndrome bit is the parity of those outcomes.
//
// The final correction is one classically-controlled X layer plus one Z
// layer on the data wires, driven by the (totalized) lookup decoder applied
// to the agreed string.

struct EcRowGadget {
    std::array<uint32_t, 3> attempt_begin{}; // first layer of each attempt
    uint32_t coupling_begin = 0;             // coupling layer index
    uint32_t end = 0;                        // one past the measure layer
};

struct ShorEcInfo {
    std::vector<uint32_t> data;                    // data wire ids
    std::vector<std::pair<char, BitRow>> rows;     // measured rows over code qubits
    std::vector<uint32_t> cat, ver;                // ancilla wire pools
    uint32_t t = 0;
    uint32_t rounds = 0;                           // (t+1)^2
    std::shared_ptr<LookupDecoder> dec;
    int32_t corr_ctrl = -1;

    // record slots: [round][row][position]
    std::vector<std::vector<std::vector<int32_t>>> cat_recs;
    std::vector<std::vector<std::array<std::vector<int32_t>, 3>>> ver_recs;
    std::vector<int32_t> round_guard;              // -1 for round 0
    std::vector<std::vector<EcRowGadget>> gadget;  // [round][row] layer spans
    uint32_t corr_layer_x = 0, corr_layer_z = 0;

    size_t num_rows() const { return rows.size(); }
    // syndrome string of one round from a record array (flips or actuals)
    std::vector<uint8_t> round_string(const std::vector<uint8_t>& rec, uint32_t round) const;
    // true if some t+1 window of equal strings ends strictly before `round`
    bool agreed_before(const std::vector<uint8_t>& rec, uint32_t round) const;
    // first round index ending a t+1 agreement window; rounds-1 if none
    uint32_t agreed_round(const std::vector<uint8_t>& rec) const;
    bool exhausted(const std::vector<uint8_t>& rec) const;
    Syndrome agreed_syndrome(const std::vector<uint8_t>& rec) const;
};

// Pairing syndrome of a Pauli (over the code's qubit indexing) against the
// measured rows, in row order.
Syndrome rows_syndrome(const std::vector<std::pair<char, BitRow>>& rows, const PauliOp& e);

// Builds the gadget into `b` starting at layer `at_layer` (layerwise merge,
// so two blocks' ECs called with the same offset run in parallel). Wire
// sets {data, cat, ver} must be disjoint; cat must hold the widest row,
// ver one less. Returned layer indices are absolute.
ShorEcInfo build_shor_ec(CircuitBuilder& b, uint32_t at_layer, const std::vector<uint32_t>& data,
                         const std::vector<std::pair<char, BitRow>>& rows, uint32_t t,
                         std::shared_ptr<LookupDecoder> dec, const std::vector<uint32_t>& cat,
                         const std::vector<uint32_t>& ver);

// Convenience: generator rows of a CSS code in syndrome order (X-type rows
// first), matching LookupDecoder(code).
std::vector<std::pair<char, BitRow>> generator_rows(const CssCode& code);

} // namespace ftqlab
