#pragma once
#include <cstdint>
#include <vector>

#include "ftqlab/circuit.hpp"
#include "ftqlab/pauli.hpp"
#include "ftqlab/rng.hpp"

namespace ftqlab {

// Engine B: Pauli-frame propagation. Tracks the deviation from the ideal
// (noiseless) execution; records hold outcome FLIPS relative to ideal, so
// guards and controllers are only valid on circuits whose consumed record
// functions are deterministically zero in the ideal run (true for all EC
// machinery here: cat parities, verification bits, syndrome wires).
//
// prep clears the frame on its wire; H swaps x/z; S adds x into z; CNOT and
// CZ propagate; meas_z consumes the x bit as the record flip and clears z;
// meas_x the mirror; Pauli gates and executed control ops XOR into the
// frame; faults XOR in after their op.
struct FrameResult {
    BitRow fx, fz;                // final frame over wires
    std::vector<uint8_t> rec;     // record flips
    std::vector<int8_t> guards;   // memoized guard values, -1 = never consulted
    uint64_t executed_ops = 0;    // non-idle ops that actually ran
};

FrameResult run_frame(const Circuit& c, const std::vector<Fault>& faults,
                      const BitRow* init_fx = nullptr, const BitRow* init_fz = nullptr);

// Engine A: stabilizer tableau with signs (destabilizer-augmented), for
// circuits whose measurement outcomes are genuinely random. Rows 0..n-1
// destabilizers, n..2n-1 stabilizers.
struct Tableau {
    uint32_t n = 0;
    std::vector<BitRow> x, z;   // 2n rows
    std::vector<uint8_t> r;     // 2n sign bits

    static Tableau zeros(uint32_t n); // |0...0>

    void apply_h(uint32_t q);
    void apply_s(uint32_t q);
    void apply_cnot(uint32_t c, uint32_t t);
    void apply_cz(uint32_t a, uint32_t b);
    void apply_x(uint32_t q);
    void apply_z(uint32_t q);
    void apply_pauli(const PauliOp& p); // phase ignored, sign bits updated
    uint8_t measure_z(uint32_t q, RngStream& rng); // collapses
    void prep_z(uint32_t q, RngStream& rng);
    void prep_x(uint32_t q, RngStream& rng);

    // +1 / -1 if p (phase ignored; +P) is in +-(stabilizer group), else 0
    int expectation(const PauliOp& p) const;

  private:
    void rowsum(uint32_t h, uint32_t i);
    int phase_accum(const std::vector<uint32_t>& rows, const PauliOp& p) const;
};

struct TableauResult {
    Tableau state;
    std::vector<uint8_t> rec;     // actual outcomes
    std::vector<int8_t> guards;
    uint64_t executed_ops = 0;
};

// init = nullptr starts from |0...0>. Guards/controllers see actual records.
TableauResult run_tableau(const Circuit& c, const std::vector<Fault>& faults, RngStream& rng,
                          const Tableau* init = nullptr);

} // namespace ftqlab
