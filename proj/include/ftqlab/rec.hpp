#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ftqlab/circuit.hpp"
#include "ftqlab/css_code.hpp"
#include "ftqlab/decoder_lookup.hpp"
#include "ftqlab/shor_ec.hpp"

namespace ftqlab {

// Gates with a fault-tolerant block realization: cat-state error correction
// on every input block, then the transversal physical layer. The set is
// what a CSS code implements transversally plus the two classical
// boundaries; H and S are not transversal on the codes shipped here and
// are rejected by parse_gate/build_rec.
enum class GateKind : uint8_t { i, x, z, cnot, prep_z, meas_z };

const char* gate_name(GateKind g);
// Accepts the gate_name spellings plus a few aliases (prep_z, measure_z,
// ...), case-insensitive. Throws std::invalid_argument on anything else,
// with a dedicated message for the non-transversal H/S.
GateKind parse_gate(const std::string& s);

// One fault-tolerant gate block.
//
// Level 1 is executable: `circuit` holds the leading error correction per
// input block (merged in parallel for CNOT) followed by the transversal
// layer. prep0 has no input block; the correction right after the raw
// preparations doubles as the projection onto the codeword. measZ ends in
// a destructive transversal Z measurement and the logical outcome is
// recovered classically from the raw bits (decode_logical_meas).
//
// Level 2 is a counting object: every non-idle level-1 location stands for
// its own level-1 block, but the inner gates (H, CZ, |+> preparation) have
// no transversal realization on these codes, so the substitution cannot be
// instantiated as a runnable circuit. sub_sizes holds the location count
// of each substituted block in (layer, idx) order; `circuit` keeps the
// level-1 template.
struct Rec {
    GateKind gate = GateKind::i;
    uint32_t level = 1;
    CssCode code;
    uint32_t t = 0;                            // correction order (d-1)/2
    uint32_t q_in = 0, q_out = 0;              // logical block arity
    Circuit circuit;
    std::vector<std::vector<uint32_t>> blocks; // data wires per block
    std::vector<ShorEcInfo> ecs;               // one per input block (prep0: the projector)
    std::shared_ptr<LookupDecoder> dec;
    std::vector<uint32_t> gate_layers;         // transversal layer indices
    std::vector<int32_t> meas_recs;            // measZ: record slot per data wire
    std::vector<uint64_t> sub_sizes;           // level 2 only

    size_t size() const; // non-idle locations; level 2 sums sub_sizes
};

// Throws on level outside {1,2}, k != 1, n > 63, or distance < 3.
Rec build_rec(GateKind g, const CssCode& code, uint32_t level = 1);

// Level-1 classification: good iff the path touches at most one location.
// Throws std::invalid_argument on locations outside the circuit or on a
// level-2 block.
bool classify_fault_path(const Rec& rec, const std::vector<Fault>& path);

// Level-2 location: which substituted block, which location inside it.
struct Loc2 {
    uint32_t sub = 0;
    uint64_t idx = 0;
};

// Level-2 classification: a substituted block with two or more faulted
// locations is bad; the path is good iff at most one block is bad.
bool classify_fault_path2(const Rec& rec, const std::vector<Loc2>& path);

// Decoded logical Z outcome from the measZ record slots. Works on actual
// outcomes (gives the logical bit) and on outcome flips (gives the flip):
// syndrome-decode the bit pattern against the Z-type checks, then take the
// corrected parity on the logical Z support.
uint8_t decode_logical_meas(const Rec& rec, const std::vector<uint8_t>& rec_bits);

// Packed per-block deviation masks (bit q = data qubit q of the block).
struct BlockMasks {
    uint64_t x = 0, z = 0;
};

// Residual deviation per input block at the circuit end, relative to the
// ideal logical action, for the given fault path and per-block input
// deviations. Exploits that with the faults fixed, the block's control
// flow does not depend on the input deviation, so one frame run plus the
// decoder tables give the residual for any input in closed form. measZ
// returns one entry whose x part is the outcome-flip pattern. prep0 has
// no frame representation (its records are genuinely random) and throws.
std::vector<BlockMasks> residual_deviation(const Rec& rec, const std::vector<Fault>& path,
                                           const std::vector<BlockMasks>& input_dev);

struct CorrectnessReport {
    bool ok = true;
    uint32_t rounds_used = 0;  // max syndrome rounds executed over the ECs
    bool ec_exhausted = false; // some EC hit its round cap
    std::string detail;        // first failing case, empty when ok
};

// Ideal-decode comparison: simulate the block under the path's faults and
// demand trivial residual logical action after min-weight decoding, for
// every admissible input deviation per block. A path occupying r locations
// leaves a budget of t - r, so inputs of weight <= t - r are enumerated
// (identity included, capped at weight 2). For measZ the decoded outcome
// must be unflipped, for prep0 the output must decode to the logical zero
// state. `seed` only feeds measurement draws (prep0); the verdict does not
// depend on it.
bool check_correctness(const Rec& rec, const std::vector<Fault>& path, uint64_t seed = 0,
                       CorrectnessReport* rep = nullptr);

struct SweepFailure {
    Fault fault;
    std::string detail;
};

struct SweepReport {
    uint64_t sites = 0;       // live locations swept
    uint64_t assignments = 0; // (location, fault) pairs checked
    uint64_t failures = 0;
    uint64_t ec_exhaustions = 0;
    uint32_t max_rounds_used = 0;
    std::vector<SweepFailure> witnesses; // first failures in site order, capped
};

// Exhaustive single-fault sweep: every live location, every fault in its
// alphabet. threads = 0 picks the hardware count; the report is identical
// for any thread count.
SweepReport sweep_single_faults(const Rec& rec, uint32_t threads = 0, uint64_t seed = 0);

struct WitnessSearch {
    bool found = false;
    std::vector<Fault> path;
    uint64_t tried = 0; // correctness checks spent
};

// Bounded search for a fault path of the given size that defeats the
// block. Candidates are the live locations at and after the correction
// layers, ordered logical-support wires first (aligned faults are the
// known failure mode), and tuples are walked in deterministic
// lexicographic order until a failure or the budget is hit.
WitnessSearch search_bad_witness(const Rec& rec, uint32_t num_faults, uint64_t budget,
                                 uint64_t seed = 0);

} // namespace ftqlab
