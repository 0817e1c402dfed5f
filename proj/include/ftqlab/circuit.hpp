#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ftqlab/gf2.hpp"

namespace ftqlab {

// Layered circuit IR. Every layer tiles the full wire set: wires not acted
// on carry an explicit idle op, so (layer, index) pairs enumerate locations
// and idle locations are legitimate fault sites.
//
// Dynamic behaviour (round repetition, cat re-preparation) is expressed
// statically: ops carry an optional guard id, and a guarded op executes only
// if its guard evaluates true on the measurement records produced so far.
// Guards must read only records that are finalized before the guarded op
// runs; engines memoize each guard on first consult.
//
// classical_control ops apply the Pauli X^px Z^pz on q0 when bit `ctrl_bit`
// of controller `ctrl`'s output is 1. Controllers are evaluated once per
// simulation (memoized), so a whole correction layer shares one decode.

enum class OpKind : uint8_t {
    idle,
    prep_z,
    prep_x,
    x,
    z,
    h,
    s,
    cnot,
    cz,
    meas_z,
    meas_x,
    control,
};

bool is_two_qubit(OpKind k);
bool is_meas(OpKind k);
const char* op_name(OpKind k);

struct Op {
    OpKind kind = OpKind::idle;
    uint32_t q0 = 0;
    uint32_t q1 = 0;       // cnot/cz only
    int32_t rec = -1;      // meas_*: record slot
    int32_t ctrl = -1;     // control: controller id
    uint32_t ctrl_bit = 0; // control: bit index into controller output
    int32_t group = -1;    // guard id, -1 = unconditional
    uint8_t px = 0, pz = 0; // control: Pauli to apply
};

// Guards see the record array (finalized slots only); controllers produce a
// bit vector consumed by control ops. Both must be deterministic functions
// of the records.
using GuardFn = std::function<bool(const std::vector<uint8_t>&)>;
using CtrlFn = std::function<std::vector<uint8_t>(const std::vector<uint8_t>&)>;

struct Loc {
    uint32_t layer = 0;
    uint32_t idx = 0;
    bool operator==(const Loc& o) const { return layer == o.layer && idx == o.idx; }
    bool operator<(const Loc& o) const {
        return layer != o.layer ? layer < o.layer : idx < o.idx;
    }
};

// Pauli fault on the output wires of a location. For measurement locations
// the classical output wire is what can fail: x0 = 1 flips the record, the z
// component is inert. For everything else the fault is applied after the
// ideal op.
struct Fault {
    Loc loc;
    uint8_t x0 = 0, z0 = 0;
    uint8_t x1 = 0, z1 = 0; // second output wire of cnot/cz
};

struct Circuit {
    uint32_t n_wires = 0;
    uint32_t n_records = 0;
    std::vector<std::vector<Op>> layers;
    std::vector<GuardFn> guards;
    std::vector<CtrlFn> ctrls;

    size_t num_layers() const { return layers.size(); }
    size_t size() const;
    const Op& at(Loc l) const { return layers[l.layer][l.idx]; }
    // throws std::logic_error naming the first violation: layers must tile
    // [0, n_wires) exactly, record slots must be unique and in range,
    // guard/controller ids must resolve.
    void validate() const;
};

// Incremental construction; add_layer fills untouched wires with idles.
class CircuitBuilder {
  public:
    explicit CircuitBuilder(uint32_t n_wires);

    uint32_t wires() const { return c_.n_wires; }
    int32_t new_record();
    int32_t new_guard(GuardFn f);
    int32_t new_ctrl(CtrlFn f);
    uint32_t add_layer(std::vector<Op> ops); // returns layer index
    // layerwise merge of a pre-built block (wire-disjoint with whatever the
    // target layers already hold) starting at layer `at`; extends as needed
    void merge_at(uint32_t at, const std::vector<std::vector<Op>>& block);
    uint32_t next_layer() const { return uint32_t(c_.layers.size()); }

    Circuit take(); // validates, then moves out

  private:
    Circuit c_;
};

// Fault-site enumeration. A site is live if its op executed in the given
// guard evaluation (idles count when their layer saw any executed non-idle
// op; guarded ops count when the guard held). `guard_vals` comes from a
// base simulation; pass {} for circuits without guards.
std::vector<Loc> live_sites(const Circuit& c, const std::vector<int8_t>& guard_vals);

// Single-fault alphabet at a site: meas -> record flip; 1q -> X,Y,Z;
// 2q -> all 15 nontrivial two-qubit Paulis.
std::vector<Fault> fault_alphabet(const Circuit& c, Loc l);

} // namespace ftqlab
