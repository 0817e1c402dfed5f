#include "ftqlab/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftqlab {

bool is_two_qubit(OpKind k) { return k == OpKind::cnot || k == OpKind::cz; }

bool is_meas(OpKind k) { return k == OpKind::meas_z || k == OpKind::meas_x; }

const char* op_name(OpKind k) {
    switch (k) {
    case OpKind::idle: return "idle";
    case OpKind::prep_z: return "prep_z";
    case OpKind::prep_x: return "prep_x";
    case OpKind::x: return "x";
    case OpKind::z: return "z";
    case OpKind::h: return "h";
    case OpKind::s: return "s";
    case OpKind::cnot: return "cnot";
    case OpKind::cz: return "cz";
    case OpKind::meas_z: return "meas_z";
    case OpKind::meas_x: return "meas_x";
    case OpKind::control: return "control";
    }
    return "?";
}

size_t Circuit::size() const {
    size_t s = 0;
    for (const auto& l : layers) s += l.size();
    return s;
}

void Circuit::validate() const {
    std::vector<uint8_t> rec_seen(n_records, 0);
    std::vector<uint8_t> touched(n_wires);
    for (size_t li = 0; li < layers.size(); ++li) {
        std::fill(touched.begin(), touched.end(), 0);
        for (const Op& op : layers[li]) {
            uint32_t nq = is_two_qubit(op.kind) ? 2 : 1;
            if (op.q0 >= n_wires)
                throw std::logic_error("Circuit::validate: q0 out of range, layer " +
                                       std::to_string(li));
            if (touched[op.q0])
                throw std::logic_error("Circuit::validate: wire " + std::to_string(op.q0) +
                                       " touched twice in layer " + std::to_string(li));
            touched[op.q0] = 1;
            if (nq == 2) {
                if (op.q1 >= n_wires || op.q1 == op.q0)
                    throw std::logic_error("Circuit::validate: bad q1 in layer " +
                                           std::to_string(li));
                if (touched[op.q1])
                    throw std::logic_error("Circuit::validate: wire " + std::to_string(op.q1) +
                                           " touched twice in layer " + std::to_string(li));
                touched[op.q1] = 1;
            }
            if (is_meas(op.kind)) {
                if (op.rec < 0 || uint32_t(op.rec) >= n_records)
                    throw std::logic_error("Circuit::validate: bad record slot");
                if (rec_seen[op.rec])
                    throw std::logic_error("Circuit::validate: record slot " +
                                           std::to_string(op.rec) + " reused");
                rec_seen[op.rec] = 1;
            }
            if (op.kind == OpKind::control && (op.ctrl < 0 || size_t(op.ctrl) >= ctrls.size()))
                throw std::logic_error("Circuit::validate: bad controller id");
            if (op.group >= 0 && size_t(op.group) >= guards.size())
                throw std::logic_error("Circuit::validate: bad guard id");
        }
        for (uint32_t w = 0; w < n_wires; ++w)
            if (!touched[w])
                throw std::logic_error("Circuit::validate: wire " + std::to_string(w) +
                                       " untouched in layer " + std::to_string(li) +
                                       " (missing idle)");
    }
}

CircuitBuilder::CircuitBuilder(uint32_t n_wires) { c_.n_wires = n_wires; }

int32_t CircuitBuilder::new_record() { return int32_t(c_.n_records++); }

int32_t CircuitBuilder::new_guard(GuardFn f) {
    c_.guards.push_back(std::move(f));
    return int32_t(c_.guards.size() - 1);
}

int32_t CircuitBuilder::new_ctrl(CtrlFn f) {
    c_.ctrls.push_back(std::move(f));
    return int32_t(c_.ctrls.size() - 1);
}

uint32_t CircuitBuilder::add_layer(std::vector<Op> ops) {
    std::vector<uint8_t> touched(c_.n_wires, 0);
    for (const Op& op : ops) {
        touched[op.q0] = 1;
        if (is_two_qubit(op.kind)) touched[op.q1] = 1;
    }
    for (uint32_t w = 0; w < c_.n_wires; ++w)
        if (!touched[w]) ops.push_back(Op{OpKind::idle, w});
    c_.layers.push_back(std::move(ops));
    return uint32_t(c_.layers.size() - 1);
}

void CircuitBuilder::merge_at(uint32_t at, const std::vector<std::vector<Op>>& block) {
    for (size_t i = 0; i < block.size(); ++i) {
        size_t li = at + i;
        while (c_.layers.size() <= li) c_.layers.emplace_back();
        auto& dst = c_.layers[li];
        // drop idles that the merged block takes over
        std::vector<uint8_t> incoming(c_.n_wires, 0);
        for (const Op& op : block[i]) {
            if (op.kind == OpKind::idle) continue;
            incoming[op.q0] = 1;
            if (is_two_qubit(op.kind)) incoming[op.q1] = 1;
        }
        dst.erase(std::remove_if(dst.begin(), dst.end(),
                                 [&](const Op& op) {
                                     return op.kind == OpKind::idle && incoming[op.q0];
                                 }),
                  dst.end());
        for (const Op& op : block[i])
            if (op.kind != OpKind::idle) dst.push_back(op);
    }
}

Circuit CircuitBuilder::take() {
    // fill idles on any layer built via merge_at
    std::vector<uint8_t> touched(c_.n_wires);
    for (auto& layer : c_.layers) {
        std::fill(touched.begin(), touched.end(), 0);
        for (const Op& op : layer) {
            touched[op.q0] = 1;
            if (is_two_qubit(op.kind)) touched[op.q1] = 1;
        }
        for (uint32_t w = 0; w < c_.n_wires; ++w)
            if (!touched[w]) layer.push_back(Op{OpKind::idle, w});
    }
    c_.validate();
    return std::move(c_);
}

std::vector<Loc> live_sites(const Circuit& c, const std::vector<int8_t>& guard_vals) {
    auto executed = [&](const Op& op) {
        if (op.group < 0) return true;
        if (size_t(op.group) >= guard_vals.size() || guard_vals[op.group] < 0) return false;
        return guard_vals[op.group] != 0;
    };
    std::vector<Loc> out;
    for (uint32_t li = 0; li < c.layers.size(); ++li) {
        bool live_layer = false;
        for (const Op& op : c.layers[li])
            if (op.kind != OpKind::idle && executed(op)) {
                live_layer = true;
                break;
            }
        if (!live_layer) continue;
        for (uint32_t oi = 0; oi < c.layers[li].size(); ++oi) {
            const Op& op = c.layers[li][oi];
            if (op.kind == OpKind::idle || executed(op)) out.push_back(Loc{li, oi});
        }
    }
    return out;
}

std::vector<Fault> fault_alphabet(const Circuit& c, Loc l) {
    const Op& op = c.at(l);
    std::vector<Fault> out;
    if (is_meas(op.kind)) {
        out.push_back(Fault{l, 1, 0, 0, 0}); // record flip
        return out;
    }
    if (is_two_qubit(op.kind)) {
        for (int m = 1; m < 16; ++m)
            out.push_back(Fault{l, uint8_t(m & 1), uint8_t((m >> 1) & 1), uint8_t((m >> 2) & 1),
                                uint8_t((m >> 3) & 1)});
        return out;
    }
    out.push_back(Fault{l, 1, 0, 0, 0}); // X
    out.push_back(Fault{l, 1, 1, 0, 0}); // Y
    out.push_back(Fault{l, 0, 1, 0, 0}); // Z
    return out;
}

} // namespace ftqlab
