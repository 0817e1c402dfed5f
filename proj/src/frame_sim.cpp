#include <algorithm>
#include <optional>
#include <stdexcept>

#include "ftqlab/sim.hpp"

namespace ftqlab {

namespace {

struct LazyCtx {
    const Circuit* c;
    const std::vector<uint8_t>* rec;
    std::vector<int8_t>* gval;
    std::vector<std::optional<std::vector<uint8_t>>> cval;

    bool guard(int32_t g) {
        int8_t& v = (*gval)[g];
        if (v < 0) v = c->guards[g](*rec) ? 1 : 0;
        return v != 0;
    }
    uint8_t ctrl_bit(int32_t id, uint32_t bit) {
        auto& slot = cval[id];
        if (!slot) slot = c->ctrls[id](*rec);
        if (bit >= slot->size())
            throw std::logic_error("controller output too short");
        return (*slot)[bit];
    }
};

} // namespace

FrameResult run_frame(const Circuit& c, const std::vector<Fault>& faults, const BitRow* init_fx,
                      const BitRow* init_fz) {
    FrameResult res;
    size_t w = words_for(c.n_wires);
    res.fx = init_fx ? *init_fx : BitRow(w, 0);
    res.fz = init_fz ? *init_fz : BitRow(w, 0);
    if (res.fx.size() != w || res.fz.size() != w)
        throw std::invalid_argument("run_frame: init frame has wrong width");
    res.rec.assign(c.n_records, 0);
    res.guards.assign(c.guards.size(), -1);

    std::vector<Fault> fs = faults;
    for (const Fault& f : fs)
        if (f.loc.layer >= c.layers.size() || f.loc.idx >= c.layers[f.loc.layer].size())
            throw std::invalid_argument("run_frame: fault at foreign location");
    std::sort(fs.begin(), fs.end(),
              [](const Fault& a, const Fault& b) { return a.loc < b.loc; });
    size_t fi = 0;

    LazyCtx ctx{&c, &res.rec, &res.guards, {}};
    ctx.cval.resize(c.ctrls.size());

    for (uint32_t li = 0; li < c.layers.size(); ++li) {
        const auto& layer = c.layers[li];
        for (uint32_t oi = 0; oi < layer.size(); ++oi) {
            const Op& op = layer[oi];
            bool exec = op.kind == OpKind::idle || op.group < 0 || ctx.guard(op.group);
            if (exec && op.kind != OpKind::idle) ++res.executed_ops;
            if (exec) {
                uint32_t q = op.q0;
                switch (op.kind) {
                case OpKind::idle:
                case OpKind::x:
                case OpKind::z:
                    break;
                case OpKind::prep_z:
                case OpKind::prep_x:
                    set_bit(res.fx, q, false);
                    set_bit(res.fz, q, false);
                    break;
                case OpKind::h: {
                    bool t = get_bit(res.fx, q);
                    set_bit(res.fx, q, get_bit(res.fz, q));
                    set_bit(res.fz, q, t);
                    break;
                }
                case OpKind::s:
                    if (get_bit(res.fx, q)) flip_bit(res.fz, q);
                    break;
                case OpKind::cnot:
                    if (get_bit(res.fx, q)) flip_bit(res.fx, op.q1);
                    if (get_bit(res.fz, op.q1)) flip_bit(res.fz, q);
                    break;
                case OpKind::cz:
                    if (get_bit(res.fx, q)) flip_bit(res.fz, op.q1);
                    if (get_bit(res.fx, op.q1)) flip_bit(res.fz, q);
                    break;
                case OpKind::meas_z:
                    res.rec[op.rec] = get_bit(res.fx, q);
                    set_bit(res.fz, q, false);
                    break;
                case OpKind::meas_x:
                    res.rec[op.rec] = get_bit(res.fz, q);
                    set_bit(res.fx, q, false);
                    break;
                case OpKind::control:
                    if (ctx.ctrl_bit(op.ctrl, op.ctrl_bit)) {
                        if (op.px) flip_bit(res.fx, q);
                        if (op.pz) flip_bit(res.fz, q);
                    }
                    break;
                }
            }
            while (fi < fs.size() && fs[fi].loc == Loc{li, oi}) {
                const Fault& f = fs[fi++];
                if (!exec) continue;
                if (is_meas(op.kind)) {
                    res.rec[op.rec] ^= f.x0;
                } else {
                    if (f.x0) flip_bit(res.fx, op.q0);
                    if (f.z0) flip_bit(res.fz, op.q0);
                    if (is_two_qubit(op.kind)) {
                        if (f.x1) flip_bit(res.fx, op.q1);
                        if (f.z1) flip_bit(res.fz, op.q1);
                    }
                }
            }
        }
    }
    return res;
}

} // namespace ftqlab
