#include "ftqlab/conjugate.hpp"

#include <stdexcept>

namespace ftqlab {

void conjugate_op(PauliOp& p, const Op& op, bool forward) {
    uint32_t a = op.q0, b = op.q1;
    switch (op.kind) {
    case OpKind::idle:
        return;
    case OpKind::x:
        if (p.z_at(a)) p.phase = (p.phase + 2) & 3;
        return;
    case OpKind::z:
        if (p.x_at(a)) p.phase = (p.phase + 2) & 3;
        return;
    case OpKind::h: {
        bool xa = p.x_at(a), za = p.z_at(a);
        if (xa && za) p.phase = (p.phase + 2) & 3;
        p.set_x(a, za);
        p.set_z(a, xa);
        return;
    }
    case OpKind::s:
        // S X S^-1 = i XZ, so X^x Z^z picks up i^x; S^-1 gives (-i)^x.
        if (p.x_at(a)) {
            p.phase = (p.phase + (forward ? 1 : 3)) & 3;
            p.set_z(a, !p.z_at(a));
        }
        return;
    case OpKind::cnot:
        if (p.x_at(a)) p.set_x(b, !p.x_at(b));
        if (p.z_at(b)) p.set_z(a, !p.z_at(a));
        return;
    case OpKind::cz:
        // Reordering Z_b past X_b costs a sign when both x bits are set.
        if (p.x_at(a) && p.x_at(b)) p.phase = (p.phase + 2) & 3;
        if (p.x_at(a)) p.set_z(b, !p.z_at(b));
        if (p.x_at(b)) p.set_z(a, !p.z_at(a));
        return;
    default:
        throw std::logic_error("conjugate_op: non-unitary op");
    }
}

PauliOp conjugate_through(PauliOp p, const std::vector<std::vector<Op>>& layers,
                          bool forward) {
    if (forward) {
        for (const auto& layer : layers)
            for (const Op& op : layer) conjugate_op(p, op, true);
    } else {
        for (auto it = layers.rbegin(); it != layers.rend(); ++it)
            for (const Op& op : *it) conjugate_op(p, op, false);
    }
    return p;
}

} // namespace ftqlab
