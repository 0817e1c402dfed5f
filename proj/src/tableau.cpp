#include <algorithm>
#include <optional>
#include <stdexcept>

#include "ftqlab/sim.hpp"

namespace ftqlab {

namespace {

// i-exponent contributed by multiplying single-qubit Hermitian letters
// (x1,z1)*(x2,z2), Aaronson-Gottesman g function
int g_phase(int x1, int z1, int x2, int z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return z2 - x2;
    if (x1) return z2 * (2 * x2 - 1);
    return x2 * (1 - 2 * z2);
}

} // namespace

Tableau Tableau::zeros(uint32_t n_) {
    Tableau t;
    t.n = n_;
    size_t w = words_for(n_);
    t.x.assign(2 * n_, BitRow(w, 0));
    t.z.assign(2 * n_, BitRow(w, 0));
    t.r.assign(2 * n_, 0);
    for (uint32_t i = 0; i < n_; ++i) {
        set_bit(t.x[i], i, true);         // destabilizer X_i
        set_bit(t.z[n_ + i], i, true);    // stabilizer Z_i
    }
    return t;
}

void Tableau::apply_h(uint32_t q) {
    for (uint32_t i = 0; i < 2 * n; ++i) {
        bool xb = get_bit(x[i], q), zb = get_bit(z[i], q);
        r[i] ^= uint8_t(xb && zb);
        set_bit(x[i], q, zb);
        set_bit(z[i], q, xb);
    }
}

void Tableau::apply_s(uint32_t q) {
    for (uint32_t i = 0; i < 2 * n; ++i) {
        bool xb = get_bit(x[i], q), zb = get_bit(z[i], q);
        r[i] ^= uint8_t(xb && zb);
        if (xb) flip_bit(z[i], q);
    }
}

void Tableau::apply_cnot(uint32_t c, uint32_t t) {
    for (uint32_t i = 0; i < 2 * n; ++i) {
        bool xc = get_bit(x[i], c), zc = get_bit(z[i], c);
        bool xt = get_bit(x[i], t), zt = get_bit(z[i], t);
        r[i] ^= uint8_t(xc && zt && (xt == zc));
        if (xc) flip_bit(x[i], t);
        if (zt) flip_bit(z[i], c);
    }
}

void Tableau::apply_cz(uint32_t a, uint32_t b) {
    apply_h(b);
    apply_cnot(a, b);
    apply_h(b);
}

void Tableau::apply_x(uint32_t q) {
    for (uint32_t i = 0; i < 2 * n; ++i) r[i] ^= uint8_t(get_bit(z[i], q));
}

void Tableau::apply_z(uint32_t q) {
    for (uint32_t i = 0; i < 2 * n; ++i) r[i] ^= uint8_t(get_bit(x[i], q));
}

void Tableau::apply_pauli(const PauliOp& p) {
    for (uint32_t q = 0; q < p.n; ++q) {
        if (get_bit(p.x, q)) apply_x(q);
        if (get_bit(p.z, q)) apply_z(q);
    }
}

void Tableau::rowsum(uint32_t h, uint32_t i) {
    int ph = 2 * r[h] + 2 * r[i];
    for (uint32_t q = 0; q < n; ++q)
        ph += g_phase(get_bit(x[i], q), get_bit(z[i], q), get_bit(x[h], q), get_bit(z[h], q));
    ph &= 3;
    if (ph != 0 && ph != 2) throw std::logic_error("rowsum: odd phase");
    r[h] = uint8_t(ph == 2);
    row_xor(x[h], x[i]);
    row_xor(z[h], z[i]);
}

uint8_t Tableau::measure_z(uint32_t q, RngStream& rng) {
    uint32_t p = 2 * n;
    for (uint32_t i = n; i < 2 * n; ++i)
        if (get_bit(x[i], q)) { p = i; break; }
    if (p < 2 * n) {
        // random outcome; the destabilizer paired to p is overwritten below,
        // never rowsummed (its product with p would anticommute)
        for (uint32_t i = 0; i < 2 * n; ++i)
            if (i != p && i != p - n && get_bit(x[i], q)) rowsum(i, p);
        x[p - n] = x[p];
        z[p - n] = z[p];
        r[p - n] = r[p];
        std::fill(x[p].begin(), x[p].end(), 0);
        std::fill(z[p].begin(), z[p].end(), 0);
        set_bit(z[p], q, true);
        uint8_t m = uint8_t(rng.below(2));
        r[p] = m;
        return m;
    }
    // deterministic: accumulate stabilizer rows paired to anticommuting
    // destabilizers into a scratch row
    BitRow sx(words_for(n), 0), sz(words_for(n), 0);
    int ph = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (!get_bit(x[i], q)) continue;
        ph += 2 * r[n + i];
        for (uint32_t qq = 0; qq < n; ++qq)
            ph += g_phase(get_bit(x[n + i], qq), get_bit(z[n + i], qq), get_bit(sx, qq),
                          get_bit(sz, qq));
        row_xor(sx, x[n + i]);
        row_xor(sz, z[n + i]);
    }
    ph &= 3;
    if (ph != 0 && ph != 2) throw std::logic_error("measure_z: odd phase");
    return uint8_t(ph == 2);
}

void Tableau::prep_z(uint32_t q, RngStream& rng) {
    if (measure_z(q, rng)) apply_x(q);
}

void Tableau::prep_x(uint32_t q, RngStream& rng) {
    prep_z(q, rng);
    apply_h(q);
}

int Tableau::expectation(const PauliOp& p) const {
    if (p.n != n) throw std::invalid_argument("Tableau::expectation: size mismatch");
    for (uint32_t i = n; i < 2 * n; ++i) {
        uint32_t anti = row_and_parity(x[i], p.z) ^ row_and_parity(z[i], p.x);
        if (anti) return 0;
    }
    // p = +- product of stabilizer rows paired to anticommuting destabilizers
    BitRow sx(words_for(n), 0), sz(words_for(n), 0);
    int ph = 0;
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t anti = row_and_parity(x[i], p.z) ^ row_and_parity(z[i], p.x);
        if (!anti) continue;
        ph += 2 * r[n + i];
        for (uint32_t qq = 0; qq < n; ++qq)
            ph += g_phase(get_bit(x[n + i], qq), get_bit(z[n + i], qq), get_bit(sx, qq),
                          get_bit(sz, qq));
        row_xor(sx, x[n + i]);
        row_xor(sz, z[n + i]);
    }
    if (sx != p.x || sz != p.z)
        throw std::logic_error("Tableau::expectation: reconstruction mismatch");
    // the g arithmetic works in the Y-counts-as-+Y convention, so ph is
    // already the sign exponent of the product relative to the Hermitian
    // operator with p's masks
    int d = ph & 3;
    if (d != 0 && d != 2) throw std::logic_error("Tableau::expectation: odd phase");
    return d == 0 ? 1 : -1;
}

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

TableauResult run_tableau(const Circuit& c, const std::vector<Fault>& faults, RngStream& rng,
                          const Tableau* init) {
    TableauResult res;
    res.state = init ? *init : Tableau::zeros(c.n_wires);
    if (res.state.n != c.n_wires)
        throw std::invalid_argument("run_tableau: init state has wrong width");
    res.rec.assign(c.n_records, 0);
    res.guards.assign(c.guards.size(), -1);

    std::vector<Fault> fs = faults;
    for (const Fault& f : fs)
        if (f.loc.layer >= c.layers.size() || f.loc.idx >= c.layers[f.loc.layer].size())
            throw std::invalid_argument("run_tableau: fault at foreign location");
    std::sort(fs.begin(), fs.end(),
              [](const Fault& a, const Fault& b) { return a.loc < b.loc; });
    size_t fi = 0;

    LazyCtx ctx{&c, &res.rec, &res.guards, {}};
    ctx.cval.resize(c.ctrls.size());
    Tableau& st = res.state;

    for (uint32_t li = 0; li < c.layers.size(); ++li) {
        const auto& layer = c.layers[li];
        for (uint32_t oi = 0; oi < layer.size(); ++oi) {
            const Op& op = layer[oi];
            bool exec = op.kind == OpKind::idle || op.group < 0 || ctx.guard(op.group);
            if (exec && op.kind != OpKind::idle) ++res.executed_ops;
            if (exec) {
                switch (op.kind) {
                case OpKind::idle: break;
                case OpKind::prep_z: st.prep_z(op.q0, rng); break;
                case OpKind::prep_x: st.prep_x(op.q0, rng); break;
                case OpKind::x: st.apply_x(op.q0); break;
                case OpKind::z: st.apply_z(op.q0); break;
                case OpKind::h: st.apply_h(op.q0); break;
                case OpKind::s: st.apply_s(op.q0); break;
                case OpKind::cnot: st.apply_cnot(op.q0, op.q1); break;
                case OpKind::cz: st.apply_cz(op.q0, op.q1); break;
                case OpKind::meas_z: res.rec[op.rec] = st.measure_z(op.q0, rng); break;
                case OpKind::meas_x:
                    st.apply_h(op.q0);
                    res.rec[op.rec] = st.measure_z(op.q0, rng);
                    st.apply_h(op.q0);
                    break;
                case OpKind::control:
                    if (ctx.ctrl_bit(op.ctrl, op.ctrl_bit)) {
                        if (op.px) st.apply_x(op.q0);
                        if (op.pz) st.apply_z(op.q0);
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
                    if (f.x0) st.apply_x(op.q0);
                    if (f.z0) st.apply_z(op.q0);
                    if (is_two_qubit(op.kind)) {
                        if (f.x1) st.apply_x(op.q1);
                        if (f.z1) st.apply_z(op.q1);
                    }
                }
            }
        }
    }
    return res;
}

} // namespace ftqlab
