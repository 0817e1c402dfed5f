#include "ftqlab/rec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <thread>

#include "ftqlab/rng.hpp"
#include "ftqlab/sim.hpp"

namespace ftqlab {

namespace {

uint64_t word0(const BitRow& r) { return r.empty() ? 0 : r[0]; }

uint32_t mask_weight(uint64_t m) { return uint32_t(__builtin_popcountll(m)); }

uint8_t par(uint64_t m) { return uint8_t(__builtin_parityll(m)); }

size_t non_idle_count(const Circuit& c) {
    size_t k = 0;
    for (const auto& layer : c.layers)
        for (const Op& op : layer)
            if (op.kind != OpKind::idle) ++k;
    return k;
}

// Row masks for the closed-form verdicts. on_x rows are the checks whose
// parity detects the x part of an error (the Z-type generators) in the
// packing order of LookupDecoder's x sector; on_z the mirror.
struct SectorView {
    std::vector<uint64_t> on_x, on_z;
    uint64_t xbar = 0, zbar = 0;
};

SectorView make_view(const CssCode& code) {
    SectorView v;
    for (const auto& r : code.h_z) v.on_x.push_back(word0(r));
    for (const auto& r : code.h_x) v.on_z.push_back(word0(r));
    v.xbar = word0(code.logical_x[0].x);
    v.zbar = word0(code.logical_z[0].z);
    return v;
}

uint64_t synd_of_x(const SectorView& v, uint64_t xpart) {
    uint64_t s = 0;
    for (size_t j = 0; j < v.on_x.size(); ++j)
        s |= uint64_t(par(v.on_x[j] & xpart)) << j;
    return s;
}

uint64_t synd_of_z(const SectorView& v, uint64_t zpart) {
    uint64_t s = 0;
    for (size_t j = 0; j < v.on_z.size(); ++j)
        s |= uint64_t(par(v.on_z[j] & zpart)) << j;
    return s;
}

// Input deviations checked by check_correctness: identity plus every
// single-qubit Pauli of the block.
struct PanelEntry {
    uint64_t ex = 0, ez = 0;
    uint64_t scx = 0, scz = 0; // sector syndromes of the deviation
    std::string label = "I";
};

// panels[s] enumerates every input deviation of weight <= s. A path that
// already spends r of the block's fault budget leaves t - r for the input,
// so the verdict picks the panel matching the path (capped at weight 2;
// larger budgets would need cubic panels and no shipped code reaches them).
struct CheckCtx {
    SectorView v;
    std::array<std::vector<PanelEntry>, 3> panels;
    uint32_t built = 0;
};

CheckCtx make_ctx(const CssCode& code, uint32_t smax) {
    CheckCtx ctx;
    ctx.v = make_view(code);
    ctx.built = std::min<uint32_t>(smax, 2);
    ctx.panels[0].push_back({});

    std::vector<PanelEntry> singles;
    for (uint32_t q = 0; q < code.n; ++q) {
        uint64_t bit = 1ull << q;
        uint64_t sx = synd_of_x(ctx.v, bit), sz = synd_of_z(ctx.v, bit);
        singles.push_back({bit, 0, sx, 0, "X" + std::to_string(q)});
        singles.push_back({bit, bit, sx, sz, "Y" + std::to_string(q)});
        singles.push_back({0, bit, 0, sz, "Z" + std::to_string(q)});
    }
    if (ctx.built >= 1) {
        ctx.panels[1] = ctx.panels[0];
        ctx.panels[1].insert(ctx.panels[1].end(), singles.begin(), singles.end());
    }
    if (ctx.built >= 2) {
        ctx.panels[2] = ctx.panels[1];
        for (uint32_t q1 = 0; q1 < code.n; ++q1) {
            for (uint32_t q2 = q1 + 1; q2 < code.n; ++q2) {
                for (uint32_t a = 0; a < 3; ++a) {
                    for (uint32_t b = 0; b < 3; ++b) {
                        const PanelEntry& p = singles[3 * q1 + a];
                        const PanelEntry& q = singles[3 * q2 + b];
                        ctx.panels[2].push_back({p.ex | q.ex, p.ez | q.ez, p.scx ^ q.scx,
                                                 p.scz ^ q.scz, p.label + q.label});
                    }
                }
            }
        }
    }
    return ctx;
}

size_t distinct_locs(const std::vector<Fault>& path) {
    std::vector<Loc> locs;
    for (const Fault& f : path) locs.push_back(f.loc);
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    return locs.size();
}

// Agreed syndrome string of one EC, split into the decoder's two sector
// words (x sector = Z-type rows, z sector = X-type rows, each packed in
// order of appearance).
void pack_agreed(const ShorEcInfo& ec, const std::vector<uint8_t>& rec, uint64_t* sx,
                 uint64_t* sz) {
    Syndrome s = ec.agreed_syndrome(rec);
    uint64_t x = 0, z = 0;
    uint32_t ix = 0, iz = 0;
    for (size_t i = 0; i < ec.rows.size(); ++i) {
        uint64_t b = s.get(i) ? 1 : 0;
        if (ec.rows[i].first == 'X') z |= b << iz++;
        else x |= b << ix++;
    }
    *sx = x;
    *sz = z;
}

uint64_t gather_bits(const BitRow& row, const std::vector<uint32_t>& wires) {
    uint64_t m = 0;
    for (size_t i = 0; i < wires.size(); ++i)
        m |= uint64_t(get_bit(row, wires[i])) << i;
    return m;
}

uint64_t gather_recs(const std::vector<uint8_t>& rec, const std::vector<int32_t>& slots) {
    uint64_t m = 0;
    for (size_t i = 0; i < slots.size(); ++i)
        m |= uint64_t(rec[slots[i]] & 1) << i;
    return m;
}

// true when the residual decodes to trivial logical action; for measZ only
// the x part (outcome flips) is physical.
bool masks_ok(const Rec& rec, const SectorView& v, BlockMasks m, bool meas_only_x) {
    uint64_t cx = rec.dec->x_error_for(synd_of_x(v, m.x));
    if (par((m.x ^ cx) & v.zbar)) return false;
    if (meas_only_x) return true;
    uint64_t cz = rec.dec->z_error_for(synd_of_z(v, m.z));
    return par((m.z ^ cz) & v.xbar) == 0;
}

// Per-block tables for one fault path: the post-correction deviation each
// panel entry induces at the block's EC exit. With the path fixed the EC's
// control flow is input-independent (verification never touches data, and
// a static input deviation shifts every round string by the same syndrome,
// so string agreement is unchanged); only the applied correction moves,
// from D(f) to D(f ^ synd(input)). The zero-input frame run therefore
// determines everything, and the entry's cut deviation is
//   input ^ D(f) ^ D(f ^ synd(input)).
struct BlockEval {
    uint64_t f0x = 0, f0z = 0; // zero-input final frame (measZ: outcome flips)
    std::vector<uint64_t> dx, dz;
};

BlockEval eval_block(const Rec& rec, const std::vector<PanelEntry>& panel, const FrameResult& fr,
                     size_t b) {
    const ShorEcInfo& ec = rec.ecs[b];
    uint64_t frx, frz;
    pack_agreed(ec, fr.rec, &frx, &frz);
    uint64_t dx0 = rec.dec->x_error_for(frx);
    uint64_t dz0 = rec.dec->z_error_for(frz);

    BlockEval e;
    if (rec.gate == GateKind::meas_z) {
        e.f0x = gather_recs(fr.rec, rec.meas_recs);
    } else {
        e.f0x = gather_bits(fr.fx, rec.blocks[b]);
        e.f0z = gather_bits(fr.fz, rec.blocks[b]);
    }
    e.dx.reserve(panel.size());
    e.dz.reserve(panel.size());
    for (const PanelEntry& pe : panel) {
        e.dx.push_back(pe.ex ^ dx0 ^ rec.dec->x_error_for(frx ^ pe.scx));
        e.dz.push_back(pe.ez ^ dz0 ^ rec.dec->z_error_for(frz ^ pe.scz));
    }
    return e;
}

void path_bounds(const Circuit& c, const std::vector<Fault>& path) {
    for (const Fault& f : path)
        if (f.loc.layer >= c.layers.size() || f.loc.idx >= c.layers[f.loc.layer].size())
            throw std::invalid_argument("fault path: foreign location");
}

void fill_rounds(const Rec& rec, const std::vector<uint8_t>& recbits, CorrectnessReport* rep) {
    if (!rep) return;
    for (const ShorEcInfo& ec : rec.ecs) {
        rep->rounds_used = std::max(rep->rounds_used, ec.agreed_round(recbits) + 1);
        rep->ec_exhausted = rep->ec_exhausted || ec.exhausted(recbits);
    }
}

bool fail_with(CorrectnessReport* rep, std::string detail) {
    if (rep) {
        rep->ok = false;
        rep->detail = std::move(detail);
    }
    return false;
}

// prep0 verdict runs on the tableau engine: the raw |0>^n input is not a
// codeword, the generator measurements are genuinely random, and the
// correction is a nonlinear function of them. The output is always
// (Pauli) * logical-zero, so generator signs give the residual syndrome
// branch-independently; the corrected logical Z sign decides.
bool check_prep(const Rec& rec, const std::vector<Fault>& path, uint64_t seed,
                CorrectnessReport* rep, const SectorView& v) {
    RngStream rng = make_stream(seed, 0);
    TableauResult tr = run_tableau(rec.circuit, path, rng);
    fill_rounds(rec, tr.rec, rep);

    uint32_t nw = rec.circuit.n_wires;
    uint64_t sx = 0, sz = 0;
    uint32_t ix = 0, iz = 0;
    for (const auto& row : rec.ecs[0].rows) {
        PauliOp g = PauliOp::identity(nw);
        uint64_t m = word0(row.second);
        for (uint32_t q = 0; q < rec.code.n; ++q) {
            if (!((m >> q) & 1)) continue;
            if (row.first == 'X') g.set_x(q, true);
            else g.set_z(q, true);
        }
        int e = tr.state.expectation(g);
        if (e == 0) return fail_with(rep, "prep0 output not stabilized by a generator");
        uint64_t b = e < 0 ? 1 : 0;
        if (row.first == 'X') sz |= b << iz++;
        else sx |= b << ix++;
    }
    uint64_t cx = rec.dec->x_error_for(sx);

    PauliOp zb = PauliOp::identity(nw);
    for (uint32_t q = 0; q < rec.code.n; ++q)
        if ((v.zbar >> q) & 1) zb.set_z(q, true);
    int ez = tr.state.expectation(zb);
    if (ez == 0) return fail_with(rep, "prep0 output does not fix the logical Z");
    int want = par(cx & v.zbar) ? -1 : 1;
    if (ez != want) return fail_with(rep, "prep0 residual flips the logical zero");
    return true;
}

bool check_frame(const Rec& rec, const std::vector<Fault>& path, CorrectnessReport* rep,
                 const CheckCtx& ctx, const std::vector<PanelEntry>& panel) {
    FrameResult fr = run_frame(rec.circuit, path);
    fill_rounds(rec, fr.rec, rep);

    if (rec.gate == GateKind::cnot) {
        BlockEval e0 = eval_block(rec, panel, fr, 0);
        BlockEval e1 = eval_block(rec, panel, fr, 1);
        size_t np = panel.size();
        for (size_t a = 0; a < np; ++a) {
            for (size_t b = 0; b < np; ++b) {
                // transversal CNOT pushes control-x onto the target and
                // target-z onto the control
                BlockMasks m0{e0.f0x ^ e0.dx[a], e0.f0z ^ e0.dz[a] ^ e1.dz[b]};
                BlockMasks m1{e1.f0x ^ e1.dx[b] ^ e0.dx[a], e1.f0z ^ e1.dz[b]};
                if (!masks_ok(rec, ctx.v, m0, false) || !masks_ok(rec, ctx.v, m1, false))
                    return fail_with(rep, "in=" + panel[a].label + "," + panel[b].label);
            }
        }
        return true;
    }

    bool meas = rec.gate == GateKind::meas_z;
    BlockEval e0 = eval_block(rec, panel, fr, 0);
    for (size_t a = 0; a < panel.size(); ++a) {
        BlockMasks m{e0.f0x ^ e0.dx[a], meas ? 0 : e0.f0z ^ e0.dz[a]};
        if (!masks_ok(rec, ctx.v, m, meas))
            return fail_with(rep, "in=" + panel[a].label);
    }
    return true;
}

bool check_impl(const Rec& rec, const std::vector<Fault>& path, uint64_t seed,
                CorrectnessReport* rep, const CheckCtx& ctx) {
    if (rec.level != 1)
        throw std::invalid_argument("check_correctness: level-2 blocks are counting objects only");
    path_bounds(rec.circuit, path);
    if (rep) *rep = CorrectnessReport{};
    size_t r = distinct_locs(path);
    uint32_t s = rec.t > r ? uint32_t(rec.t - r) : 0;
    s = std::min(s, ctx.built);
    bool ok = rec.gate == GateKind::prep_z
                  ? check_prep(rec, path, seed, rep, ctx.v)
                  : check_frame(rec, path, rep, ctx, ctx.panels[s]);
    if (rep) rep->ok = ok;
    return ok;
}

} // namespace

const char* gate_name(GateKind g) {
    switch (g) {
    case GateKind::i: return "I";
    case GateKind::x: return "X";
    case GateKind::z: return "Z";
    case GateKind::cnot: return "CNOT";
    case GateKind::prep_z: return "prep0";
    case GateKind::meas_z: return "measZ";
    }
    return "?";
}

GateKind parse_gate(const std::string& s) {
    std::string t;
    for (char c : s) t += char(std::tolower(uint8_t(c)));
    if (t == "i" || t == "id") return GateKind::i;
    if (t == "x") return GateKind::x;
    if (t == "z") return GateKind::z;
    if (t == "cnot" || t == "cx") return GateKind::cnot;
    if (t == "prep0" || t == "prep" || t == "prep_z") return GateKind::prep_z;
    if (t == "measz" || t == "meas_z" || t == "measure_z" || t == "mz") return GateKind::meas_z;
    if (t == "h" || t == "s")
        throw std::invalid_argument("parse_gate: no transversal realization for " + s +
                                    " on the shipped codes");
    throw std::invalid_argument("parse_gate: unknown gate " + s);
}

size_t Rec::size() const {
    if (level == 2) {
        uint64_t total = 0;
        for (uint64_t s : sub_sizes) total += s;
        return size_t(total);
    }
    return non_idle_count(circuit);
}

Rec build_rec(GateKind g, const CssCode& code, uint32_t level) {
    if (level < 1 || level > 2)
        throw std::invalid_argument("build_rec: level must be 1 or 2");
    if (code.k != 1)
        throw std::invalid_argument("build_rec: blocks carry one logical qubit");
    if (code.n > 63)
        throw std::invalid_argument("build_rec: code too wide for packed masks");

    Rec r;
    r.gate = g;
    r.level = 1;
    r.code = code;
    uint32_t d = code.distance();
    if (d < 3) throw std::invalid_argument("build_rec: code distance below 3");
    r.t = (d - 1) / 2;
    r.dec = std::make_shared<LookupDecoder>(code);

    auto rows = generator_rows(code);
    uint32_t wmax = 0;
    for (const auto& row : rows) wmax = std::max(wmax, mask_weight(word0(row.second)));
    uint32_t n = code.n;
    uint32_t nblocks = g == GateKind::cnot ? 2 : 1;
    r.q_in = g == GateKind::prep_z ? 0 : nblocks;
    r.q_out = g == GateKind::meas_z ? 0 : nblocks;

    uint32_t pool = 2 * wmax - 1;
    CircuitBuilder b(nblocks * (n + pool));
    std::vector<std::vector<uint32_t>> cats(nblocks), vers(nblocks);
    for (uint32_t bi = 0; bi < nblocks; ++bi) {
        std::vector<uint32_t> data(n);
        for (uint32_t q = 0; q < n; ++q) data[q] = bi * n + q;
        r.blocks.push_back(data);
        uint32_t base = nblocks * n + bi * pool;
        for (uint32_t q = 0; q < wmax; ++q) cats[bi].push_back(base + q);
        for (uint32_t q = 0; q + 1 < wmax; ++q) vers[bi].push_back(base + wmax + q);
    }

    if (g == GateKind::prep_z) {
        std::vector<Op> prep;
        for (uint32_t q = 0; q < n; ++q) prep.push_back(Op{OpKind::prep_z, q});
        r.gate_layers.push_back(b.add_layer(std::move(prep)));
        r.ecs.push_back(build_shor_ec(b, 1, r.blocks[0], rows, r.t, r.dec, cats[0], vers[0]));
    } else {
        for (uint32_t bi = 0; bi < nblocks; ++bi)
            r.ecs.push_back(build_shor_ec(b, 0, r.blocks[bi], rows, r.t, r.dec, cats[bi], vers[bi]));
        uint32_t at = b.next_layer();
        switch (g) {
        case GateKind::i:
            break;
        case GateKind::x: {
            std::vector<Op> ops;
            uint64_t supp = word0(code.logical_x[0].x);
            for (uint32_t q = 0; q < n; ++q)
                if ((supp >> q) & 1) ops.push_back(Op{OpKind::x, q});
            r.gate_layers.push_back(b.add_layer(std::move(ops)));
            break;
        }
        case GateKind::z: {
            std::vector<Op> ops;
            uint64_t supp = word0(code.logical_z[0].z);
            for (uint32_t q = 0; q < n; ++q)
                if ((supp >> q) & 1) ops.push_back(Op{OpKind::z, q});
            r.gate_layers.push_back(b.add_layer(std::move(ops)));
            break;
        }
        case GateKind::cnot: {
            std::vector<Op> ops;
            for (uint32_t q = 0; q < n; ++q) ops.push_back(Op{OpKind::cnot, q, n + q});
            r.gate_layers.push_back(b.add_layer(std::move(ops)));
            break;
        }
        case GateKind::meas_z: {
            std::vector<Op> ops;
            for (uint32_t q = 0; q < n; ++q) {
                int32_t slot = b.new_record();
                r.meas_recs.push_back(slot);
                ops.push_back(Op{OpKind::meas_z, q, 0, slot});
            }
            r.gate_layers.push_back(b.add_layer(std::move(ops)));
            break;
        }
        default:
            break;
        }
    }
    r.circuit = b.take();

    if (level == 2) {
        r.level = 2;
        uint64_t ec1;
        if (g == GateKind::i) {
            ec1 = non_idle_count(r.circuit);
        } else {
            CircuitBuilder tb(n + pool);
            std::vector<uint32_t> data(n), cat, ver;
            for (uint32_t q = 0; q < n; ++q) data[q] = q;
            for (uint32_t q = 0; q < wmax; ++q) cat.push_back(n + q);
            for (uint32_t q = 0; q + 1 < wmax; ++q) ver.push_back(n + wmax + q);
            build_shor_ec(tb, 0, data, rows, r.t, r.dec, cat, ver);
            ec1 = non_idle_count(tb.take());
        }
        uint64_t wx = mask_weight(word0(code.logical_x[0].x));
        uint64_t wz = mask_weight(word0(code.logical_z[0].z));
        for (const auto& layer : r.circuit.layers) {
            for (const Op& op : layer) {
                switch (op.kind) {
                case OpKind::idle:
                    break;
                case OpKind::x:
                    r.sub_sizes.push_back(ec1 + wx);
                    break;
                case OpKind::z:
                    r.sub_sizes.push_back(ec1 + wz);
                    break;
                case OpKind::cnot:
                case OpKind::cz:
                    r.sub_sizes.push_back(2 * ec1 + n);
                    break;
                case OpKind::control:
                    r.sub_sizes.push_back(1);
                    break;
                default: // h, s, preps, meas: one block in, one layer of n
                    r.sub_sizes.push_back(ec1 + n);
                    break;
                }
            }
        }
    }
    return r;
}

bool classify_fault_path(const Rec& rec, const std::vector<Fault>& path) {
    if (rec.level != 1)
        throw std::invalid_argument("classify_fault_path: level-1 paths address (layer, idx); "
                                    "use classify_fault_path2");
    path_bounds(rec.circuit, path);
    std::vector<Loc> locs;
    for (const Fault& f : path) locs.push_back(f.loc);
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    return locs.size() <= 1;
}

bool classify_fault_path2(const Rec& rec, const std::vector<Loc2>& path) {
    if (rec.level != 2)
        throw std::invalid_argument("classify_fault_path2: needs a level-2 block");
    std::vector<std::pair<uint32_t, uint64_t>> locs;
    for (const Loc2& l : path) {
        if (l.sub >= rec.sub_sizes.size() || l.idx >= rec.sub_sizes[l.sub])
            throw std::invalid_argument("classify_fault_path2: foreign location");
        locs.emplace_back(l.sub, l.idx);
    }
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    uint32_t bad = 0;
    for (size_t i = 0; i < locs.size();) {
        size_t j = i;
        while (j < locs.size() && locs[j].first == locs[i].first) ++j;
        if (j - i >= 2) ++bad;
        i = j;
    }
    return bad <= 1;
}

uint8_t decode_logical_meas(const Rec& rec, const std::vector<uint8_t>& rec_bits) {
    if (rec.gate != GateKind::meas_z)
        throw std::invalid_argument("decode_logical_meas: not a measZ block");
    if (rec_bits.size() != rec.circuit.n_records)
        throw std::invalid_argument("decode_logical_meas: record array size mismatch");
    SectorView v = make_view(rec.code);
    uint64_t m = gather_recs(rec_bits, rec.meas_recs);
    uint64_t corr = rec.dec->x_error_for(synd_of_x(v, m));
    return par((m ^ corr) & v.zbar);
}

std::vector<BlockMasks> residual_deviation(const Rec& rec, const std::vector<Fault>& path,
                                           const std::vector<BlockMasks>& input_dev) {
    if (rec.level != 1)
        throw std::invalid_argument("residual_deviation: level-1 blocks only");
    if (rec.gate == GateKind::prep_z)
        throw std::invalid_argument("residual_deviation: prep0 needs the tableau engine");
    if (input_dev.size() != rec.q_in)
        throw std::invalid_argument("residual_deviation: one input deviation per block");
    path_bounds(rec.circuit, path);

    SectorView v = make_view(rec.code);
    FrameResult fr = run_frame(rec.circuit, path);

    std::vector<BlockMasks> out;
    for (size_t b = 0; b < rec.ecs.size(); ++b) {
        uint64_t frx, frz;
        pack_agreed(rec.ecs[b], fr.rec, &frx, &frz);
        const BlockMasks& in = input_dev[b];
        uint64_t dx = in.x ^ rec.dec->x_error_for(frx) ^
                      rec.dec->x_error_for(frx ^ synd_of_x(v, in.x));
        uint64_t dz = in.z ^ rec.dec->z_error_for(frz) ^
                      rec.dec->z_error_for(frz ^ synd_of_z(v, in.z));
        BlockMasks m;
        if (rec.gate == GateKind::meas_z) {
            m.x = gather_recs(fr.rec, rec.meas_recs) ^ dx;
        } else {
            m.x = gather_bits(fr.fx, rec.blocks[b]) ^ dx;
            m.z = gather_bits(fr.fz, rec.blocks[b]) ^ dz;
        }
        out.push_back(m);
    }
    if (rec.gate == GateKind::cnot) {
        // the cut deviations ride through the transversal CNOT layer
        uint64_t frx0, frz0, frx1, frz1;
        pack_agreed(rec.ecs[0], fr.rec, &frx0, &frz0);
        pack_agreed(rec.ecs[1], fr.rec, &frx1, &frz1);
        uint64_t d0x = input_dev[0].x ^ rec.dec->x_error_for(frx0) ^
                       rec.dec->x_error_for(frx0 ^ synd_of_x(v, input_dev[0].x));
        uint64_t d1z = input_dev[1].z ^ rec.dec->z_error_for(frz1) ^
                       rec.dec->z_error_for(frz1 ^ synd_of_z(v, input_dev[1].z));
        out[1].x ^= d0x;
        out[0].z ^= d1z;
    }
    return out;
}

bool check_correctness(const Rec& rec, const std::vector<Fault>& path, uint64_t seed,
                       CorrectnessReport* rep) {
    CheckCtx ctx = make_ctx(rec.code, rec.t);
    return check_impl(rec, path, seed, rep, ctx);
}

SweepReport sweep_single_faults(const Rec& rec, uint32_t threads, uint64_t seed) {
    if (rec.level != 1)
        throw std::invalid_argument("sweep_single_faults: level-1 blocks only");
    CheckCtx ctx = make_ctx(rec.code, rec.t - 1);

    std::vector<int8_t> base_guards;
    if (rec.gate == GateKind::prep_z) {
        RngStream rng = make_stream(seed, 0);
        base_guards = run_tableau(rec.circuit, {}, rng).guards;
    } else {
        base_guards = run_frame(rec.circuit, {}).guards;
    }
    std::vector<Loc> sites = live_sites(rec.circuit, base_guards);

    struct SiteOut {
        uint32_t jobs = 0, fails = 0, exh = 0, rounds = 0;
        std::vector<SweepFailure> w;
    };
    std::vector<SiteOut> outs(sites.size());

    uint32_t hw = std::thread::hardware_concurrency();
    uint32_t nt = threads ? threads : (hw ? hw : 1);
    nt = std::min<uint32_t>(nt, sites.empty() ? 1 : uint32_t(sites.size()));

    auto work = [&](uint32_t tid) {
        for (size_t s = tid; s < sites.size(); s += nt) {
            auto alpha = fault_alphabet(rec.circuit, sites[s]);
            SiteOut& o = outs[s];
            for (size_t a = 0; a < alpha.size(); ++a) {
                CorrectnessReport cr;
                uint64_t jseed = splitmix64(seed ^ (uint64_t(s) * 64 + a + 1));
                bool ok = check_impl(rec, {alpha[a]}, jseed, &cr, ctx);
                ++o.jobs;
                o.rounds = std::max(o.rounds, cr.rounds_used);
                if (cr.ec_exhausted) ++o.exh;
                if (!ok) {
                    ++o.fails;
                    if (o.w.size() < 4) o.w.push_back({alpha[a], cr.detail});
                }
            }
        }
    };
    if (nt <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (uint32_t tI = 0; tI < nt; ++tI) pool.emplace_back(work, tI);
        for (auto& th : pool) th.join();
    }

    SweepReport rep;
    rep.sites = sites.size();
    for (const SiteOut& o : outs) {
        rep.assignments += o.jobs;
        rep.failures += o.fails;
        rep.ec_exhaustions += o.exh;
        rep.max_rounds_used = std::max(rep.max_rounds_used, o.rounds);
        for (const SweepFailure& w : o.w)
            if (rep.witnesses.size() < 8) rep.witnesses.push_back(w);
    }
    return rep;
}

WitnessSearch search_bad_witness(const Rec& rec, uint32_t num_faults, uint64_t budget,
                                 uint64_t seed) {
    if (rec.level != 1)
        throw std::invalid_argument("search_bad_witness: level-1 blocks only");
    if (num_faults < 2 || num_faults > 4)
        throw std::invalid_argument("search_bad_witness: tuple size out of range");
    CheckCtx ctx = make_ctx(rec.code, rec.t > num_faults ? rec.t - num_faults : 0);

    std::vector<int8_t> base_guards;
    if (rec.gate == GateKind::prep_z) {
        RngStream rng = make_stream(seed, 0);
        base_guards = run_tableau(rec.circuit, {}, rng).guards;
    } else {
        base_guards = run_frame(rec.circuit, {}).guards;
    }

    uint32_t cut = rec.circuit.num_layers() ? uint32_t(rec.circuit.num_layers()) : 0;
    for (const ShorEcInfo& ec : rec.ecs) cut = std::min(cut, ec.corr_layer_x);
    uint32_t n = rec.code.n;
    uint32_t ndata = uint32_t(rec.blocks.size()) * n;
    uint64_t lsupp = word0(rec.code.logical_x[0].x) | word0(rec.code.logical_z[0].z);

    std::vector<Loc> cands;
    for (const Loc& l : live_sites(rec.circuit, base_guards)) {
        if (l.layer < cut) continue;
        const Op& op = rec.circuit.at(l);
        if (op.kind == OpKind::idle) continue;
        if (op.q0 >= ndata && !(is_two_qubit(op.kind) && op.q1 < ndata)) continue;
        cands.push_back(l);
    }
    std::stable_sort(cands.begin(), cands.end(), [&](const Loc& a, const Loc& b) {
        auto on_logical = [&](const Loc& l) {
            uint32_t q = rec.circuit.at(l).q0 % n;
            return ((lsupp >> q) & 1) != 0;
        };
        bool la = on_logical(a), lb = on_logical(b);
        if (la != lb) return la;
        return a < b;
    });

    WitnessSearch out;
    std::vector<Fault> cur;
    std::vector<std::vector<Fault>> alphas(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) alphas[i] = fault_alphabet(rec.circuit, cands[i]);

    // depth-first over ordered site tuples, full alphabet at each site
    std::function<bool(size_t, uint32_t)> walk = [&](size_t start, uint32_t depth) -> bool {
        if (depth == num_faults) {
            ++out.tried;
            if (out.tried > budget) return true; // stop, not found
            if (!check_impl(rec, cur, splitmix64(seed ^ out.tried), nullptr, ctx)) {
                out.found = true;
                out.path = cur;
                return true;
            }
            return false;
        }
        for (size_t i = start; i + (num_faults - depth - 1) < cands.size(); ++i) {
            for (const Fault& f : alphas[i]) {
                cur.push_back(f);
                if (walk(i + 1, depth + 1)) return true;
                cur.pop_back();
            }
        }
        return false;
    };
    walk(0, 0);
    return out;
}

} // namespace ftqlab
