#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ftqlab/circuit.hpp"
#include "ftqlab/codes.hpp"
#include "ftqlab/css_code.hpp"
#include "ftqlab/decoder_lookup.hpp"
#include "ftqlab/encoders.hpp"
#include "ftqlab/rec.hpp"
#include "ftqlab/rng.hpp"
#include "ftqlab/sim.hpp"

using namespace ftqlab;

namespace {

uint64_t word0(const BitRow& r) { return r.empty() ? 0 : r[0]; }

size_t non_idle(const Circuit& c) {
    size_t k = 0;
    for (const auto& layer : c.layers)
        for (const Op& op : layer)
            if (op.kind != OpKind::idle) ++k;
    return k;
}

// all single-fault jobs over the base-live sites
std::vector<Fault> single_fault_jobs(const Circuit& c, const std::vector<int8_t>& guards,
                                     size_t stride = 1) {
    std::vector<Fault> jobs;
    auto sites = live_sites(c, guards);
    for (size_t s = 0; s < sites.size(); s += stride)
        for (const Fault& f : fault_alphabet(c, sites[s])) jobs.push_back(f);
    return jobs;
}

Loc find_rec_loc(const Circuit& c, int32_t slot) {
    for (uint32_t li = 0; li < c.layers.size(); ++li)
        for (uint32_t oi = 0; oi < c.layers[li].size(); ++oi)
            if (is_meas(c.layers[li][oi].kind) && c.layers[li][oi].rec == slot)
                return Loc{li, oi};
    FAIL("record slot has no measurement op");
    return {};
}

// Oracle side: run the frame engine with the input deviation injected as
// an initial frame, then read the residual straight off the wires.
std::vector<BlockMasks> direct_residual(const Rec& rec, const std::vector<Fault>& path,
                                        const std::vector<BlockMasks>& devs) {
    size_t W = words_for(rec.circuit.n_wires);
    BitRow ifx(W, 0), ifz(W, 0);
    for (size_t b = 0; b < devs.size(); ++b) {
        for (uint32_t q = 0; q < rec.code.n; ++q) {
            if ((devs[b].x >> q) & 1) set_bit(ifx, rec.blocks[b][q], true);
            if ((devs[b].z >> q) & 1) set_bit(ifz, rec.blocks[b][q], true);
        }
    }
    FrameResult fr = run_frame(rec.circuit, path, &ifx, &ifz);
    std::vector<BlockMasks> out;
    for (size_t b = 0; b < rec.blocks.size(); ++b) {
        BlockMasks m;
        if (rec.gate == GateKind::meas_z) {
            for (size_t i = 0; i < rec.meas_recs.size(); ++i)
                m.x |= uint64_t(fr.rec[rec.meas_recs[i]] & 1) << i;
        } else {
            for (uint32_t q = 0; q < rec.code.n; ++q) {
                m.x |= uint64_t(get_bit(fr.fx, rec.blocks[b][q])) << q;
                m.z |= uint64_t(get_bit(fr.fz, rec.blocks[b][q])) << q;
            }
        }
        out.push_back(m);
    }
    return out;
}

// Oracle verdict through the PauliOp decode path rather than packed masks.
bool residual_trivial(const CssCode& code, const LookupDecoder& dec, BlockMasks m, bool meas) {
    PauliOp e = PauliOp::identity(code.n);
    for (uint32_t q = 0; q < code.n; ++q) {
        if ((m.x >> q) & 1) e.set_x(q, true);
        if (!meas && ((m.z >> q) & 1)) e.set_z(q, true);
    }
    PauliOp res = e.times(dec.decode_repaired(code.syndrome(e)));
    std::string cls = code.logical_class(res);
    return cls == "I";
}

std::vector<BlockMasks> weight1_panel(uint32_t n) {
    std::vector<BlockMasks> p;
    p.push_back({});
    for (uint32_t q = 0; q < n; ++q) {
        uint64_t bit = 1ull << q;
        p.push_back({bit, 0});
        p.push_back({bit, bit});
        p.push_back({0, bit});
    }
    return p;
}

PauliOp on_block(const Rec& rec, uint32_t bi, const PauliOp& p) {
    PauliOp q = PauliOp::identity(rec.circuit.n_wires);
    for (uint32_t j = 0; j < rec.code.n; ++j) {
        if (p.x_at(j)) q.set_x(bi * rec.code.n + j, true);
        if (p.z_at(j)) q.set_z(bi * rec.code.n + j, true);
    }
    return q;
}

PauliOp pauli_x(uint32_t n, const BitRow& supp) {
    PauliOp p = PauliOp::identity(n);
    for (uint32_t q = 0; q < n; ++q)
        if (get_bit(supp, q)) p.set_x(q, true);
    return p;
}

PauliOp pauli_z(uint32_t n, const BitRow& supp) {
    PauliOp p = PauliOp::identity(n);
    for (uint32_t q = 0; q < n; ++q)
        if (get_bit(supp, q)) p.set_z(q, true);
    return p;
}

// twiddle: 0 keeps |0>, 1 applies X (logical one), 2 applies H (logical plus)
Tableau encoded_input(const Rec& rec, const std::vector<int>& twiddle, uint64_t seed) {
    Encoder enc = build_encoder(rec.code);
    CircuitBuilder cb(rec.circuit.n_wires);
    std::vector<Op> preps;
    for (uint32_t w = 0; w < rec.circuit.n_wires; ++w) preps.push_back(Op{OpKind::prep_z, w});
    cb.add_layer(std::move(preps));
    for (uint32_t bi = 0; bi < twiddle.size(); ++bi) {
        uint32_t wire = bi * rec.code.n + enc.data[0];
        if (twiddle[bi] == 1) cb.add_layer({Op{OpKind::x, wire}});
        if (twiddle[bi] == 2) cb.add_layer({Op{OpKind::h, wire}});
    }
    for (uint32_t bi = 0; bi < twiddle.size(); ++bi) {
        uint32_t off = bi * rec.code.n;
        for (const auto& layer : enc.layers) {
            std::vector<Op> ops;
            for (Op op : layer) {
                if (op.kind == OpKind::idle) continue;
                op.q0 += off;
                if (is_two_qubit(op.kind)) op.q1 += off;
                ops.push_back(op);
            }
            cb.add_layer(std::move(ops));
        }
    }
    Circuit c = cb.take();
    RngStream rng = make_stream(seed, 7);
    return run_tableau(c, {}, rng).state;
}

} // namespace

TEST_CASE("gate names round-trip and non-transversal requests are rejected") {
    for (GateKind g : {GateKind::i, GateKind::x, GateKind::z, GateKind::cnot, GateKind::prep_z,
                       GateKind::meas_z})
        CHECK(parse_gate(gate_name(g)) == g);
    CHECK(parse_gate("cx") == GateKind::cnot);
    CHECK(parse_gate("PREP0") == GateKind::prep_z);
    CHECK(parse_gate("measure_z") == GateKind::meas_z);
    CHECK_THROWS_AS(parse_gate("H"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gate("s"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gate("toffoli"), std::invalid_argument);
}

TEST_CASE("block sizes follow the correction backbone") {
    for (const char* name : {"bitflip3", "surface_d5"}) {
        CssCode code = build_named_code(name);
        Rec ri = build_rec(GateKind::i, code);
        size_t ec = ri.size();
        CHECK(ec > 0);
        CHECK(ri.gate_layers.empty());
        CHECK(ri.q_in == 1);
        CHECK(ri.q_out == 1);

        uint32_t n = code.n;
        uint32_t wx = uint32_t(code.logical_x[0].weight());
        uint32_t wz = uint32_t(code.logical_z[0].weight());
        CHECK(build_rec(GateKind::x, code).size() == ec + wx);
        CHECK(build_rec(GateKind::z, code).size() == ec + wz);
        CHECK(build_rec(GateKind::cnot, code).size() == 2 * ec + n);
        CHECK(build_rec(GateKind::prep_z, code).size() == ec + n);
        CHECK(build_rec(GateKind::meas_z, code).size() == ec + n);

        Rec rc = build_rec(GateKind::cnot, code);
        CHECK(rc.blocks.size() == 2);
        CHECK(rc.ecs.size() == 2);
        CHECK(rc.q_in == 2);
        Rec rp = build_rec(GateKind::prep_z, code);
        CHECK(rp.q_in == 0);
        CHECK(rp.ecs.size() == 1);
        Rec rm = build_rec(GateKind::meas_z, code);
        CHECK(rm.q_out == 0);
        CHECK(rm.meas_recs.size() == n);
    }
    CssCode b3 = build_named_code("bitflip3");
    CHECK(build_rec(GateKind::i, b3).circuit.n_wires == 6);
    CHECK(build_rec(GateKind::cnot, b3).circuit.n_wires == 12);
    CHECK(build_rec(GateKind::i, b3).t == 1);
    CssCode d5 = build_named_code("surface_d5");
    CHECK(build_rec(GateKind::i, d5).circuit.n_wires == 32);
    CHECK(build_rec(GateKind::cnot, d5).circuit.n_wires == 64);
    CHECK(build_rec(GateKind::i, d5).t == 2);

    CHECK_THROWS_AS(build_rec(GateKind::i, b3, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_rec(GateKind::i, build_named_code("toric_L3")), std::invalid_argument);
}

TEST_CASE("level-2 blocks count one substituted block per location") {
    CssCode b3 = build_named_code("bitflip3");
    Rec r1 = build_rec(GateKind::x, b3, 1);
    Rec r2 = build_rec(GateKind::x, b3, 2);
    uint64_t ec1 = build_rec(GateKind::i, b3).size();

    CHECK(r2.level == 2);
    CHECK(r2.sub_sizes.size() == r1.size());
    uint64_t total = std::accumulate(r2.sub_sizes.begin(), r2.sub_sizes.end(), uint64_t(0));
    CHECK(r2.size() == total);

    size_t controls = 0, ones = 0, pos = 0;
    bool checked_cnot = false, checked_h = false;
    for (const auto& layer : r1.circuit.layers) {
        for (const Op& op : layer) {
            if (op.kind == OpKind::idle) continue;
            if (op.kind == OpKind::control) ++controls;
            if (r2.sub_sizes[pos] == 1) ++ones;
            if (op.kind == OpKind::cnot && !checked_cnot) {
                CHECK(r2.sub_sizes[pos] == 2 * ec1 + b3.n);
                checked_cnot = true;
            }
            if (op.kind == OpKind::h && !checked_h) {
                CHECK(r2.sub_sizes[pos] == ec1 + b3.n);
                checked_h = true;
            }
            if (op.kind == OpKind::x) CHECK(r2.sub_sizes[pos] == ec1 + 3);
            ++pos;
        }
    }
    CHECK(checked_cnot);
    CHECK(checked_h);
    CHECK(controls == ones);
    CHECK(controls > 0);
}

TEST_CASE("path classification counts faulty locations") {
    CssCode b3 = build_named_code("bitflip3");
    Rec r = build_rec(GateKind::i, b3);
    Rec r2 = build_rec(GateKind::i, b3, 2);

    CHECK(classify_fault_path(r, {}));
    Fault fa{Loc{2, 0}, 1, 0, 0, 0};
    Fault fb{Loc{2, 0}, 0, 1, 0, 0};
    Fault fc{Loc{3, 1}, 1, 1, 0, 0};
    CHECK(classify_fault_path(r, {fa}));
    CHECK(classify_fault_path(r, {fa, fb})); // same location twice
    CHECK_FALSE(classify_fault_path(r, {fa, fc}));
    Fault foreign{Loc{100000, 0}, 1, 0, 0, 0};
    CHECK_THROWS_AS(classify_fault_path(r, {foreign}), std::invalid_argument);
    CHECK_THROWS_AS(classify_fault_path(r2, {fa}), std::invalid_argument);
    CHECK_THROWS_AS(classify_fault_path2(r, {Loc2{0, 0}}), std::invalid_argument);

    CHECK(classify_fault_path2(r2, {}));
    CHECK(classify_fault_path2(r2, {Loc2{0, 0}}));
    CHECK(classify_fault_path2(r2, {Loc2{0, 0}, Loc2{0, 0}}));
    // two faults inside one substituted block: one bad sub-block, still good
    CHECK(classify_fault_path2(r2, {Loc2{0, 0}, Loc2{0, 1}}));
    CHECK(classify_fault_path2(r2, {Loc2{0, 0}, Loc2{0, 1}, Loc2{1, 0}}));
    CHECK_FALSE(classify_fault_path2(r2, {Loc2{0, 0}, Loc2{0, 1}, Loc2{1, 0}, Loc2{1, 1}}));
    CHECK_THROWS_AS(classify_fault_path2(r2, {Loc2{uint32_t(r2.sub_sizes.size()), 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(classify_fault_path2(r2, {Loc2{0, r2.sub_sizes[0]}}), std::invalid_argument);
}

TEST_CASE("closed-form residuals match direct frame runs with injected deviations") {
    CssCode b3 = build_named_code("bitflip3");
    std::mt19937 mt(20250825);

    for (GateKind g : {GateKind::i, GateKind::x, GateKind::z, GateKind::cnot, GateKind::meas_z}) {
        Rec rec = build_rec(g, b3);
        FrameResult base = run_frame(rec.circuit, {});
        std::vector<Fault> jobs = single_fault_jobs(rec.circuit, base.guards);
        CHECK(jobs.size() > 200);

        // a few multi-fault paths, plus crafted record-lie pairs
        std::vector<std::vector<Fault>> paths;
        paths.push_back({});
        for (const Fault& f : jobs) paths.push_back({f});
        auto sites = live_sites(rec.circuit, base.guards);
        for (int k = 0; k < 24; ++k) {
            std::vector<Fault> p;
            size_t nf = 2 + (k % 2);
            for (size_t j = 0; j < nf; ++j) {
                Loc l = sites[mt() % sites.size()];
                auto alpha = fault_alphabet(rec.circuit, l);
                p.push_back(alpha[mt() % alpha.size()]);
            }
            paths.push_back(p);
        }
        const ShorEcInfo& ec = rec.ecs[0];
        Fault lie_r1{find_rec_loc(rec.circuit, ec.cat_recs[1][0][0]), 1, 0, 0, 0};
        Fault lie_r2_same{find_rec_loc(rec.circuit, ec.cat_recs[2][0][0]), 1, 0, 0, 0};
        Fault lie_r2_other{find_rec_loc(rec.circuit, ec.cat_recs[2][1][0]), 1, 0, 0, 0};
        paths.push_back({lie_r1, lie_r2_same});  // agree on a wrong string
        paths.push_back({lie_r1, lie_r2_other}); // no window agrees: cap exhausted

        std::vector<BlockMasks> panel = weight1_panel(b3.n);
        std::vector<BlockMasks> identity_only{panel[0]};
        size_t blocks_in = rec.q_in ? rec.q_in : 0;
        bool meas = rec.gate == GateKind::meas_z;
        for (const auto& path : paths) {
            // mask equality over the full weight-1 panel
            if (blocks_in == 2) {
                for (const BlockMasks& a : panel) {
                    for (const BlockMasks& b : panel) {
                        std::vector<BlockMasks> devs{a, b};
                        auto closed = residual_deviation(rec, path, devs);
                        auto direct = direct_residual(rec, path, devs);
                        REQUIRE(closed.size() == direct.size());
                        for (size_t i = 0; i < closed.size(); ++i) {
                            CHECK(closed[i].x == direct[i].x);
                            CHECK(closed[i].z == direct[i].z);
                        }
                    }
                }
            } else {
                for (const BlockMasks& a : panel) {
                    std::vector<BlockMasks> devs{a};
                    auto closed = residual_deviation(rec, path, devs);
                    auto direct = direct_residual(rec, path, devs);
                    REQUIRE(closed.size() == direct.size());
                    CHECK(closed[0].x == direct[0].x);
                    CHECK(closed[0].z == direct[0].z);
                }
            }

            // aggregate verdict against the independent decode, over the
            // inputs the fault budget admits: t = 1 here, so a faulted
            // path leaves only the clean input
            std::vector<Loc> locs;
            for (const Fault& f : path) locs.push_back(f.loc);
            std::sort(locs.begin(), locs.end());
            locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
            const std::vector<BlockMasks>& pol = locs.empty() ? panel : identity_only;
            bool direct_all = true;
            if (blocks_in == 2) {
                for (const BlockMasks& a : pol) {
                    for (const BlockMasks& b : pol) {
                        auto direct = direct_residual(rec, path, {a, b});
                        for (const BlockMasks& m : direct)
                            direct_all = direct_all && residual_trivial(b3, *rec.dec, m, false);
                    }
                }
            } else {
                for (const BlockMasks& a : pol) {
                    auto direct = direct_residual(rec, path, {a});
                    direct_all = direct_all && residual_trivial(b3, *rec.dec, direct[0], meas);
                }
            }
            CorrectnessReport rep;
            bool closed_ok = check_correctness(rec, path, 0, &rep);
            CHECK(closed_ok == direct_all);
            CHECK(rep.rounds_used >= 2);
            CHECK(rep.rounds_used <= 4);
        }

        // the exhaustion pair really exhausts and the report says so
        CorrectnessReport rep;
        check_correctness(rec, {lie_r1, lie_r2_other}, 0, &rep);
        CHECK(rep.ec_exhausted);
        check_correctness(rec, {lie_r1, lie_r2_same}, 0, &rep);
        CHECK_FALSE(rep.ec_exhausted);
    }
}

TEST_CASE("closed-form residuals match direct runs on the distance-5 code (sampled)") {
    CssCode d5 = build_named_code("surface_d5");
    std::vector<BlockMasks> panel{{0, 0},         {1ull << 0, 0}, {0, 1ull << 3},
                                  {1ull << 12, 1ull << 12}, {1ull << 24, 0}, {0, 1ull << 24}};
    for (GateKind g : {GateKind::x, GateKind::meas_z, GateKind::cnot}) {
        Rec rec = build_rec(g, d5);
        FrameResult base = run_frame(rec.circuit, {});
        size_t stride = g == GateKind::cnot ? 501 : 149;
        std::vector<Fault> jobs = single_fault_jobs(rec.circuit, base.guards, stride);
        CHECK(jobs.size() > 20);
        for (const Fault& f : jobs) {
            std::vector<Fault> path{f};
            if (rec.q_in == 2) {
                for (size_t a = 0; a < panel.size(); a += 2) {
                    for (size_t b = 1; b < panel.size(); b += 2) {
                        std::vector<BlockMasks> devs{panel[a], panel[b]};
                        auto closed = residual_deviation(rec, path, devs);
                        auto direct = direct_residual(rec, path, devs);
                        for (size_t i = 0; i < closed.size(); ++i) {
                            CHECK(closed[i].x == direct[i].x);
                            CHECK(closed[i].z == direct[i].z);
                        }
                    }
                }
            } else {
                for (const BlockMasks& a : panel) {
                    std::vector<BlockMasks> devs{a};
                    auto closed = residual_deviation(rec, path, devs);
                    auto direct = direct_residual(rec, path, devs);
                    CHECK(closed[0].x == direct[0].x);
                    CHECK(closed[0].z == direct[0].z);
                }
            }
        }
    }
}

TEST_CASE("noiseless blocks implement their logical gate") {
    CssCode b3 = build_named_code("bitflip3");
    PauliOp xb = pauli_x(b3.n, b3.logical_x[0].x);
    PauliOp zb = pauli_z(b3.n, b3.logical_z[0].z);

    auto run_on = [&](const Rec& rec, const std::vector<int>& tw, uint64_t seed) {
        Tableau init = encoded_input(rec, tw, seed);
        RngStream rng = make_stream(seed, 8);
        return run_tableau(rec.circuit, {}, rng, &init);
    };
    auto gens_plus = [&](const Rec& rec, const TableauResult& tr, uint32_t bi) {
        for (const auto& row : b3.h_x)
            CHECK(tr.state.expectation(on_block(rec, bi, pauli_x(b3.n, row))) == 1);
        for (const auto& row : b3.h_z)
            CHECK(tr.state.expectation(on_block(rec, bi, pauli_z(b3.n, row))) == 1);
    };

    Rec ri = build_rec(GateKind::i, b3);
    auto tr = run_on(ri, {0}, 11);
    gens_plus(ri, tr, 0);
    CHECK(tr.state.expectation(on_block(ri, 0, zb)) == 1);

    Rec rx = build_rec(GateKind::x, b3);
    tr = run_on(rx, {0}, 12);
    CHECK(tr.state.expectation(on_block(rx, 0, zb)) == -1);
    gens_plus(rx, tr, 0);
    tr = run_on(rx, {2}, 13);
    CHECK(tr.state.expectation(on_block(rx, 0, xb)) == 1);

    Rec rz = build_rec(GateKind::z, b3);
    tr = run_on(rz, {2}, 14);
    CHECK(tr.state.expectation(on_block(rz, 0, xb)) == -1);
    tr = run_on(rz, {0}, 15);
    CHECK(tr.state.expectation(on_block(rz, 0, zb)) == 1);

    Rec rc = build_rec(GateKind::cnot, b3);
    tr = run_on(rc, {0, 0}, 16);
    CHECK(tr.state.expectation(on_block(rc, 0, zb)) == 1);
    CHECK(tr.state.expectation(on_block(rc, 1, zb)) == 1);
    gens_plus(rc, tr, 0);
    gens_plus(rc, tr, 1);
    tr = run_on(rc, {1, 0}, 17);
    CHECK(tr.state.expectation(on_block(rc, 0, zb)) == -1);
    CHECK(tr.state.expectation(on_block(rc, 1, zb)) == -1);
    tr = run_on(rc, {2, 0}, 18);
    CHECK(tr.state.expectation(on_block(rc, 0, xb).times(on_block(rc, 1, xb))) == 1);
    CHECK(tr.state.expectation(on_block(rc, 0, zb).times(on_block(rc, 1, zb))) == 1);

    Rec rp = build_rec(GateKind::prep_z, b3);
    for (uint64_t seed : {21, 22, 23}) {
        RngStream rng = make_stream(seed, 0);
        auto tp = run_tableau(rp.circuit, {}, rng);
        gens_plus(rp, tp, 0);
        CHECK(tp.state.expectation(on_block(rp, 0, zb)) == 1);
        CHECK(tp.state.expectation(on_block(rp, 0, xb)) == 0);
    }

    Rec rm = build_rec(GateKind::meas_z, b3);
    tr = run_on(rm, {0}, 24);
    CHECK(decode_logical_meas(rm, tr.rec) == 0);
    tr = run_on(rm, {1}, 25);
    CHECK(decode_logical_meas(rm, tr.rec) == 1);

    // distance-5 CNOT makes an encoded Bell pair from |+>|0>
    CssCode d5 = build_named_code("surface_d5");
    Rec rc5 = build_rec(GateKind::cnot, d5);
    PauliOp xb5 = pauli_x(d5.n, d5.logical_x[0].x);
    PauliOp zb5 = pauli_z(d5.n, d5.logical_z[0].z);
    Tableau init = encoded_input(rc5, {2, 0}, 31);
    RngStream rng5 = make_stream(31, 8);
    auto tr5 = run_tableau(rc5.circuit, {}, rng5, &init);
    CHECK(tr5.state.expectation(on_block(rc5, 0, xb5).times(on_block(rc5, 1, xb5))) == 1);
    CHECK(tr5.state.expectation(on_block(rc5, 0, zb5).times(on_block(rc5, 1, zb5))) == 1);

    CHECK_THROWS_AS(decode_logical_meas(ri, tr.rec), std::invalid_argument);
}

TEST_CASE("every single fault passes the correctness check on the distance-3 code") {
    CssCode d3 = build_named_code("surface_d3");
    for (GateKind g : {GateKind::i, GateKind::x, GateKind::z, GateKind::cnot, GateKind::prep_z,
                       GateKind::meas_z}) {
        Rec rec = build_rec(g, d3);
        SweepReport sr = sweep_single_faults(rec, 0, 5);
        CAPTURE(int(g));
        CHECK(sr.failures == 0);
        CHECK(sr.witnesses.empty());
        CHECK(sr.ec_exhaustions == 0);
        CHECK(sr.max_rounds_used >= 2);
        CHECK(sr.max_rounds_used <= 4);
        CHECK(sr.sites > 100);

        std::vector<int8_t> guards;
        if (g == GateKind::prep_z) {
            RngStream rng = make_stream(5, 0);
            guards = run_tableau(rec.circuit, {}, rng).guards;
        } else {
            guards = run_frame(rec.circuit, {}).guards;
        }
        auto sites = live_sites(rec.circuit, guards);
        CHECK(sr.sites == sites.size());
        uint64_t expect_jobs = 0;
        for (const Loc& l : sites) expect_jobs += fault_alphabet(rec.circuit, l).size();
        CHECK(sr.assignments == expect_jobs);
    }

    // identical reports on a repeated sweep
    Rec rec = build_rec(GateKind::x, d3);
    SweepReport a = sweep_single_faults(rec, 0, 5);
    SweepReport b = sweep_single_faults(rec, 0, 5);
    CHECK(a.sites == b.sites);
    CHECK(a.assignments == b.assignments);
    CHECK(a.failures == b.failures);
    CHECK(a.max_rounds_used == b.max_rounds_used);
}

TEST_CASE("a code with no phase checks leaks phase faults and the sweep says so") {
    CssCode b3 = build_named_code("bitflip3");
    Rec rx = build_rec(GateKind::x, b3);
    SweepReport sr = sweep_single_faults(rx, 0, 5);
    CHECK(sr.failures > 0);
    CHECK_FALSE(sr.witnesses.empty());

    // even the fault-free block cannot absorb a phase deviation on its input
    CHECK_FALSE(check_correctness(rx, {}));

    uint32_t gl = rx.gate_layers[0];
    uint32_t oi = 0;
    while (rx.circuit.layers[gl][oi].kind == OpKind::idle) ++oi;
    CHECK(check_correctness(rx, {Fault{Loc{gl, oi}, 1, 0, 0, 0}}));       // bit flip: absorbed
    CHECK_FALSE(check_correctness(rx, {Fault{Loc{gl, oi}, 0, 1, 0, 0}})); // phase flip: logical
}

TEST_CASE("sampled single faults pass on the distance-5 code") {
    CssCode d5 = build_named_code("surface_d5");
    Rec rx = build_rec(GateKind::x, d5);

    // fault-free blocks absorb anything up to the full weight-2 budget
    CHECK(check_correctness(rx, {}));
    CHECK(check_correctness(build_rec(GateKind::cnot, d5), {}));

    FrameResult base = run_frame(rx.circuit, {});
    auto jobs = single_fault_jobs(rx.circuit, base.guards, 149);
    CHECK(jobs.size() > 30);
    for (const Fault& f : jobs) {
        CorrectnessReport rep;
        CHECK(check_correctness(rx, {f}, 0, &rep));
        CHECK(rep.rounds_used <= 9);
        CHECK_FALSE(rep.ec_exhausted);
    }

    Rec rp = build_rec(GateKind::prep_z, d5);
    RngStream rng = make_stream(9, 0);
    auto guards = run_tableau(rp.circuit, {}, rng).guards;
    auto pjobs = single_fault_jobs(rp.circuit, guards, 211);
    CHECK(pjobs.size() > 20);
    for (const Fault& f : pjobs) {
        CHECK(check_correctness(rp, {f}, 9));
        // the verdict cannot depend on the measurement draws
        CHECK(check_correctness(rp, {f}, 987654321));
    }
}

TEST_CASE("aligned multi-fault paths defeat a block and the search reports honestly") {
    CssCode b3 = build_named_code("bitflip3");
    Rec r3 = build_rec(GateKind::i, b3);
    WitnessSearch w3 = search_bad_witness(r3, 2, 3000);
    CHECK(w3.found);
    REQUIRE(w3.path.size() == 2);
    CHECK_FALSE(classify_fault_path(r3, w3.path));
    CHECK_FALSE(check_correctness(r3, w3.path));

    CssCode d5 = build_named_code("surface_d5");
    Rec r5 = build_rec(GateKind::i, d5);

    // two faults never beat the distance-5 block: every pair leaves a
    // residual within the decoder's reach (weight <= t or a stabilizer)
    WitnessSearch w5b = search_bad_witness(r5, 2, 600);
    CHECK_FALSE(w5b.found);
    CHECK(w5b.tried >= 600);

    WitnessSearch w5c = search_bad_witness(r5, 3, 2000);
    CHECK(w5c.found);
    REQUIRE(w5c.path.size() == 3);
    CHECK_FALSE(classify_fault_path(r5, w5c.path));
    CHECK_FALSE(check_correctness(r5, w5c.path));

    // pinned witness: three aligned deposits on a minimum-weight logical
    // support, planted after the corrections, decode to the logical itself
    uint64_t zsupp = word0(d5.logical_z[0].z);
    std::vector<Fault> crafted;
    uint32_t layer = r5.ecs[0].corr_layer_x;
    for (uint32_t oi = 0; oi < r5.circuit.layers[layer].size() && crafted.size() < 3; ++oi) {
        const Op& op = r5.circuit.layers[layer][oi];
        if (op.kind == OpKind::control && ((zsupp >> op.q0) & 1))
            crafted.push_back(Fault{Loc{layer, oi}, 0, 1, 0, 0});
    }
    REQUIRE(crafted.size() == 3);
    CHECK_FALSE(check_correctness(r5, crafted));
    CHECK_FALSE(classify_fault_path(r5, crafted));

    // same three deposits spread as weight-1 input deviations instead:
    // not a fault path at all, and the block must absorb each alone
    for (const Fault& f : crafted) CHECK(check_correctness(r5, {f}));
}
