#include "ftqlab/toric.hpp"
#include "ftqlab/matching.hpp"
#include "ftqlab/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace ftqlab {

BitRow ToricLattice::star_support(uint32_t r, uint32_t c) const {
    BitRow s(words_for(n()), 0);
    set_bit(s, h_edge(r, c), true);
    set_bit(s, h_edge(r, (c + L - 1) % L), true);
    set_bit(s, v_edge(r, c), true);
    set_bit(s, v_edge((r + L - 1) % L, c), true);
    return s;
}

BitRow ToricLattice::plaquette_support(uint32_t r, uint32_t c) const {
    BitRow s(words_for(n()), 0);
    set_bit(s, h_edge(r, c), true);
    set_bit(s, h_edge((r + 1) % L, c), true);
    set_bit(s, v_edge(r, c), true);
    set_bit(s, v_edge(r, (c + 1) % L), true);
    return s;
}

int ToricLattice::axis_dist(int a, int b) const {
    int d = std::abs(a - b);
    return std::min(d, int(L) - d);
}

ToricCode build_toric(uint32_t L) {
    if (L < 2) throw std::invalid_argument("build_toric: L must be at least 2");
    ToricLattice lat{L};
    uint32_t n = lat.n();

    std::vector<BitRow> hx, hz;
    for (uint32_t r = 0; r < L; ++r)
        for (uint32_t c = 0; c < L; ++c)
            hx.push_back(lat.star_support(r, c));
    for (uint32_t r = 0; r < L; ++r)
        for (uint32_t c = 0; c < L; ++c)
            hz.push_back(lat.plaquette_support(r, c));

    PauliOp lx1 = PauliOp::identity(n), lx2 = PauliOp::identity(n);
    PauliOp lz1 = PauliOp::identity(n), lz2 = PauliOp::identity(n);
    for (uint32_t i = 0; i < L; ++i) {
        lz1.set_z(lat.h_edge(0, i), true); // horizontal loop
        lz2.set_z(lat.v_edge(i, 0), true); // vertical loop
        lx1.set_x(lat.h_edge(i, 0), true); // crosses lz1 at h(0,0)
        lx2.set_x(lat.v_edge(0, i), true); // crosses lz2 at v(0,0)
    }
    ToricCode tc;
    tc.lat = lat;
    tc.code = CssCode::from_parts(n, std::move(hx), std::move(hz),
                                  {lx1, lx2}, {lz1, lz2});
    return tc;
}

namespace {

struct Coord {
    int r, c;
};

// Shorter wrap direction; ties (even L antipodal) toward +.
int step_dir(int from, int to, int L) {
    int fwd = (to - from + L) % L;
    int bwd = (from - to + L) % L;
    return fwd <= bwd ? 1 : -1;
}

void walk_vertex_path(const ToricLattice& lat, Coord a, Coord b, BitRow& zmask) {
    int L = int(lat.L);
    int r = a.r, c = a.c;
    while (r != b.r) {
        int d = step_dir(r, b.r, L);
        int edge_r = d > 0 ? r : (r - 1 + L) % L;
        flip_bit(zmask, lat.v_edge(uint32_t(edge_r), uint32_t(c)));
        r = (r + d + L) % L;
    }
    while (c != b.c) {
        int d = step_dir(c, b.c, L);
        int edge_c = d > 0 ? c : (c - 1 + L) % L;
        flip_bit(zmask, lat.h_edge(uint32_t(r), uint32_t(edge_c)));
        c = (c + d + L) % L;
    }
}

void walk_face_path(const ToricLattice& lat, Coord a, Coord b, BitRow& xmask) {
    int L = int(lat.L);
    int r = a.r, c = a.c;
    while (r != b.r) {
        int d = step_dir(r, b.r, L);
        int edge_r = d > 0 ? (r + 1) % L : r;
        flip_bit(xmask, lat.h_edge(uint32_t(edge_r), uint32_t(c)));
        r = (r + d + L) % L;
    }
    while (c != b.c) {
        int d = step_dir(c, b.c, L);
        int edge_c = d > 0 ? (c + 1) % L : c;
        flip_bit(xmask, lat.v_edge(uint32_t(r), uint32_t(edge_c)));
        c = (c + d + L) % L;
    }
}

std::vector<Coord> collect_defects(const Syndrome& s, uint32_t L, uint32_t offset) {
    std::vector<Coord> d;
    for (uint32_t i = 0; i < L * L; ++i)
        if (s.get(offset + i)) d.push_back({int(i / L), int(i % L)});
    return d;
}

void match_and_correct(const ToricLattice& lat, const std::vector<Coord>& defects,
                       bool face_sector, BitRow& mask) {
    if (defects.empty()) return;
    if (defects.size() % 2)
        throw std::invalid_argument("decode_mwpm: odd defect count, corrupted syndrome");
    int m = int(defects.size());
    std::vector<std::vector<int>> w(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            w[i][j] = lat.axis_dist(defects[i].r, defects[j].r) +
                      lat.axis_dist(defects[i].c, defects[j].c);
    for (auto [i, j] : min_weight_matching(w)) {
        if (face_sector) walk_face_path(lat, defects[i], defects[j], mask);
        else walk_vertex_path(lat, defects[i], defects[j], mask);
    }
}

} // namespace

PauliOp decode_mwpm(const ToricCode& tc, const Syndrome& s) {
    const ToricLattice& lat = tc.lat;
    if (s.nbits != tc.code.num_generators())
        throw std::invalid_argument("decode_mwpm: syndrome length mismatch");
    PauliOp corr = PauliOp::identity(tc.code.n);
    // star defects (X-type checks) flag the Z error sector
    match_and_correct(lat, collect_defects(s, lat.L, 0), false, corr.z);
    match_and_correct(lat, collect_defects(s, lat.L, lat.L * lat.L), true, corr.x);
    return corr;
}

double bound_zeta(uint32_t L, double alpha) {
    if (L < 2) throw std::invalid_argument("bound_zeta: L must be at least 2");
    if (alpha < 0) throw std::invalid_argument("bound_zeta: negative alpha");
    if (alpha > 1.0 / 36.0)
        throw std::domain_error("bound_zeta: alpha above the 1/36 hypothesis");
    double l4 = double(L) * L * L * L;
    return (16.0 / 3.0) * l4 * std::pow(36.0 * alpha, double(L) / 2.0);
}

CommOutcome run_comm_trial(const ToricCode& tc, const CommConfig& cfg, RngStream& rng) {
    uint32_t n = tc.code.n;
    PauliOp e = sample_iid_pauli(n, cfg.delta_prime, rng).pauli; // encoder
    e.mul_right(sample_iid_pauli(n, cfg.nu, rng).pauli);         // channel
    e.mul_right(sample_iid_pauli(n, cfg.delta_prime, rng).pauli); // decoder
    PauliOp corr = decode_mwpm(tc, tc.code.syndrome(e));
    PauliOp residual = e.times(corr);
    std::string cls = tc.code.logical_class(residual);
    if (cls == "detectable")
        throw std::logic_error("run_comm_trial: correction left a nonzero syndrome");
    return cls == "II" ? CommOutcome::success : CommOutcome::logical_failure;
}

CommEstimate estimate_logical_failure(const ToricCode& tc, const CommConfig& cfg) {
    if (cfg.trials < 100)
        throw std::invalid_argument("estimate_logical_failure: need at least 100 trials");
    CommEstimate est;
    est.trials = cfg.trials;
    for (uint64_t i = 0; i < cfg.trials; ++i) {
        RngStream st = make_stream(cfg.master_seed, i);
        if (run_comm_trial(tc, cfg, st) == CommOutcome::logical_failure) ++est.failures;
    }
    est.rate = double(est.failures) / double(est.trials);
    est.ci = wilson_interval(est.failures, est.trials);
    return est;
}

} // namespace ftqlab
