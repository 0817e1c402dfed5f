#pragma once
#include <cstdint>

#include "ftqlab/css_code.hpp"
#include "ftqlab/rng.hpp"
#include "ftqlab/stats.hpp"

namespace ftqlab {

// L x L torus. Horizontal edge h(r,c) joins vertex (r,c) to (r,c+1),
// index r*L+c; vertical edge v(r,c) joins (r,c) to (r+1,c), index
// L^2 + r*L + c. Stars (X-type) sit on vertices, plaquettes (Z-type)
// on faces with top-left corner (r,c). Generator order: all stars
// row-major, then all plaquettes.
struct ToricLattice {
    uint32_t L = 0;

    uint32_t n() const { return 2 * L * L; }
    uint32_t h_edge(uint32_t r, uint32_t c) const { return r * L + c; }
    uint32_t v_edge(uint32_t r, uint32_t c) const { return L * L + r * L + c; }
    BitRow star_support(uint32_t r, uint32_t c) const;
    BitRow plaquette_support(uint32_t r, uint32_t c) const;
    int axis_dist(int a, int b) const;
};

struct ToricCode {
    ToricLattice lat;
    CssCode code;
};

ToricCode build_toric(uint32_t L);

// CSS-split MWPM on the torus taxicab metric: star defects fix the Z
// sector, plaquette defects the X sector. Paths walk rows first, then
// columns, taking the shorter wrap direction (ties toward +).
// Throws on an odd defect count.
PauliOp decode_mwpm(const ToricCode& tc, const Syndrome& s);

// Closed-form logical failure bound (16/3) L^4 (36 alpha)^{L/2};
// valid only for alpha <= 1/36, out-of-hypothesis inputs throw.
double bound_zeta(uint32_t L, double alpha);

struct CommConfig {
    uint32_t L = 3;
    double nu = 0;           // channel noise rate
    double delta_prime = 0;  // encoder and decoder noise rate, each
    uint64_t trials = 0;
    uint64_t master_seed = 0;
    double alpha_eff() const { return nu + 2 * delta_prime; }
};

enum class CommOutcome { success, logical_failure };

CommOutcome run_comm_trial(const ToricCode& tc, const CommConfig& cfg, RngStream& rng);

struct CommEstimate {
    uint64_t trials = 0;
    uint64_t failures = 0;
    double rate = 0;
    Interval ci;
};

CommEstimate estimate_logical_failure(const ToricCode& tc, const CommConfig& cfg);

} // namespace ftqlab
