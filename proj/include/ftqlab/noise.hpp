#pragma once
#include <cstdint>
#include <vector>

#include "ftqlab/pauli.hpp"
#include "ftqlab/rng.hpp"
#include "ftqlab/stats.hpp"

namespace ftqlab {

struct ErrorSample {
    std::vector<uint32_t> support; // ascending qubit indices
    PauliOp pauli;
};

// Each qubit independently nontrivial with probability delta, letter
// uniform over X/Y/Z.
ErrorSample sample_iid_pauli(uint32_t n, double delta, RngStream& rng);

// Seeds drawn iid at rate delta; each seed recruits its ring
// neighbors (q-1, q+1 mod n) independently with probability spread.
// spread = 0 reduces to the iid distribution.
ErrorSample sample_local_stochastic_cluster(uint32_t n, double delta, double spread,
                                            RngStream& rng);

// Supports as bit masks, so audits are capped at n <= 64.
struct LsEstimate {
    double point = 0;  // max over T of P(T in A)^(1/|T|)
    double upper = 0;  // same with the Wilson upper bound
};

LsEstimate estimate_local_stochastic_parameter(const std::vector<uint64_t>& supports,
                                               uint32_t n, uint32_t max_t);

struct LsAudit {
    bool pass = true;
    uint64_t checked = 0;
    uint64_t violations = 0;
    double worst_excess = 0; // max over T of P_hat - threshold
};

// Checks P(T in A) <= delta^|T| + ci_mult * (Wilson interval width)
// for every T with |T| <= max_t.
LsAudit audit_local_stochastic(const std::vector<uint64_t>& supports, uint32_t n,
                               uint32_t max_t, double delta, double ci_mult = 4.0);

double compose_parameter(double nu_a, double nu_b);

struct Truncation {
    uint64_t t = 0;
    double bound = 1;
};

// t = ceil(5 n delta / (1 + delta)); bound = exp(-n delta / 3).
Truncation adversarial_truncation(uint64_t n, double delta);

// Exact log-domain evaluation of sum_{j>t} C(n,j) delta^j.
double tail_sum(uint64_t n, double delta, uint64_t t);

} // namespace ftqlab
