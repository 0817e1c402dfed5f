#include "ftqlab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ftqlab {

static void set_uniform_letter(PauliOp& p, uint32_t q, RngStream& rng) {
    switch (rng.below(3)) {
        case 0: p.set_x(q, true); break;
        case 1: p.set_x(q, true); p.set_z(q, true); break;
        default: p.set_z(q, true); break;
    }
}

ErrorSample sample_iid_pauli(uint32_t n, double delta, RngStream& rng) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("sample_iid_pauli: delta outside [0,1)");
    ErrorSample s;
    s.pauli = PauliOp::identity(n);
    for (uint32_t q = 0; q < n; ++q)
        if (rng.bernoulli(delta)) {
            s.support.push_back(q);
            set_uniform_letter(s.pauli, q, rng);
        }
    return s;
}

ErrorSample sample_local_stochastic_cluster(uint32_t n, double delta, double spread,
                                            RngStream& rng) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("cluster sampler: delta outside [0,1)");
    if (spread < 0 || spread >= 1) throw std::invalid_argument("cluster sampler: spread outside [0,1)");
    std::vector<bool> in(n, false);
    std::vector<uint32_t> seeds;
    for (uint32_t q = 0; q < n; ++q)
        if (rng.bernoulli(delta)) {
            in[q] = true;
            seeds.push_back(q);
        }
    for (uint32_t q : seeds)
        for (int d : {-1, 1}) {
            uint32_t nb = uint32_t((int64_t(q) + d + n) % n);
            if (rng.bernoulli(spread)) in[nb] = true;
        }
    ErrorSample s;
    s.pauli = PauliOp::identity(n);
    for (uint32_t q = 0; q < n; ++q)
        if (in[q]) {
            s.support.push_back(q);
            set_uniform_letter(s.pauli, q, rng);
        }
    return s;
}

namespace {

struct SubsetCounts {
    uint32_t n = 0, max_t = 0;
    uint64_t samples = 0;
    std::vector<uint64_t> c1, c2, c3, c4;

    static size_t pair_idx(uint32_t i, uint32_t j) { return size_t(j) * (j - 1) / 2 + i; }
    static size_t triple_idx(uint32_t i, uint32_t j, uint32_t k) {
        return size_t(k) * (k - 1) * (k - 2) / 6 + pair_idx(i, j);
    }
    static size_t quad_idx(uint32_t i, uint32_t j, uint32_t k, uint32_t l) {
        return size_t(l) * (l - 1) * (l - 2) * (l - 3) / 24 + triple_idx(i, j, k);
    }

    void accumulate(uint64_t mask) {
        std::vector<uint32_t> bits;
        for (uint64_t m = mask; m; m &= m - 1) bits.push_back(uint32_t(__builtin_ctzll(m)));
        size_t s = bits.size();
        for (size_t a = 0; a < s; ++a) {
            ++c1[bits[a]];
            if (max_t < 2) continue;
            for (size_t b = a + 1; b < s; ++b) {
                ++c2[pair_idx(bits[a], bits[b])];
                if (max_t < 3) continue;
                for (size_t c = b + 1; c < s; ++c) {
                    ++c3[triple_idx(bits[a], bits[b], bits[c])];
                    if (max_t < 4) continue;
                    for (size_t d = c + 1; d < s; ++d)
                        ++c4[quad_idx(bits[a], bits[b], bits[c], bits[d])];
                }
            }
        }
    }
};

SubsetCounts count_subsets(const std::vector<uint64_t>& supports, uint32_t n, uint32_t max_t) {
    if (n == 0 || n > 64) throw std::invalid_argument("support audit: n must be in [1, 64]");
    if (max_t < 1 || max_t > 4) throw std::invalid_argument("support audit: max_t must be in [1, 4]");
    if (supports.size() < 10000)
        throw std::invalid_argument("support audit: insufficient samples (< 1e4)");
    SubsetCounts sc;
    sc.n = n;
    sc.max_t = max_t;
    sc.samples = supports.size();
    sc.c1.assign(n, 0);
    if (max_t >= 2) sc.c2.assign(size_t(n) * (n - 1) / 2, 0);
    if (max_t >= 3) sc.c3.assign(size_t(n) * (n - 1) * (n - 2) / 6, 0);
    if (max_t >= 4) sc.c4.assign(size_t(n) * (n - 1) * (n - 2) * (n - 3) / 24, 0);
    for (uint64_t m : supports) sc.accumulate(m);
    return sc;
}

template <typename Fn>
void for_each_count(const SubsetCounts& sc, Fn&& fn) {
    for (uint64_t c : sc.c1) fn(1u, c);
    for (uint64_t c : sc.c2) fn(2u, c);
    for (uint64_t c : sc.c3) fn(3u, c);
    for (uint64_t c : sc.c4) fn(4u, c);
}

} // namespace

LsEstimate estimate_local_stochastic_parameter(const std::vector<uint64_t>& supports,
                                               uint32_t n, uint32_t max_t) {
    SubsetCounts sc = count_subsets(supports, n, max_t);
    LsEstimate est;
    for_each_count(sc, [&](uint32_t t, uint64_t c) {
        double inv_t = 1.0 / t;
        double p = double(c) / double(sc.samples);
        est.point = std::max(est.point, std::pow(p, inv_t));
        Interval iv = wilson_interval(c, sc.samples);
        est.upper = std::max(est.upper, std::pow(iv.hi, inv_t));
    });
    return est;
}

LsAudit audit_local_stochastic(const std::vector<uint64_t>& supports, uint32_t n,
                               uint32_t max_t, double delta, double ci_mult) {
    SubsetCounts sc = count_subsets(supports, n, max_t);
    LsAudit audit;
    for_each_count(sc, [&](uint32_t t, uint64_t c) {
        double p = double(c) / double(sc.samples);
        Interval iv = wilson_interval(c, sc.samples);
        double thresh = std::pow(delta, double(t)) + ci_mult * (iv.hi - iv.lo);
        ++audit.checked;
        if (p > thresh) {
            ++audit.violations;
            audit.pass = false;
        }
        audit.worst_excess = std::max(audit.worst_excess, p - thresh);
    });
    return audit;
}

double compose_parameter(double nu_a, double nu_b) {
    if (nu_a < 0 || nu_b < 0) throw std::invalid_argument("compose_parameter: negative rate");
    return nu_a + nu_b;
}

Truncation adversarial_truncation(uint64_t n, double delta) {
    if (delta < 0 || delta >= 1) throw std::invalid_argument("adversarial_truncation: bad delta");
    Truncation tr;
    tr.t = uint64_t(std::ceil(5.0 * double(n) * delta / (1.0 + delta)));
    tr.bound = std::exp(-double(n) * delta / 3.0);
    return tr;
}

double tail_sum(uint64_t n, double delta, uint64_t t) {
    if (delta < 0) throw std::invalid_argument("tail_sum: negative delta");
    if (n > 10000) throw std::invalid_argument("tail_sum: n above the 1e4 cap");
    if (t >= n || delta == 0) return 0.0;
    double logd = std::log(delta);
    double lgn = std::lgamma(double(n) + 1);
    std::vector<double> terms;
    terms.reserve(n - t);
    for (uint64_t j = t + 1; j <= n; ++j) {
        double lc = lgn - std::lgamma(double(j) + 1) - std::lgamma(double(n - j) + 1);
        terms.push_back(lc + double(j) * logd);
    }
    double mx = *std::max_element(terms.begin(), terms.end());
    double acc = 0;
    for (double v : terms) acc += std::exp(v - mx);
    return std::exp(mx + std::log(acc));
}

} // namespace ftqlab
