#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ftqlab/noise.hpp"
#include "ftqlab/rng.hpp"

using namespace ftqlab;

namespace {

uint64_t support_mask(const ErrorSample& s) {
  uint64_t m = 0;
  for (uint32_t q : s.support) m |= uint64_t(1) << q;
  return m;
}

std::vector<uint64_t> draw_masks(uint32_t n, double delta, double spread, size_t count,
                                 uint64_t seed) {
  std::vector<uint64_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    RngStream st = make_stream(seed, i);
    ErrorSample s = spread < 0 ? sample_iid_pauli(n, delta, st)
                               : sample_local_stochastic_cluster(n, delta, spread, st);
    out.push_back(support_mask(s));
  }
  return out;
}

}  // namespace

TEST_CASE("tail sums") {
  CHECK(tail_sum(4, 0.5, 2) == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(tail_sum(10, 0.1, 0) == doctest::Approx(std::pow(1.1, 10) - 1.0).epsilon(1e-12));
  CHECK(tail_sum(10, 0.1, 10) == 0.0);
  CHECK(tail_sum(10, 0.1, 20) == 0.0);
  CHECK(tail_sum(10, 0.0, 3) == 0.0);
  // monotone decreasing in t
  double prev = tail_sum(50, 0.02, 0);
  for (uint64_t t = 1; t < 10; ++t) {
    double cur = tail_sum(50, 0.02, t);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS(tail_sum(20000, 0.1, 3));  // n cap
}

TEST_CASE("adversarial truncation point") {
  Truncation tr = adversarial_truncation(100, 0.05);
  CHECK(tr.t == 24);
  CHECK(tr.bound == doctest::Approx(std::exp(-5.0 / 3.0)).epsilon(1e-12));

  Truncation t2 = adversarial_truncation(1000, 0.01);
  CHECK(t2.t == 50);  // ceil(50 / 1.01) = ceil(49.50) = 50
  CHECK(t2.bound == doctest::Approx(std::exp(-10.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("iid sampler: reproducible, correct marginals") {
  RngStream a = make_stream(5, 1), b = make_stream(5, 1);
  for (int i = 0; i < 20; ++i) {
    ErrorSample sa = sample_iid_pauli(40, 0.2, a);
    ErrorSample sb = sample_iid_pauli(40, 0.2, b);
    CHECK(sa.support == sb.support);
    CHECK(sa.pauli == sb.pauli);
    // support sorted and consistent with the Pauli
    for (size_t j = 1; j < sa.support.size(); ++j) CHECK(sa.support[j - 1] < sa.support[j]);
    CHECK(sa.support.size() == sa.pauli.weight());
  }

  RngStream c = make_stream(6, 0);
  size_t total = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) total += sample_iid_pauli(10, 0.1, c).support.size();
  double mean = double(total) / trials;  // expect 1.0
  CHECK(mean > 0.93);
  CHECK(mean < 1.07);

  CHECK_THROWS(sample_iid_pauli(4, -0.1, c));
  CHECK_THROWS(sample_iid_pauli(4, 1.0, c));
}

TEST_CASE("cluster sampler widens supports") {
  RngStream c = make_stream(7, 0);
  size_t plain = 0, spread = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    RngStream s1 = make_stream(70, i), s2 = make_stream(70, i);
    plain += sample_local_stochastic_cluster(12, 0.05, 0.0, s1).support.size();
    spread += sample_local_stochastic_cluster(12, 0.05, 0.5, s2).support.size();
  }
  CHECK(spread > plain);
  (void)c;
}

TEST_CASE("local stochastic estimate on iid noise") {
  auto masks = draw_masks(16, 0.1, -1, 30000, 99);
  LsEstimate est = estimate_local_stochastic_parameter(masks, 16, 2);
  CHECK(est.point > 0.08);
  CHECK(est.point < 0.13);
  CHECK(est.upper >= est.point);
  CHECK(est.upper < 0.16);

  CHECK_THROWS(estimate_local_stochastic_parameter(masks, 16, 0));
  CHECK_THROWS(estimate_local_stochastic_parameter(masks, 16, 5));
  std::vector<uint64_t> few(100, 0);
  CHECK_THROWS(estimate_local_stochastic_parameter(few, 16, 2));
}

TEST_CASE("local stochastic audit: iid passes, sticky cluster fails") {
  auto iid = draw_masks(14, 0.08, -1, 30000, 123);
  LsAudit ok = audit_local_stochastic(iid, 14, 3, 0.08);
  CHECK(ok.pass);
  CHECK(ok.violations == 0);
  CHECK(ok.checked > 0);

  // heavy spread: adjacent pairs occur at ~delta*spread >> delta^2
  auto sticky = draw_masks(14, 0.08, 0.9, 30000, 124);
  LsAudit bad = audit_local_stochastic(sticky, 14, 2, 0.08);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violations > 0);
  CHECK(bad.worst_excess > 0);

  // but the cluster distribution is local stochastic at a larger rate
  LsEstimate est = estimate_local_stochastic_parameter(sticky, 14, 2);
  LsAudit rescued = audit_local_stochastic(sticky, 14, 2, est.upper);
  CHECK(rescued.pass);
}

TEST_CASE("composition of local stochastic rates") {
  CHECK(compose_parameter(0.1, 0.2) == doctest::Approx(0.3));
  CHECK(compose_parameter(0.0, 0.0) == 0.0);
  CHECK_THROWS(compose_parameter(-0.1, 0.2));
}
