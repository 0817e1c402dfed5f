#pragma once
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ftqlab/pauli.hpp"

namespace ftqlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Hard caps: this layer is a verifier, not a simulator.
constexpr int kDenseDimCap = 1 << 12;
constexpr int kSuperDimCap = 1 << 5;

// Tensor convention: first factor is the major index,
// |a>|b> -> a * dim_b + b. Qubit 0 is the least significant bit of a
// computational basis index.
Mat kron(const Mat& a, const Mat& b);
Mat pauli_matrix(const PauliOp& p);
Mat gate_matrix_1q(char kind); // I X Y Z H S
Mat projector_1q(int outcome, char basis); // basis Z or X

bool is_isometry(const Mat& v, double tol = 1e-10);
bool is_unitary(const Mat& u, double tol = 1e-10);

Mat partial_trace_second(const Mat& rho, int d_keep, int d_drop);
Mat partial_trace_first(const Mat& rho, int d_drop, int d_keep);

// State-vector helpers for small oracle simulations in tests.
void apply_gate_1q(Vec& psi, uint32_t n, uint32_t q, const Mat& u2);
void apply_cnot(Vec& psi, uint32_t n, uint32_t control, uint32_t target);
void apply_cz(Vec& psi, uint32_t n, uint32_t a, uint32_t b);
double prob_outcome_z(const Vec& psi, uint32_t n, uint32_t q, int outcome);
void collapse_z(Vec& psi, uint32_t n, uint32_t q, int outcome);

// Superoperator with a transfer-matrix core (column-major vec
// convention, tm is out_dim^2 x in_dim^2); Choi matrix derived on
// demand, unnormalized: J(Phi) = sum_ij |i><j| (x) Phi(|i><j|).
struct Superoperator {
    int in_dim = 1;
    int out_dim = 1;
    Mat tm;

    static Superoperator identity(int d);
    static Superoperator from_kraus(const std::vector<Mat>& ks);
    static Superoperator from_unitary(const Mat& u); // isometries allowed
    static Superoperator prepare(const Mat& rho);    // in_dim = 1
    static Superoperator trace_out_second(int d_keep, int d_drop);
    static Superoperator trace_out_first(int d_drop, int d_keep);
    static Superoperator trace_all(int d);
    static Superoperator depolarizing_1q(double p);  // rho -> (1-p) rho + p I/2

    Mat apply(const Mat& rho) const;
    Mat choi() const;
    static Superoperator compose(const Superoperator& after, const Superoperator& before);
    static Superoperator tensor(const Superoperator& a, const Superoperator& b);
    bool is_cp(double tol = 1e-9) const;
    bool is_tp(double tol = 1e-9) const;
    double choi_frobenius_distance(const Superoperator& o) const;
};

// (trace norm of Choi difference / in_dim, trace norm itself): the
// standard two-sided sandwich of the diamond norm.
std::pair<double, double> choi_distance_bounds(const Superoperator& a, const Superoperator& b);

} // namespace ftqlab
