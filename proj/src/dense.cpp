#include "ftqlab/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace ftqlab {

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Mat pauli_matrix(const PauliOp& p) {
    if (p.n > 12) throw std::invalid_argument("pauli_matrix: dimension cap exceeded");
    int64_t dim = int64_t(1) << p.n;
    static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Mat m = Mat::Zero(dim, dim);
    uint64_t xm = p.x.empty() ? 0 : p.x[0];
    uint64_t zm = p.z.empty() ? 0 : p.z[0];
    for (int64_t b = 0; b < dim; ++b) {
        int sgn = __builtin_popcountll(zm & uint64_t(b)) & 1;
        cplx v = iphase[p.phase] * (sgn ? -1.0 : 1.0);
        m(int64_t(uint64_t(b) ^ xm), b) = v;
    }
    return m;
}

Mat gate_matrix_1q(char kind) {
    Mat m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        case 'H': m << s, s, s, -s; break;
        case 'S': m << 1, 0, 0, cplx(0, 1); break;
        default: throw std::invalid_argument("gate_matrix_1q: unknown gate");
    }
    return m;
}

Mat projector_1q(int outcome, char basis) {
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("projector_1q: outcome must be 0/1");
    Mat m(2, 2);
    if (basis == 'Z') {
        m << (outcome == 0 ? 1 : 0), 0, 0, (outcome == 1 ? 1 : 0);
    } else if (basis == 'X') {
        double sgn = outcome == 0 ? 1.0 : -1.0;
        m << 0.5, sgn * 0.5, sgn * 0.5, 0.5;
    } else {
        throw std::invalid_argument("projector_1q: basis must be Z or X");
    }
    return m;
}

bool is_isometry(const Mat& v, double tol) {
    Mat g = v.adjoint() * v;
    return (g - Mat::Identity(v.cols(), v.cols())).norm() <= tol;
}

bool is_unitary(const Mat& u, double tol) {
    return u.rows() == u.cols() && is_isometry(u, tol);
}

Mat partial_trace_second(const Mat& rho, int d_keep, int d_drop) {
    if (rho.rows() != int64_t(d_keep) * d_drop) throw std::invalid_argument("partial_trace_second: bad dims");
    Mat r = Mat::Zero(d_keep, d_keep);
    for (int a = 0; a < d_keep; ++a)
        for (int b = 0; b < d_keep; ++b)
            for (int j = 0; j < d_drop; ++j)
                r(a, b) += rho(a * d_drop + j, b * d_drop + j);
    return r;
}

Mat partial_trace_first(const Mat& rho, int d_drop, int d_keep) {
    if (rho.rows() != int64_t(d_keep) * d_drop) throw std::invalid_argument("partial_trace_first: bad dims");
    Mat r = Mat::Zero(d_keep, d_keep);
    for (int a = 0; a < d_keep; ++a)
        for (int b = 0; b < d_keep; ++b)
            for (int j = 0; j < d_drop; ++j)
                r(a, b) += rho(j * d_keep + a, j * d_keep + b);
    return r;
}

void apply_gate_1q(Vec& psi, uint32_t n, uint32_t q, const Mat& u2) {
    int64_t dim = int64_t(1) << n;
    int64_t bit = int64_t(1) << q;
    for (int64_t b = 0; b < dim; ++b) {
        if (b & bit) continue;
        cplx a0 = psi[b], a1 = psi[b | bit];
        psi[b] = u2(0, 0) * a0 + u2(0, 1) * a1;
        psi[b | bit] = u2(1, 0) * a0 + u2(1, 1) * a1;
    }
}

void apply_cnot(Vec& psi, uint32_t n, uint32_t control, uint32_t target) {
    int64_t dim = int64_t(1) << n;
    int64_t cb = int64_t(1) << control, tb = int64_t(1) << target;
    for (int64_t b = 0; b < dim; ++b)
        if ((b & cb) && !(b & tb)) std::swap(psi[b], psi[b | tb]);
}

void apply_cz(Vec& psi, uint32_t n, uint32_t a, uint32_t b) {
    int64_t dim = int64_t(1) << n;
    int64_t am = int64_t(1) << a, bm = int64_t(1) << b;
    for (int64_t i = 0; i < dim; ++i)
        if ((i & am) && (i & bm)) psi[i] = -psi[i];
}

double prob_outcome_z(const Vec& psi, uint32_t n, uint32_t q, int outcome) {
    int64_t dim = int64_t(1) << n;
    int64_t bit = int64_t(1) << q;
    double p = 0;
    for (int64_t b = 0; b < dim; ++b)
        if (((b & bit) != 0) == (outcome == 1)) p += std::norm(psi[b]);
    return p;
}

void collapse_z(Vec& psi, uint32_t n, uint32_t q, int outcome) {
    double p = prob_outcome_z(psi, n, q, outcome);
    if (p < 1e-300) throw std::runtime_error("collapse_z: outcome has zero probability");
    int64_t dim = int64_t(1) << n;
    int64_t bit = int64_t(1) << q;
    double s = 1.0 / std::sqrt(p);
    for (int64_t b = 0; b < dim; ++b) {
        if (((b & bit) != 0) == (outcome == 1)) psi[b] *= s;
        else psi[b] = 0;
    }
}

static void check_super_dim(int d) {
    if (d < 1 || d > kSuperDimCap)
        throw std::invalid_argument("Superoperator: dimension outside [1, 32]");
}

Superoperator Superoperator::identity(int d) {
    check_super_dim(d);
    Superoperator s;
    s.in_dim = s.out_dim = d;
    s.tm = Mat::Identity(int64_t(d) * d, int64_t(d) * d);
    return s;
}

Superoperator Superoperator::from_kraus(const std::vector<Mat>& ks) {
    if (ks.empty()) throw std::invalid_argument("from_kraus: empty Kraus list");
    int out = int(ks[0].rows()), in = int(ks[0].cols());
    check_super_dim(out);
    check_super_dim(in);
    Superoperator s;
    s.in_dim = in;
    s.out_dim = out;
    s.tm = Mat::Zero(int64_t(out) * out, int64_t(in) * in);
    for (auto& k : ks) {
        if (k.rows() != out || k.cols() != in) throw std::invalid_argument("from_kraus: ragged Kraus dims");
        s.tm += kron(k.conjugate(), k);
    }
    return s;
}

Superoperator Superoperator::from_unitary(const Mat& u) { return from_kraus({u}); }

Superoperator Superoperator::prepare(const Mat& rho) {
    int d = int(rho.rows());
    check_super_dim(d);
    if (rho.cols() != d) throw std::invalid_argument("prepare: state must be square");
    Superoperator s;
    s.in_dim = 1;
    s.out_dim = d;
    s.tm = Mat(int64_t(d) * d, 1);
    for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a)
            s.tm(a + int64_t(b) * d, 0) = rho(a, b);
    return s;
}

Superoperator Superoperator::trace_out_second(int d_keep, int d_drop) {
    std::vector<Mat> ks;
    Mat id = Mat::Identity(d_keep, d_keep);
    for (int j = 0; j < d_drop; ++j) {
        Mat e = Mat::Zero(1, d_drop);
        e(0, j) = 1;
        ks.push_back(kron(id, e));
    }
    return from_kraus(ks);
}

Superoperator Superoperator::trace_out_first(int d_drop, int d_keep) {
    std::vector<Mat> ks;
    Mat id = Mat::Identity(d_keep, d_keep);
    for (int j = 0; j < d_drop; ++j) {
        Mat e = Mat::Zero(1, d_drop);
        e(0, j) = 1;
        ks.push_back(kron(e, id));
    }
    return from_kraus(ks);
}

Superoperator Superoperator::trace_all(int d) { return trace_out_second(1, d); }

Superoperator Superoperator::depolarizing_1q(double p) {
    if (p < 0 || p > 1) throw std::invalid_argument("depolarizing_1q: p outside [0,1]");
    std::vector<Mat> ks;
    ks.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * gate_matrix_1q('I'));
    for (char c : {'X', 'Y', 'Z'}) ks.push_back(std::sqrt(p / 4.0) * gate_matrix_1q(c));
    return from_kraus(ks);
}

Mat Superoperator::apply(const Mat& rho) const {
    if (rho.rows() != in_dim || rho.cols() != in_dim)
        throw std::invalid_argument("Superoperator::apply: dimension mismatch");
    Eigen::Map<const Vec> v(rho.data(), int64_t(in_dim) * in_dim);
    Vec w = tm * v;
    Mat out(out_dim, out_dim);
    for (int b = 0; b < out_dim; ++b)
        for (int a = 0; a < out_dim; ++a)
            out(a, b) = w[a + int64_t(b) * out_dim];
    return out;
}

Mat Superoperator::choi() const {
    Mat c(int64_t(in_dim) * out_dim, int64_t(in_dim) * out_dim);
    for (int i = 0; i < in_dim; ++i)
        for (int j = 0; j < in_dim; ++j)
            for (int a = 0; a < out_dim; ++a)
                for (int b = 0; b < out_dim; ++b)
                    c(int64_t(i) * out_dim + a, int64_t(j) * out_dim + b) =
                        tm(a + int64_t(b) * out_dim, i + int64_t(j) * in_dim);
    return c;
}

Superoperator Superoperator::compose(const Superoperator& after, const Superoperator& before) {
    if (after.in_dim != before.out_dim)
        throw std::invalid_argument("Superoperator::compose: dimension mismatch");
    Superoperator s;
    s.in_dim = before.in_dim;
    s.out_dim = after.out_dim;
    s.tm = after.tm * before.tm;
    return s;
}

Superoperator Superoperator::tensor(const Superoperator& a, const Superoperator& b) {
    Superoperator s;
    s.in_dim = a.in_dim * b.in_dim;
    s.out_dim = a.out_dim * b.out_dim;
    check_super_dim(s.in_dim);
    check_super_dim(s.out_dim);
    s.tm = Mat::Zero(int64_t(s.out_dim) * s.out_dim, int64_t(s.in_dim) * s.in_dim);
    int o1 = a.out_dim, o2 = b.out_dim, i1 = a.in_dim, i2 = b.in_dim;
    for (int a1 = 0; a1 < o1; ++a1)
     for (int b1 = 0; b1 < o1; ++b1)
      for (int c1 = 0; c1 < i1; ++c1)
       for (int d1 = 0; d1 < i1; ++d1) {
        cplx t1 = a.tm(a1 + int64_t(b1) * o1, c1 + int64_t(d1) * i1);
        if (t1 == cplx(0, 0)) continue;
        for (int a2 = 0; a2 < o2; ++a2)
         for (int b2 = 0; b2 < o2; ++b2)
          for (int c2 = 0; c2 < i2; ++c2)
           for (int d2 = 0; d2 < i2; ++d2) {
            int64_t row = (a1 * o2 + a2) + int64_t(b1 * o2 + b2) * s.out_dim;
            int64_t col = (c1 * i2 + c2) + int64_t(d1 * i2 + d2) * s.in_dim;
            s.tm(row, col) += t1 * b.tm(a2 + int64_t(b2) * o2, c2 + int64_t(d2) * i2);
           }
       }
    return s;
}

bool Superoperator::is_cp(double tol) const {
    Mat c = choi();
    Mat h = 0.5 * (c + c.adjoint());
    if ((c - h).norm() > tol * 10 + 1e-12) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool Superoperator::is_tp(double tol) const {
    Mat c = choi();
    Mat t = Mat::Zero(in_dim, in_dim);
    for (int i = 0; i < in_dim; ++i)
        for (int j = 0; j < in_dim; ++j)
            for (int a = 0; a < out_dim; ++a)
                t(i, j) += c(int64_t(i) * out_dim + a, int64_t(j) * out_dim + a);
    return (t - Mat::Identity(in_dim, in_dim)).norm() <= tol;
}

double Superoperator::choi_frobenius_distance(const Superoperator& o) const {
    if (in_dim != o.in_dim || out_dim != o.out_dim)
        throw std::invalid_argument("choi_frobenius_distance: dimension mismatch");
    return (choi() - o.choi()).norm();
}

std::pair<double, double> choi_distance_bounds(const Superoperator& a, const Superoperator& b) {
    if (a.in_dim != b.in_dim || a.out_dim != b.out_dim)
        throw std::invalid_argument("choi_distance_bounds: dimension mismatch");
    Mat d = a.choi() - b.choi();
    Mat h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    double tn = es.eigenvalues().cwiseAbs().sum();
    return {tn / a.in_dim, tn};
}

} // namespace ftqlab
