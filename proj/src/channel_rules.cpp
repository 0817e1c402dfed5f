#include "ftqlab/channel.hpp"
#include "ftqlab/codes.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace ftqlab {

Superoperator DerivedCode::embed() const { return Superoperator::from_kraus({u}); }

Superoperator DerivedCode::embed_adj() const { return Superoperator::from_kraus({u.adjoint()}); }

Mat build_encoding_isometry(const CssCode& code) {
    if (code.n > 12) throw std::invalid_argument("build_encoding_isometry: dimension cap exceeded");
    int64_t dim = int64_t(1) << code.n;
    int64_t cols = int64_t(1) << code.k;
    size_t rx = code.basis_x.size();
    double amp = 1.0 / std::sqrt(double(uint64_t(1) << rx));
    Mat v = Mat::Zero(dim, cols);
    for (int64_t b = 0; b < cols; ++b) {
        uint64_t shift = 0;
        for (uint32_t i = 0; i < code.k; ++i)
            if ((b >> i) & 1) shift ^= code.logical_x[i].x[0];
        // all 2^rx coset elements of span(basis_x), Gray order
        uint64_t cur = shift;
        v(int64_t(cur), b) = amp;
        for (uint64_t g = 1; g < (uint64_t(1) << rx); ++g) {
            cur ^= code.basis_x[__builtin_ctzll(g)][0];
            v(int64_t(cur), b) = amp;
        }
    }
    return v;
}

DerivedCode build_derived_code(const CssCode& code, std::vector<PauliOp> errors) {
    if (code.k != 1) throw std::invalid_argument("build_derived_code: base code must have k=1");
    if (errors.empty()) throw std::invalid_argument("build_derived_code: empty error basis");
    bool have_identity = false;
    std::set<std::string> seen;
    for (auto& e : errors) {
        if (e.n != code.n) throw std::invalid_argument("build_derived_code: error size mismatch");
        if (e.is_identity()) have_identity = true;
        std::string s = code.syndrome(e).str();
        if (!seen.insert(s).second)
            throw std::invalid_argument("build_derived_code: duplicate syndrome " + s);
    }
    if (!have_identity) throw std::invalid_argument("build_derived_code: identity missing from error basis");

    DerivedCode d;
    d.base = code;
    d.error_basis = std::move(errors);
    d.f_dim = int(d.error_basis.size());
    Mat v = build_encoding_isometry(code);
    int64_t dim = int64_t(1) << code.n;
    d.u = Mat::Zero(dim, 2 * d.f_dim);
    for (int b = 0; b < 2; ++b)
        for (int j = 0; j < d.f_dim; ++j)
            d.u.col(int64_t(b) * d.f_dim + j) = pauli_matrix(d.error_basis[j]) * v.col(b);
    if (!is_isometry(d.u, 1e-10))
        throw std::runtime_error("build_derived_code: constructed u is not an isometry");
    return d;
}

Superoperator ideal_decoder(const DerivedCode& d) {
    return Superoperator::compose(Superoperator::trace_out_second(2, d.f_dim), d.embed_adj());
}

RepReport check_representation(const Superoperator& t, const Superoperator& p,
                               const DerivedCode& d_in, const DerivedCode& d_out) {
    int n_in = int(d_in.u.rows()), n_out = int(d_out.u.rows());
    if (t.in_dim != n_in || t.out_dim != n_out)
        throw std::invalid_argument("check_representation: t dims do not match codes");
    if (p.in_dim != 2 || p.out_dim != 2)
        throw std::invalid_argument("check_representation: p must be a qubit channel");

    Superoperator j_in = d_in.embed();
    Superoperator j_out = d_out.embed();
    Superoperator j_out_adj = d_out.embed_adj();
    Superoperator mu_in = Superoperator::trace_out_second(2, d_in.f_dim);
    Superoperator mu_out = Superoperator::trace_out_second(2, d_out.f_dim);

    RepReport rep;
    rep.r = Superoperator::compose(j_out_adj, Superoperator::compose(t, j_in));
    rep.s = Superoperator::compose(j_out_adj, t);
    rep.res1 = Superoperator::compose(mu_out, rep.r)
                   .choi_frobenius_distance(Superoperator::compose(p, mu_in));
    rep.res2 = Superoperator::compose(j_out, rep.r)
                   .choi_frobenius_distance(Superoperator::compose(t, j_in));
    rep.res3 = Superoperator::compose(j_out, rep.s).choi_frobenius_distance(t);
    rep.r_cp = rep.r.is_cp();
    rep.r_tp = rep.r.is_tp();
    rep.s_cp = rep.s.is_cp();
    rep.s_tp = rep.s.is_tp();
    return rep;
}

static bool superop_is_unitary(const Superoperator& p) {
    if (p.in_dim != p.out_dim) return false;
    if (!p.is_cp(1e-9) || !p.is_tp(1e-9)) return false;
    // TP + Choi rank 1 <=> unitary conjugation
    Mat c = p.choi();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (c + c.adjoint()));
    auto ev = es.eigenvalues();
    double second = 0;
    for (int i = 0; i + 1 < ev.size(); ++i) second = std::max(second, std::abs(ev[i]));
    return second <= 1e-8;
}

FactorReport factor_unitary_rule(const Superoperator& r_low, const DerivedCode& d,
                                 const Superoperator& p, double tol) {
    int f = d.f_dim;
    if (r_low.in_dim != 2 * f || r_low.out_dim != 2 * f)
        throw std::invalid_argument("factor_unitary_rule: r_low dims do not match code");
    if (!superop_is_unitary(p))
        throw std::invalid_argument("factor_unitary_rule: p is not unitary");

    // F(|c><d|) = tr_M [ r_low( (I_M / 2) (x) |c><d| ) ]
    FactorReport rep;
    rep.f.in_dim = rep.f.out_dim = f;
    rep.f.tm = Mat::Zero(int64_t(f) * f, int64_t(f) * f);
    for (int c = 0; c < f; ++c)
        for (int dd = 0; dd < f; ++dd) {
            Mat in = Mat::Zero(2 * f, 2 * f);
            for (int b = 0; b < 2; ++b) in(b * f + c, b * f + dd) = 0.5;
            Mat out = r_low.apply(in);
            Mat fo = partial_trace_first(out, 2, f);
            for (int b2 = 0; b2 < f; ++b2)
                for (int a2 = 0; a2 < f; ++a2)
                    rep.f.tm(a2 + int64_t(b2) * f, c + int64_t(dd) * f) = fo(a2, b2);
        }
    rep.residual = r_low.choi_frobenius_distance(Superoperator::tensor(p, rep.f));
    rep.f_cp = rep.f.is_cp();
    rep.f_tp = rep.f.is_tp();
    if (rep.residual > tol)
        throw std::runtime_error("factor_unitary_rule: product residual " +
                                 std::to_string(rep.residual) + " exceeds tolerance");
    return rep;
}

PrepReport check_prep_rule(const Superoperator& r, const DerivedCode& d,
                           const Vec& psi, double tol) {
    if (r.in_dim != 1) throw std::invalid_argument("check_prep_rule: r must be a preparation");
    if (r.out_dim != d.u.rows()) throw std::invalid_argument("check_prep_rule: r output dim mismatch");
    if (psi.size() != 2) throw std::invalid_argument("check_prep_rule: psi must be a qubit state");

    Mat one = Mat::Ones(1, 1);
    Mat omega = d.u.adjoint() * r.apply(one) * d.u;
    PrepReport rep;
    rep.gamma = partial_trace_first(omega, 2, d.f_dim);
    Mat proj = psi * psi.adjoint();
    rep.residual = (omega - kron(proj, rep.gamma)).norm();
    if (rep.residual > tol)
        throw std::runtime_error("check_prep_rule: factorization residual " +
                                 std::to_string(rep.residual) + " exceeds tolerance");
    return rep;
}

double check_measurement_rule(const Superoperator& r, const DerivedCode& d,
                              const Superoperator& p) {
    Superoperator rhs = Superoperator::compose(p, ideal_decoder(d));
    return r.choi_frobenius_distance(rhs);
}

std::vector<GoldenCase> load_golden_cases(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open golden case file: " + path);
    nlohmann::json j;
    f >> j;
    std::vector<GoldenCase> cases;
    for (auto& e : j.at("cases")) {
        GoldenCase c;
        c.case_id = e.at("case_id").get<std::string>();
        c.code_id = e.at("code_id").get<std::string>();
        for (auto& s : e.at("error_basis")) c.error_basis.push_back(s.get<std::string>());
        c.channel_kind = e.at("channel_kind").get<std::string>();
        c.expected_residual_max = e.at("expected_residual_max").get<double>();
        cases.push_back(c);
    }
    return cases;
}

GoldenResult run_golden_case(const GoldenCase& c) {
    CssCode code = build_named_code(c.code_id);
    std::vector<PauliOp> errors;
    for (auto& s : c.error_basis) errors.push_back(PauliOp::parse(code.n, s));
    DerivedCode d = build_derived_code(code, errors);
    int dim = int(d.u.rows());

    GoldenResult out;
    out.c = c;
    if (c.channel_kind == "transversal_x" || c.channel_kind == "identity") {
        PauliOp tp = PauliOp::identity(code.n);
        char logical = 'I';
        if (c.channel_kind == "transversal_x") {
            for (uint32_t q = 0; q < code.n; ++q) tp.set_x(q, true);
            logical = 'X';
        }
        Superoperator t = Superoperator::from_unitary(pauli_matrix(tp));
        Superoperator p = Superoperator::from_unitary(gate_matrix_1q(logical));
        RepReport rep = check_representation(t, p, d, d);
        out.res1 = rep.res1;
        out.res2 = rep.res2;
        out.res3 = rep.res3;
        out.channels_ok = rep.r_cp && rep.r_tp && rep.s_cp;
        FactorReport fr = factor_unitary_rule(rep.r, d, p, c.expected_residual_max);
        out.extra = fr.residual;
        out.channels_ok = out.channels_ok && fr.f_cp && fr.f_tp;
    } else if (c.channel_kind == "prep_zero") {
        Mat v = build_encoding_isometry(code);
        Mat rho = v.col(0) * v.col(0).adjoint();
        Superoperator r = Superoperator::prepare(rho);
        Vec psi(2);
        psi << 1, 0;
        PrepReport pr = check_prep_rule(r, d, psi, c.expected_residual_max);
        out.res1 = pr.residual;
        // gamma must be the pure zero-syndrome state
        int j_id = 0;
        while (j_id < d.f_dim && !d.error_basis[j_id].is_identity()) ++j_id;
        Mat want = Mat::Zero(d.f_dim, d.f_dim);
        want(j_id, j_id) = 1;
        out.extra = (pr.gamma - want).norm();
        out.channels_ok = true;
    } else if (c.channel_kind == "measure_logical_z") {
        Mat k0 = projector_1q(0, 'Z'), k1 = projector_1q(1, 'Z');
        Superoperator p = Superoperator::from_kraus({k0, k1});
        Superoperator r = Superoperator::compose(p, ideal_decoder(d));
        out.res1 = check_measurement_rule(r, d, p);
        out.channels_ok = r.is_cp() && r.is_tp();
        (void)dim;
    } else {
        throw std::invalid_argument("run_golden_case: unknown channel_kind " + c.channel_kind);
    }
    double worst = std::max(std::max(out.res1, out.res2), std::max(out.res3, out.extra));
    out.pass = out.channels_ok && worst <= c.expected_residual_max;
    return out;
}

} // namespace ftqlab
