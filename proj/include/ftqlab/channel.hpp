#pragma once
#include <string>
#include <vector>

#include "ftqlab/css_code.hpp"
#include "ftqlab/dense.hpp"

namespace ftqlab {

// Many-to-one code built on a k=1 CSS base: code space spanned by
// E_j V |b> over an error basis with pairwise distinct syndromes.
// u maps C^2 (x) F -> physical space, column b*f_dim + j = E_j V |b>.
struct DerivedCode {
    CssCode base;
    std::vector<PauliOp> error_basis;
    Mat u;
    int f_dim = 0;

    Superoperator embed() const;     // conjugation by u, L-level -> physical
    Superoperator embed_adj() const; // conjugation by u-dagger
};

Mat build_encoding_isometry(const CssCode& code);
DerivedCode build_derived_code(const CssCode& code, std::vector<PauliOp> errors);

// mu* = tr_F ( u-dagger (.) u ): physical -> logical qubit.
Superoperator ideal_decoder(const DerivedCode& d);

struct RepReport {
    Superoperator r;
    Superoperator s;
    double res1 = 0; // logical-level square
    double res2 = 0; // embedding square
    double res3 = 0; // image-in-code-space condition
    bool r_cp = false, r_tp = false;
    bool s_cp = false, s_tp = false;
    double max_residual() const { return std::max(res1, std::max(res2, res3)); }
};

// Builds R and S from T directly (R = J'* T J, S = J'* T) and reports
// how well the three squares of the commuting diagram close, as
// Frobenius norms of Choi differences.
RepReport check_representation(const Superoperator& t, const Superoperator& p,
                               const DerivedCode& d_in, const DerivedCode& d_out);

struct FactorReport {
    Superoperator f;
    double residual = 0;
    bool f_cp = false, f_tp = false;
};

// For unitary p: r_low (the L-level channel, already u-rotated) must
// factor as p (x) F; F is extracted by tracing out the logical factor.
// Throws if p is not unitary or the product residual exceeds tol.
FactorReport factor_unitary_rule(const Superoperator& r_low, const DerivedCode& d,
                                 const Superoperator& p, double tol = 1e-9);

struct PrepReport {
    Mat gamma;
    double residual = 0;
};

// For a preparation channel r (input dim 1): u-dagger r u must factor
// as |psi><psi| (x) gamma. Throws if the residual exceeds tol.
PrepReport check_prep_rule(const Superoperator& r, const DerivedCode& d,
                           const Vec& psi, double tol = 1e-9);

// Residual of r == p o mu* for a measurement channel p.
double check_measurement_rule(const Superoperator& r, const DerivedCode& d,
                              const Superoperator& p);

struct GoldenCase {
    std::string case_id;
    std::string code_id;
    std::vector<std::string> error_basis;
    std::string channel_kind;
    double expected_residual_max = 0;
};

struct GoldenResult {
    GoldenCase c;
    double res1 = 0, res2 = 0, res3 = 0, extra = 0;
    bool channels_ok = false; // CP/TP flags demanded by the kind
    bool pass = false;
};

std::vector<GoldenCase> load_golden_cases(const std::string& path);
GoldenResult run_golden_case(const GoldenCase& c);

} // namespace ftqlab
