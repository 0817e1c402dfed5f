#include "ftqlab/gf2.hpp"
#include "ftqlab/kernels.hpp"

#include <stdexcept>

namespace ftqlab {

size_t row_weight(const BitRow& r) { return kernels().popcount(r.data(), r.size()); }

bool row_is_zero(const BitRow& r) {
    for (uint64_t w : r) if (w) return false;
    return true;
}

void row_xor(BitRow& dst, const BitRow& src) {
    if (dst.size() != src.size()) throw std::invalid_argument("row_xor: length mismatch");
    kernels().xor_into(dst.data(), src.data(), dst.size());
}

uint32_t row_and_parity(const BitRow& a, const BitRow& b) {
    if (a.size() != b.size()) throw std::invalid_argument("row_and_parity: length mismatch");
    return kernels().and_parity(a.data(), b.data(), a.size());
}

static std::vector<BitRow> reduce(std::vector<BitRow>& rows, size_t ncols, std::vector<size_t>* pivots) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t sel = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (get_bit(rows[i], c)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r && get_bit(rows[i], c)) row_xor(rows[i], rows[r]);
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = piv;
    // collect only now: later eliminations back-substitute into earlier
    // pivot rows, and the returned basis must reflect that
    return std::vector<BitRow>(rows.begin(), rows.begin() + r);
}

size_t gf2_rank(std::vector<BitRow> rows, size_t ncols) {
    return reduce(rows, ncols, nullptr).size();
}

std::vector<BitRow> gf2_row_basis(std::vector<BitRow> rows, size_t ncols) {
    return reduce(rows, ncols, nullptr);
}

bool gf2_in_span(const std::vector<BitRow>& basis, size_t ncols, BitRow v,
                 std::vector<uint64_t>* combo) {
    if (combo) combo->assign(words_for(basis.size() ? basis.size() : 1), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        // Pivot column of reduced basis row i = its lowest set column.
        size_t pc = ncols;
        for (size_t c = 0; c < ncols; ++c)
            if (get_bit(basis[i], c)) { pc = c; break; }
        if (pc == ncols) continue;
        if (get_bit(v, pc)) {
            row_xor(v, basis[i]);
            if (combo) (*combo)[i >> 6] ^= 1ull << (i & 63);
        }
    }
    return row_is_zero(v);
}

std::optional<BitRow> gf2_solve(std::vector<BitRow> a, std::vector<uint8_t> b,
                                size_t ncols) {
    if (a.size() != b.size()) throw std::invalid_argument("gf2_solve: size mismatch");
    std::vector<size_t> pivot_col(a.size(), ncols);
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < a.size(); ++c) {
        size_t sel = a.size();
        for (size_t i = r; i < a.size(); ++i)
            if (get_bit(a[i], c)) { sel = i; break; }
        if (sel == a.size()) continue;
        std::swap(a[r], a[sel]);
        std::swap(b[r], b[sel]);
        for (size_t i = 0; i < a.size(); ++i)
            if (i != r && get_bit(a[i], c)) { row_xor(a[i], a[r]); b[i] ^= b[r]; }
        pivot_col[r] = c;
        ++r;
    }
    for (size_t i = r; i < a.size(); ++i)
        if (b[i]) return std::nullopt;
    BitRow x(words_for(ncols ? ncols : 1), 0);
    for (size_t i = 0; i < r; ++i)
        if (b[i]) set_bit(x, pivot_col[i], true);
    return x;
}

} // namespace ftqlab
