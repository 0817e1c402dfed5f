#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ftqlab {

// Word-packed GF(2) row vectors, bit b of word w = column 64*w + b.
using BitRow = std::vector<uint64_t>;

inline size_t words_for(size_t ncols) { return (ncols + 63) / 64; }
inline bool get_bit(const BitRow& r, size_t c) { return (r[c >> 6] >> (c & 63)) & 1u; }
inline void set_bit(BitRow& r, size_t c, bool v) {
    uint64_t m = 1ull << (c & 63);
    if (v) r[c >> 6] |= m; else r[c >> 6] &= ~m;
}
inline void flip_bit(BitRow& r, size_t c) { r[c >> 6] ^= 1ull << (c & 63); }

size_t row_weight(const BitRow& r);
bool row_is_zero(const BitRow& r);
void row_xor(BitRow& dst, const BitRow& src);
uint32_t row_and_parity(const BitRow& a, const BitRow& b);

size_t gf2_rank(std::vector<BitRow> rows, size_t ncols);

// Row-reduced basis of the span (pivot-ordered, may have fewer rows than input).
std::vector<BitRow> gf2_row_basis(std::vector<BitRow> rows, size_t ncols);

// Is v in the rowspace of basis? basis must already be in reduced form
// from gf2_row_basis. If combo is non-null, the basis-row selector bits
// are written there (bit i set = basis row i used).
bool gf2_in_span(const std::vector<BitRow>& basis, size_t ncols, BitRow v,
                 std::vector<uint64_t>* combo = nullptr);

// Any x with a[i] . x = b[i] for every constraint row, free variables 0.
// nullopt when the system is inconsistent.
std::optional<BitRow> gf2_solve(std::vector<BitRow> a, std::vector<uint8_t> b,
                                size_t ncols);

} // namespace ftqlab
