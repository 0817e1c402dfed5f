#pragma once
#include <string>
#include <vector>

#include "ftqlab/pauli.hpp"

namespace ftqlab {

struct Syndrome {
    size_t nbits = 0;
    BitRow bits;

    static Syndrome zeros(size_t nbits);
    bool any() const;
    bool get(size_t i) const { return get_bit(bits, i); }
    void set(size_t i, bool v) { set_bit(bits, i, v); }
    void flip(size_t i) { flip_bit(bits, i); }
    std::string str() const;
    bool operator==(const Syndrome& o) const { return nbits == o.nbits && bits == o.bits; }
};

// CSS stabilizer code. h_x rows are X-type generator supports, h_z rows
// Z-type. Syndrome bit order: all h_x rows first, then all h_z rows.
// Logical representatives are pure X-type (logical_x) / Z-type (logical_z).
struct CssCode {
    uint32_t n = 0;
    uint32_t k = 0;
    std::vector<BitRow> h_x;
    std::vector<BitRow> h_z;
    std::vector<PauliOp> logical_x;
    std::vector<PauliOp> logical_z;
    // Reduced row bases of the two generator spans, filled by from_parts.
    std::vector<BitRow> basis_x;
    std::vector<BitRow> basis_z;

    static CssCode from_parts(uint32_t n,
                              std::vector<BitRow> hx, std::vector<BitRow> hz,
                              std::vector<PauliOp> lx, std::vector<PauliOp> lz);

    size_t num_generators() const { return h_x.size() + h_z.size(); }
    PauliOp generator(size_t i) const;

    Syndrome syndrome(const PauliOp& e) const;

    // Minimum weight of e modulo the stabilizer group, computed per
    // Pauli sector and combined with max. Throws if a sector basis
    // exceeds 20 rows (enumeration would pass 2^20 cosets).
    size_t reduced_weight(const PauliOp& e) const;

    // Minimum over logicals of the coset minimum weight. A sector with
    // no generators is skipped entirely when the other sector has some
    // (repetition codes protect one Pauli type only).
    uint32_t distance() const;

    // "detectable" if the syndrome is nonzero, otherwise k letters from
    // {I,X,Z,Y} giving the induced logical operator.
    std::string logical_class(const PauliOp& e) const;

    std::string to_text() const;
    static CssCode parse_text(const std::string& text);
};

CssCode load_code_file(const std::string& path);
void save_code_file(const CssCode& code, const std::string& path);

} // namespace ftqlab
