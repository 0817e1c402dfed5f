#pragma once
#include <cstdint>
#include <string>

#include "ftqlab/gf2.hpp"

namespace ftqlab {

// n-qubit Pauli stored as i^phase * X^x * Z^z with phase mod 4.
// Qubit q lives at bit q of the packed rows. Y_q means x and z both set
// on q with a +1 phase contribution folded into `phase` (Y = i X Z).
struct PauliOp {
    uint32_t n = 0;
    uint8_t phase = 0;   // exponent of i
    BitRow x;
    BitRow z;

    static PauliOp identity(uint32_t n);
    static PauliOp single(uint32_t n, uint32_t qubit, char letter);
    // String form accepted by parse: optional prefix +, -, i, +i, -i,
    // then one of I X Y Z per qubit, qubit 0 first.
    static PauliOp parse(uint32_t n, const std::string& text);

    bool x_at(uint32_t q) const { return get_bit(x, q); }
    bool z_at(uint32_t q) const { return get_bit(z, q); }
    void set_x(uint32_t q, bool v) { set_bit(x, q, v); }
    void set_z(uint32_t q, bool v) { set_bit(z, q, v); }
    char letter_at(uint32_t q) const;

    size_t weight() const;
    bool is_identity() const;            // phase ignored
    bool is_identity_strict() const;     // phase must be 0 too
    bool commutes_with(const PauliOp& o) const;

    void mul_right(const PauliOp& o);    // this := this * o
    PauliOp times(const PauliOp& o) const;
    PauliOp inverse() const;

    std::string str() const;             // e.g. "-iXIZY"
    bool operator==(const PauliOp& o) const;
};

} // namespace ftqlab
