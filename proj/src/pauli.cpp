#include "ftqlab/pauli.hpp"
#include "ftqlab/kernels.hpp"

#include <stdexcept>

namespace ftqlab {

PauliOp PauliOp::identity(uint32_t n) {
    PauliOp p;
    p.n = n;
    p.x.assign(words_for(n), 0);
    p.z.assign(words_for(n), 0);
    return p;
}

PauliOp PauliOp::single(uint32_t n, uint32_t qubit, char letter) {
    if (qubit >= n) throw std::invalid_argument("PauliOp::single: qubit out of range");
    PauliOp p = identity(n);
    switch (letter) {
        case 'I': break;
        case 'X': p.set_x(qubit, true); break;
        case 'Z': p.set_z(qubit, true); break;
        case 'Y':
            p.set_x(qubit, true);
            p.set_z(qubit, true);
            p.phase = 1;
            break;
        default: throw std::invalid_argument("PauliOp::single: letter must be I, X, Y or Z");
    }
    return p;
}

PauliOp PauliOp::parse(uint32_t n, const std::string& text) {
    size_t i = 0;
    uint8_t pre = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') pre = 2;
        ++i;
    }
    if (i < text.size() && text[i] == 'i') {
        pre = (pre + 1) & 3;
        ++i;
    }
    if (text.size() - i != n)
        throw std::invalid_argument("PauliOp::parse: expected " + std::to_string(n) + " letters");
    PauliOp p = identity(n);
    uint32_t ys = 0;
    for (uint32_t q = 0; q < n; ++q) {
        switch (text[i + q]) {
            case 'I': break;
            case 'X': p.set_x(q, true); break;
            case 'Z': p.set_z(q, true); break;
            case 'Y': p.set_x(q, true); p.set_z(q, true); ++ys; break;
            default: throw std::invalid_argument("PauliOp::parse: bad letter");
        }
    }
    p.phase = static_cast<uint8_t>((pre + ys) & 3);
    return p;
}

char PauliOp::letter_at(uint32_t q) const {
    bool xb = x_at(q), zb = z_at(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

size_t PauliOp::weight() const { return kernels().popcount_or(x.data(), z.data(), x.size()); }

bool PauliOp::is_identity() const { return row_is_zero(x) && row_is_zero(z); }

bool PauliOp::is_identity_strict() const { return is_identity() && phase == 0; }

bool PauliOp::commutes_with(const PauliOp& o) const {
    if (n != o.n) throw std::invalid_argument("commutes_with: size mismatch");
    return (row_and_parity(x, o.z) ^ row_and_parity(z, o.x)) == 0;
}

void PauliOp::mul_right(const PauliOp& o) {
    if (n != o.n) throw std::invalid_argument("mul_right: size mismatch");
    phase = static_cast<uint8_t>((phase + o.phase + 2u * row_and_parity(z, o.x)) & 3);
    row_xor(x, o.x);
    row_xor(z, o.z);
}

PauliOp PauliOp::times(const PauliOp& o) const {
    PauliOp r = *this;
    r.mul_right(o);
    return r;
}

PauliOp PauliOp::inverse() const {
    PauliOp r = *this;
    r.phase = static_cast<uint8_t>((4 - phase + 2u * row_and_parity(z, x)) & 3);
    return r;
}

std::string PauliOp::str() const {
    size_t yc = 0;
    for (size_t w = 0; w < x.size(); ++w) yc += __builtin_popcountll(x[w] & z[w]);
    static const char* pre[4] = {"+", "+i", "-", "-i"};
    std::string s = pre[(phase + 4 - (yc & 3)) & 3];
    for (uint32_t q = 0; q < n; ++q) s += letter_at(q);
    return s;
}

bool PauliOp::operator==(const PauliOp& o) const {
    return n == o.n && phase == o.phase && x == o.x && z == o.z;
}

} // namespace ftqlab
