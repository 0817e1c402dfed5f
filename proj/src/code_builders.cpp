#include "ftqlab/codes.hpp"
#include "ftqlab/toric.hpp"

#include <stdexcept>

namespace ftqlab {

static BitRow mask_of(uint32_t n, std::initializer_list<uint32_t> qubits) {
    BitRow r(words_for(n), 0);
    for (uint32_t q : qubits) set_bit(r, q, true);
    return r;
}

CssCode build_bitflip3() {
    uint32_t n = 3;
    std::vector<BitRow> hz = {mask_of(n, {0, 1}), mask_of(n, {1, 2})};
    PauliOp lx = PauliOp::identity(n);
    for (uint32_t q = 0; q < n; ++q) lx.set_x(q, true);
    PauliOp lz = PauliOp::single(n, 0, 'Z');
    return CssCode::from_parts(n, {}, std::move(hz), {lx}, {lz});
}

CssCode build_rotated_surface(uint32_t d) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("build_rotated_surface: distance must be odd and >= 3");
    uint32_t n = d * d;
    auto q_at = [d](uint32_t r, uint32_t c) { return r * d + c; };

    std::vector<BitRow> hx, hz;
    for (int r = -1; r < int(d); ++r) {
        for (int c = -1; c < int(d); ++c) {
            BitRow face(words_for(n), 0);
            int cnt = 0;
            for (int dr = 0; dr <= 1; ++dr)
                for (int dc = 0; dc <= 1; ++dc) {
                    int rr = r + dr, cc = c + dc;
                    if (rr < 0 || cc < 0 || rr >= int(d) || cc >= int(d)) continue;
                    set_bit(face, q_at(uint32_t(rr), uint32_t(cc)), true);
                    ++cnt;
                }
            if (cnt < 2) continue;
            bool x_type = ((r + c) & 1) != 0;
            bool interior = (r >= 0 && r < int(d) - 1 && c >= 0 && c < int(d) - 1);
            if (!interior) {
                bool top_bottom = (r == -1 || r == int(d) - 1);
                // top/bottom boundary keeps X faces, left/right keeps Z
                if (top_bottom != x_type) continue;
            }
            if (x_type) hx.push_back(face);
            else hz.push_back(face);
        }
    }

    PauliOp lx = PauliOp::identity(n);
    for (uint32_t r = 0; r < d; ++r) lx.set_x(q_at(r, 0), true);
    PauliOp lz = PauliOp::identity(n);
    for (uint32_t c = 0; c < d; ++c) lz.set_z(q_at(0, c), true);
    return CssCode::from_parts(n, std::move(hx), std::move(hz), {lx}, {lz});
}

CssCode build_named_code(const std::string& name) {
    if (name == "bitflip3") return build_bitflip3();
    if (name.rfind("surface_d", 0) == 0) {
        uint32_t d = uint32_t(std::stoul(name.substr(9)));
        return build_rotated_surface(d);
    }
    if (name.rfind("toric_L", 0) == 0) {
        uint32_t L = uint32_t(std::stoul(name.substr(7)));
        return build_toric(L).code;
    }
    throw std::invalid_argument("unknown code name: " + name);
}

CssCode load_code_by_spec(const std::string& spec) {
    bool is_path = spec.find('/') != std::string::npos ||
                   (spec.size() > 5 && spec.compare(spec.size() - 5, 5, ".code") == 0);
    if (is_path) return load_code_file(spec);
    return build_named_code(spec);
}

} // namespace ftqlab
