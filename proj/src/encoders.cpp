#include "ftqlab/encoders.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftqlab {

std::vector<std::vector<Op>> Encoder::inverse_layers() const {
    std::vector<std::vector<Op>> out(layers.rbegin(), layers.rend());
    return out;
}

static Encoder synth(uint32_t n, std::vector<BitRow> xbasis_in,
                     std::vector<BitRow> xreps) {
    Encoder e;
    e.n = n;
    e.k = (uint32_t)xreps.size();
    e.xrows = gf2_row_basis(std::move(xbasis_in), n);

    std::vector<uint32_t> pivot_of_row;
    std::vector<uint8_t> is_pivot(n, 0);
    for (const BitRow& row : e.xrows) {
        uint32_t p = n;
        for (uint32_t c = 0; c < n; ++c)
            if (get_bit(row, c)) { p = c; break; }
        if (p == n) throw std::logic_error("synth: zero basis row");
        pivot_of_row.push_back(p);
        is_pivot[p] = 1;
        e.pivots.push_back(p);
    }

    // Reduce each logical X rep to have no support on pivots.
    for (BitRow xb : xreps) {
        for (size_t r = 0; r < e.xrows.size(); ++r)
            if (get_bit(xb, pivot_of_row[r])) row_xor(xb, e.xrows[r]);
        if (row_is_zero(xb))
            throw std::logic_error("synth: logical X rep lies in the stabilizer span");
        e.xbar.push_back(std::move(xb));
    }

    // Data wire i: in xbar[i], outside every other logical's fanout.
    std::vector<uint8_t> is_data(n, 0);
    for (size_t i = 0; i < e.xbar.size(); ++i) {
        uint32_t d = n;
        for (uint32_t w = 0; w < n && d == n; ++w) {
            if (!get_bit(e.xbar[i], w) || is_data[w]) continue;
            bool clash = false;
            for (size_t j = 0; j < e.xbar.size() && !clash; ++j)
                if (j != i && get_bit(e.xbar[j], w)) clash = true;
            if (!clash) d = w;
        }
        if (d == n) throw std::runtime_error("synth: no usable data wire for fanout");
        is_data[d] = 1;
        e.data.push_back(d);
    }

    for (uint32_t w = 0; w < n; ++w)
        if (!is_pivot[w] && !is_data[w]) e.others.push_back(w);

    // Z on data[i] picks up Z on every pivot whose row covers data[i].
    for (size_t i = 0; i < e.data.size(); ++i) {
        BitRow zb(words_for(n), 0);
        set_bit(zb, e.data[i], true);
        for (size_t r = 0; r < e.xrows.size(); ++r)
            if (get_bit(e.xrows[r], e.data[i])) set_bit(zb, pivot_of_row[r], true);
        e.zbar.push_back(std::move(zb));
    }

    // Z on a spectator wire w: Z_w, plus zbar[i] for each data fanout
    // covering w, plus Z on pivots of rows covering w.
    for (uint32_t w : e.others) {
        BitRow t(words_for(n), 0);
        set_bit(t, w, true);
        for (size_t i = 0; i < e.xbar.size(); ++i)
            if (get_bit(e.xbar[i], w)) row_xor(t, e.zbar[i]);
        for (size_t r = 0; r < e.xrows.size(); ++r)
            if (get_bit(e.xrows[r], w)) flip_bit(t, pivot_of_row[r]);
        e.trows.push_back(std::move(t));
    }

    if (!e.pivots.empty()) {
        std::vector<Op> hs;
        for (uint32_t p : e.pivots) hs.push_back(Op{OpKind::h, p});
        e.layers.push_back(std::move(hs));
    }
    auto fan = [&](uint32_t c, const BitRow& supp) {
        for (uint32_t w = 0; w < n; ++w)
            if (w != c && get_bit(supp, w))
                e.layers.push_back({Op{OpKind::cnot, c, w}});
    };
    // Data fanouts must precede row fanouts: a row fanout may target a
    // data wire, and only Z picked up there commutes through cleanly.
    for (size_t i = 0; i < e.data.size(); ++i) fan(e.data[i], e.xbar[i]);
    for (size_t r = 0; r < e.xrows.size(); ++r) fan(pivot_of_row[r], e.xrows[r]);
    return e;
}

Encoder build_encoder(const CssCode& code) {
    std::vector<BitRow> xreps;
    for (const PauliOp& lx : code.logical_x) xreps.push_back(lx.x);
    Encoder e = synth(code.n, code.h_x, std::move(xreps));
    if (e.others.size() != code.basis_z.size())
        throw std::logic_error("build_encoder: rank mismatch against Z side");
    return e;
}

Encoder build_group_prep(uint32_t n, std::vector<BitRow> xrows_in) {
    return synth(n, std::move(xrows_in), {});
}

} // namespace ftqlab
