#include "ftqlab/shor_ec.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftqlab {

std::vector<std::pair<char, BitRow>> generator_rows(const CssCode& code) {
    std::vector<std::pair<char, BitRow>> rows;
    for (const auto& r : code.h_x) rows.emplace_back('X', r);
    for (const auto& r : code.h_z) rows.emplace_back('Z', r);
    return rows;
}

Syndrome rows_syndrome(const std::vector<std::pair<char, BitRow>>& rows, const PauliOp& e) {
    Syndrome s = Syndrome::zeros(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        uint32_t bit = rows[i].first == 'X' ? row_and_parity(rows[i].second, e.z)
                                            : row_and_parity(rows[i].second, e.x);
        s.set(i, bit != 0);
    }
    return s;
}

std::vector<uint8_t> ShorEcInfo::round_string(const std::vector<uint8_t>& rec,
                                              uint32_t round) const {
    std::vector<uint8_t> s(rows.size());
    for (size_t g = 0; g < rows.size(); ++g) {
        uint8_t p = 0;
        for (int32_t slot : cat_recs[round][g]) p ^= rec[slot];
        s[g] = p;
    }
    return s;
}

bool ShorEcInfo::agreed_before(const std::vector<uint8_t>& rec, uint32_t round) const {
    for (uint32_t r = t; r < round; ++r) {
        std::vector<uint8_t> want = round_string(rec, r);
        bool eq = true;
        for (uint32_t k = r - t; k < r && eq; ++k) eq = round_string(rec, k) == want;
        if (eq) return true;
    }
    return false;
}

uint32_t ShorEcInfo::agreed_round(const std::vector<uint8_t>& rec) const {
    for (uint32_t r = t; r < rounds; ++r) {
        std::vector<uint8_t> want = round_string(rec, r);
        bool eq = true;
        for (uint32_t k = r - t; k < r && eq; ++k) eq = round_string(rec, k) == want;
        if (eq) return r;
    }
    return rounds - 1;
}

bool ShorEcInfo::exhausted(const std::vector<uint8_t>& rec) const {
    return !agreed_before(rec, rounds);
}

Syndrome ShorEcInfo::agreed_syndrome(const std::vector<uint8_t>& rec) const {
    std::vector<uint8_t> s = round_string(rec, agreed_round(rec));
    Syndrome out = Syndrome::zeros(s.size());
    for (size_t i = 0; i < s.size(); ++i) out.set(i, s[i] != 0);
    return out;
}

ShorEcInfo build_shor_ec(CircuitBuilder& b, uint32_t at_layer, const std::vector<uint32_t>& data,
                         const std::vector<std::pair<char, BitRow>>& rows, uint32_t t,
                         std::shared_ptr<LookupDecoder> dec, const std::vector<uint32_t>& cat,
                         const std::vector<uint32_t>& ver) {
    auto info = std::make_shared<ShorEcInfo>();
    info->data = data;
    info->rows = rows;
    info->cat = cat;
    info->ver = ver;
    info->t = t;
    info->rounds = (t + 1) * (t + 1);
    info->dec = std::move(dec);

    size_t wmax = 0;
    for (const auto& [ty, row] : rows) {
        if (ty != 'X' && ty != 'Z') throw std::invalid_argument("build_shor_ec: row type");
        wmax = std::max(wmax, row_weight(row));
    }
    if (wmax == 0) throw std::invalid_argument("build_shor_ec: empty row");
    if (cat.size() < wmax || ver.size() + 1 < wmax)
        throw std::invalid_argument("build_shor_ec: generator weight exceeds ancilla budget");

    std::vector<std::vector<Op>> block;
    auto layer = [&](std::vector<Op> ops) { block.push_back(std::move(ops)); };

    info->cat_recs.resize(info->rounds);
    info->ver_recs.resize(info->rounds);
    info->gadget.resize(info->rounds);
    info->round_guard.assign(info->rounds, -1);

    for (uint32_t rd = 0; rd < info->rounds; ++rd) {
        info->cat_recs[rd].resize(rows.size());
        info->ver_recs[rd].resize(rows.size());
        info->gadget[rd].resize(rows.size());
        if (rd > 0)
            info->round_guard[rd] = b.new_guard(
                [info, rd](const std::vector<uint8_t>& rec) { return !info->agreed_before(rec, rd); });

        for (size_t g = 0; g < rows.size(); ++g) {
            const auto& [ty, row] = rows[g];
            std::vector<uint32_t> supp;
            for (uint32_t q = 0; q < uint32_t(data.size()); ++q)
                if (get_bit(row, q)) supp.push_back(q);
            uint32_t w = uint32_t(supp.size());
            EcRowGadget& gd = info->gadget[rd][g];

            for (int a = 0; a < 3; ++a) {
                int32_t grp = info->round_guard[rd];
                if (a > 0)
                    grp = b.new_guard([info, rd, g, a](const std::vector<uint8_t>& rec) {
                        if (info->agreed_before(rec, rd)) return false;
                        for (int ap = 0; ap < a; ++ap) {
                            bool failed = false;
                            for (int32_t slot : info->ver_recs[rd][g][ap])
                                if (rec[slot]) { failed = true; break; }
                            if (!failed) return false;
                        }
                        return true;
                    });
                gd.attempt_begin[a] = at_layer + uint32_t(block.size());

                std::vector<Op> prep;
                prep.push_back(Op{OpKind::prep_x, cat[0], 0, -1, -1, 0, grp});
                for (uint32_t j = 1; j < w; ++j)
                    prep.push_back(Op{OpKind::prep_z, cat[j], 0, -1, -1, 0, grp});
                for (uint32_t j = 0; j + 1 < w; ++j)
                    prep.push_back(Op{OpKind::prep_z, ver[j], 0, -1, -1, 0, grp});
                layer(std::move(prep));

                for (uint32_t j = 1; j < w; ++j)
                    layer({Op{OpKind::cnot, cat[j - 1], cat[j], -1, -1, 0, grp}});

                if (w >= 2) {
                    std::vector<Op> v1, v2, vm;
                    auto& vr = info->ver_recs[rd][g][a];
                    for (uint32_t j = 0; j + 1 < w; ++j) {
                        v1.push_back(Op{OpKind::cnot, cat[j], ver[j], -1, -1, 0, grp});
                        v2.push_back(Op{OpKind::cnot, cat[j + 1], ver[j], -1, -1, 0, grp});
                        vr.push_back(b.new_record());
                        vm.push_back(Op{OpKind::meas_z, ver[j], 0, vr.back(), -1, 0, grp});
                    }
                    layer(std::move(v1));
                    layer(std::move(v2));
                    layer(std::move(vm));
                }
            }

            // coupling phase, guarded by the round only
            int32_t grp = info->round_guard[rd];
            gd.coupling_begin = at_layer + uint32_t(block.size());
            std::vector<Op> cpl, hl, ml;
            auto& cr = info->cat_recs[rd][g];
            for (uint32_t j = 0; j < w; ++j) {
                if (ty == 'X')
                    cpl.push_back(Op{OpKind::cnot, cat[j], data[supp[j]], -1, -1, 0, grp});
                else
                    cpl.push_back(Op{OpKind::cz, cat[j], data[supp[j]], -1, -1, 0, grp});
                hl.push_back(Op{OpKind::h, cat[j], 0, -1, -1, 0, grp});
                cr.push_back(b.new_record());
                ml.push_back(Op{OpKind::meas_z, cat[j], 0, cr.back(), -1, 0, grp});
            }
            layer(std::move(cpl));
            layer(std::move(hl));
            layer(std::move(ml));
            gd.end = at_layer + uint32_t(block.size());
        }
    }

    // final correction from the agreed string
    uint32_t n_code = uint32_t(data.size());
    info->corr_ctrl = b.new_ctrl([info, n_code](const std::vector<uint8_t>& rec) {
        PauliOp corr = info->dec->decode_repaired(info->agreed_syndrome(rec));
        std::vector<uint8_t> out(2 * n_code);
        for (uint32_t q = 0; q < n_code; ++q) {
            out[q] = get_bit(corr.x, q);
            out[n_code + q] = get_bit(corr.z, q);
        }
        return out;
    });
    std::vector<Op> fx_layer, fz_layer;
    for (uint32_t q = 0; q < n_code; ++q) {
        fx_layer.push_back(Op{OpKind::control, data[q], 0, -1, info->corr_ctrl, q, -1, 1, 0});
        fz_layer.push_back(
            Op{OpKind::control, data[q], 0, -1, info->corr_ctrl, n_code + q, -1, 0, 1});
    }
    info->corr_layer_x = at_layer + uint32_t(block.size());
    layer(std::move(fx_layer));
    info->corr_layer_z = at_layer + uint32_t(block.size());
    layer(std::move(fz_layer));

    b.merge_at(at_layer, block);
    return *info;
}

} // namespace ftqlab
