#pragma once

#include <cstdint>
#include <vector>

#include "ftqlab/css_code.hpp"
#include "ftqlab/pauli.hpp"

namespace ftqlab {

// Exact minimum-weight lookup decoder for small CSS codes (n <= 63,
// <= 20 check rows per sector). Tables are filled by ascending-weight
// enumeration, so every entry is the minimum-weight error for its
// syndrome and ties resolve to the numerically smallest bit pattern.
//
// decode() throws on a syndrome outside the image of the error map
// (possible when checks are redundant, e.g. the torus). decode_repaired()
// instead charges flipped syndrome bits: it returns the error minimizing
// |e| + hamming(checks(e), observed), the usual objective when the
// syndrome itself was measured noisily.
class LookupDecoder {
 public:
  // check_x detect Z-type errors, check_z detect X-type errors
  // (same orientation as CssCode::syndrome: h_x rows first, h_z rows second).
  LookupDecoder(uint32_t n, const std::vector<BitRow>& checks_on_x,
                const std::vector<BitRow>& checks_on_z);

  // Convenience: sectors taken from the code's h_z (X-sector) / h_x (Z-sector).
  explicit LookupDecoder(const CssCode& code);

  uint32_t n() const { return n_; }
  size_t x_sector_bits() const { return rows_on_x_.size(); }
  size_t z_sector_bits() const { return rows_on_z_.size(); }

  // Syndrome layout: first z_sector_bits() entries are the Z-detecting rows'
  // parities (i.e. checks on the error's z part come second); matches
  // CssCode::syndrome when constructed from a code.
  PauliOp decode(const Syndrome& s) const;
  PauliOp decode_repaired(const Syndrome& s) const;

  // Single-sector access (bits packed little-endian in sector row order).
  uint64_t x_error_for(uint64_t x_sector_syndrome) const;
  uint64_t z_error_for(uint64_t z_sector_syndrome) const;

 private:
  struct Sector {
    std::vector<uint64_t> rows;      // check row masks (single 64-bit word)
    std::vector<uint64_t> table;     // syndrome -> min-weight error mask
    std::vector<uint8_t> filled;
    std::vector<uint8_t> weight;     // weight of table entry
    std::vector<uint64_t> repaired;  // totalized table (nearest reachable)
  };

  static Sector build_sector(uint32_t n, const std::vector<uint64_t>& rows);
  static uint64_t sector_syndrome(const Sector& s, uint64_t err);
  uint64_t lookup(const Sector& s, uint64_t syn, bool repair) const;
  PauliOp decode_impl(const Syndrome& s, bool repair) const;

  uint32_t n_ = 0;
  std::vector<uint64_t> rows_on_x_;  // rows whose parity detects the x part
  std::vector<uint64_t> rows_on_z_;
  Sector on_x_;  // decodes x-part errors
  Sector on_z_;
};

}  // namespace ftqlab
