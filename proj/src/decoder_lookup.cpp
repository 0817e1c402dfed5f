#include "ftqlab/decoder_lookup.hpp"

#include <bit>
#include <stdexcept>

#include "ftqlab/gf2.hpp"

namespace ftqlab {

namespace {

constexpr size_t kMaxSectorRows = 20;

uint64_t row_as_word(const BitRow& row, uint32_t n) {
  BitRow copy = row;
  copy.resize(words_for(n), 0);
  for (size_t w = 1; w < copy.size(); ++w) {
    if (copy[w] != 0) throw std::invalid_argument("lookup decoder: check row exceeds 63 qubits");
  }
  return copy.empty() ? 0 : copy[0];
}

std::vector<uint64_t> rows_as_words(const std::vector<BitRow>& rows, uint32_t n) {
  std::vector<uint64_t> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(row_as_word(r, n));
  return out;
}

// next n-bit mask with the same popcount, ascending (Gosper)
uint64_t next_same_weight(uint64_t v) {
  uint64_t c = v & (0 - v);
  uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

uint64_t LookupDecoder::sector_syndrome(const Sector& s, uint64_t err) {
  uint64_t syn = 0;
  for (size_t i = 0; i < s.rows.size(); ++i) {
    syn |= uint64_t(std::popcount(s.rows[i] & err) & 1) << i;
  }
  return syn;
}

LookupDecoder::Sector LookupDecoder::build_sector(uint32_t n, const std::vector<uint64_t>& rows) {
  if (rows.size() > kMaxSectorRows) {
    throw std::invalid_argument("lookup decoder: sector has more than 20 check rows");
  }
  Sector s;
  s.rows = rows;
  size_t size = size_t(1) << rows.size();

  std::vector<BitRow> bitrows;
  for (uint64_t r : rows) bitrows.push_back(BitRow{r});
  size_t reachable = size_t(1) << gf2_rank(bitrows, n);

  s.table.assign(size, 0);
  s.filled.assign(size, 0);
  s.weight.assign(size, 0);

  size_t found = 0;
  s.filled[0] = 1;
  ++found;
  uint64_t limit = (n >= 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
  for (uint32_t w = 1; w <= n && found < reachable; ++w) {
    uint64_t mask = (uint64_t(1) << w) - 1;
    while (true) {
      uint64_t syn = sector_syndrome(s, mask);
      if (!s.filled[syn]) {
        s.filled[syn] = 1;
        s.table[syn] = mask;
        s.weight[syn] = uint8_t(w);
        if (++found == reachable) break;
      }
      uint64_t next = next_same_weight(mask);
      if (next > limit || next < mask) break;
      mask = next;
    }
  }
  if (found < reachable) {
    throw std::logic_error("lookup decoder: enumeration failed to cover reachable syndromes");
  }

  // totalized table: nearest reachable syndrome, flips first, then data weight
  size_t n_bits = rows.size();
  s.repaired.assign(size, 0);
  std::vector<uint32_t> cost(size, UINT32_MAX);
  uint32_t flip_cost = n + 1;
  std::vector<std::vector<uint32_t>> buckets;
  auto push = [&](uint32_t c, uint64_t node) {
    if (buckets.size() <= c) buckets.resize(c + 1);
    buckets[c].push_back(uint32_t(node));
  };
  for (uint64_t syn = 0; syn < size; ++syn) {
    if (s.filled[syn]) {
      cost[syn] = s.weight[syn];
      s.repaired[syn] = s.table[syn];
      push(cost[syn], syn);
    }
  }
  for (uint32_t c = 0; c < buckets.size(); ++c) {
    for (size_t qi = 0; qi < buckets[c].size(); ++qi) {
      uint64_t node = buckets[c][qi];
      if (cost[node] != c) continue;
      for (size_t b = 0; b < n_bits; ++b) {
        uint64_t nbr = node ^ (uint64_t(1) << b);
        uint32_t nc = c + flip_cost;
        if (nc < cost[nbr]) {
          cost[nbr] = nc;
          s.repaired[nbr] = s.repaired[node];
          push(nc, nbr);
        }
      }
    }
  }
  return s;
}

LookupDecoder::LookupDecoder(uint32_t n, const std::vector<BitRow>& checks_on_x,
                             const std::vector<BitRow>& checks_on_z)
    : n_(n) {
  if (n == 0 || n > 63) throw std::invalid_argument("lookup decoder: need 1 <= n <= 63");
  rows_on_x_ = rows_as_words(checks_on_x, n);
  rows_on_z_ = rows_as_words(checks_on_z, n);
  on_x_ = build_sector(n, rows_on_x_);
  on_z_ = build_sector(n, rows_on_z_);
}

LookupDecoder::LookupDecoder(const CssCode& code)
    : LookupDecoder(code.n, code.h_z, code.h_x) {}

uint64_t LookupDecoder::lookup(const Sector& s, uint64_t syn, bool repair) const {
  if (repair) return s.repaired[syn];
  if (!s.filled[syn]) {
    throw std::runtime_error("lookup decoder: syndrome outside the error map image");
  }
  return s.table[syn];
}

PauliOp LookupDecoder::decode(const Syndrome& s) const {
  return decode_impl(s, false);
}

PauliOp LookupDecoder::decode_repaired(const Syndrome& s) const {
  return decode_impl(s, true);
}

PauliOp LookupDecoder::decode_impl(const Syndrome& s, bool repair) const {
  size_t nz = rows_on_z_.size(), nx = rows_on_x_.size();
  if (s.nbits != nz + nx) {
    throw std::invalid_argument("lookup decoder: syndrome length mismatch");
  }
  uint64_t syn_z = 0, syn_x = 0;
  for (size_t i = 0; i < nz; ++i) syn_z |= uint64_t(s.get(i)) << i;
  for (size_t i = 0; i < nx; ++i) syn_x |= uint64_t(s.get(nz + i)) << i;
  PauliOp e = PauliOp::identity(n_);
  e.z[0] = lookup(on_z_, syn_z, repair);
  e.x[0] = lookup(on_x_, syn_x, repair);
  return e;
}

uint64_t LookupDecoder::x_error_for(uint64_t x_sector_syndrome) const {
  if (x_sector_syndrome >= on_x_.table.size()) {
    throw std::invalid_argument("lookup decoder: sector syndrome out of range");
  }
  return lookup(on_x_, x_sector_syndrome, true);
}

uint64_t LookupDecoder::z_error_for(uint64_t z_sector_syndrome) const {
  if (z_sector_syndrome >= on_z_.table.size()) {
    throw std::invalid_argument("lookup decoder: sector syndrome out of range");
  }
  return lookup(on_z_, z_sector_syndrome, true);
}

}  // namespace ftqlab
