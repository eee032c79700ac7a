#pragma once

// Allocation-free polynomial routines on raw coefficient buffers (low degree
// first, no trailing zeros). Used by the enumeration inner loops.

#include <span>
#include <vector>

#include "drinfeld/gfq.hpp"

namespace drinfeld::detail {

inline void trim(std::vector<Coeff>& a) noexcept {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// a <- a mod b, b nonzero.
inline void rem_inplace(const Field& F, std::vector<Coeff>& a, std::span<const Coeff> b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return;
  const Coeff lead_inv = F.inv(b.back());
  for (std::size_t k = a.size(); k-- > db;) {
    const Coeff c = a[k];
    if (c == 0) continue;
    const Coeff factor = F.neg(F.mul(c, lead_inv));
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = F.add(a[k - db + i], F.mul(factor, b[i]));
  }
  a.resize(db);
  trim(a);
}

/// a <- monic gcd(a, b); b is clobbered.
inline void gcd_inplace(const Field& F, std::vector<Coeff>& a, std::vector<Coeff>& b) {
  while (!b.empty()) {
    rem_inplace(F, a, b);
    a.swap(b);
  }
  if (!a.empty() && a.back() != F.one()) {
    const Coeff inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
}

/// Whether b divides a (b nonzero). `scratch` is overwritten.
inline bool divides_raw(const Field& F, std::span<const Coeff> b, std::span<const Coeff> a,
                        std::vector<Coeff>& scratch) {
  scratch.assign(a.begin(), a.end());
  rem_inplace(F, scratch, b);
  return scratch.empty();
}

}  // namespace drinfeld::detail
