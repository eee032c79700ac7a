#pragma once

// Batch command line front end: irreducibles, census, predict,
// verify-examples, gon-check, enumerate.

#include <iosfwd>
#include <string>
#include <vector>

#include "drinfeld/asymptotics.hpp"

namespace drinfeld::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// `kind@POLY`, e.g. `good@T^2+T+2` or `stable>=2@T`.
PrimeCondition parse_prime_condition(const Field& field, std::string_view text);
/// `a..b` or a single `a`; `a..b` with a > b is the empty range.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text);
/// `1,3` or `(1,3)`.
std::vector<std::uint64_t> parse_weights(std::string_view text);

struct VerifyRow {
  int index;
  std::string description;
  Rational expected;
  Rational computed;
  bool pass() const { return expected == computed; }
};

/// The seven worked densities: printed fraction against the exact value.
std::vector<VerifyRow> verify_examples();

/// `args` excludes the program name. Results go to `out` (or --out),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drinfeld::cli
