#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "pfano/pfaffian.hpp"

namespace pfano {

// Environment variable that replaces the default prime; the run metadata records when it was used.
inline constexpr const char* kPrimeEnv = "PFANO_PRIME";

class MemberFileError : public std::runtime_error {
 public:
  MemberFileError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  int line;
};

// A family reference, optionally with an explicit member.
//
//   id: deg42
//   coefficient_field: F_10007      (or Q, reduced modulo the run prime)
//   weights: 1 5 6 7 8 9 10         (optional, must agree with the catalog)
//   entry_degrees: 5 6 7 8 ...      (optional, must agree with the catalog)
//   m12: y + x^5                    (entries: all ten or none)
//
// Blank lines and lines starting with '#' are ignored.
struct MemberFile {
  std::string id;
  std::optional<FpMatrix> member;
  std::optional<std::uint32_t> prime;  // from coefficient_field F_p
};

MemberFile parse_member_file(const std::string& text, std::uint32_t default_prime);
MemberFile load_member_file(const std::string& path, std::uint32_t default_prime);
std::string member_to_text(const std::string& id, const FpMatrix& M);

// Entry point shared by the executable and the tests. Exit codes: 0 success, 1 mismatch, failed
// condition or inconclusive certificate, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfano
