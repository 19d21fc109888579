#pragma once

#include <stdexcept>
#include <string>

namespace p2moduli {

enum class Errc {
  ZeroRank,
  NonIntegral,
  OutOfRange,
  NotInRegion,
  MixedRadicands,
  NegativeRank,
  NotDecomposed,
  DegenerateSpan,
  BadInput,
  DepthExceeded,
  SizeLimit,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline bool is_resource_limit(Errc c) { return c == Errc::DepthExceeded || c == Errc::SizeLimit; }

// CLI exit-code contract: 2 domain, 3 resource limit, 4 io.
inline int exit_code_for(Errc c) {
  if (is_resource_limit(c)) return 3;
  if (c == Errc::Io) return 4;
  return 2;
}

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace p2moduli
