#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nativedil/modarith.hpp"

namespace nativedil {

// The parameter tuple (q, n, k, l, d, tau, gamma1, gamma2, eta, eta', beta).
// `eta_prime` is absent for sets that are not analysed through the
// MLWE-to-SelfTargetMSIS reduction. `level` selects the query bound B_l.
struct ParameterSet {
  std::string name;
  int level = 0;
  u64 q = 0;
  u64 n = 0;
  u64 k = 0;
  u64 l = 0;
  u64 d = 0;
  u64 tau = 0;
  u64 gamma1 = 0;
  u64 gamma2 = 0;
  u64 eta = 0;
  std::optional<u64> eta_prime;
  u64 beta = 0;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

inline constexpr u64 kQ0 = 12439554041857ULL;              // 2^11 * 3 * 19 * 1447 * 73643 + 1
inline constexpr u64 kDilithiumQ = (1ULL << 23) - 8191;     // 8380417
inline constexpr u64 kDilithiumQromQ = (1ULL << 45) - 21283;

// Params-id byte carried by key and signature files. 0 denotes a set that is
// not built in; such files can only be read with the parameters supplied.
inline constexpr std::uint8_t kCustomParamsId = 0;

struct BuiltinSet {
  std::string_view id;
  std::uint8_t params_id;
  int table;           // published table the set comes from
  std::string_view column;
  ParameterSet params;
};

std::span<const BuiltinSet> builtin_sets();
const BuiltinSet* find_builtin(std::string_view id) noexcept;
const BuiltinSet* find_builtin(std::uint8_t params_id) noexcept;
// Params-id of a set equal to a built-in one, else kCustomParamsId.
std::uint8_t params_id_of(const ParameterSet& params) noexcept;

// ParamsFile reading and writing (JSON object with the parameter integers,
// a name and a target level). Unknown keys are ignored. Throws BadParams.
ParameterSet params_from_json(std::string_view text);
std::string params_to_json(const ParameterSet& params, int indent = 2);

}  // namespace nativedil
