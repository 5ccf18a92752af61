#include "nativedil/params.hpp"

#include <array>

#include "json.hpp"
#include "nativedil/error.hpp"

namespace nativedil {

namespace {

ParameterSet make(std::string name, int level, u64 q, u64 n, u64 k, u64 l, u64 d, u64 tau,
                  u64 gamma1, u64 gamma2, u64 eta, std::optional<u64> eta_prime) {
  ParameterSet p;
  p.name = std::move(name);
  p.level = level;
  p.q = q;
  p.n = n;
  p.k = k;
  p.l = l;
  p.d = d;
  p.tau = tau;
  p.gamma1 = gamma1;
  p.gamma2 = gamma2;
  p.eta = eta;
  p.eta_prime = eta_prime;
  p.beta = tau * eta;
  return p;
}

const std::vector<BuiltinSet>& registry() {
  static const std::vector<BuiltinSet> sets = {
      // Dilithium round-3 sets evaluated under the same attack model.
      {"dil-sl2", 1, 2, "Dilithium SL2",
       make("dil-sl2", 2, kDilithiumQ, 256, 4, 4, 13, 39, 1u << 17, 95232, 2, std::nullopt)},
      {"dil-sl3", 2, 2, "Dilithium SL3",
       make("dil-sl3", 3, kDilithiumQ, 256, 6, 5, 13, 49, 1u << 19, 261888, 4, std::nullopt)},
      {"dil-sl5", 3, 2, "Dilithium SL5",
       make("dil-sl5", 5, kDilithiumQ, 256, 8, 7, 13, 60, 1u << 19, 261888, 2, std::nullopt)},
      {"ours-sl2", 4, 2, "q0 SL2", make("ours-sl2", 2, kQ0, 512, 10, 4, 15, 40, 220929, 441858, 2, 8)},
      {"ours-sl3", 5, 2, "q0 SL3", make("ours-sl3", 3, kQ0, 512, 12, 8, 15, 40, 370432, 740864, 2, 4)},
      {"ours-sl5", 6, 2, "q0 SL5",
       make("ours-sl5", 5, kQ0, 512, 16, 13, 15, 40, 555648, 1111296, 2, 2)},
      // Dilithium-QROM sets; q = 5 mod 8, so no NTT exists for these.
      {"qrom-rec", 7, 3, "Dilithium-QROM recommended",
       make("qrom-rec", 3, kDilithiumQromQ, 512, 4, 4, 15, 46, 905679, 905679, 7, std::nullopt)},
      {"qrom-vh", 8, 3, "Dilithium-QROM very high",
       make("qrom-vh", 3, kDilithiumQromQ, 512, 5, 5, 15, 46, 905679, 905679, 3, std::nullopt)},
      {"ours-rec", 9, 3, "q0 recommended",
       make("ours-rec", 3, kQ0, 512, 12, 5, 15, 40, 279949, 555648, 2, 5)},
      {"ours-vh", 10, 3, "q0 very high", make("ours-vh", 3, kQ0, 512, 13, 8, 15, 40, 370432, 740864, 2, 4)},
      // Recommended sets for the NIST levels.
      {"nist-sl1", 11, 5, "SL1", make("nist-sl1", 1, kQ0, 512, 7, 7, 15, 40, 277824, 555648, 2, 7)},
      {"nist-sl2", 12, 5, "SL2", make("nist-sl2", 2, kQ0, 512, 9, 9, 15, 40, 329916, 659832, 2, 5)},
      {"nist-sl3", 13, 5, "SL3", make("nist-sl3", 3, kQ0, 512, 10, 10, 15, 40, 370432, 740864, 2, 4)},
      {"nist-sl5", 14, 5, "SL4/5",
       make("nist-sl5", 5, kQ0, 512, 13, 13, 15, 40, 555648, 1111296, 2, 2)},
  };
  return sets;
}

u64 get_u64(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::BadParams, std::string("missing field '") + key + "'");
  }
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::BadParams, std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<u64>();
}

}  // namespace

std::span<const BuiltinSet> builtin_sets() { return registry(); }

const BuiltinSet* find_builtin(std::string_view id) noexcept {
  for (const auto& s : registry()) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

const BuiltinSet* find_builtin(std::uint8_t params_id) noexcept {
  for (const auto& s : registry()) {
    if (s.params_id == params_id) {
      return &s;
    }
  }
  return nullptr;
}

std::uint8_t params_id_of(const ParameterSet& params) noexcept {
  for (const auto& s : registry()) {
    const auto& p = s.params;
    if (p.q == params.q && p.n == params.n && p.k == params.k && p.l == params.l && p.d == params.d &&
        p.tau == params.tau && p.gamma1 == params.gamma1 && p.gamma2 == params.gamma2 &&
        p.eta == params.eta && p.beta == params.beta) {
      return s.params_id;
    }
  }
  return kCustomParamsId;
}

ParameterSet params_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::BadParams, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::BadParams, "parameter file must hold a JSON object");
  }
  ParameterSet p;
  p.name = j.value("name", std::string("custom"));
  p.level = j.value("level", 0);
  p.q = get_u64(j, "q");
  p.n = get_u64(j, "n");
  p.k = get_u64(j, "k");
  p.l = get_u64(j, "l");
  p.d = get_u64(j, "d");
  p.tau = get_u64(j, "tau");
  p.gamma1 = get_u64(j, "gamma1");
  p.gamma2 = get_u64(j, "gamma2");
  p.eta = get_u64(j, "eta");
  if (j.contains("eta_prime") && !j.at("eta_prime").is_null()) {
    p.eta_prime = get_u64(j, "eta_prime");
  }
  p.beta = j.contains("beta") ? get_u64(j, "beta") : p.tau * p.eta;
  if (p.level < 1 || p.level > 5) {
    throw Error(ErrorCode::BadParams, "level must be in 1..5");
  }
  return p;
}

std::string params_to_json(const ParameterSet& p, int indent) {
  nlohmann::ordered_json j;
  j["name"] = p.name;
  j["level"] = p.level;
  j["q"] = p.q;
  j["n"] = p.n;
  j["k"] = p.k;
  j["l"] = p.l;
  j["d"] = p.d;
  j["tau"] = p.tau;
  j["gamma1"] = p.gamma1;
  j["gamma2"] = p.gamma2;
  j["eta"] = p.eta;
  j["eta_prime"] = p.eta_prime ? nlohmann::ordered_json(*p.eta_prime) : nlohmann::ordered_json(nullptr);
  j["beta"] = p.beta;
  return j.dump(indent);
}

}  // namespace nativedil
