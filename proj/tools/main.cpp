// nativedil: key generation, signing, parameter estimation and lemma checks.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nativedil/codec.hpp"
#include "nativedil/error.hpp"
#include "nativedil/estimator.hpp"
#include "nativedil/lemma_lab.hpp"
#include "nativedil/opcounts.hpp"
#include "nativedil/params.hpp"
#include "nativedil/report_io.hpp"
#include "nativedil/scheme.hpp"

namespace nd = nativedil;

namespace {

enum Exit : int { kOk = 0, kReject = 1, kBadParams = 2, kIo = 3, kInfeasible = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nd::Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  return nd::Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const nd::Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()))) {
    throw IoError("cannot write '" + path + "'");
  }
}

std::string as_text(const nd::Bytes& b) { return std::string(b.begin(), b.end()); }

std::optional<nd::Seed> parse_seed(const std::string& hex) {
  if (hex.size() != 64) {
    return std::nullopt;
  }
  nd::Seed seed{};
  for (std::size_t i = 0; i < 32; ++i) {
    unsigned v = 0;
    if (std::sscanf(hex.c_str() + 2 * i, "%2x", &v) != 1 || !std::isxdigit(hex[2 * i]) ||
        !std::isxdigit(hex[2 * i + 1])) {
      return std::nullopt;
    }
    seed[i] = static_cast<std::uint8_t>(v);
  }
  return seed;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

struct ResolvedSet {
  std::string id;
  int table = 0;
  nd::ParameterSet params;
};

// A built-in id, or a path to a params file. Files must pass validation.
ResolvedSet resolve_set(const std::string& spec) {
  if (const auto* b = nd::find_builtin(spec)) {
    return {std::string(b->id), b->table, b->params};
  }
  std::ifstream probe(spec);
  if (!probe) {
    throw nd::Error(nd::ErrorCode::BadParams, "unknown parameter set '" + spec + "'");
  }
  nd::ParameterSet p = nd::params_from_json(as_text(read_file(spec)));
  if (auto bad = nd::first_failure(nd::validate(p))) {
    throw nd::Error(nd::ErrorCode::BadParams, "constraint " + bad->name + " failed (" + bad->detail + ")");
  }
  return {p.name, 0, p};
}

// Parameters for a key or signature file: the params-id in its header, or
// --params for custom sets.
nd::ParameterSet params_for_file(const nd::Bytes& bytes, nd::FileKind kind, const std::string& params_opt) {
  if (!params_opt.empty()) {
    return resolve_set(params_opt).params;
  }
  const std::uint8_t id = nd::read_params_id(bytes, kind);
  const auto* b = nd::find_builtin(id);
  if (b == nullptr) {
    throw nd::Error(nd::ErrorCode::BadParams, "file uses a custom parameter set; pass --params");
  }
  return b->params;
}

int cmd_keygen(const std::string& params_spec, const std::string& seed_hex, bool random_seed,
               const std::string& out_pk, const std::string& out_sk) {
  const auto set = resolve_set(params_spec);
  nd::Seed seed{};
  if (random_seed) {
    std::random_device rd;
    for (auto& b : seed) {
      b = static_cast<std::uint8_t>(rd());
    }
    std::cout << "seed " << to_hex(seed) << "\n";
  } else {
    const auto parsed = parse_seed(seed_hex);
    if (!parsed) {
      std::cerr << "error: --seed must be 64 hex digits\n";
      return kBadParams;
    }
    seed = *parsed;
  }
  const nd::Scheme scheme(set.params);
  const auto kp = scheme.keygen(seed);
  const auto pk = nd::serialize_public_key(kp.pk, set.params);
  const auto sk = nd::serialize_secret_key(kp.sk, set.params);
  write_file(out_pk, pk);
  write_file(out_sk, sk);
  std::cout << "pk_bytes " << pk.size() << "\nsk_bytes " << sk.size() << "\n";
  return kOk;
}

int cmd_sign(const std::string& sk_path, const std::string& in_path, const std::string& out_sig,
             const std::string& params_opt) {
  const auto sk_bytes = read_file(sk_path);
  const auto message = read_file(in_path);
  const auto params = params_for_file(sk_bytes, nd::FileKind::SecretKey, params_opt);
  const nd::Scheme scheme(params);
  const auto sk = nd::deserialize_secret_key(sk_bytes, params);
  const auto result = scheme.sign(sk, message);
  const auto sig = nd::serialize_signature(result.signature, params);
  write_file(out_sig, sig);
  std::cout << "attempts " << result.attempts << "\nsig_bytes " << sig.size() << "\n";
  return kOk;
}

int cmd_verify(const std::string& pk_path, const std::string& in_path, const std::string& sig_path,
               const std::string& params_opt) {
  const auto pk_bytes = read_file(pk_path);
  const auto message = read_file(in_path);
  const auto sig_bytes = read_file(sig_path);
  const auto params = params_for_file(pk_bytes, nd::FileKind::PublicKey, params_opt);
  const nd::Scheme scheme(params);
  const auto pk = nd::deserialize_public_key(pk_bytes, params);
  nd::Signature sig;
  try {
    sig = nd::deserialize_signature(sig_bytes, params);
  } catch (const nd::Error& e) {
    if (!e.is_format_error()) throw;
    std::cout << "reject (malformed signature: " << e.what() << ")\n";
    return kReject;
  }
  const bool ok = scheme.verify(pk, message, sig);
  std::cout << (ok ? "accept" : "reject") << "\n";
  return ok ? kOk : kReject;
}

int cmd_estimate(const std::vector<std::string>& sets, bool all_tables, const std::string& format,
                 std::optional<int> level, const std::string& error_model) {
  nd::AttackModel model;
  model.primal_error = error_model == "sd" ? nd::ErrorModel::StandardDeviation : nd::ErrorModel::UniformBound;
  std::vector<nd::ReportEntry> entries;
  if (all_tables) {
    entries = nd::builtin_reports(model);
  }
  for (const auto& s : sets) {
    const auto set = resolve_set(s);
    const int lv = level.value_or(set.params.level);
    entries.push_back({set.id, set.table, set.params, nd::report(set.params, lv, model)});
  }
  if (entries.empty()) {
    std::cerr << "error: give --set or --all-tables\n";
    return kBadParams;
  }
  if (format == "csv") {
    std::cout << nd::reports_to_csv(entries);
  } else if (entries.size() == 1 && !all_tables) {
    std::cout << nd::report_to_json(entries.front()) << "\n";
  } else {
    std::cout << nd::reports_to_json(entries) << "\n";
  }
  return kOk;
}

int cmd_opcounts(std::vector<std::string> sets, const std::string& mul, const std::string& format) {
  if (sets.empty()) {
    sets = {"qrom-rec", "qrom-vh", "ours-rec", "ours-vh"};
  }
  std::vector<nd::OpTableEntry> rows;
  for (const auto& s : sets) {
    const auto set = resolve_set(s);
    const auto& p = set.params;
    const bool has_ntt = p.n >= 2 && nd::is_power_of_two(p.n) && p.q % (2 * p.n) == 1;
    std::string method;
    nd::CostPair cost;
    if (mul == "ntt" || (mul == "auto" && has_ntt)) {
      if (!has_ntt) {
        throw nd::Error(nd::ErrorCode::BadParams, "set '" + set.id + "' has no NTT (q != 1 mod 2n)");
      }
      method = "ntt";
      cost = nd::ntt_mul_cost(p.n);
    } else {
      const auto best = nd::best_hntt(p.q, p.n);
      if (!best) {
        throw nd::Error(nd::ErrorCode::BadParams, "no admissible H-NTT split for set '" + set.id + "'");
      }
      method = "hntt-" + std::to_string(best->a) + "-" + std::to_string(best->b);
      cost = best->cost;
    }
    rows.push_back({set.id, method, cost, nd::zq_op_table(p, cost)});
  }
  std::cout << (format == "csv" ? nd::op_table_to_csv(rows) : nd::op_table_to_json(rows) + "\n");
  return kOk;
}

unsigned workers_from_env() {
  const char* v = std::getenv("NATIVEDIL_WORKERS");
  if (v == nullptr || *v == '\0') {
    return 1;
  }
  try {
    return static_cast<unsigned>(std::max(1ul, std::stoul(v)));
  } catch (const std::exception&) {
    return 1;
  }
}

int cmd_search(nd::SearchSpace space) {
  space.workers = workers_from_env();
  const auto result = nd::search(space);
  std::cout << nd::params_to_json(result.params) << "\n";
  const auto& r = result.report;
  std::cerr << "candidates " << result.candidates_evaluated << ", pk " << r.pk_bytes << " B, sig " << r.sig_bytes
            << " B, lwe " << r.lwe_coresvp << ", sis " << (r.sis_coresvp ? std::to_string(*r.sis_coresvp) : "N/A")
            << ", stmsis " << (r.stmsis_coresvp ? std::to_string(*r.stmsis_coresvp) : "N/A") << "\n";
  return kOk;
}

struct LemmaOptions {
  std::string suite = "all";
  nd::u64 q_min = 17;
  nd::u64 q_max = 97;
  nd::u64 samples = 100;
  std::uint64_t seed = 1;
  bool sampled = false;
};

int cmd_lemmas(const LemmaOptions& o) {
  using json = nlohmann::ordered_json;
  json out;
  out["suite"] = o.suite;
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](json check, bool ok) {
    check["pass"] = ok;
    all_ok = all_ok && ok;
    checks.push_back(std::move(check));
  };
  const bool all = o.suite == "all";

  if (all || o.suite == "rounding") {
    nd::u64 cases = 0;
    bool equal = true, two_over_t = true, intermediate = true;
    for (nd::u64 q = o.q_min; q <= o.q_max; ++q) {
      if (!nd::is_prime(q) || q % 2 == 0) continue;
      for (nd::u64 t = 1; t * t <= q; ++t) {
        const nd::RoundingSpec spec(q, t);
        const auto exact = nd::p_t_exact(spec);
        const auto brute = nd::p_t_bruteforce(spec);
        equal = equal && exact == brute;
        two_over_t = two_over_t && exact <= nd::Rational(2, static_cast<long long>(t));
        intermediate = intermediate && exact <= nd::Rational(1, static_cast<long long>(t)) + nd::Rational(t, q);
        ++cases;
      }
    }
    record({{"check", "p_t closed form equals enumeration"}, {"cases", cases}}, equal);
    record({{"check", "p_t <= 2/t"}, {"cases", cases}}, two_over_t);
    record({{"check", "p_t <= 1/t + t/q"}, {"cases", cases}}, intermediate);
  }
  if (all || o.suite == "uniformity") {
    const auto ctx = nd::make_ring(17, 4);
    const auto sweep = nd::uniformity_sweep(ctx, 1, 0, o.samples, o.seed, o.sampled);
    record({{"check", "(b . delta)_0 uniform over Z_17"},
            {"mode", sweep.mode == nd::SweepMode::Full ? "full" : "sampled"},
            {"deltas_checked", sweep.deltas_checked},
            {"deltas_passed", sweep.deltas_passed},
            {"operation_estimate", sweep.operation_estimate}},
           sweep.pass());
  }
  if (all || o.suite == "ntt") {
    const auto ctx = nd::make_ring(17, 4);
    const auto iso = nd::isomorphism_exhaustive(ctx, 10000, o.seed);
    record({{"check", "phi and phi' are inverse on all of R_17"}, {"elements", iso.elements_checked}},
           iso.roundtrip);
    record({{"check", "butterfly NTT equals matrix phi"}, {"elements", iso.elements_checked}},
           iso.ntt_matches_matrix);
    record({{"check", "phi(ab) = phi(a) * phi(b)"}, {"pairs", iso.pairs_checked}}, iso.homomorphism);
    record({{"check", "sum_j w^(2mj) = 0 for 0 < |m| < n"}}, iso.primitive_sums);
  }
  if (checks.empty()) {
    std::cerr << "error: unknown suite '" << o.suite << "'\n";
    return kBadParams;
  }
  out["checks"] = std::move(checks);
  out["pass"] = all_ok;
  std::cout << out.dump(2) << "\n";
  return all_ok ? kOk : kReject;
}

int exit_code_for(const nd::Error& e) {
  switch (e.code()) {
    case nd::ErrorCode::NoFeasiblePoint:
      return kInfeasible;
    case nd::ErrorCode::MalformedSignature:
      return kReject;
    default:
      return e.is_format_error() ? kIo : kBadParams;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nativedil: native-ring Dilithium signatures and parameter estimation"};
  app.require_subcommand(1);

  std::string params_spec, seed_hex, out_pk, out_sk;
  bool random_seed = false;
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--params", params_spec, "built-in set id or params file")->required();
  auto* seed_opt = keygen->add_option("--seed", seed_hex, "32-byte seed as hex");
  auto* random_opt = keygen->add_flag("--random-seed", random_seed, "draw a seed from the OS and print it");
  seed_opt->excludes(random_opt);
  keygen->add_option("--out-pk", out_pk)->required();
  keygen->add_option("--out-sk", out_sk)->required();

  std::string sk_path, in_path, out_sig, sign_params;
  auto* sign = app.add_subcommand("sign", "sign a message file");
  sign->add_option("--sk", sk_path)->required();
  sign->add_option("--in", in_path)->required();
  sign->add_option("--out-sig", out_sig)->required();
  sign->add_option("--params", sign_params, "needed for custom parameter sets");

  std::string pk_path, sig_path, verify_params;
  auto* verify = app.add_subcommand("verify", "verify a signature");
  verify->add_option("--pk", pk_path)->required();
  verify->add_option("--in", in_path)->required();
  verify->add_option("--sig", sig_path)->required();
  verify->add_option("--params", verify_params, "needed for custom parameter sets");

  std::vector<std::string> est_sets;
  bool all_tables = false;
  std::string est_format = "json", error_model = "bound";
  std::optional<int> est_level;
  auto* estimate = app.add_subcommand("estimate", "security report for parameter sets");
  estimate->add_option("--set", est_sets, "built-in set id or params file");
  estimate->add_flag("--all-tables", all_tables, "every built-in set, grouped by table");
  estimate->add_option("--format", est_format)->check(CLI::IsMember({"json", "csv"}));
  estimate->add_option("--level", est_level, "query-bound level for the reduction estimate")->check(CLI::Range(1, 5));
  estimate->add_option("--error-model", error_model, "primal error: bound or sd")->check(CLI::IsMember({"bound", "sd"}));

  std::vector<std::string> op_sets;
  std::string mul = "auto", op_format = "json";
  auto* opcounts = app.add_subcommand("opcounts", "Z_q operation counts of Gen, Sign, Verify");
  opcounts->add_option("--set", op_sets, "built-in set id or params file (repeatable)");
  opcounts->add_option("--mul", mul, "ring multiplication method")->check(CLI::IsMember({"auto", "ntt", "hntt"}));
  opcounts->add_option("--format", op_format)->check(CLI::IsMember({"json", "csv"}));

  nd::SearchSpace space;
  std::vector<nd::u64> etas;
  std::optional<nd::i64> target;
  auto* search = app.add_subcommand("search", "smallest parameter set meeting a security level");
  search->add_option("--level", space.level)->check(CLI::Range(1, 5));
  search->add_option("--target", target, "Core-SVP target (default log2 of the query bound)");
  search->add_option("--q", space.q);
  search->add_option("--n", space.n);
  search->add_option("--d", space.d);
  search->add_option("--tau", space.tau);
  search->add_option("--k-min", space.k_min);
  search->add_option("--k-max", space.k_max);
  search->add_option("--l-min", space.l_min);
  search->add_option("--l-max", space.l_max);
  search->add_option("--gamma2-min", space.gamma2_min);
  search->add_option("--gamma2-max", space.gamma2_max);
  search->add_option("--eta", etas, "secret bound candidates (repeatable)");
  search->add_option("--eta-prime-divisor", space.eta_prime_divisor, "use max eta' divided by this")
      ->check(CLI::PositiveNumber);

  LemmaOptions lemma;
  auto* lemmas = app.add_subcommand("lemmas", "exhaustive checks of the ring and rounding lemmas");
  lemmas->add_option("--suite", lemma.suite)->check(CLI::IsMember({"all", "rounding", "uniformity", "ntt"}));
  lemmas->add_option("--q-min", lemma.q_min);
  lemmas->add_option("--q-max", lemma.q_max);
  lemmas->add_option("--samples", lemma.samples, "random deltas in sampled mode");
  lemmas->add_option("--seed", lemma.seed);
  lemmas->add_flag("--sampled", lemma.sampled, "sample deltas even when a full sweep fits the budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadParams;
  }

  try {
    if (*keygen) {
      if (!random_seed && seed_hex.empty()) {
        std::cerr << "error: --seed or --random-seed is required\n";
        return kBadParams;
      }
      return cmd_keygen(params_spec, seed_hex, random_seed, out_pk, out_sk);
    }
    if (*sign) return cmd_sign(sk_path, in_path, out_sig, sign_params);
    if (*verify) return cmd_verify(pk_path, in_path, sig_path, verify_params);
    if (*estimate) return cmd_estimate(est_sets, all_tables, est_format, est_level, error_model);
    if (*opcounts) return cmd_opcounts(op_sets, mul, op_format);
    if (*search) {
      if (!etas.empty()) space.etas = etas;
      space.target_core_svp = target;
      return cmd_search(space);
    }
    if (*lemmas) return cmd_lemmas(lemma);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const nd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kOk;
}
