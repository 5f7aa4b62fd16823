#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "esc/solver_a.hpp"
#include "esc/solver_b.hpp"

namespace esc {

/// The type-A search has a finite b bound, so "no" is exhaustive; the type-B
/// search does not, so its negative verdict is only "not found within bound".
enum class SaVerdict { Member, NonMemberExhaustive, Skipped };
enum class SbVerdict { Member, NotFoundWithinBound, Skipped };

inline const char* to_token(SaVerdict v) {
  switch (v) {
    case SaVerdict::Member: return "member";
    case SaVerdict::NonMemberExhaustive: return "non_member_exhaustive";
    default: return "skipped";
  }
}

inline const char* to_token(SbVerdict v) {
  switch (v) {
    case SbVerdict::Member: return "member";
    case SbVerdict::NotFoundWithinBound: return "not_found_within_bound";
    default: return "skipped";
  }
}

struct TargetRecord {
  Natural n, k;
  bool is_pp = false;
  SaVerdict sa_verdict = SaVerdict::Skipped;
  std::optional<TypeAParams> sa_params;
  SbVerdict sb_verdict = SbVerdict::Skipped;
  std::optional<TypeBParams> sb_params;

  friend bool operator==(const TargetRecord&, const TargetRecord&) = default;
};

struct ResidueCell {
  std::uint64_t targets = 0;
  std::uint64_t exceptions = 0;

  friend bool operator==(const ResidueCell&, const ResidueCell&) = default;
};

/// Counts keyed by (K mod 2, K mod 3). For prime targets the K ≡ 2 (mod 3)
/// column stays empty: there n = 1 + 4K would be divisible by 3.
struct ResidueStats {
  ResidueCell cells[2][3] = {};

  friend bool operator==(const ResidueStats& lhs, const ResidueStats& rhs) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        if (lhs.cells[i][j] != rhs.cells[i][j]) return false;
    return true;
  }
};

struct ScanConfig {
  Natural lo, hi;
  bool conjecture_a = true;
  bool conjecture_b = true;
  bool include_composites = false;
  Natural a_max = 10000;
  std::string checkpoint_path;   // empty = no checkpointing
  std::uint32_t batch_size = 1024;
  std::uint32_t threads = 0;     // 0 = ESC_THREADS env var, else hardware
  std::uint32_t max_batches = 0; // testing hook: stop after N batches (0 = off)
};

struct ScanReport {
  ScanConfig config;
  std::vector<TargetRecord> records;
  std::vector<Natural> exceptions;
  ResidueStats stats;
  double seconds = 0.0;
  bool complete = true;  // false only when max_batches stopped the run early
};

inline bool is_exception(const ScanConfig& cfg, const TargetRecord& r) {
  return (cfg.conjecture_a && r.sa_verdict == SaVerdict::NonMemberExhaustive) ||
         (cfg.conjecture_b && r.sb_verdict == SbVerdict::NotFoundWithinBound);
}

/// Recompute the residue table from the records (deterministic in the report).
inline ResidueStats residue_stats(const ScanReport& report) {
  ResidueStats stats;
  for (const TargetRecord& r : report.records) {
    const unsigned long m2 = mpz_fdiv_ui(r.k.get_mpz_t(), 2);
    const unsigned long m3 = mpz_fdiv_ui(r.k.get_mpz_t(), 3);
    ResidueCell& cell = stats.cells[m2][m3];
    ++cell.targets;
    if (is_exception(report.config, r)) ++cell.exceptions;
  }
  return stats;
}

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string conjectures_token(const ScanConfig& cfg) {
  if (cfg.conjecture_a && cfg.conjecture_b) return "both";
  if (cfg.conjecture_a) return "a";
  if (cfg.conjecture_b) return "b";
  return "none";
}

// Every integer is serialized as a decimal string; no width assumptions.
inline ordered_json config_echo(const ScanConfig& cfg) {
  ordered_json j;
  j["conjectures"] = conjectures_token(cfg);
  j["include_composites"] = cfg.include_composites;
  j["a_max"] = to_string(cfg.a_max);
  j["batch_size"] = std::to_string(cfg.batch_size);
  j["threads"] = std::to_string(cfg.threads);
  return j;
}

inline ordered_json record_to_json(const TargetRecord& r) {
  ordered_json j;
  j["n"] = to_string(r.n);
  j["K"] = to_string(r.k);
  j["is_pp"] = r.is_pp;
  j["sa_verdict"] = to_token(r.sa_verdict);
  if (r.sa_params) {
    j["sa_b"] = to_string(r.sa_params->b);
    j["sa_mu"] = to_string(r.sa_params->mu);
    j["sa_kappa"] = to_string(r.sa_params->kappa);
  }
  j["sb_verdict"] = to_token(r.sb_verdict);
  if (r.sb_params) {
    j["sb_a"] = to_string(r.sb_params->a);
    j["sb_d"] = to_string(r.sb_params->d);
    j["sb_mu"] = to_string(r.sb_params->mu);
  }
  return j;
}

inline TargetRecord record_from_json(const nlohmann::json& j) {
  TargetRecord r;
  r.n = parse_natural(j.at("n").get<std::string>());
  r.k = parse_natural(j.at("K").get<std::string>());
  r.is_pp = j.at("is_pp").get<bool>();
  const std::string sa = j.at("sa_verdict").get<std::string>();
  if (sa == "member") r.sa_verdict = SaVerdict::Member;
  else if (sa == "non_member_exhaustive") r.sa_verdict = SaVerdict::NonMemberExhaustive;
  else r.sa_verdict = SaVerdict::Skipped;
  if (j.contains("sa_b")) {
    r.sa_params = TypeAParams{parse_natural(j.at("sa_b").get<std::string>()),
                              parse_natural(j.at("sa_mu").get<std::string>()),
                              parse_natural(j.at("sa_kappa").get<std::string>())};
  }
  const std::string sb = j.at("sb_verdict").get<std::string>();
  if (sb == "member") r.sb_verdict = SbVerdict::Member;
  else if (sb == "not_found_within_bound") r.sb_verdict = SbVerdict::NotFoundWithinBound;
  else r.sb_verdict = SbVerdict::Skipped;
  if (j.contains("sb_a")) {
    r.sb_params = TypeBParams{parse_natural(j.at("sb_a").get<std::string>()),
                              parse_natural(j.at("sb_d").get<std::string>()),
                              parse_natural(j.at("sb_mu").get<std::string>())};
  }
  return r;
}

inline ordered_json stats_to_json(const ResidueStats& stats) {
  ordered_json cells = ordered_json::array();
  for (int m2 = 0; m2 < 2; ++m2) {
    for (int m3 = 0; m3 < 3; ++m3) {
      ordered_json c;
      c["k_mod_2"] = std::to_string(m2);
      c["k_mod_3"] = std::to_string(m3);
      c["targets"] = std::to_string(stats.cells[m2][m3].targets);
      c["exceptions"] = std::to_string(stats.cells[m2][m3].exceptions);
      cells.push_back(std::move(c));
    }
  }
  ordered_json j;
  j["cells"] = std::move(cells);
  return j;
}

inline unsigned resolve_threads(std::uint32_t configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("ESC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

inline TargetRecord evaluate_target(const Natural& n, bool is_pp, const ScanConfig& cfg) {
  TargetRecord r;
  r.n = n;
  r.k = (n - 1) / 4;
  r.is_pp = is_pp;
  if (cfg.conjecture_a) {
    r.sa_params = membership_sa(n);
    r.sa_verdict = r.sa_params ? SaVerdict::Member : SaVerdict::NonMemberExhaustive;
  }
  if (cfg.conjecture_b) {
    r.sb_params = membership_sb(n, cfg.a_max);
    r.sb_verdict = r.sb_params ? SbVerdict::Member : SbVerdict::NotFoundWithinBound;
  }
  return r;
}

inline void write_checkpoint(const ScanConfig& cfg, const Natural& last_completed_n,
                             const std::vector<TargetRecord>& records,
                             const ResidueStats& stats) {
  ordered_json j;
  j["last_completed_n"] = to_string(last_completed_n);
  j["partial_stats"] = stats_to_json(stats);
  ordered_json recs = ordered_json::array();
  for (const TargetRecord& r : records) recs.push_back(record_to_json(r));
  j["partial_records"] = std::move(recs);
  j["config"] = config_echo(cfg);
  j["range"] = ordered_json{{"lo", to_string(cfg.lo)}, {"hi", to_string(cfg.hi)}};
  const std::filesystem::path path(cfg.checkpoint_path);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("scan: cannot write checkpoint " + cfg.checkpoint_path);
    out << j.dump(1) << "\n";
    if (!out.flush()) throw std::runtime_error("scan: checkpoint write failed");
  }
  std::filesystem::rename(tmp, path);
}

struct ResumeState {
  Natural next_n;
  std::vector<TargetRecord> records;
};

inline std::optional<ResumeState> read_checkpoint(const ScanConfig& cfg) {
  if (cfg.checkpoint_path.empty() || !std::filesystem::exists(cfg.checkpoint_path))
    return std::nullopt;
  std::ifstream in(cfg.checkpoint_path);
  if (!in) throw std::runtime_error("scan: cannot read checkpoint " + cfg.checkpoint_path);
  nlohmann::json j = nlohmann::json::parse(in);
  const nlohmann::json expected_range{{"lo", to_string(cfg.lo)}, {"hi", to_string(cfg.hi)}};
  const nlohmann::json expected_config = config_echo(cfg);
  // threads and batch size may legitimately differ between runs
  nlohmann::json actual_config = j.at("config");
  actual_config.erase("threads");
  actual_config.erase("batch_size");
  nlohmann::json wanted = expected_config;
  wanted.erase("threads");
  wanted.erase("batch_size");
  if (j.at("range") != expected_range || actual_config != wanted)
    throw std::runtime_error("scan: checkpoint does not match the requested scan");
  ResumeState state;
  state.next_n = parse_natural(j.at("last_completed_n").get<std::string>()) + 4;
  for (const auto& rj : j.at("partial_records")) state.records.push_back(record_from_json(rj));
  return state;
}

}  // namespace detail

/// Verify membership of every n ≡ 1 (mod 4) in [lo, hi] (primes only unless
/// include_composites) in S_A and/or S_B. Deterministic: records are merged
/// in ascending n regardless of thread count. With a checkpoint path the scan
/// persists progress after every batch and resumes from the file on restart.
inline ScanReport scan(const ScanConfig& cfg) {
  if (cfg.lo < 5) throw std::invalid_argument("scan: requires lo >= 5");
  if (cfg.lo > cfg.hi) throw std::invalid_argument("scan: requires lo <= hi");
  if (cfg.batch_size == 0) throw std::invalid_argument("scan: batch_size must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  ScanReport report;
  report.config = cfg;

  // first candidate >= lo congruent 1 (mod 4)
  Natural n = cfg.lo + (5 - mpz_fdiv_ui(cfg.lo.get_mpz_t(), 4)) % 4;
  if (auto resume = detail::read_checkpoint(cfg)) {
    report.records = std::move(resume->records);
    if (resume->next_n > n) n = resume->next_n;
  }

  const unsigned threads = detail::resolve_threads(cfg.threads);
  std::uint32_t batches_done = 0;

  while (n <= cfg.hi) {
    std::vector<std::pair<Natural, bool>> batch;  // (n, is_prime)
    Natural last_examined = n;
    for (; n <= cfg.hi && batch.size() < cfg.batch_size; n += 4) {
      last_examined = n;
      const bool prime = is_prime(n);
      if (cfg.include_composites || prime) batch.emplace_back(n, prime);
    }

    std::vector<TargetRecord> results(batch.size());
    if (threads <= 1 || batch.size() <= 1) {
      for (std::size_t i = 0; i < batch.size(); ++i)
        results[i] = detail::evaluate_target(batch[i].first, batch[i].second, cfg);
    } else {
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < batch.size();)
          results[i] = detail::evaluate_target(batch[i].first, batch[i].second, cfg);
      };
      std::vector<std::thread> pool;
      const unsigned count = std::min<std::size_t>(threads, batch.size());
      pool.reserve(count);
      for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    report.records.insert(report.records.end(),
                          std::make_move_iterator(results.begin()),
                          std::make_move_iterator(results.end()));

    if (!cfg.checkpoint_path.empty()) {
      detail::write_checkpoint(cfg, last_examined, report.records, residue_stats(report));
    }
    ++batches_done;
    if (cfg.max_batches != 0 && batches_done >= cfg.max_batches && n <= cfg.hi) {
      report.complete = false;
      break;
    }
  }

  for (const TargetRecord& r : report.records)
    if (is_exception(cfg, r)) report.exceptions.push_back(r.n);
  report.stats = residue_stats(report);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// Report document: {range, config, records, exceptions, stats, seconds}.
/// All integers are decimal strings.
inline nlohmann::ordered_json report_to_json(const ScanReport& report) {
  using detail::ordered_json;
  ordered_json j;
  j["range"] = ordered_json{{"lo", to_string(report.config.lo)},
                            {"hi", to_string(report.config.hi)}};
  j["config"] = detail::config_echo(report.config);
  ordered_json recs = ordered_json::array();
  for (const TargetRecord& r : report.records) recs.push_back(detail::record_to_json(r));
  j["records"] = std::move(recs);
  ordered_json exc = ordered_json::array();
  for (const Natural& n : report.exceptions) exc.push_back(to_string(n));
  j["exceptions"] = std::move(exc);
  j["stats"] = detail::stats_to_json(report.stats);
  j["seconds"] = report.seconds;
  return j;
}

/// One row per target; empty cells where a verdict carries no parameters.
inline std::string report_to_csv(const ScanReport& report) {
  std::ostringstream out;
  out << "n,K,is_pp,sa_verdict,sa_b,sa_mu,sa_kappa,sb_verdict,sb_a,sb_d,sb_mu\n";
  for (const TargetRecord& r : report.records) {
    out << to_string(r.n) << ',' << to_string(r.k) << ','
        << (r.is_pp ? "true" : "false") << ',' << to_token(r.sa_verdict) << ',';
    if (r.sa_params)
      out << to_string(r.sa_params->b) << ',' << to_string(r.sa_params->mu) << ','
          << to_string(r.sa_params->kappa);
    else
      out << ",,";
    out << ',' << to_token(r.sb_verdict) << ',';
    if (r.sb_params)
      out << to_string(r.sb_params->a) << ',' << to_string(r.sb_params->d) << ','
          << to_string(r.sb_params->mu);
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

}  // namespace esc
