// esc: construct and verify Egyptian-fraction solutions of 4/n = 1/x + 1/y + 1/z.
//
// Exit codes across all subcommands: 0 success / affirmative result,
// 1 negative result (invalid triple, nothing found, exceptions in a scan),
// 2 usage or internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "esc/esc.hpp"

namespace {

using esc::Natural;
using nlohmann::ordered_json;

struct GlobalOpts {
  bool json = false;
  bool quiet = false;
};

void note(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << "\n";
}

// every triple goes through this before being printed
void ensure_valid(const Natural& n, const esc::UnitFractionTriple& t) {
  if (!esc::verify_triple(n, t))
    throw std::logic_error("internal error: generated triple failed verification");
}

ordered_json triple_to_json(const esc::UnitFractionTriple& t) {
  return ordered_json{{"x", esc::to_string(t.x)},
                      {"y", esc::to_string(t.y)},
                      {"z", esc::to_string(t.z)}};
}

void emit(const ordered_json& doc) { std::cout << doc.dump(1) << "\n"; }

int cmd_solve(const GlobalOpts& g, const std::string& n_str, const std::string& type,
              bool all, const std::string& b_max_str, const std::string& a_max_str) {
  const Natural n = esc::parse_natural(n_str);
  if (n == 1)
    throw std::invalid_argument("n = 1 is refused: 1/x + 1/y + 1/z <= 3 < 4 has no solution");
  if (n < 2) throw std::invalid_argument("solve: requires n >= 2");

  if (mpz_even_p(n.get_mpz_t()) || mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) {
    const esc::UnitFractionTriple t = mpz_even_p(n.get_mpz_t())
                                          ? esc::closed_form_even(n)
                                          : esc::closed_form_4k_minus_1(n);
    ensure_valid(n, t);
    if (g.json) {
      emit(ordered_json{{"n", esc::to_string(n)}, {"closed_form", triple_to_json(t)}});
    } else {
      std::cout << t.x << " " << t.y << " " << t.z << "\n";
    }
    return 0;
  }

  // n ≡ 1 (mod 4), n >= 5
  const Natural k_value = (n - 1) / 4;
  const bool want_a = type != "b";
  const bool want_b = type != "a";
  bool found = false;

  ordered_json doc;
  doc["n"] = esc::to_string(n);
  doc["K"] = esc::to_string(k_value);

  if (want_a) {
    std::optional<Natural> b_max;
    if (!b_max_str.empty()) {
      b_max = esc::parse_natural(b_max_str);
      if (*b_max < 1) throw std::invalid_argument("solve: --b-max must be >= 1");
    }
    const bool exhaustive = !b_max || *b_max >= esc::b_limit(k_value);
    const auto params = esc::find_type_a(k_value, b_max, !all);
    ordered_json solutions = ordered_json::array();
    for (const esc::TypeAParams& p : params) {
      const esc::TypeASolution s = esc::expand_type_a(n, p);
      ensure_valid(n, s.triple);
      found = true;
      if (g.json) {
        solutions.push_back(ordered_json{{"b", esc::to_string(p.b)},
                                         {"mu", esc::to_string(p.mu)},
                                         {"kappa", esc::to_string(p.kappa)},
                                         {"a", esc::to_string(s.a)},
                                         {"d", esc::to_string(s.d)},
                                         {"triple", triple_to_json(s.triple)}});
      } else {
        std::cout << "type A: b=" << p.b << " mu=" << p.mu << " kappa=" << p.kappa
                  << "  a=" << s.a << " d=" << s.d << "  x=" << s.triple.x
                  << " y=" << s.triple.y << " z=" << s.triple.z << "\n";
      }
    }
    if (g.json) {
      doc["type_a"] = ordered_json{
          {"b_max", esc::to_string(b_max ? *b_max : esc::b_limit(k_value))},
          {"exhaustive", exhaustive},
          {"solutions", std::move(solutions)}};
    } else if (params.empty()) {
      if (exhaustive)
        std::cout << "no S_A representation (exhaustive)\n";
      else
        std::cout << "no type A solution with b <= " << *b_max << "\n";
    }
  }

  if (want_b) {
    const Natural a_max = a_max_str.empty() ? Natural(10000) : esc::parse_natural(a_max_str);
    if (a_max < 1) throw std::invalid_argument("solve: --a-max must be >= 1");
    const auto params = esc::find_type_b(k_value, a_max, !all);
    ordered_json solutions = ordered_json::array();
    for (const esc::TypeBParams& p : params) {
      const esc::TypeBSolution s = esc::expand_type_b(n, p);
      ensure_valid(n, s.triple);
      found = true;
      if (g.json) {
        solutions.push_back(ordered_json{{"a", esc::to_string(p.a)},
                                         {"d", esc::to_string(p.d)},
                                         {"mu", esc::to_string(p.mu)},
                                         {"lambda", esc::to_string(s.alt.lambda)},
                                         {"a1", esc::to_string(s.alt.a1)},
                                         {"a2", esc::to_string(s.alt.a2)},
                                         {"nu", esc::to_string(s.alt.nu)},
                                         {"triple", triple_to_json(s.triple)}});
      } else {
        std::cout << "type B: a=" << p.a << " d=" << p.d << " mu=" << p.mu
                  << "  x=" << s.triple.x << " y=" << s.triple.y << " z=" << s.triple.z
                  << "\n";
      }
    }
    if (g.json) {
      doc["type_b"] = ordered_json{{"a_max", esc::to_string(a_max)},
                                   {"solutions", std::move(solutions)}};
    } else if (params.empty()) {
      std::cout << "no S_B representation within a <= " << a_max << "\n";
    }
  }

  if (g.json) emit(doc);
  return found ? 0 : 1;
}

int cmd_verify(const GlobalOpts& g, const std::string& n_str, const std::string& x_str,
               const std::string& y_str, const std::string& z_str) {
  const Natural n = esc::parse_natural(n_str);
  const esc::UnitFractionTriple t{esc::parse_natural(x_str), esc::parse_natural(y_str),
                                  esc::parse_natural(z_str)};
  const bool ok = esc::verify_triple(n, t);
  if (g.json) {
    emit(ordered_json{{"n", esc::to_string(n)},
                      {"triple", triple_to_json(t)},
                      {"valid", ok}});
  } else {
    std::cout << (ok ? "valid" : "invalid") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_oracle(const GlobalOpts& g, const std::string& n_str, bool with_types,
               const std::string& cap_str) {
  const Natural n = esc::parse_natural(n_str);
  std::optional<std::size_t> cap;
  if (!cap_str.empty()) {
    const auto v = esc::to_u64(esc::parse_natural(cap_str));
    if (!v) throw std::invalid_argument("oracle: --cap is out of range");
    cap = static_cast<std::size_t>(*v);
  }
  const auto solutions = esc::brute_force_solutions(n, cap);
  ordered_json list = ordered_json::array();
  for (const esc::UnitFractionTriple& t : solutions) {
    ensure_valid(n, t);
    std::string kind;
    int multiples = 0;
    if (with_types) {
      const esc::SolutionType st = esc::classify(n, t);
      multiples = st.multiples_of_n;
      kind = st.kind == esc::SolutionKind::TypeA   ? "A"
             : st.kind == esc::SolutionKind::TypeB ? "B"
                                                   : "other";
    }
    if (g.json) {
      ordered_json row = triple_to_json(t);
      if (with_types) {
        row["type"] = kind;
        row["multiples_of_n"] = std::to_string(multiples);
      }
      list.push_back(std::move(row));
    } else {
      std::cout << t.x << " " << t.y << " " << t.z;
      if (with_types) std::cout << " " << kind;
      std::cout << "\n";
    }
  }
  if (g.json) emit(ordered_json{{"n", esc::to_string(n)}, {"solutions", std::move(list)}});
  return solutions.empty() ? 1 : 0;
}

int cmd_factor(const GlobalOpts& g, const std::string& m_str) {
  const Natural m = esc::parse_natural(m_str);
  const esc::Factorization f = esc::factorize(m);
  if (g.json) {
    ordered_json factors = ordered_json::array();
    for (const auto& [p, e] : f.factors)
      factors.push_back(ordered_json{{"prime", esc::to_string(p)},
                                     {"exponent", std::to_string(e)}});
    emit(ordered_json{{"subject", esc::to_string(m)}, {"factors", std::move(factors)}});
  } else {
    bool first = true;
    for (const auto& [p, e] : f.factors) {
      for (unsigned i = 0; i < e; ++i) {
        if (!first) std::cout << " ";
        std::cout << p;
        first = false;
      }
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_closed_form(const GlobalOpts& g, const std::string& n_str) {
  const Natural n = esc::parse_natural(n_str);
  if (n < 2) throw std::invalid_argument("closed-form: requires n >= 2");
  if (mpz_fdiv_ui(n.get_mpz_t(), 4) == 1) {
    if (g.json)
      emit(ordered_json{{"n", esc::to_string(n)},
                        {"error", "no closed form for n ≡ 1 (mod 4)"}});
    else
      std::cout << "no closed form for n ≡ 1 (mod 4); use solve\n";
    return 1;
  }
  const esc::UnitFractionTriple t = mpz_even_p(n.get_mpz_t())
                                        ? esc::closed_form_even(n)
                                        : esc::closed_form_4k_minus_1(n);
  ensure_valid(n, t);
  if (g.json)
    emit(ordered_json{{"n", esc::to_string(n)}, {"closed_form", triple_to_json(t)}});
  else
    std::cout << t.x << " " << t.y << " " << t.z << "\n";
  return 0;
}

int cmd_scan(const GlobalOpts& g, const std::string& from_str, const std::string& to_str,
             const std::string& conjecture, bool composites, const std::string& a_max_str,
             const std::string& out_path, const std::string& format,
             const std::string& checkpoint, std::uint32_t threads, std::uint32_t batch_size) {
  esc::ScanConfig cfg;
  cfg.lo = esc::parse_natural(from_str);
  cfg.hi = esc::parse_natural(to_str);
  cfg.conjecture_a = conjecture != "b";
  cfg.conjecture_b = conjecture != "a";
  cfg.include_composites = composites;
  cfg.a_max = a_max_str.empty() ? Natural(10000) : esc::parse_natural(a_max_str);
  cfg.checkpoint_path = checkpoint;
  cfg.threads = threads;
  cfg.batch_size = batch_size;

  const esc::ScanReport report = esc::scan(cfg);

  std::string body;
  if (format == "csv") {
    body = esc::report_to_csv(report);
  } else {
    body = esc::report_to_json(report).dump(1);
    body += "\n";
  }
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("scan: cannot write " + out_path);
    out << body;
  }

  std::ostringstream summary;
  summary << "scan: " << report.records.size() << " targets, "
          << report.exceptions.size() << " exceptions, " << report.seconds << "s";
  note(g, summary.str());
  return report.exceptions.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Egyptian-fraction solutions of 4/n = 1/x + 1/y + 1/z"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_flag("--json", g.json, "structured JSON output");
  app.add_flag("--quiet", g.quiet, "suppress informational messages");

  auto* solve = app.add_subcommand("solve", "construct solutions for n");
  std::string solve_n, solve_type = "both", solve_bmax, solve_amax;
  bool solve_all = false;
  solve->add_option("n", solve_n, "target (decimal)")->required();
  solve->add_option("--type", solve_type, "solver family")
      ->check(CLI::IsMember({"a", "b", "both"}));
  solve->add_flag("--all", solve_all, "emit all solutions within bounds, not the first");
  solve->add_option("--b-max", solve_bmax, "type-A search bound (default: exhaustive)");
  solve->add_option("--a-max", solve_amax, "type-B search bound (default: 10000)");

  auto* scan = app.add_subcommand("scan", "verify S_A/S_B membership over a range");
  std::string scan_from, scan_to, scan_conj = "both", scan_amax, scan_out, scan_checkpoint;
  std::string scan_format = "json";
  bool scan_composites = false;
  std::uint32_t scan_threads = 0, scan_batch = 1024;
  scan->add_option("--from", scan_from, "range start (>= 5)")->required();
  scan->add_option("--to", scan_to, "range end (inclusive)")->required();
  scan->add_option("--conjecture", scan_conj, "which memberships to test")
      ->check(CLI::IsMember({"a", "b", "both"}));
  scan->add_flag("--composites", scan_composites, "include composite n ≡ 1 (mod 4)");
  scan->add_option("--a-max", scan_amax, "type-B search bound (default: 10000)");
  scan->add_option("--out", scan_out, "write the report here instead of stdout");
  scan->add_option("--format", scan_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--checkpoint", scan_checkpoint, "persist/resume progress at this path");
  scan->add_option("--threads", scan_threads, "worker threads (default: ESC_THREADS or cores)");
  scan->add_option("--batch-size", scan_batch, "targets per checkpoint batch (default: 1024)");

  auto* verify = app.add_subcommand("verify", "check one triple against n");
  std::string v_n, v_x, v_y, v_z;
  verify->add_option("n", v_n)->required();
  verify->add_option("x", v_x)->required();
  verify->add_option("y", v_y)->required();
  verify->add_option("z", v_z)->required();

  auto* oracle = app.add_subcommand("oracle", "exhaustive solution set for n");
  std::string o_n, o_cap;
  bool o_classify = false;
  oracle->add_option("n", o_n)->required();
  oracle->add_flag("--classify", o_classify, "annotate each solution with its type");
  oracle->add_option("--cap", o_cap, "stop after this many solutions");

  auto* factor = app.add_subcommand("factor", "prime factorization");
  std::string f_m;
  factor->add_option("m", f_m)->required();

  auto* closed = app.add_subcommand("closed-form", "closed-form triple for even n or n ≡ 3 (mod 4)");
  std::string c_n;
  closed->add_option("n", c_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed())
      return cmd_solve(g, solve_n, solve_type, solve_all, solve_bmax, solve_amax);
    if (scan->parsed())
      return cmd_scan(g, scan_from, scan_to, scan_conj, scan_composites, scan_amax, scan_out,
                      scan_format, scan_checkpoint, scan_threads, scan_batch);
    if (verify->parsed()) return cmd_verify(g, v_n, v_x, v_y, v_z);
    if (oracle->parsed()) return cmd_oracle(g, o_n, o_classify, o_cap);
    if (factor->parsed()) return cmd_factor(g, f_m);
    if (closed->parsed()) return cmd_closed_form(g, c_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
