#include "ubeta/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include "ubeta/admissible.hpp"
#include "ubeta/dimension.hpp"
#include "ubeta/entropy.hpp"
#include "ubeta/expansions.hpp"
#include "ubeta/serialize.hpp"

namespace ubeta {

namespace {

struct RunConfig {
  std::uint32_t n = 2;
  std::string tol = "1e-12";
  std::size_t depth = kDefaultExpansionDepth;
  std::size_t p_max = 6;
  std::string format;
};

Real parse_real(const std::string& text, const char* what) {
  char* end = nullptr;
  const Real v = std::strtold(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw Error(Errc::Parse, std::string(what) + ": '" + text + "' is not a number");
  }
  return v;
}

Real checked_tol(const RunConfig& c) {
  const Real tol = parse_real(c.tol, "--tol");
  if (!(tol > 0)) throw Error(Errc::Parse, "--tol must be positive");
  return tol;
}

void check_depth(const RunConfig& c) {
  if (c.depth < 8) throw Error(Errc::Parse, "--depth must be at least 8");
}

void check_p_max(const RunConfig& c) {
  if (c.p_max < 1) throw Error(Errc::Parse, "--p-max must be at least 1");
}

std::string pm(const Enclosure<Real>& e) { return format_real(e.value) + " ± " + format_real(e.radius); }

void add_n(CLI::App* sub, RunConfig& c) {
  sub->add_option("--n", c.n, "alphabet size N (digits 0..N-1)")->required();
}

void add_format(CLI::App* sub, RunConfig& c, std::string fallback, std::vector<std::string> allowed) {
  // cfg is shared, so the default is applied once this subcommand is selected
  sub->preparse_callback([&c, fallback = std::move(fallback)](std::size_t) { c.format = fallback; });
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(std::move(allowed)));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unique beta-expansions: admissible intervals, entropy and dimension", "ubeta"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int()> action;

  // expand
  std::string beta_text, x_text = "1", mode = "quasi", ties = "snap";
  std::size_t digits = kDefaultExpansionDepth;
  auto* expand = app.add_subcommand("expand", "greedy or quasi-greedy expansion of x in base beta");
  add_n(expand, cfg);
  expand->add_option("--beta", beta_text, "base beta in (1, N]")->required();
  expand->add_option("--x", x_text, "point x in [0, (N-1)/(beta-1)]");
  expand->add_option("--mode", mode, "greedy or quasi")->check(CLI::IsMember({"greedy", "quasi"}));
  expand->add_option("--depth", digits, "number of digits")->check(CLI::PositiveNumber);
  expand->add_option("--ties", ties, "near-tie handling: snap or strict")
      ->check(CLI::IsMember({"snap", "strict"}));
  add_format(expand, cfg, "text", {"text", "json"});
  expand->callback([&] {
    action = [&] {
      const Alphabet a(cfg.n);
      const Base base(a, parse_real(beta_text, "--beta"));
      const Real x = parse_real(x_text, "--x");
      const ExpansionOptions opt{digits, ties == "snap" ? TiePolicy::Snap : TiePolicy::Throw};
      const ExpansionResult r = mode == "greedy" ? greedy_of_x(x, base, opt) : quasi_greedy_of_x(x, base, opt);
      if (cfg.format == "json") {
        out << nlohmann::json{{"digits", json_digits(r.digits)},
                              {"residual_bound", json_real(r.residual_bound)}}.dump()
            << '\n';
      } else {
        out << r.digits.to_string() << '\n';
      }
      return 0;
    };
  });

  // admissible
  std::string block_text;
  auto* admissible = app.add_subcommand("admissible", "test a block for admissibility");
  add_n(admissible, cfg);
  admissible->add_option("--block", block_text, "block t_1...t_p, e.g. 31 or 12-3-0")->required();
  add_format(admissible, cfg, "text", {"text", "json"});
  admissible->callback([&] {
    action = [&] {
      const Word t = Word::parse(Alphabet(cfg.n), block_text);
      const AdmissibilityReport r = check_admissible(t);
      if (cfg.format == "json") {
        nlohmann::json j = {{"N", cfg.n}, {"block", json_digits(t)}, {"admissible", r.admissible}};
        if (!r.admissible) j["witness"] = r.witness;
        out << j.dump() << '\n';
      } else {
        out << (r.admissible ? "true" : "false") << '\n';
        if (!r.admissible) out << "witness: " << r.witness << '\n';
      }
      return 0;
    };
  });

  // interval
  auto* interval = app.add_subcommand("interval", "admissible interval [beta_L, beta_U] of a block");
  add_n(interval, cfg);
  interval->add_option("--block", block_text, "admissible block")->required();
  interval->add_option("--tol", cfg.tol, "endpoint tolerance");
  add_format(interval, cfg, "json", {"text", "json"});
  interval->callback([&] {
    action = [&] {
      const AdmissibleInterval iv =
          interval_endpoints(Word::parse(Alphabet(cfg.n), block_text), checked_tol(cfg));
      if (cfg.format == "json") {
        out << to_json(iv).dump() << '\n';
      } else {
        out << "block " << iv.block.to_string() << '\n'
            << "beta_L " << pm(iv.beta_L) << '\n'
            << "beta_U " << pm(iv.beta_U) << '\n';
      }
      return 0;
    };
  });

  // entropy
  bool with_graph = false;
  auto* entropy_cmd = app.add_subcommand("entropy", "spectral radius and entropy of Z_t");
  add_n(entropy_cmd, cfg);
  entropy_cmd->add_option("--block", block_text, "admissible block")->required();
  entropy_cmd->add_option("--tol", cfg.tol, "spectral tolerance");
  entropy_cmd->add_flag("--graph", with_graph, "include the edge graph (json)");
  add_format(entropy_cmd, cfg, "text", {"text", "json"});
  entropy_cmd->callback([&] {
    action = [&] {
      const Word t = Word::parse(Alphabet(cfg.n), block_text);
      const EntropyResult e = entropy_analysis(t, checked_tol(cfg));
      if (cfg.format == "json") {
        nlohmann::json j = to_json(t, e);
        if (with_graph) j["graph"] = to_json(build_sft(t));
        out << j.dump() << '\n';
      } else {
        out << "rho " << pm(e.spectral.rho) << '\n' << "h " << format_real(e.h) << '\n';
      }
      return 0;
    };
  });

  // dim
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension of the univoque set at beta");
  add_n(dim, cfg);
  dim->add_option("--beta", beta_text, "base beta > 1")->required();
  dim->add_option("--tol", cfg.tol, "numeric tolerance");
  dim->add_option("--depth", cfg.depth, "comparison depth for alpha(beta)");
  dim->add_option("--p-max", cfg.p_max, "longest enumerated block");
  add_format(dim, cfg, "text", {"text", "json"});
  dim->callback([&] {
    action = [&] {
      check_depth(cfg);
      check_p_max(cfg);
      const DimensionEngine engine(Alphabet(cfg.n), cfg.p_max, checked_tol(cfg), cfg.depth);
      const DimensionSample s = engine.evaluate(parse_real(beta_text, "--beta"));
      if (cfg.format == "json") {
        out << to_json(s).dump() << '\n';
      } else {
        out << "regime " << to_string(s.regime) << '\n';
        if (s.resolved()) {
          out << "dim " << format_real(s.dim) << '\n';
        } else {
          out << "dim in [" << format_real(s.dim_lower) << ", " << format_real(s.dim_upper) << "]\n";
        }
        if (s.block) out << "block " << s.block->to_string() << '\n';
        if (s.h) out << "h " << format_real(*s.h) << '\n';
        if (!s.note.empty()) out << "note " << s.note << '\n';
      }
      return s.resolved() ? 0 : 3;
    };
  });

  // curve
  std::string lo_text, hi_text, out_path;
  std::size_t points = 2000;
  unsigned threads = 0;
  auto* curve = app.add_subcommand("curve", "sample beta -> dim over a grid");
  add_n(curve, cfg);
  curve->add_option("--lo", lo_text, "lower end of the beta range (>= 1)")->required();
  curve->add_option("--hi", hi_text, "upper end of the beta range")->required();
  curve->add_option("--points", points, "grid points (cell midpoints)");
  curve->add_option("--out", out_path, "output file; stdout when omitted");
  curve->add_option("--tol", cfg.tol, "numeric tolerance");
  curve->add_option("--depth", cfg.depth, "comparison depth for alpha(beta)");
  curve->add_option("--p-max", cfg.p_max, "longest enumerated block");
  curve->add_option("--threads", threads, "worker threads (0 = all cores)");
  add_format(curve, cfg, "csv", {"csv", "json"});
  curve->callback([&] {
    action = [&] {
      check_depth(cfg);
      check_p_max(cfg);
      const DimensionEngine engine(Alphabet(cfg.n), cfg.p_max, checked_tol(cfg), cfg.depth);
      const auto samples = engine.sample_curve(parse_real(lo_text, "--lo"), parse_real(hi_text, "--hi"),
                                               points, threads);
      std::string body;
      if (cfg.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : samples) j.push_back(to_json(s));
        body = j.dump() + "\n";
      } else {
        body = to_csv(samples);
      }
      const CurveSummary sum = summarize(samples);
      std::ostream& note = out_path.empty() ? err : out;
      if (out_path.empty()) {
        out << body;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw Error(Errc::Parse, "cannot write '" + out_path + "'");
        file << body;
      }
      note << "points " << sum.points << ", unresolved " << sum.unresolved << " ("
           << format_real(sum.unresolved_fraction) << ")\n";
      return 0;
    };
  });

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list admissible blocks up to a length");
  add_n(enumerate, cfg);
  enumerate->add_option("--p-max", cfg.p_max, "longest block");
  add_format(enumerate, cfg, "text", {"text", "json"});
  enumerate->callback([&] {
    action = [&] {
      check_p_max(cfg);
      const auto blocks = enumerate_admissible(Alphabet(cfg.n), cfg.p_max);
      if (cfg.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& b : blocks) j.push_back(json_digits(b));
        out << j.dump() << '\n';
      } else {
        for (const auto& b : blocks) out << b.to_string() << '\n';
      }
      return 0;
    };
  });

  // critical
  auto* critical = app.add_subcommand("critical", "generalized golden ratio and Komornik-Loreti constant");
  add_n(critical, cfg);
  critical->add_option("--tol", cfg.tol, "tolerance for beta_c");
  add_format(critical, cfg, "text", {"text", "json"});
  critical->callback([&] {
    action = [&] {
      const CriticalBases c = critical_bases(Alphabet(cfg.n), checked_tol(cfg));
      if (cfg.format == "json") {
        out << nlohmann::json{{"N", cfg.n},
                              {"G_N", json_real(c.golden)},
                              {"beta_c", json_enclosure(c.komornik_loreti)}}.dump()
            << '\n';
      } else {
        out << "G_N " << format_real(c.golden) << '\n' << "beta_c " << pm(c.komornik_loreti) << '\n';
      }
      return 0;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_budget_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ubeta
