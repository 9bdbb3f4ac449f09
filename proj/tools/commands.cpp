#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opmk/signature.hpp"
#include "opmk_cli.hpp"

namespace opmk::cli {

namespace {

struct Inputs {
  std::string text;
  std::string pattern;
  std::string text_file;
  std::string pattern_file;
  std::string instance;
  std::optional<std::size_t> k;
  std::string mode = "auto";
  bool json = false;
};

struct Resolved {
  IntSeq text;
  IntSeq pattern;
  std::size_t k = 0;
  Mode mode = Mode::Distinct;
};

class InputReader {
 public:
  explicit InputReader(std::istream& in) : in_(in) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw std::invalid_argument("standard input can feed only one input");
      stdin_used_ = true;
      std::ostringstream os;
      os << in_.rdbuf();
      return os.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }

  /// Literal list if given, else file contents, else nullopt.
  std::optional<IntSeq> list(const std::string& literal, const std::string& path) {
    if (!literal.empty() && !path.empty()) throw std::invalid_argument("give a list or a file, not both");
    if (!literal.empty()) return parse_int_list(literal);
    if (!path.empty()) return parse_int_list(read(path));
    return std::nullopt;
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

Mode choose_mode(const std::string& word, const IntSeq& text, const IntSeq& pattern) {
  if (word == "auto") return detect_mode(text, pattern);
  const auto mode = parse_mode(word);
  if (!mode) throw std::invalid_argument("unknown mode '" + word + "'");
  return *mode;
}

Resolved resolve(const Inputs& opts, InputReader& reader) {
  Resolved r;
  std::optional<InstanceFile> inst;
  if (!opts.instance.empty()) inst = parse_instance(reader.read(opts.instance));
  auto text = reader.list(opts.text, opts.text_file);
  auto pattern = reader.list(opts.pattern, opts.pattern_file);
  if (!text && inst) text = inst->text;
  if (!pattern && inst) pattern = inst->pattern;
  if (!text) throw std::invalid_argument("no text given");
  if (!pattern) throw std::invalid_argument("no pattern given");
  if (pattern->empty()) throw std::invalid_argument("pattern must not be empty");
  r.text = std::move(*text);
  r.pattern = std::move(*pattern);
  r.k = opts.k ? *opts.k : (inst && inst->k ? *inst->k : 0);
  std::string mode_word = opts.mode;
  if (mode_word == "auto" && inst && inst->mode) mode_word = *inst->mode;
  r.mode = choose_mode(mode_word, r.text, r.pattern);
  if (r.mode == Mode::Distinct) {
    require_distinct(r.text, "text");
    require_distinct(r.pattern, "pattern");
  }
  return r;
}

void add_inputs(CLI::App* cmd, Inputs& opts, bool with_k = true) {
  cmd->add_option("--text", opts.text, "Text values, e.g. \"1 10 6 4\"");
  cmd->add_option("--pattern", opts.pattern, "Pattern values");
  cmd->add_option("--text-file", opts.text_file, "Read the text from a file ('-' for stdin)");
  cmd->add_option("--pattern-file", opts.pattern_file, "Read the pattern from a file ('-' for stdin)");
  cmd->add_option("--instance", opts.instance, "Instance file ('-' for stdin)");
  if (with_k) cmd->add_option("--k", opts.k, "Number of mismatches allowed");
  cmd->add_option("--mode", opts.mode, "distinct, general or auto")
      ->check(CLI::IsMember({"distinct", "general", "auto"}));
  cmd->add_flag("--json", opts.json, "JSON output");
}

int cmd_match(const Inputs& opts, const std::string& algorithm, std::size_t threads, std::size_t filter_factor,
              InputReader& reader, std::ostream& out) {
  const Resolved r = resolve(opts, reader);
  std::vector<std::size_t> occ;
  if (algorithm == "naive") {
    occ = match_naive(r.text, r.pattern, r.k, r.mode);
  } else {
    MatchOptions mo;
    mo.threads = std::max<std::size_t>(threads, 1);
    mo.filter_factor = filter_factor;
    occ = match_all(r.text, r.pattern, r.k, r.mode, mo);
  }
  if (opts.json) {
    out << nlohmann::json(occ).dump() << '\n';
  } else {
    for (std::size_t p : occ) out << p << '\n';
  }
  return occ.empty() ? kExitNotFound : kExitFound;
}

int cmd_verify(const Inputs& opts, std::size_t at, InputReader& reader, std::ostream& out) {
  const Resolved r = resolve(opts, reader);
  const std::size_t m = r.pattern.size();
  if (at < 1 || at + m - 1 > r.text.size()) {
    throw std::invalid_argument("window at " + std::to_string(at) + " does not fit in the text");
  }
  const std::span<const Value> window(r.text.data() + at - 1, m);
  const bool yes = k_isomorphic_check(window, r.pattern, r.k, r.mode);
  std::vector<std::size_t> kept;
  if (yes) kept = k_isomorphic_witness(window, r.pattern, r.mode);
  if (opts.json) {
    nlohmann::json j;
    j["isomorphic"] = yes;
    if (yes) j["kept"] = kept;
    out << j.dump() << '\n';
  } else {
    out << (yes ? "yes" : "no") << '\n';
    if (yes) out << "kept: " << join(kept) << '\n';
  }
  return yes ? kExitFound : kExitNotFound;
}

int cmd_signature(const std::string& seq, const std::string& seq_file, const std::string& mode_word, bool json,
                  InputReader& reader, std::ostream& out) {
  const auto values = reader.list(seq, seq_file);
  if (!values) throw std::invalid_argument("no sequence given");
  const Mode mode = choose_mode(mode_word, *values, {});
  const Signature sig = compute_signature(*values, mode);
  if (json) {
    std::vector<std::string> syms;
    for (const SigSymbol& s : sig) syms.push_back(format_symbol(s));
    out << nlohmann::json(syms).dump() << '\n';
  } else {
    out << format_signature(sig) << '\n';
  }
  return kExitFound;
}

struct BenchOptions {
  std::vector<std::size_t> ns{100000, 200000};
  std::vector<std::size_t> ms{100};
  std::vector<std::size_t> ks{2};
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool csv = false;
  bool naive = true;
};

int cmd_bench(const BenchOptions& b, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  const auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };
  const char* header[] = {"n", "m", "k", "fast_ms", "naive_ms", "speedup", "pruning", "occurrences"};
  const int width[] = {9, 6, 3, 11, 11, 9, 8, 12};
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (b.csv) {
        out << (i ? "," : "") << cells[i];
      } else {
        out << (i ? " " : "") << std::setw(width[i]) << cells[i];
      }
    }
    out << '\n';
  };
  row(std::vector<std::string>(std::begin(header), std::end(header)));
  auto fixed = [](double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
  };

  int status = kExitFound;
  for (std::size_t n : b.ns) {
    for (std::size_t m : b.ms) {
      for (std::size_t k : b.ks) {
        if (m == 0 || m > n) throw std::invalid_argument("bench: need 1 <= m <= n");
        GenOptions g;
        g.n = n;
        g.m = m;
        g.k = k;
        g.seed = b.seed;
        g.plant = std::min<std::size_t>(n / m, 5);
        const InstanceFile inst = generate_instance(g);

        MatchOptions mo;
        mo.threads = b.threads;
        MatchStats stats;
        auto t0 = Clock::now();
        const auto fast = match_all(inst.text, inst.pattern, k, Mode::Distinct, mo, &stats);
        const double fast_ms = ms_since(t0);

        std::string naive_cell = "-";
        std::string speedup_cell = "-";
        if (b.naive) {
          t0 = Clock::now();
          const auto naive = match_naive(inst.text, inst.pattern, k, Mode::Distinct);
          const double naive_ms = ms_since(t0);
          if (naive != fast) status = kExitError;
          naive_cell = fixed(naive_ms, 1);
          speedup_cell = fixed(naive_ms / std::max(fast_ms, 1e-3), 1);
        }
        row({std::to_string(n), std::to_string(m), std::to_string(k), fixed(fast_ms, 1), naive_cell,
             speedup_cell, fixed(stats.pruning_rate(), 4), std::to_string(fast.size())});
      }
    }
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order-preserving pattern matching with mismatches"};
  app.name("opmk");
  app.require_subcommand(1);

  Inputs inputs;
  std::string algorithm = "fast";
  std::size_t threads = 1;
  std::size_t filter_factor = 3;
  auto* match = app.add_subcommand("match", "Report every window k-isomorphic to the pattern");
  add_inputs(match, inputs);
  match->add_option("--algorithm", algorithm, "fast or naive")->check(CLI::IsMember({"fast", "naive"}));
  match->add_option("--threads", threads, "Worker threads (output does not depend on it)");
  match->add_option("--inject-filter-factor", filter_factor, "Testing only: signature filter factor")
      ->group("");

  std::size_t at = 1;
  auto* verify = app.add_subcommand("verify", "Check one text window against the pattern");
  add_inputs(verify, inputs);
  verify->add_option("--at", at, "1-based window start in the text");

  std::string seq;
  std::string seq_file;
  std::string sig_mode = "auto";
  bool sig_json = false;
  auto* signature = app.add_subcommand("signature", "Print the signature of a sequence");
  signature->add_option("--seq", seq, "Sequence values");
  signature->add_option("--seq-file", seq_file, "Read the sequence from a file ('-' for stdin)");
  signature->add_option("--mode", sig_mode, "distinct, general or auto")
      ->check(CLI::IsMember({"distinct", "general", "auto"}));
  signature->add_flag("--json", sig_json, "JSON output");

  GenOptions gen_opts;
  std::string gen_mode = "distinct";
  auto* gen = app.add_subcommand("gen", "Write a random instance file");
  gen->add_option("--n", gen_opts.n, "Text length");
  gen->add_option("--m", gen_opts.m, "Pattern length");
  gen->add_option("--k", gen_opts.k, "Mismatches allowed in planted windows");
  gen->add_option("--mode", gen_mode, "distinct or general")->check(CLI::IsMember({"distinct", "general"}));
  gen->add_option("--seed", gen_opts.seed, "Random seed");
  gen->add_option("--plant", gen_opts.plant, "Number of planted occurrences");
  gen->add_option("--alphabet", gen_opts.alphabet, "Value range 1..alphabet in general mode");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time the fast and naive matchers");
  bench->add_option("--n", bench_opts.ns, "Text lengths")->delimiter(',');
  bench->add_option("--m", bench_opts.ms, "Pattern lengths")->delimiter(',');
  bench->add_option("--k", bench_opts.ks, "Mismatch counts")->delimiter(',');
  bench->add_option("--seed", bench_opts.seed, "Random seed");
  bench->add_option("--threads", bench_opts.threads, "Worker threads for the fast matcher");
  bench->add_flag("--csv", bench_opts.csv, "CSV instead of an aligned table");
  bench->add_flag("!--no-naive", bench_opts.naive, "Skip the naive matcher");

  SelftestOptions self_opts;
  auto* selftest = app.add_subcommand("selftest", "Randomized cross-checks against reference implementations");
  selftest->add_option("--iterations", self_opts.iterations, "Rounds of checks");
  selftest->add_option("--seed", self_opts.seed, "Random seed");
  selftest->add_option("--inject-filter-factor", self_opts.filter_factor, "Testing only: signature filter factor")
      ->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    InputReader reader(in);
    if (match->parsed()) return cmd_match(inputs, algorithm, threads, filter_factor, reader, out);
    if (verify->parsed()) return cmd_verify(inputs, at, reader, out);
    if (signature->parsed()) return cmd_signature(seq, seq_file, sig_mode, sig_json, reader, out);
    if (gen->parsed()) {
      gen_opts.mode = *parse_mode(gen_mode);
      out << write_instance(generate_instance(gen_opts));
      return kExitFound;
    }
    if (bench->parsed()) {
      bench_opts.threads = std::max<std::size_t>(bench_opts.threads, 1);
      return cmd_bench(bench_opts, out);
    }
    if (selftest->parsed()) return run_selftest(self_opts, out) == 0 ? kExitFound : kExitNotFound;
  } catch (const std::exception& e) {
    err << "opmk: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace opmk::cli
