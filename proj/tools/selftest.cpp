#include <algorithm>
#include <ostream>
#include <random>

#include "opmk/fragstring.hpp"
#include "opmk/signature.hpp"
#include "opmk/subsequence.hpp"
#include "opmk_cli.hpp"

namespace opmk::cli {

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

class Reporter {
 public:
  Reporter(std::ostream& out, std::size_t max_reports) : out_(out), max_reports_(max_reports) {}

  void fail(const std::string& suite, const std::string& detail, const InstanceFile* inst = nullptr) {
    ++violations_;
    if (violations_ > max_reports_) return;
    out_ << "FAIL " << suite << ": " << detail << '\n';
    if (inst) out_ << "--- counterexample\n" << write_instance(*inst) << "---\n";
  }
  std::size_t violations() const { return violations_; }

 private:
  std::ostream& out_;
  std::size_t max_reports_;
  std::size_t violations_ = 0;
};

void check_matching(std::mt19937_64& rng, Mode mode, std::size_t filter_factor, Reporter& rep) {
  GenOptions g;
  g.mode = mode;
  g.m = draw(rng, 2, 10);
  g.n = draw(rng, g.m, 40);
  g.k = draw(rng, 0, 3);
  g.plant = draw(rng, 0, g.n / g.m);
  g.alphabet = static_cast<Value>(draw(rng, 3, 6));
  g.seed = rng();
  InstanceFile inst = generate_instance(g);
  inst.planted.reset();

  MatchOptions opt;
  opt.filter_factor = filter_factor;
  const auto fast = match_all(inst.text, inst.pattern, g.k, mode, opt);
  const auto naive = match_naive(inst.text, inst.pattern, g.k, mode);

  std::vector<std::size_t> truth;
  const PatternIndex pidx(inst.pattern, mode);
  for (std::size_t i = 0; i + g.m <= g.n; ++i) {
    const std::span<const Value> window(inst.text.data() + i, g.m);
    if (!k_isomorphic_subset_oracle(window, inst.pattern, g.k)) continue;
    truth.push_back(i + 1);
    const Signature sig = compute_signature(window, mode);
    if (signature_hamming(sig, pidx.signature(), 3 * g.k).exceeds_cap) {
      rep.fail("filter bound", "accepted window at " + std::to_string(i + 1) +
                                   " has more than 3k signature mismatches", &inst);
    }
  }
  if (fast != truth) {
    rep.fail("match", "fast [" + join(fast) + "] vs oracle [" + join(truth) + "]", &inst);
  }
  if (naive != truth) {
    rep.fail("match", "naive [" + join(naive) + "] vs oracle [" + join(truth) + "]", &inst);
  }
}

void check_sliding(std::mt19937_64& rng, Reporter& rep) {
  const Mode mode = draw(rng, 0, 1) ? Mode::General : Mode::Distinct;
  GenOptions g;
  g.mode = mode;
  g.m = draw(rng, 1, 20);
  g.n = draw(rng, g.m, 2 * g.m);
  g.alphabet = static_cast<Value>(draw(rng, 1, 5));
  g.seed = rng();
  const InstanceFile inst = generate_instance(g);
  const PatternIndex pidx(inst.pattern, mode);
  SlidingSignature s(inst.text, pidx.ref(), mode);
  while (true) {
    const std::span<const Value> window(inst.text.data() + s.start() - 1, g.m);
    if (s.window_signature() != compute_signature(window, mode)) {
      rep.fail("sliding signature", "diverges at window " + std::to_string(s.start()), &inst);
      return;
    }
    if (!s.can_advance()) return;
    s.advance();
  }
}

void check_solvers(std::mt19937_64& rng, Reporter& rep) {
  const std::size_t n = draw(rng, 0, 12);
  std::vector<WeightedSeqItem> items(n);
  std::vector<WeightedPoint> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    items[i] = {static_cast<Value>(draw(rng, 0, 8)), static_cast<Weight>(draw(rng, 1, 6))};
    points[i] = {static_cast<Value>(draw(rng, 0, 5)), static_cast<Value>(draw(rng, 0, 5)),
                 static_cast<Weight>(draw(rng, 1, 6))};
  }
  if (heaviest_increasing_subsequence(items).weight != his_bruteforce(items)) {
    rep.fail("increasing subsequence", "solver disagrees with enumeration on " + std::to_string(n) + " items");
  }
  if (heaviest_chain(points).weight != chain_bruteforce(points)) {
    rep.fail("chain", "solver disagrees with enumeration on " + std::to_string(n) + " points");
  }
}

void check_dynstring(std::mt19937_64& rng, Reporter& rep) {
  const std::size_t m = draw(rng, 1, 16);
  const auto alphabet = static_cast<Symbol>(draw(rng, 1, 3));
  std::vector<Symbol> ref_syms(m);
  for (auto& c : ref_syms) c = static_cast<Symbol>(draw(rng, 1, static_cast<std::size_t>(alphabet)));
  const RefString ref(ref_syms);
  const std::size_t n = draw(rng, m, 2 * m);
  std::vector<Symbol> shadow(n);
  for (std::size_t x = 0; x < n; ++x) shadow[x] = ref_syms[x % m];
  DynString d(ref, shadow);
  for (int op = 0; op < 20; ++op) {
    if (draw(rng, 0, 1)) {
      const std::size_t x = draw(rng, 1, n);
      const auto c = static_cast<Symbol>(draw(rng, 1, static_cast<std::size_t>(alphabet) + 1));
      d.replace(x, c);
      shadow[x - 1] = c;
      continue;
    }
    const std::size_t i = draw(rng, 1, n - m + 1);
    const std::size_t limit = draw(rng, 0, 4);
    std::vector<std::size_t> expect;
    for (std::size_t p = 1; p <= m && expect.size() <= limit; ++p) {
      if (shadow[i + p - 2] != ref_syms[p - 1]) expect.push_back(p);
    }
    if (d.first_mismatches(i, limit).positions != expect || !d.tiling_ok()) {
      rep.fail("dynamic string", "mismatch stream diverges from a direct scan");
      return;
    }
  }
}

}  // namespace

std::size_t run_selftest(const SelftestOptions& options, std::ostream& out) {
  Reporter rep(out, options.max_reports);
  std::mt19937_64 rng(options.seed);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    check_matching(rng, Mode::Distinct, options.filter_factor, rep);
    check_matching(rng, Mode::General, options.filter_factor, rep);
    check_sliding(rng, rep);
    check_solvers(rng, rep);
    check_dynstring(rng, rep);
  }
  out << "selftest: " << options.iterations << " iterations, " << rep.violations() << " violations\n";
  return rep.violations();
}

}  // namespace opmk::cli
