// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "opmk/fragstring.hpp"
#include "opmk/matcher.hpp"
#include "opmk/signature.hpp"
#include "opmk/subsequence.hpp"
#include "opmk_cli.hpp"
#include "support/oracles.hpp"

using namespace opmk;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::ostringstream line;
  line.precision(2);
  line << std::fixed << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " -- " << v.detail
       << " (" << secs << " s)";
  std::cout << line.str() << std::endl;
}

// Windows that a reference accepted must have at most 3k signature mismatches.
struct BoundTally {
  std::size_t windows = 0;
  std::size_t violations = 0;

  void check(std::span<const Value> window, const PatternIndex& pidx, std::size_t k) {
    ++windows;
    const Signature sig = compute_signature(window, pidx.mode());
    if (signature_hamming(sig, pidx.signature(), 3 * k).exceeds_cap) ++violations;
  }
};

BoundTally small_bound;
BoundTally mid_bound;

cli::InstanceFile small_instance(std::mt19937_64& rng, Mode mode, std::size_t max_m, std::size_t max_n,
                                 std::size_t min_m, std::size_t max_k) {
  cli::GenOptions g;
  g.mode = mode;
  g.m = testing::uniform(rng, min_m, max_m);
  g.n = testing::uniform(rng, g.m, max_n);
  g.k = testing::uniform(rng, 0, max_k);
  g.alphabet = static_cast<Value>(testing::uniform(rng, 3, 6));
  g.plant = testing::uniform(rng, 0, g.n / g.m);
  g.seed = rng();
  return cli::generate_instance(g);
}

Verdict oracle_equivalence(Mode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int instances = 10000;
  std::size_t discrepancies = 0;
  std::size_t occurrences = 0;
  for (int it = 0; it < instances; ++it) {
    const cli::InstanceFile inst = small_instance(rng, mode, 12, 60, 2, 4);
    const std::size_t m = inst.pattern.size();
    const std::size_t k = *inst.k;
    const PatternIndex pidx(inst.pattern, mode);
    std::vector<std::size_t> truth;
    for (std::size_t i = 0; i + m <= inst.text.size(); ++i) {
      const std::span<const Value> window(inst.text.data() + i, m);
      if (!k_isomorphic_subset_oracle(window, inst.pattern, k)) continue;
      truth.push_back(i + 1);
      small_bound.check(window, pidx, k);
    }
    occurrences += truth.size();
    if (match_all(inst.text, inst.pattern, k, mode) != truth) ++discrepancies;
  }
  return {discrepancies == 0, std::to_string(instances) + " instances, " + std::to_string(occurrences) +
                                  " occurrences, " + std::to_string(discrepancies) + " discrepancies"};
}

Verdict golden() {
  std::vector<std::string> bad;
  const IntSeq text{1, 10, 6, 4, 8, 5, 7, 9, 3};
  const IntSeq pattern{1, 4, 2, 5, 11};
  if (match_all(text, pattern, 1, Mode::Distinct) != std::vector<std::size_t>{4}) bad.push_back("small text");

  const IntSeq a{11, 4, 12, 1, 9, 3, 10, 7, 2, 5, 13, 0, 6, 8};
  const IntSeq b{10, 1, 11, 2, 9, 4, 12, 7, 3, 5, 13, 0, 6, 8};
  const Signature sa = compute_signature(a, Mode::Distinct);
  const Signature sb = compute_signature(b, Mode::Distinct);
  if (format_signature(sa) != "6 4 -2 8 9 3 -2 5 -5 -8 -8 0 -3 -6") bad.push_back("signature of a");
  if (format_signature(sb) != "4 10 -2 -2 9 3 -4 5 -5 -4 -4 0 -3 -6") bad.push_back("signature of b");
  const HammingResult h = signature_hamming(sa, sb, 14);
  if (h.distance != 6) bad.push_back("hamming distance " + std::to_string(h.distance));
  if (!k_isomorphic_check(a, b, 2, Mode::Distinct)) bad.push_back("k=2 rejected");
  if (k_isomorphic_check(a, b, 1, Mode::Distinct)) bad.push_back("k=1 accepted");
  if (k_isomorphic_subset_oracle(a, b, 1)) bad.push_back("oracle accepts k=1");
  std::string detail = "occurrence {4}, both signatures, distance 6, k=2 yes / k=1 no";
  if (!bad.empty()) {
    detail = "wrong:";
    for (const auto& s : bad) detail += " [" + s + "]";
  }
  return {bad.empty(), detail};
}

Verdict mid_scale() {
  std::mt19937_64 rng(404);
  const int instances = 1000;
  std::size_t discrepancies = 0;
  std::size_t occurrences = 0;
  for (int it = 0; it < instances; ++it) {
    const Mode mode = it % 2 ? Mode::General : Mode::Distinct;
    const cli::InstanceFile inst = small_instance(rng, mode, 100, 400, 20, 6);
    const std::size_t k = *inst.k;
    const auto expect = match_naive(inst.text, inst.pattern, k, mode);
    const PatternIndex pidx(inst.pattern, mode);
    for (std::size_t p : expect) mid_bound.check(std::span<const Value>(inst.text).subspan(p - 1, pidx.size()), pidx, k);
    occurrences += expect.size();
    if (match_all(inst.text, inst.pattern, k, mode) != expect) ++discrepancies;
  }
  return {discrepancies == 0, std::to_string(instances) + " instances (both modes), " +
                                  std::to_string(occurrences) + " occurrences, " +
                                  std::to_string(discrepancies) + " discrepancies"};
}

Verdict filter_bound() {
  const std::size_t windows = small_bound.windows + mid_bound.windows;
  const std::size_t violations = small_bound.violations + mid_bound.violations;
  return {windows > 0 && violations == 0,
          std::to_string(windows) + " accepted windows, " + std::to_string(violations) + " violations"};
}

Verdict structures() {
  std::mt19937_64 rng(606);
  std::size_t his_bad = 0;
  std::size_t chain_bad = 0;
  std::size_t dyn_bad = 0;
  std::size_t slide_bad = 0;
  const int rounds = 10000;
  for (int it = 0; it < rounds; ++it) {
    const std::size_t len = testing::uniform(rng, 0, 12);
    std::vector<WeightedSeqItem> items(len);
    std::vector<WeightedPoint> points(len);
    for (std::size_t i = 0; i < len; ++i) {
      items[i] = {static_cast<Value>(testing::uniform(rng, 0, 10)), static_cast<Weight>(testing::uniform(rng, 1, 9))};
      points[i] = {static_cast<Value>(testing::uniform(rng, 0, 6)), static_cast<Value>(testing::uniform(rng, 0, 6)),
                   static_cast<Weight>(testing::uniform(rng, 1, 9))};
    }
    if (heaviest_increasing_subsequence(items).weight != his_bruteforce(items)) ++his_bad;
    if (heaviest_chain(points).weight != chain_bruteforce(points)) ++chain_bad;
  }

  for (int it = 0; it < rounds; ++it) {
    const std::size_t m = testing::uniform(rng, 1, 24);
    const auto alphabet = testing::uniform(rng, 1, 3);
    std::vector<Symbol> ref_syms(m);
    for (auto& c : ref_syms) c = static_cast<Symbol>(testing::uniform(rng, 1, alphabet));
    const RefString ref(ref_syms);
    const std::size_t n = testing::uniform(rng, m, 2 * m);
    std::vector<Symbol> shadow(n);
    for (std::size_t x = 0; x < n; ++x) shadow[x] = ref_syms[x % m];
    DynString d(ref, shadow);
    bool ok = true;
    for (int op = 0; op < 30 && ok; ++op) {
      if (testing::uniform(rng, 0, 1)) {
        const std::size_t x = testing::uniform(rng, 1, n);
        const auto c = static_cast<Symbol>(testing::uniform(rng, 1, alphabet + 1));
        d.replace(x, c);
        shadow[x - 1] = c;
        continue;
      }
      const std::size_t i = testing::uniform(rng, 1, n - m + 1);
      const std::size_t limit = testing::uniform(rng, 0, 5);
      std::vector<std::size_t> expect;
      for (std::size_t p = 1; p <= m && expect.size() <= limit; ++p) {
        if (shadow[i + p - 2] != ref_syms[p - 1]) expect.push_back(p);
      }
      const MismatchStream got = d.first_mismatches(i, limit);
      ok = got.positions == expect && got.truncated == (expect.size() > limit) && d.tiling_ok();
    }
    if (!ok) ++dyn_bad;
  }

  for (int it = 0; it < rounds; ++it) {
    const Mode mode = it % 2 ? Mode::General : Mode::Distinct;
    const std::size_t m = testing::uniform(rng, 1, 64);
    const std::size_t len = testing::uniform(rng, m, 2 * m);
    const auto alphabet = static_cast<Value>(testing::uniform(rng, 1, 6));
    const IntSeq chunk = mode == Mode::General ? testing::random_over(rng, len, alphabet)
                                               : testing::random_distinct(rng, len);
    const IntSeq pattern = mode == Mode::General ? testing::random_over(rng, m, alphabet)
                                                 : testing::random_distinct(rng, m);
    const PatternIndex pidx(pattern, mode);
    SlidingSignature s(chunk, pidx.ref(), mode);
    bool ok = true;
    while (ok) {
      ok = s.window_signature() == compute_signature(std::span<const Value>(chunk).subspan(s.start() - 1, m), mode);
      if (!s.can_advance()) break;
      s.advance();
    }
    if (!ok) ++slide_bad;
  }
  const bool pass = his_bad + chain_bad + dyn_bad + slide_bad == 0;
  return {pass, "HIS " + std::to_string(his_bad) + ", chain " + std::to_string(chain_bad) + ", dynamic string " +
                    std::to_string(dyn_bad) + ", sliding " + std::to_string(slide_bad) + " failures over " +
                    std::to_string(rounds) + " cases each"};
}

template <class F>
double best_seconds(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

Verdict scaling() {
  const std::size_t m = 1000;
  const std::size_t k = 2;
  auto make = [&](std::size_t n) {
    cli::GenOptions g;
    g.n = n;
    g.m = m;
    g.k = k;
    g.seed = 77;
    g.plant = 10;
    return cli::generate_instance(g);
  };
  const cli::InstanceFile small = make(200000);
  const cli::InstanceFile large = make(400000);
  std::vector<std::size_t> occ_small;
  std::vector<std::size_t> occ_large;
  const double t_small = best_seconds(3, [&] { occ_small = match_all(small.text, small.pattern, k, Mode::Distinct); });
  const double t_large = best_seconds(3, [&] { occ_large = match_all(large.text, large.pattern, k, Mode::Distinct); });
  // The naive side is timed at the smaller size to keep the run short.
  std::vector<std::size_t> naive_small;
  const double t_naive = best_seconds(1, [&] { naive_small = match_naive(small.text, small.pattern, k, Mode::Distinct); });
  const double ratio = t_large / t_small;
  const double speedup = t_naive / t_small;
  bool found_planted = true;
  for (std::size_t p : *large.planted) found_planted &= std::binary_search(occ_large.begin(), occ_large.end(), p);
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << "fast " << t_small << " s -> " << t_large << " s (ratio " << ratio << "), naive at n=200000 "
     << t_naive << " s (speedup " << speedup << "x), " << occ_large.size() << " occurrences";
  const bool pass = ratio <= 3.0 && speedup >= 10.0 && naive_small == occ_small && found_planted;
  if (naive_small != occ_small) os << ", naive/fast outputs differ";
  if (!found_planted) os << ", planted occurrence missed";
  return {pass, os.str()};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(OPMK_CLI_PATH) + " " + args + " 2>&1; echo \"exit=$?\"";
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start the CLI");
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  pclose(pipe);
  return output;
}

Verdict determinism() {
  const std::string inst_path = "acceptance_instance.txt";
  const std::string gen_args = "gen --n 20000 --m 40 --k 3 --seed 11 --plant 40 --mode general --alphabet 6";
  const std::string gen_out = run_cli(gen_args);
  const std::string marker = "exit=0\n";
  if (gen_out.size() < marker.size() || gen_out.compare(gen_out.size() - marker.size(), marker.size(), marker) != 0) {
    return {false, "gen failed: " + gen_out.substr(0, 200)};
  }
  {
    FILE* f = std::fopen(inst_path.c_str(), "w");
    if (!f) return {false, "cannot write the instance file"};
    std::fwrite(gen_out.data(), 1, gen_out.size() - marker.size(), f);
    std::fclose(f);
  }
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {gen_args, gen_args},
      {"match --instance " + inst_path + " --threads 1", "match --instance " + inst_path + " --threads 4"},
      {"match --instance " + inst_path + " --threads 2 --json", "match --instance " + inst_path + " --threads 7 --json"},
      {"match --instance " + inst_path + " --algorithm naive", "match --instance " + inst_path + " --algorithm naive"},
      {"verify --instance " + inst_path + " --at 41", "verify --instance " + inst_path + " --at 41"},
      {"signature --seq '3 1 4 1 5 9 2 6 5 3 5'", "signature --seq '3 1 4 1 5 9 2 6 5 3 5'"},
      {"selftest --iterations 40 --seed 9", "selftest --iterations 40 --seed 9"},
  };
  std::size_t differing = 0;
  for (const auto& [first, second] : pairs) {
    if (run_cli(first) != run_cli(second)) ++differing;
  }
  std::remove(inst_path.c_str());
  return {differing == 0, std::to_string(pairs.size()) + " command pairs, " + std::to_string(differing) +
                              " differing (bench timings excluded)"};
}

}  // namespace

int main() {
  report(1, "golden examples", golden);
  report(2, "oracle equivalence, distinct values", [] { return oracle_equivalence(Mode::Distinct, 202); });
  report(3, "oracle equivalence, repeated values", [] { return oracle_equivalence(Mode::General, 303); });
  report(4, "mid-scale cross-check against the per-window checker", mid_scale);
  report(5, "accepted windows stay within 3k signature mismatches", filter_bound);
  report(6, "structure-level suites", structures);
  report(7, "scaling smoke test (m=1000, k=2)", scaling);
  report(8, "CLI determinism across runs and thread counts", determinism);
  return failures == 0 ? 0 : 1;
}
