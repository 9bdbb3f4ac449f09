#include "opmk/matcher.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace opmk {

PatternIndex::PatternIndex(IntSeq pattern, Mode mode)
    : pattern_(std::move(pattern)), mode_(mode) {
  if (pattern_.empty()) throw std::invalid_argument("pattern must not be empty");
  if (mode_ == Mode::Distinct) require_distinct(pattern_, "pattern");
  compressed_ = rank_compress(pattern_);
  signature_ = compute_signature(pattern_, mode_);
  ref_ = std::make_unique<RefString>(signature_codes(signature_));

  const std::size_t m = pattern_.size();
  const RankInfo& info = compressed_.info;
  order_.resize(m);
  at_order_.assign(m + 1, 0);
  for (std::size_t p = 1; p <= m; ++p) {
    const std::size_t ord = info.rank[p - 1] + info.rep_count[p - 1] - info.equal_rank[p - 1];
    order_[p - 1] = ord;
    at_order_[ord] = p;
  }
}

namespace {

struct PathStart {
  std::size_t pos;  // 0 = sentinel
  std::size_t ord;
};

// Path starts (sentinel plus every mismatch) in pattern order. Each path is
// the run of pattern orders from its start up to the next start.
std::vector<PathStart> path_starts(const PatternIndex& pidx, std::span<const std::size_t> mismatches) {
  std::vector<PathStart> starts;
  starts.reserve(mismatches.size() + 1);
  starts.push_back({0, 0});
  for (std::size_t d : mismatches) starts.push_back({d, pidx.order_of(d)});
  std::sort(starts.begin(), starts.end(),
            [](const PathStart& a, const PathStart& b) { return a.ord < b.ord; });
  return starts;
}

// Window values at part starts, replaced by their rank among those values.
void assign_text_keys(std::vector<PathPart>& parts, std::span<const Value> window) {
  std::vector<Value> seen;
  for (const PathPart& part : parts) {
    if (part.start != 0) seen.push_back(window[part.start - 1]);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (PathPart& part : parts) {
    part.text_key = part.start == 0
                        ? 0
                        : std::lower_bound(seen.begin(), seen.end(), window[part.start - 1]) -
                              seen.begin() + 1;
  }
}

void check_inputs(std::span<const Value> window, const PatternIndex& pidx,
                  [[maybe_unused]] std::span<const std::size_t> mismatches) {
  if (window.size() != pidx.size()) throw std::invalid_argument("window and pattern lengths differ");
#ifndef NDEBUG
  const Signature sig = compute_signature(window, pidx.mode());
  const HammingResult h = signature_hamming(sig, pidx.signature(), sig.size());
  if (!std::equal(h.positions.begin(), h.positions.end(), mismatches.begin(), mismatches.end())) {
    throw std::invalid_argument("mismatch positions inconsistent with the signatures");
  }
#endif
}

Weight threshold_for(std::size_t m, std::size_t k) {
  return static_cast<Weight>(m + 1) - static_cast<Weight>(std::min(k, m + 1));
}

}  // namespace

DistinctReduction reduce_distinct(std::span<const Value> window, const PatternIndex& pidx,
                                  std::span<const std::size_t> mismatches, std::size_t k) {
  check_inputs(window, pidx, mismatches);
  const std::size_t m = pidx.size();
  const std::vector<PathStart> starts = path_starts(pidx, mismatches);

  DistinctReduction out;
  out.threshold = threshold_for(m, k);
  out.parts.reserve(starts.size());
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::size_t next = j + 1 < starts.size() ? starts[j + 1].ord : m + 1;
    const std::size_t d = starts[j].pos;
    out.parts.push_back(PathPart{d, d == 0 ? PartKind::Sentinel : PartKind::Whole,
                                 static_cast<Weight>(next - starts[j].ord), 0,
                                 d == 0 ? 0 : pidx.dense()[d - 1]});
  }
  assign_text_keys(out.parts, window);

  std::vector<PathPart> by_text(out.parts);
  std::sort(by_text.begin(), by_text.end(),
            [](const PathPart& a, const PathPart& b) { return a.text_key < b.text_key; });
  out.items.reserve(by_text.size());
  for (const PathPart& part : by_text) out.items.push_back({part.pattern_key, part.weight});
  return out;
}

GeneralReduction reduce_general(std::span<const Value> window, const PatternIndex& pidx,
                                std::span<const std::size_t> mismatches, std::size_t k) {
  check_inputs(window, pidx, mismatches);
  const std::size_t m = pidx.size();
  const std::vector<PathStart> starts = path_starts(pidx, mismatches);

  GeneralReduction out;
  out.threshold = threshold_for(m, k);
  auto add = [&](std::size_t ord, std::size_t last_ord, PartKind kind) {
    const std::size_t pos = pidx.position_at(ord);
    out.parts.push_back(PathPart{pos, kind, static_cast<Weight>(last_ord - ord + 1), 0,
                                 pos == 0 ? 0 : pidx.dense()[pos - 1]});
  };

  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::size_t first = starts[j].ord;
    const std::size_t last = (j + 1 < starts.size() ? starts[j + 1].ord : m + 1) - 1;

    // Leading run of equal values (the sentinel stands alone).
    std::size_t prefix_end = 0;
    if (starts[j].pos == 0) {
      add(0, 0, PartKind::Sentinel);
    } else {
      prefix_end = std::min(pidx.block_last(starts[j].pos), last);
      add(first, prefix_end, prefix_end == last ? PartKind::Whole : PartKind::Prefix);
    }
    if (prefix_end >= last) continue;

    // Trailing run of equal values, and whatever lies between.
    const std::size_t suffix_first = pidx.block_first(pidx.position_at(last));
    if (suffix_first > prefix_end + 1) add(prefix_end + 1, suffix_first - 1, PartKind::Middle);
    add(suffix_first, last, PartKind::Suffix);
  }
  assign_text_keys(out.parts, window);

  out.points.reserve(out.parts.size());
  for (const PathPart& part : out.parts) {
    out.points.push_back({part.text_key, part.pattern_key, part.weight});
  }
  return out;
}

bool verify_window(std::span<const Value> window, const PatternIndex& pidx,
                   std::span<const std::size_t> mismatches, std::size_t k, DictBackend backend) {
  if (pidx.mode() == Mode::Distinct) {
    const DistinctReduction r = reduce_distinct(window, pidx, mismatches, k);
    return heaviest_increasing_subsequence(r.items, backend).weight >= r.threshold;
  }
  const GeneralReduction r = reduce_general(window, pidx, mismatches, k);
  return heaviest_chain(r.points, backend).weight >= r.threshold;
}

namespace {

void require_same_length(std::span<const Value> a, std::span<const Value> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sequences differ in length");
}

// Checker with the pattern side preprocessed once.
class AlignmentChecker {
 public:
  AlignmentChecker(std::span<const Value> pattern, Mode mode, DictBackend backend)
      : mode_(mode), backend_(backend), dense_(rank_compress(pattern).values) {}

  bool accepts(std::span<const Value> window, std::size_t k) const {
    const std::size_t m = dense_.size();
    if (k >= m) return true;
    if (mode_ == Mode::Distinct) {
      std::vector<std::size_t> by_window(m);
      for (std::size_t i = 0; i < m; ++i) by_window[i] = i;
      std::sort(by_window.begin(), by_window.end(),
                [&](std::size_t a, std::size_t b) { return window[a] < window[b]; });
      for (auto& idx : by_window) idx = static_cast<std::size_t>(dense_[idx]);
      return lis_length_at_least(by_window, m - k, backend_);
    }
    return heaviest_chain(points(window), backend_).weight >= static_cast<Weight>(m - k);
  }

  std::vector<WeightedPoint> points(std::span<const Value> window) const {
    std::vector<WeightedPoint> pts(dense_.size());
    for (std::size_t i = 0; i < dense_.size(); ++i) pts[i] = {window[i], dense_[i], 1};
    return pts;
  }

 private:
  Mode mode_;
  DictBackend backend_;
  IntSeq dense_;
};

}  // namespace

bool k_isomorphic_check(std::span<const Value> a, std::span<const Value> b, std::size_t k, Mode mode,
                        DictBackend backend) {
  require_same_length(a, b);
  if (mode == Mode::Distinct) {
    require_distinct(a, "first sequence");
    require_distinct(b, "second sequence");
  }
  if (a.empty()) return true;
  return AlignmentChecker(b, mode, backend).accepts(a, k);
}

std::vector<std::size_t> k_isomorphic_witness(std::span<const Value> a, std::span<const Value> b,
                                              Mode mode, DictBackend backend) {
  require_same_length(a, b);
  std::vector<std::size_t> kept;
  if (mode == Mode::Distinct) {
    require_distinct(a, "first sequence");
    require_distinct(b, "second sequence");
    const std::vector<std::size_t> perm = sorting_permutation(a);
    std::vector<WeightedSeqItem> items;
    for (std::size_t p : perm) items.push_back({b[p - 1], 1});
    for (std::size_t idx : heaviest_increasing_subsequence(items, backend).witness) {
      kept.push_back(perm[idx - 1]);
    }
  } else {
    std::vector<WeightedPoint> pts(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) pts[i] = {a[i], b[i], 1};
    const ChainResult chain = heaviest_chain(pts, backend);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (const WeightedPoint& w : chain.witness) {
        if (w.x == a[i] && w.y == b[i]) {
          kept.push_back(i + 1);
          break;
        }
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<std::size_t> match_chunk(std::span<const Value> chunk, const PatternIndex& pidx,
                                     std::size_t k, std::size_t owned, const MatchOptions& options,
                                     MatchStats* stats) {
  const std::size_t m = pidx.size();
  if (chunk.size() < m) throw std::invalid_argument("match_chunk: chunk shorter than the pattern");
  owned = std::min({owned, m, chunk.size() - m + 1});

  const std::size_t limit = k > std::numeric_limits<std::size_t>::max() / 4
                                ? std::numeric_limits<std::size_t>::max() / 2
                                : options.filter_factor * k;
  MatchStats local;
  std::vector<std::size_t> found;
  SlidingSignature sliding(chunk, pidx.ref(), pidx.mode(), options.backend);
  for (std::size_t i = 1; i <= owned; ++i) {
    if (i > 1) sliding.advance();
    ++local.windows;
    if (k >= m) {
      ++local.verified;
      found.push_back(i);
      continue;
    }
    const MismatchStream mm = sliding.mismatches(limit);
    if (mm.truncated) {
      ++local.filtered;
      continue;
    }
    ++local.verified;
    if (verify_window(chunk.subspan(i - 1, m), pidx, mm.positions, k, options.backend)) {
      found.push_back(i);
    }
  }
  local.occurrences = found.size();
  if (stats) *stats += local;
  return found;
}

namespace {

struct ChunkTask {
  std::size_t first;  // 1-based text position of the chunk start
  std::size_t length;
  std::size_t owned;
};

std::vector<ChunkTask> plan_chunks(std::size_t n, std::size_t m, std::size_t phase) {
  std::vector<ChunkTask> tasks;
  const auto last_start = static_cast<std::int64_t>(n - m + 1);
  const auto span = static_cast<std::int64_t>(m);
  // Owner blocks of m window starts begin at 1 - phase + j*m, clipped at 1.
  for (std::int64_t owner = 1 - static_cast<std::int64_t>(phase % m); owner <= last_start;
       owner += span) {
    const std::int64_t first = std::max<std::int64_t>(owner, 1);
    const std::int64_t owned_last = std::min(owner + span - 1, last_start);
    if (owned_last < first) continue;
    tasks.push_back({static_cast<std::size_t>(first),
                     static_cast<std::size_t>(owned_last - first) + m,
                     static_cast<std::size_t>(owned_last - first + 1)});
  }
  return tasks;
}

}  // namespace

std::vector<std::size_t> match_all(std::span<const Value> text, std::span<const Value> pattern,
                                   std::size_t k, Mode mode, const MatchOptions& options,
                                   MatchStats* stats) {
  if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
  if (mode == Mode::Distinct) require_distinct(text, "text");
  const PatternIndex pidx(IntSeq(pattern.begin(), pattern.end()), mode);
  const std::size_t m = pattern.size();
  if (m > text.size()) return {};

  const std::vector<ChunkTask> tasks = plan_chunks(text.size(), m, options.chunk_phase);
  std::vector<std::vector<std::size_t>> results(tasks.size());
  std::vector<MatchStats> chunk_stats(tasks.size());

  auto run = [&](std::size_t t) {
    const ChunkTask& task = tasks[t];
    auto found = match_chunk(text.subspan(task.first - 1, task.length), pidx, k, task.owned,
                             options, &chunk_stats[t]);
    for (auto& s : found) s += task.first - 1;
    results[t] = std::move(found);
  };

  const std::size_t workers = std::min(std::max<std::size_t>(options.threads, 1), tasks.size());
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t; (t = next.fetch_add(1)) < tasks.size() && !failed;) run(t);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
        (void)w;
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    out.insert(out.end(), results[t].begin(), results[t].end());
    if (stats) *stats += chunk_stats[t];
  }
  return out;
}

std::vector<std::size_t> match_naive(std::span<const Value> text, std::span<const Value> pattern,
                                     std::size_t k, Mode mode, DictBackend backend) {
  if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
  if (mode == Mode::Distinct) {
    require_distinct(text, "text");
    require_distinct(pattern, "pattern");
  }
  const std::size_t m = pattern.size();
  if (m > text.size()) return {};
  const AlignmentChecker checker(pattern, mode, backend);
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + m - 1 <= text.size(); ++i) {
    if (checker.accepts(text.subspan(i - 1, m), k)) out.push_back(i);
  }
  return out;
}

}  // namespace opmk
