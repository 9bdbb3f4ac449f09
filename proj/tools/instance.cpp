#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "opmk_cli.hpp"

namespace opmk::cli {

IntSeq parse_int_list(std::string_view s) {
  IntSeq out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < s.size()) {
    if (is_sep(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (s[j] == '+' || s[j] == '-') ++j;
    const std::size_t digits = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == digits || (j < s.size() && !is_sep(s[j]))) {
      throw std::invalid_argument("not an integer list near '" + std::string(s.substr(i, 16)) + "'");
    }
    Value v = 0;
    const char* first = s.data() + i + (s[i] == '+' ? 1 : 0);
    const auto res = std::from_chars(first, s.data() + j, v);
    if (res.ec != std::errc()) {
      throw std::invalid_argument("integer out of range: " + std::string(s.substr(i, j - i)));
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

std::string join(const IntSeq& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view s, const char* what) {
  const IntSeq v = parse_int_list(s);
  if (v.size() != 1 || v[0] < 0) throw std::invalid_argument(std::string(what) + ": expected one non-negative integer");
  return static_cast<std::size_t>(v[0]);
}

}  // namespace

InstanceFile parse_instance(std::string_view contents) {
  InstanceFile inst;
  bool have_text = false;
  bool have_pattern = false;
  std::size_t line_no = 0;
  while (!contents.empty()) {
    const std::size_t nl = contents.find('\n');
    const std::string_view line = trim(contents.substr(0, nl));
    contents.remove_prefix(nl == std::string_view::npos ? contents.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("instance line " + std::to_string(line_no) + ": missing ':'");
    }
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view value = trim(line.substr(colon + 1));
    auto once = [&](bool seen) {
      if (seen) throw std::invalid_argument("instance: duplicate key '" + key + "'");
    };
    if (key == "text") {
      once(have_text);
      inst.text = parse_int_list(value);
      have_text = true;
    } else if (key == "pattern") {
      once(have_pattern);
      inst.pattern = parse_int_list(value);
      have_pattern = true;
    } else if (key == "k") {
      once(inst.k.has_value());
      inst.k = parse_count(value, "k");
    } else if (key == "mode") {
      once(inst.mode.has_value());
      if (value != "distinct" && value != "general" && value != "auto") {
        throw std::invalid_argument("instance: unknown mode '" + std::string(value) + "'");
      }
      inst.mode = std::string(value);
    } else if (key == "planted") {
      once(inst.planted.has_value());
      std::vector<std::size_t> starts;
      for (Value v : parse_int_list(value)) {
        if (v < 1) throw std::invalid_argument("instance: planted positions are 1-based");
        starts.push_back(static_cast<std::size_t>(v));
      }
      inst.planted = std::move(starts);
    } else {
      throw std::invalid_argument("instance: unknown key '" + key + "'");
    }
  }
  if (!have_text || !have_pattern) throw std::invalid_argument("instance: text and pattern are required");
  return inst;
}

std::string write_instance(const InstanceFile& inst) {
  std::ostringstream os;
  os << "text: " << join(inst.text) << '\n';
  os << "pattern: " << join(inst.pattern) << '\n';
  if (inst.k) os << "k: " << *inst.k << '\n';
  if (inst.mode) os << "mode: " << *inst.mode << '\n';
  if (inst.planted) os << "planted: " << join(*inst.planted) << '\n';
  return os.str();
}

namespace {

IntSeq distinct_values(std::mt19937_64& rng, std::size_t count) {
  IntSeq pool(4 * count);
  std::iota(pool.begin(), pool.end(), Value{1});
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(count);
  return pool;
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

InstanceFile generate_instance(const GenOptions& o) {
  if (o.m == 0) throw std::invalid_argument("gen: m must be positive");
  if (o.n < o.m) throw std::invalid_argument("gen: n must be at least m");
  if (o.plant > o.n / o.m) throw std::invalid_argument("gen: too many planted occurrences for n/m blocks");
  if (o.mode == Mode::General && o.alphabet < 1) throw std::invalid_argument("gen: alphabet must be positive");

  std::mt19937_64 rng(o.seed);
  InstanceFile inst;
  if (o.mode == Mode::Distinct) {
    inst.text = distinct_values(rng, o.n);
    inst.pattern = distinct_values(rng, o.m);
  } else {
    std::uniform_int_distribution<Value> sym(1, o.alphabet);
    inst.text.resize(o.n);
    for (auto& v : inst.text) v = sym(rng);
    inst.pattern.resize(o.m);
    for (auto& v : inst.pattern) v = sym(rng);
  }

  std::vector<std::size_t> blocks(o.n / o.m);
  std::iota(blocks.begin(), blocks.end(), std::size_t{0});
  std::shuffle(blocks.begin(), blocks.end(), rng);
  blocks.resize(o.plant);
  std::sort(blocks.begin(), blocks.end());

  const IntSeq dense = rank_compress(inst.pattern).values;
  std::vector<std::size_t> planted;
  for (std::size_t b : blocks) {
    const std::size_t s = b * o.m;
    const auto w = inst.text.begin() + static_cast<std::ptrdiff_t>(s);
    if (o.mode == Mode::Distinct) {
      IntSeq sorted(w, w + static_cast<std::ptrdiff_t>(o.m));
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < o.m; ++i) w[static_cast<std::ptrdiff_t>(i)] = sorted[dense[i] - 1];
      // A swap touches two positions, so k/2 swaps stay within k changes.
      for (std::size_t t = 0; o.m >= 2 && t < o.k / 2; ++t) {
        const std::size_t x = draw(rng, 0, o.m - 1);
        std::size_t y = draw(rng, 0, o.m - 2);
        if (y >= x) ++y;
        std::swap(w[static_cast<std::ptrdiff_t>(x)], w[static_cast<std::ptrdiff_t>(y)]);
      }
    } else {
      const auto shift = static_cast<Value>(draw(rng, 0, static_cast<std::size_t>(o.alphabet)));
      for (std::size_t i = 0; i < o.m; ++i) w[static_cast<std::ptrdiff_t>(i)] = inst.pattern[i] + shift;
      std::vector<std::size_t> idx(o.m);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t t = 0; t < std::min(o.k, o.m); ++t) {
        w[static_cast<std::ptrdiff_t>(idx[t])] =
            static_cast<Value>(draw(rng, 1, static_cast<std::size_t>(o.alphabet) + static_cast<std::size_t>(shift)));
      }
    }
    planted.push_back(s + 1);
  }

  inst.k = o.k;
  inst.mode = std::string(to_string(o.mode));
  inst.planted = std::move(planted);
  return inst;
}

}  // namespace opmk::cli
