#include "infodist/lz.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "infodist/bit_io.hpp"
#include "infodist/error.hpp"

namespace infodist {
namespace {

// Prefix doubling with two counting-sort passes per round.
std::vector<std::uint32_t> suffix_array(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n), next_rank(n);
  if (n == 0) return sa;

  std::vector<std::uint32_t> cnt(std::max<std::size_t>(256, n) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++cnt[s[i]];
  for (std::size_t c = 1; c < 256; ++c) cnt[c] += cnt[c - 1];
  for (std::size_t i = n; i-- > 0;) sa[--cnt[s[i]]] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n; ++i) rank[i] = s[i];

  std::uint32_t classes = 256;
  for (std::size_t k = 1;; k <<= 1) {
    // Order by second key: suffixes without a second half come first.
    std::size_t p = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t r = 0; r < n; ++r) {
      if (sa[r] >= k) tmp[p++] = static_cast<std::uint32_t>(sa[r] - k);
    }
    // Stable by first key.
    std::fill(cnt.begin(), cnt.begin() + classes + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
    for (std::size_t c = 1; c < classes; ++c) cnt[c] += cnt[c - 1];
    for (std::size_t i = n; i-- > 0;) sa[--cnt[rank[tmp[i]]]] = tmp[i];

    auto second = [&](std::uint32_t i) -> std::int64_t {
      return i + k < n ? static_cast<std::int64_t>(rank[i + k]) : -1;
    };
    next_rank[sa[0]] = 0;
    std::uint32_t r = 0;
    for (std::size_t j = 1; j < n; ++j) {
      const auto a = sa[j - 1], b = sa[j];
      if (rank[a] != rank[b] || second(a) != second(b)) ++r;
      next_rank[b] = r;
    }
    rank.swap(next_rank);
    classes = r + 1;
    if (classes == n) break;
  }
  return sa;
}

// Kasai: lcp[r] = lcp(sa[r-1], sa[r]), lcp[0] = 0.
std::vector<std::uint32_t> lcp_array(std::span<const std::uint8_t> s,
                                     const std::vector<std::uint32_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::uint32_t>(r);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

std::uint64_t match_cost(std::uint64_t length, std::uint64_t offset) {
  return 1 + natural_code_length(length - kLzMinMatch) + natural_code_length(offset - 1);
}

}  // namespace

std::vector<PreviousFactor> longest_previous_factors(std::span<const std::uint8_t> data) {
  const std::size_t n = data.size();
  if (n > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw CodecFailure("input too large for the LZ coder");
  }
  std::vector<PreviousFactor> lpf(n);
  if (n == 0) return lpf;
  const auto sa = suffix_array(data);
  const auto lcp = lcp_array(data, sa);

  // Scan ranks keeping a stack whose text positions increase bottom to top.
  // For a popped rank t, the element below it is its previous-smaller-position
  // neighbour and the current rank is its next-smaller-position neighbour; the
  // longest previous factor is the larger of the two LCPs.
  struct Frame {
    std::uint32_t rank;
    std::uint32_t lcp_below;  // lcp with the frame underneath (0 at bottom)
  };
  std::vector<Frame> stack;
  stack.reserve(64);
  for (std::size_t r = 0; r <= n; ++r) {
    const bool sentinel = r == n;
    const std::uint32_t pos = sentinel ? 0 : sa[r];
    std::uint32_t cur = sentinel ? 0 : lcp[r];
    while (!stack.empty() && (sentinel || sa[stack.back().rank] > pos)) {
      const Frame top = stack.back();
      stack.pop_back();
      PreviousFactor& out = lpf[sa[top.rank]];
      const bool has_below = !stack.empty();
      const std::uint32_t below_pos = has_below ? sa[stack.back().rank] : 0;
      std::uint32_t len_below = has_below ? top.lcp_below : 0;
      std::uint32_t len_next = sentinel ? 0 : cur;
      if (len_below == 0 && len_next == 0) {
        out = {};
      } else if (len_below > len_next || (len_below == len_next && below_pos > pos)) {
        out = {len_below, below_pos};
      } else {
        out = {len_next, pos};
      }
      cur = std::min(cur, top.lcp_below);
    }
    if (!sentinel) stack.push_back({static_cast<std::uint32_t>(r), stack.empty() ? 0 : cur});
  }
  return lpf;
}

LzStream lz_compress(std::span<const std::uint8_t> data) {
  const std::size_t n = data.size();
  const auto lpf = longest_previous_factors(data);

  BitWriter out;
  out.write_natural(n);

  std::size_t run_start = 0;
  auto flush_literals = [&](std::size_t end) {
    if (end == run_start) return;
    out.write_bit(false);
    out.write_natural(end - run_start - 1);
    for (std::size_t k = run_start; k < end; ++k) out.write_bits(data[k], 8);
  };

  std::size_t i = 0;
  while (i < n) {
    const auto [len, src] = lpf[i];
    if (len >= kLzMinMatch && match_cost(len, i - src) < 8ull * len) {
      flush_literals(i);
      out.write_bit(true);
      out.write_natural(len - kLzMinMatch);
      out.write_natural(i - src - 1);
      i += len;
      run_start = i;
    } else {
      ++i;
    }
  }
  flush_literals(n);

  LzStream stream;
  stream.bit_length = out.bit_count();
  stream.bytes = std::move(out).take_bytes();
  return stream;
}

std::vector<std::uint8_t> lz_decompress(std::span<const std::uint8_t> stream) {
  BitReader in(stream);
  const std::uint64_t n = in.read_natural();
  // Every output byte needs at least one input bit except inside matches, so
  // bound the reservation by what the stream could plausibly describe.
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, in.remaining() * 8)));
  while (out.size() < n) {
    const std::uint64_t remaining = n - out.size();
    if (!in.read_bit()) {
      const std::uint64_t run = in.read_natural() + 1;
      if (run > remaining) throw MalformedStream("literal run overruns declared length");
      for (std::uint64_t k = 0; k < run; ++k) {
        out.push_back(static_cast<std::uint8_t>(in.read_bits(8)));
      }
    } else {
      const std::uint64_t len = in.read_natural() + kLzMinMatch;
      const std::uint64_t offset = in.read_natural() + 1;
      if (len > remaining) throw MalformedStream("match overruns declared length");
      if (offset > out.size()) {
        throw MalformedStream("match offset " + std::to_string(offset) +
                              " reaches before start of output");
      }
      const std::size_t from = out.size() - static_cast<std::size_t>(offset);
      for (std::uint64_t k = 0; k < len; ++k) out.push_back(out[from + k]);
    }
  }
  if (in.remaining() >= 8) throw MalformedStream("trailing data after final token");
  while (in.remaining() > 0) {
    if (in.read_bit()) throw MalformedStream("non-zero padding after final token");
  }
  return out;
}

}  // namespace infodist
