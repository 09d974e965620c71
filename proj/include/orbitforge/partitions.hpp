#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace orbitforge {

/// Integer partition: non-increasing positive parts. Indexes a nilpotent
/// orbit by its Jordan type.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("partition must have at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw DomainError("partition parts must be positive integers");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw DomainError("partition parts must be non-increasing");
    }
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  /// Parses "[2,1]" (whitespace tolerated, brackets required).
  static Partition parse(std::string_view text) {
    std::string compact;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']')
      throw DomainError("partition must be written as comma-separated integers in brackets, e.g. [2,1]");
    std::string_view body(compact);
    body = body.substr(1, body.size() - 2);
    std::vector<int> parts;
    while (!body.empty()) {
      auto comma = body.find(',');
      auto token = body.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw DomainError("malformed partition entry '" + std::string(token) + "'");
      parts.push_back(value);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      if (body.empty()) throw DomainError("malformed partition: trailing comma");
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  /// The integer being partitioned.
  int size() const { return size_; }
  /// Number of parts.
  int length() const { return static_cast<int>(parts_.size()); }
  int largest() const { return parts_.front(); }
  /// 1-based part access with implicit zero padding past the last part.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  bool is_all_ones() const { return largest() == 1; }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// f(x) = x - 1 for x > 0, else 0.
constexpr int rank_counting_f(int x) { return x > 0 ? x - 1 : 0; }

/// Ranks of X^k for a nilpotent X of a given Jordan type.
struct RankSequence {
  /// ranks[k-1] = rank(X^k) for k = 1..largest part; the last entry is 0.
  std::vector<int> ranks;

  /// rank(X^k); zero beyond the stored range.
  int rank(int k) const {
    return k >= 1 && k <= static_cast<int>(ranks.size()) ? ranks[k - 1] : 0;
  }
  /// The pairs (k, r_k).
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t k = 0; k < ranks.size(); ++k) out.emplace_back(static_cast<int>(k) + 1, ranks[k]);
    return out;
  }
  int max_rank() const { return ranks.empty() ? 0 : ranks.front(); }
  /// Smallest k with r_k = 0.
  int k_stop() const {
    for (std::size_t k = 0; k < ranks.size(); ++k)
      if (ranks[k] == 0) return static_cast<int>(k) + 1;
    return static_cast<int>(ranks.size()) + 1;
  }
};

inline RankSequence rank_sequence(const Partition& lambda) {
  RankSequence seq;
  std::vector<int> iterated = lambda.parts();
  for (int k = 1; k <= lambda.largest(); ++k) {
    int r = 0;
    for (int& value : iterated) {
      value = rank_counting_f(value);
      r += value;
    }
    seq.ranks.push_back(r);
  }
  return seq;
}

/// True iff every partial sum of mu is <= the matching partial sum of lambda
/// (zero padding the shorter), i.e. O_mu lies in the closure of O_lambda.
inline bool dominance_leq(const Partition& mu, const Partition& lambda) {
  if (mu.size() != lambda.size()) throw DomainError("incomparable sizes");
  const int len = std::max(mu.length(), lambda.length());
  int sum_mu = 0, sum_lambda = 0;
  for (int k = 1; k <= len; ++k) {
    sum_mu += mu.part(k);
    sum_lambda += lambda.part(k);
    if (sum_mu > sum_lambda) return false;
  }
  return true;
}

inline bool dominance_less(const Partition& mu, const Partition& lambda) {
  return mu != lambda && dominance_leq(mu, lambda);
}

namespace detail {
inline void enumerate_partitions_into(int remaining, int max_part, std::vector<int>& prefix,
                                      std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    enumerate_partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

/// All partitions of n in reverse-lexicographic order: [n], [n-1,1], ...
inline std::vector<Partition> enumerate_partitions(int n) {
  if (n < 1) throw DomainError("can only enumerate partitions of a positive integer");
  std::vector<Partition> out;
  std::vector<int> prefix;
  detail::enumerate_partitions_into(n, n, prefix, out);
  return out;
}

/// lambda(i) = lambda_1 + ... + lambda_i - i + 1, zero-padding lambda past its length.
inline int weyman_lambda_i(const Partition& lambda, int i) {
  if (i < 1) throw DomainError("weyman index i must be positive");
  int sum = 0;
  for (int j = 1; j <= i; ++j) sum += lambda.part(j);
  return sum - i + 1;
}

/// A partition of 2m labels a nilpotent sp_2m orbit iff each odd part has even multiplicity.
inline bool gerstenhaber_valid(const Partition& lambda) {
  if (lambda.size() % 2 != 0) throw DomainError("not a partition of 2m");
  std::map<int, int> multiplicity;
  for (int part : lambda.parts()) ++multiplicity[part];
  return std::all_of(multiplicity.begin(), multiplicity.end(),
                     [](const auto& entry) { return entry.first % 2 == 0 || entry.second % 2 == 0; });
}

}  // namespace orbitforge
