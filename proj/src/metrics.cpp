#include "veco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "veco/errors.hpp"

namespace veco {

namespace {

std::vector<std::uint32_t> index_labels(std::span<const std::int64_t> labels,
                                        std::vector<std::int64_t>& distinct) {
  distinct.assign(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::uint32_t> idx(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    idx[i] = static_cast<std::uint32_t>(
        std::lower_bound(distinct.begin(), distinct.end(), labels[i]) - distinct.begin());
  }
  return idx;
}

__int128 choose2(std::uint64_t c) {
  return static_cast<__int128>(c) * (c - 1) / 2;
}

}  // namespace

ContingencyTable contingency(std::span<const std::int64_t> p, std::span<const std::int64_t> q) {
  if (p.size() != q.size()) {
    throw DataError("partitions cover carriers of different sizes: " + std::to_string(p.size()) +
                    " vs " + std::to_string(q.size()));
  }
  ContingencyTable t;
  t.total = p.size();
  std::vector<std::uint32_t> pi = index_labels(p, t.row_labels);
  std::vector<std::uint32_t> qi = index_labels(q, t.col_labels);

  std::vector<std::uint64_t> keys(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    keys[i] = (static_cast<std::uint64_t>(pi[i]) << 32) | qi[i];
  }
  std::sort(keys.begin(), keys.end());

  t.row_sums.assign(t.row_labels.size(), 0);
  t.col_sums.assign(t.col_labels.size(), 0);
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) {
      ++j;
    }
    auto row = static_cast<std::uint32_t>(keys[i] >> 32);
    auto col = static_cast<std::uint32_t>(keys[i] & 0xffffffffULL);
    std::uint64_t count = j - i;
    t.cells.push_back({row, col, count});
    t.row_sums[row] += count;
    t.col_sums[col] += count;
    i = j;
  }
  return t;
}

double ari(const ContingencyTable& t) {
  __int128 index = 0;
  for (const auto& cell : t.cells) {
    index += choose2(cell.count);
  }
  __int128 sum_rows = 0;
  __int128 sum_cols = 0;
  for (std::uint64_t a : t.row_sums) {
    sum_rows += choose2(a);
  }
  for (std::uint64_t b : t.col_sums) {
    sum_cols += choose2(b);
  }
  __int128 pairs = choose2(t.total);

  // ARI = (index - sum_rows*sum_cols/pairs) / ((sum_rows+sum_cols)/2 - sum_rows*sum_cols/pairs),
  // scaled by 2*pairs to stay in integers.
  __int128 num = 2 * pairs * index - 2 * sum_rows * sum_cols;
  __int128 den = pairs * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
  if (den == 0) {
    return 1.0;  // both partitions trivial, hence identical
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double nmi(const ContingencyTable& t) {
  const double total = static_cast<double>(t.total);
  auto entropy = [&](const std::vector<std::uint64_t>& sums) {
    double h = 0.0;
    for (std::uint64_t c : sums) {
      if (c > 0) {
        h += (static_cast<double>(c) / total) * std::log(total / static_cast<double>(c));
      }
    }
    return h;
  };
  const double hp = entropy(t.row_sums);
  const double hq = entropy(t.col_sums);
  if (hp == 0.0 && hq == 0.0) {
    return 1.0;
  }
  if (hp == 0.0 || hq == 0.0) {
    return 0.0;
  }
  double info = 0.0;
  for (const auto& cell : t.cells) {
    // counts stay below 2^53, so the products below are exact in double
    double joint = static_cast<double>(cell.count) * total;
    double marginal =
        static_cast<double>(t.row_sums[cell.row]) * static_cast<double>(t.col_sums[cell.col]);
    info += (static_cast<double>(cell.count) / total) * std::log(joint / marginal);
  }
  double value = info / (0.5 * (hp + hq));
  return std::clamp(value, 0.0, 1.0);
}

double ari(std::span<const std::int64_t> p, std::span<const std::int64_t> q) {
  return ari(contingency(p, q));
}

double nmi(std::span<const std::int64_t> p, std::span<const std::int64_t> q) {
  return nmi(contingency(p, q));
}

double ari(const Partition& p, const Partition& q) { return ari(p.labels, q.labels); }

double nmi(const Partition& p, const Partition& q) { return nmi(p.labels, q.labels); }

}  // namespace veco
