#include "evendct/complexity.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace evendct::complexity {
namespace {

long long pow2(unsigned m) {
  if (m > 60) throw std::out_of_range("complexity: exponent too large");
  return 1LL << m;
}

// Halves a value that must be even because its fractional parts cancel.
long long exact_half(long long twice, const char* what) {
  if (twice % 2 != 0) throw std::logic_error(std::string(what) + ": non-integral result");
  return twice / 2;
}

void require_dyadic_cofactor(unsigned m, const char* what) {
  if (m == 0) throw std::invalid_argument(std::string(what) + ": m must be at least 1");
}

}  // namespace

ComplexityRegistry::ComplexityRegistry()
    : entries_{
          {3, {1, 4, 1}, {0, 4, 1}},
          {5, {4, 13, 1}, {2, 13, 1}},
          {15, {14, 70, 4}, {10, 67, 8}},
          {2, {1, 2, 0}, {0, 2, 0}},
          {4, {4, 9, 0}, {1, 9, 0}},
          {8, {11, 29, 0}, {5, 29, 0}},
          {16, {26, 81, 0}, {16, 81, 0}},
      } {}

const ComplexityRegistry& ComplexityRegistry::standard() {
  static const ComplexityRegistry registry;
  return registry;
}

std::optional<BaseCounts> ComplexityRegistry::find(long long q) const {
  for (const BaseCounts& e : entries_)
    if (e.q == q) return e;
  return std::nullopt;
}

const BaseCounts& ComplexityRegistry::at(long long q) const {
  for (const BaseCounts& e : entries_)
    if (e.q == q) return e;
  throw std::out_of_range("no registry entry for length " + std::to_string(q) +
                          "; available: " + describe());
}

std::string ComplexityRegistry::describe() const {
  std::vector<long long> qs;
  for (const BaseCounts& e : entries_) qs.push_back(e.q);
  std::sort(qs.begin(), qs.end());
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) s += (i ? ", " : "") + std::to_string(qs[i]);
  return s;
}

OpCount kok_counts(const BaseCounts& base, unsigned m) {
  const long long p = pow2(m);
  const long long n = base.q * p;
  const long long m_n_half = exact_half(static_cast<long long>(m) * n, "kok_counts");
  return {p * base.unscaled.mu + m_n_half,
          p * base.unscaled.alpha + 3 * m_n_half - p + 1,
          p * base.unscaled.sigma + p - 1};
}

OpCount scaled_counts(const BaseCounts& base, unsigned m) {
  const long long p = pow2(m);
  const long long n = base.q * p;
  const long long m_n_half = exact_half(static_cast<long long>(m) * n, "scaled_counts");
  // (m/2 - 1 + 2^-m) N = mN/2 - N + q
  const long long mu_tail = m_n_half - n + base.q;
  return {base.scaled.mu + (p - 1) * base.unscaled.mu + mu_tail,
          base.scaled.alpha + (p - 1) * base.unscaled.alpha + 3 * m_n_half - p + 1,
          base.scaled.sigma + (p - 1) * base.unscaled.sigma + p - 1};
}

long long savings(const BaseCounts& base, unsigned m) {
  return kok_counts(base, m).mu - scaled_counts(base, m).mu;
}

OpCount dyadic_scaled_folded(unsigned m) {
  require_dyadic_cofactor(m, "dyadic_scaled_folded");
  const long long p = pow2(m);
  const long long half = p / 2;
  return {static_cast<long long>(m) * half - p + 1, 3LL * m * half - p + 1, 0};
}

OpCount three_scaled_folded(unsigned m) {
  const long long p = pow2(m);
  const long long m_half = exact_half(static_cast<long long>(m) * p, "three_scaled_folded");
  return {3 * m_half - 2 * p + 2, 9 * m_half + 3 * p + 1, p};
}

long long pfa_scaled_bound(const BaseCounts& base, unsigned m) {
  require_dyadic_cofactor(m, "pfa_scaled_bound");
  const long long p = pow2(m);
  const long long n = base.q * p;
  const long long mm = m;
  const long long twice = 2 * p * base.scaled.mu + 5 * n - base.q * (mm * (mm + 3) + 5) - p + 1;
  return exact_half(twice, "pfa_scaled_bound");
}

long long pfa_unscaled_lower_bound(const BaseCounts& base, unsigned m) {
  require_dyadic_cofactor(m, "pfa_unscaled_lower_bound");
  const long long p = pow2(m);
  return p * base.unscaled.mu + base.q * (2 * p - static_cast<long long>(m) - 2);
}

long long kok_excess_over_pfa(const BaseCounts& base, unsigned m) {
  return kok_counts(base, m).mu - pfa_unscaled_lower_bound(base, m);
}

bool matches_pfa(unsigned m) {
  require_dyadic_cofactor(m, "matches_pfa");
  const BaseCounts unit{1, {0, 0, 0}, {0, 0, 0}};
  return kok_excess_over_pfa(unit, m) == 0;
}

std::vector<Table2Row> table2() {
  struct Published {
    long long q;
    unsigned m;
    long long fl_alpha;
    long long fl_sigma;
  };
  static constexpr Published kFeigLinzerDisplay[] = {
      {3, 1, 16, 2},    {3, 2, 49, 4},     {3, 3, 133, 8},     {3, 4, 337, 16},
      {5, 1, 40, 2},    {5, 2, 109, 4},    {5, 3, 277, 8},     {5, 4, 673, 16},
      {15, 1, 178, 16}, {15, 2, 445, 32},  {15, 3, 1069, 64},  {15, 4, 2497, 128},
  };
  const ComplexityRegistry& reg = ComplexityRegistry::standard();
  std::vector<Table2Row> rows;
  for (const Published& p : kFeigLinzerDisplay) {
    const BaseCounts& base = reg.at(p.q);
    Table2Row row;
    row.q = p.q;
    row.m = p.m;
    row.n = p.q * pow2(p.m);
    row.proposed = p.q == 3 ? three_scaled_folded(p.m) : scaled_counts(base, p.m);
    row.fl_mu = pfa_scaled_bound(base, p.m);
    row.fl_alpha = p.fl_alpha;
    row.fl_sigma = p.fl_sigma;
    rows.push_back(row);
  }
  return rows;
}

std::vector<Fig5Point> fig5_data(unsigned max_m) {
  const ComplexityRegistry& reg = ComplexityRegistry::standard();
  std::vector<Fig5Point> points;
  auto push = [&](std::string family, long long n, long long mu) {
    points.push_back({std::move(family), n, mu, static_cast<double>(mu) / static_cast<double>(n)});
  };
  for (unsigned m = 1; m <= max_m; ++m) push("2^m", pow2(m), dyadic_scaled_folded(m).mu);
  for (unsigned m = 0; m <= max_m; ++m) push("3*2^m", 3 * pow2(m), three_scaled_folded(m).mu);
  for (long long q : {5LL, 15LL}) {
    const BaseCounts& base = reg.at(q);
    for (unsigned m = 0; m <= max_m; ++m)
      push(std::to_string(q) + "*2^m", q * pow2(m), scaled_counts(base, m).mu);
  }
  return points;
}

std::string table2_csv() {
  std::string out = "q,m,N,mu,alpha,sigma,fl_mu\n";
  for (const Table2Row& r : table2()) {
    out += std::to_string(r.q) + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," +
           r.proposed.to_string() + "," + std::to_string(r.fl_mu) + "\n";
  }
  return out;
}

std::string fig5_csv(unsigned max_m) {
  std::string out = "family,N,mu_norm\n";
  char buf[64];
  for (const Fig5Point& p : fig5_data(max_m)) {
    auto res = std::to_chars(buf, buf + sizeof(buf), p.mu_norm);
    out += p.family + "," + std::to_string(p.n) + "," + std::string(buf, res.ptr) + "\n";
  }
  return out;
}

}  // namespace evendct::complexity
