#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "dgldpc/oracle.hpp"

namespace dgldpc::oracle {

namespace {

std::int64_t input_bits(const FiniteInstance& inst) {
  std::int64_t k = 0;
  for (const auto& g : inst.vns) k += g.code.dimension() * g.count;
  return k;
}

mpz_class factorial(std::int64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

std::optional<double> FiniteSpectrum::normalized_log(std::int64_t w) const {
  if (w < 0 || w >= static_cast<std::int64_t>(values.size())) return std::nullopt;
  const mpq_class& v = values[static_cast<std::size_t>(w)];
  if (v == 0) return std::nullopt;
  return wef::log_of(v) / static_cast<double>(n);
}

std::vector<mpz_class> check_valid_counts(const FiniteInstance& inst) {
  const int e = static_cast<int>(inst.edges);
  wef::ExactPoly acc(std::vector<mpz_class>{mpz_class(1)});
  for (const auto& g : inst.cns) {
    acc = wef::multiply(acc, wef::power(wef::ExactPoly(g.wef), g.count, e), e);
  }
  std::vector<mpz_class> out(static_cast<std::size_t>(e) + 1);
  for (int v = 0; v <= e; ++v) out[v] = acc.coeff(v);
  return out;
}

wef::ExactPoly2 variable_valid_counts(const FiniteInstance& inst) {
  const int k = static_cast<int>(input_bits(inst));
  const int e = static_cast<int>(inst.edges);
  wef::ExactPoly2 acc(0, 0);
  acc.at(0, 0) = 1;
  for (const auto& g : inst.vns) {
    acc = wef::multiply(acc, wef::power(wef::ExactPoly2(g.iowef), g.count, k, e),
                        k, e);
  }
  wef::ExactPoly2 out(k, e);
  for (int u = 0; u <= std::min(k, acc.degree_x()); ++u)
    for (int v = 0; v <= std::min(e, acc.degree_y()); ++v) out.at(u, v) = acc.at(u, v);
  return out;
}

FiniteSpectrum exact_expected_spectrum(const FiniteInstance& inst) {
  const std::int64_t k = input_bits(inst);
  const std::int64_t e = inst.edges;
  if ((k + 1) * (e + 1) > kMaxSpectrumTable) {
    std::ostringstream os;
    os << "exact spectrum table (" << k + 1 << " x " << e + 1
       << ") exceeds the limit of " << kMaxSpectrumTable << " entries";
    throw ResourceLimit(os.str());
  }
  const auto nc = check_valid_counts(inst);
  const auto pb = variable_valid_counts(inst);

  // Placing v ones uniformly on E check sockets is check-valid with
  // probability N_c(v) / C(E, v).
  std::vector<mpq_class> valid(static_cast<std::size_t>(e) + 1);
  for (std::int64_t v = 0; v <= e; ++v) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e),
                 static_cast<unsigned long>(v));
    valid[v] = mpq_class(nc[v], binom);
    valid[v].canonicalize();
  }

  FiniteSpectrum out;
  out.n = inst.n;
  out.values.resize(static_cast<std::size_t>(k) + 1);
  for (std::int64_t w = 0; w <= k; ++w) {
    mpq_class sum = 0;
    for (std::int64_t v = 0; v <= e; ++v) {
      const mpz_class& c = pb.at(static_cast<int>(w), static_cast<int>(v));
      if (c == 0 || valid[v] == 0) continue;
      sum += c * valid[v];
    }
    out.values[w] = sum;
  }
  return out;
}

FiniteSpectrum brute_force_spectrum(const FiniteInstance& inst) {
  const std::int64_t e = inst.edges;
  const std::int64_t k = input_bits(inst);
  if (e > kMaxBruteEdges || k > kMaxBruteInputs) {
    std::ostringstream os;
    os << "brute force needs E <= " << kMaxBruteEdges << " and K <= "
       << kMaxBruteInputs << " (got E = " << e << ", K = " << k << ")";
    throw ResourceLimit(os.str());
  }

  // Histogram of VN-side edge patterns by input weight.
  std::vector<std::vector<std::uint64_t>> by_mask(
      std::size_t{1} << e, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
  for (std::uint64_t input = 0; input < (std::uint64_t{1} << k); ++input) {
    std::uint32_t mask = 0;
    int socket = 0, bit = 0;
    for (const auto& g : inst.vns) {
      const int kk = g.code.dimension();
      for (std::int64_t node = 0; node < g.count; ++node) {
        const auto msg = static_cast<std::uint32_t>((input >> bit) & ((1u << kk) - 1));
        mask |= g.code.encode(msg) << socket;
        bit += kk;
        socket += g.code.length();
      }
    }
    ++by_mask[mask][static_cast<std::size_t>(std::popcount(input))];
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < by_mask.size(); ++m) {
    if (std::any_of(by_mask[m].begin(), by_mask[m].end(), [](auto c) { return c > 0; })) {
      masks.push_back(m);
    }
  }

  // CN layout: first socket and codebook membership per node.
  struct Check {
    int first;
    int length;
    const std::vector<char>* member;
  };
  std::vector<std::vector<char>> books;
  books.reserve(inst.cns.size());
  for (const auto& g : inst.cns) {
    std::vector<char> book(std::size_t{1} << g.code.length(), 0);
    for (std::uint32_t m = 0; m < (1u << g.code.dimension()); ++m) book[g.code.encode(m)] = 1;
    books.push_back(std::move(book));
  }
  std::vector<Check> checks;
  int socket = 0;
  for (std::size_t t = 0; t < inst.cns.size(); ++t) {
    for (std::int64_t node = 0; node < inst.cns[t].count; ++node) {
      checks.push_back({socket, inst.cns[t].code.length(), &books[t]});
      socket += inst.cns[t].code.length();
    }
  }

  // source[c] is the VN socket wired to CN socket c.
  std::vector<int> source(static_cast<std::size_t>(e));
  std::iota(source.begin(), source.end(), 0);
  std::vector<std::uint64_t> valid(static_cast<std::size_t>(k) + 1, 0);
  do {
    for (const std::uint32_t mask : masks) {
      bool ok = true;
      for (const auto& c : checks) {
        std::uint32_t word = 0;
        for (int j = 0; j < c.length; ++j) word |= ((mask >> source[c.first + j]) & 1u) << j;
        if (!(*c.member)[word]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t w = 0; w < valid.size(); ++w) valid[w] += by_mask[mask][w];
    }
  } while (std::next_permutation(source.begin(), source.end()));

  const mpz_class perms = factorial(e);
  FiniteSpectrum out;
  out.n = inst.n;
  out.values.resize(valid.size());
  for (std::size_t w = 0; w < valid.size(); ++w) {
    out.values[w] = mpq_class(mpz_class(static_cast<unsigned long>(valid[w])), perms);
    out.values[w].canonicalize();
  }
  return out;
}

}  // namespace dgldpc::oracle
