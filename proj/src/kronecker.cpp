#include "p2moduli/kronecker.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "p2moduli/errors.hpp"

namespace p2moduli {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

long long mod_reduce(const Rational& x, long long p) {
  // a/b with b invertible mod p
  Int n = num(x) % p, d = den(x) % p;
  long long nn = ((n + p) % p).convert_to<long long>();
  long long dd = ((d + p) % p).convert_to<long long>();
  if (dd == 0) fail(Errc::BadInput, "entry denominator not invertible mod " + std::to_string(p));
  // Fermat inverse
  long long inv = 1, base = dd % p, e = p - 2;
  while (e > 0) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return nn * inv % p;
}

// In-place row reduction mod p; returns rank.
long long rank_mod_p(std::vector<std::vector<long long>>& rows, long long p) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  long long rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<long long>(rows.size()); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] % p != 0) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    long long inv = 1, base = rows[rank][c] % p, e = p - 2;
    base = (base + p) % p;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      long long factor = (rows[r][c] % p + p) % p;
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = ((rows[r][j] - factor * rows[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

long long rank_q(std::vector<std::vector<Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  long long rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<long long>(rows.size()); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Rational inv = Rational(1) / rows[rank][c];
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      Rational factor = rows[r][c];
      if (factor.is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Image vectors f(l (x) v) for all l and all basis rows v, over F_p.
std::vector<std::vector<long long>> image_rows_mod_p(const std::vector<std::vector<std::vector<long long>>>& e,
                                                     const std::vector<std::vector<long long>>& basis, long long p) {
  std::size_t q = e.size(), m = e[0].size(), n = e[0][0].size();
  std::vector<std::vector<long long>> out;
  out.reserve(q * basis.size());
  for (const auto& v : basis)
    for (std::size_t l = 0; l < q; ++l) {
      std::vector<long long> w(n, 0);
      for (std::size_t i = 0; i < m; ++i) {
        if (v[i] % p == 0) continue;
        for (std::size_t j = 0; j < n; ++j) w[j] = (w[j] + v[i] * e[l][i][j]) % p;
      }
      out.push_back(std::move(w));
    }
  return out;
}

std::vector<std::vector<Rational>> image_rows_q(const KroneckerModule& mod,
                                                const std::vector<std::vector<Rational>>& basis) {
  std::size_t q = mod.entries.size(), m = mod.entries[0].size(), n = mod.entries[0][0].size();
  std::vector<std::vector<Rational>> out;
  out.reserve(q * basis.size());
  for (const auto& v : basis)
    for (std::size_t l = 0; l < q; ++l) {
      std::vector<Rational> w(n, Rational(0));
      for (std::size_t i = 0; i < m; ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) w[j] += v[i] * mod.entries[l][i][j];
      }
      out.push_back(std::move(w));
    }
  return out;
}

Int gauss_binomial(long long m, long long k, long long p) {
  // prod_{i<k} (p^(m-i) - 1) / (p^(i+1) - 1); exact integer
  Int numer = 1, denom = 1;
  for (long long i = 0; i < k; ++i) {
    numer *= boost::multiprecision::pow(Int(p), static_cast<unsigned>(m - i)) - 1;
    denom *= boost::multiprecision::pow(Int(p), static_cast<unsigned>(i + 1)) - 1;
  }
  return numer / denom;
}

}  // namespace

void validate_shape(const KroneckerShape& s) {
  if (s.q < 3) fail(Errc::OutOfRange, "Kronecker shape needs q >= 3");
  if (s.m < 1 || s.n < 1) fail(Errc::OutOfRange, "Kronecker shape needs m, n >= 1");
}

void validate_module(const KroneckerModule& mod) {
  validate_shape(mod.shape);
  if (!mod.field.rationals && !is_prime(mod.field.p)) fail(Errc::BadInput, "field characteristic must be prime");
  if (static_cast<long long>(mod.entries.size()) != mod.shape.q) fail(Errc::BadInput, "entries must have q slices");
  for (const auto& slice : mod.entries) {
    if (static_cast<long long>(slice.size()) != mod.shape.m) fail(Errc::BadInput, "entries must have m rows per slice");
    for (const auto& row : slice)
      if (static_cast<long long>(row.size()) != mod.shape.n) fail(Errc::BadInput, "entries must have n columns per row");
  }
}

Int moduli_dim(const KroneckerShape& s) {
  validate_shape(s);
  return Int(s.q) * s.m * s.n - Int(s.m) * s.m - Int(s.n) * s.n + 1;
}

bool slope_ok(long long m1, long long n1, const KroneckerShape& s, bool strict) {
  validate_shape(s);
  if (m1 < 1 || m1 > s.m || n1 < 0 || n1 > s.n) fail(Errc::OutOfRange, "subspace dimensions out of range");
  Int lhs = Int(n1) * s.m, rhs = Int(s.n) * m1;
  return strict ? lhs > rhs : lhs >= rhs;
}

bool coprime_fine(const KroneckerShape& s) {
  validate_shape(s);
  return std::gcd(s.m, s.n) == 1;
}

StabilityVerdict check_ff(const KroneckerModule& mod, std::uint64_t budget) {
  validate_module(mod);
  if (mod.field.rationals) fail(Errc::BadInput, "check_ff needs a prime field");
  long long p = mod.field.p;
  long long q = mod.shape.q, m = mod.shape.m, n = mod.shape.n;

  Int total = 0;
  for (long long k = 0; k <= m; ++k) total += gauss_binomial(m, k, p);
  if (total > budget)
    fail(Errc::SizeLimit, "subspace count " + total.str() + " exceeds budget " + std::to_string(budget));

  std::vector<std::vector<std::vector<long long>>> e(q, std::vector<std::vector<long long>>(m, std::vector<long long>(n)));
  for (long long l = 0; l < q; ++l)
    for (long long i = 0; i < m; ++i)
      for (long long j = 0; j < n; ++j) e[l][i][j] = mod_reduce(mod.entries[l][i][j], p);

  bool tight = false;
  for (long long k = 1; k <= m; ++k) {
    // pivot column combinations, lexicographic
    std::vector<long long> pivots(k);
    std::iota(pivots.begin(), pivots.end(), 0);
    for (;;) {
      std::vector<bool> is_pivot(m, false);
      for (long long c : pivots) is_pivot[c] = true;
      std::vector<std::pair<long long, long long>> free_pos;  // (row, col), row-major
      for (long long r = 0; r < k; ++r)
        for (long long c = pivots[r] + 1; c < m; ++c)
          if (!is_pivot[c]) free_pos.emplace_back(r, c);

      std::vector<long long> vals(free_pos.size(), 0);
      for (;;) {
        std::vector<std::vector<long long>> basis(k, std::vector<long long>(m, 0));
        for (long long r = 0; r < k; ++r) basis[r][pivots[r]] = 1;
        for (std::size_t t = 0; t < free_pos.size(); ++t) basis[free_pos[t].first][free_pos[t].second] = vals[t];

        auto img = image_rows_mod_p(e, basis, p);
        long long d = rank_mod_p(img, p);
        if (d < n) {
          if (d * m < n * k) {
            Certificate cert;
            cert.basis.assign(k, std::vector<Rational>(m));
            for (long long r = 0; r < k; ++r)
              for (long long c = 0; c < m; ++c) cert.basis[r][c] = Rational(basis[r][c]);
            cert.image_dim = d;
            return {StabilityVerdict::Status::Unstable, std::move(cert), ""};
          }
          if (d * m == n * k) tight = true;
        }

        // next free assignment (last position least significant)
        bool wrapped = true;
        for (std::size_t t = vals.size(); t-- > 0;) {
          if (++vals[t] < p) {
            wrapped = false;
            break;
          }
          vals[t] = 0;
        }
        if (wrapped) break;
      }

      // next pivot combination
      long long r = k - 1;
      while (r >= 0 && pivots[r] == m - k + r) --r;
      if (r < 0) break;
      ++pivots[r];
      for (long long rr = r + 1; rr < k; ++rr) pivots[rr] = pivots[rr - 1] + 1;
    }
  }
  return {tight ? StabilityVerdict::Status::Semistable : StabilityVerdict::Status::Stable, std::nullopt, ""};
}

StabilityVerdict search_destabilizer_q(const KroneckerModule& mod, int effort, std::uint64_t seed) {
  validate_module(mod);
  if (!mod.field.rationals) fail(Errc::BadInput, "search_destabilizer_q works over the rationals");
  long long q = mod.shape.q, m = mod.shape.m, n = mod.shape.n;

  std::vector<std::vector<std::vector<Rational>>> candidates;

  // coordinate subspaces
  if (m <= 16) {
    for (unsigned long long mask = 1; mask < (1ULL << m); ++mask) {
      std::vector<std::vector<Rational>> basis;
      for (long long i = 0; i < m; ++i)
        if (mask >> i & 1) {
          std::vector<Rational> v(m, Rational(0));
          v[i] = 1;
          basis.push_back(std::move(v));
        }
      candidates.push_back(std::move(basis));
    }
  } else {
    for (long long i = 0; i < m; ++i) {
      std::vector<std::vector<Rational>> basis(1, std::vector<Rational>(m, Rational(0)));
      basis[0][i] = 1;
      candidates.push_back(std::move(basis));
    }
    std::vector<std::vector<Rational>> full(m, std::vector<Rational>(m, Rational(0)));
    for (long long i = 0; i < m; ++i) full[i][i] = 1;
    candidates.push_back(std::move(full));
  }

  // kernels of the q slice maps
  for (long long l = 0; l < q; ++l) {
    std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(n));
    for (long long i = 0; i < m; ++i) mat[i] = mod.entries[l][i];
    std::vector<std::vector<Rational>> work = mat;
    long long r = rank_q(work);
    if (r == m) continue;
    // solve v * mat = 0: reduce the transpose-augmented system
    // Use: kernel of the row-space map = null space of mat^T acting on the left.
    // Row-reduce mat and read combination vectors from an identity tableau.
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(n + m, Rational(0)));
    for (long long i = 0; i < m; ++i) {
      for (long long j = 0; j < n; ++j) aug[i][j] = mat[i][j];
      aug[i][n + i] = 1;
    }
    rank_q(aug);
    std::vector<std::vector<Rational>> kernel;
    for (long long i = 0; i < m; ++i) {
      bool zero = true;
      for (long long j = 0; j < n; ++j)
        if (!aug[i][j].is_zero()) {
          zero = false;
          break;
        }
      if (zero) kernel.emplace_back(aug[i].begin() + n, aug[i].end());
    }
    if (!kernel.empty()) candidates.push_back(std::move(kernel));
  }

  // random small-integer subspaces
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dim_pick(1, m);
  std::uniform_int_distribution<int> entry_pick(-2, 2);
  for (int t = 0; t < effort; ++t) {
    long long k = dim_pick(rng);
    std::vector<std::vector<Rational>> basis(k, std::vector<Rational>(m));
    for (auto& row : basis)
      for (auto& v : row) v = Rational(entry_pick(rng));
    candidates.push_back(std::move(basis));
  }

  for (auto& basis : candidates) {
    std::vector<std::vector<Rational>> reduced = basis;
    long long k = rank_q(reduced);
    if (k == 0) continue;
    reduced.resize(k);
    auto img = image_rows_q(mod, reduced);
    long long d = rank_q(img);
    if (d < n && d * m < n * k) {
      Certificate cert{std::move(reduced), d};
      return {StabilityVerdict::Status::Unstable, std::move(cert), ""};
    }
  }

  bool nonzero = false;
  for (const auto& slice : mod.entries)
    for (const auto& row : slice)
      for (const auto& v : row) nonzero = nonzero || !v.is_zero();
  std::string note =
      (m == 1 && nonzero) ? "no proper subspaces" : "no destabilizing subspace found at this effort";
  return {StabilityVerdict::Status::Unknown, std::nullopt, note};
}

bool verify_certificate(const KroneckerModule& mod, const Certificate& cert) {
  validate_module(mod);
  long long m = mod.shape.m, n = mod.shape.n;
  if (cert.basis.empty()) return false;
  for (const auto& row : cert.basis)
    if (static_cast<long long>(row.size()) != m) return false;
  if (mod.field.rationals) {
    std::vector<std::vector<Rational>> reduced = cert.basis;
    long long k = rank_q(reduced);
    if (k == 0) return false;
    reduced.resize(k);
    auto img = image_rows_q(mod, reduced);
    long long d = rank_q(img);
    return d == cert.image_dim && d * m < n * k;
  }
  long long p = mod.field.p;
  std::vector<std::vector<std::vector<long long>>> e(mod.shape.q,
                                                     std::vector<std::vector<long long>>(m, std::vector<long long>(n)));
  for (long long l = 0; l < mod.shape.q; ++l)
    for (long long i = 0; i < m; ++i)
      for (long long j = 0; j < n; ++j) e[l][i][j] = mod_reduce(mod.entries[l][i][j], p);
  std::vector<std::vector<long long>> basis;
  for (const auto& row : cert.basis) {
    std::vector<long long> v(m);
    for (long long i = 0; i < m; ++i) v[i] = mod_reduce(row[i], p);
    basis.push_back(std::move(v));
  }
  std::vector<std::vector<long long>> reduced = basis;
  long long k = rank_mod_p(reduced, p);
  if (k == 0) return false;
  auto img = image_rows_mod_p(e, basis, p);
  long long d = rank_mod_p(img, p);
  return d == cert.image_dim && d * m < n * k;
}

FamilyInvariants family_invariants(FamilyKind kind, long long n) {
  FamilyInvariants out;
  if (kind == FamilyKind::IdealLength) {
    if (n < 1) fail(Errc::OutOfRange, "IdealLength needs n >= 1");
    out.shape = {3, n, n + 1};
    out.cokernel = chern_of_complex({{line_bundle(-n), Int(n + 1)}}, {{line_bundle(-n - 1), Int(n)}});
    out.dim_match = moduli_dim(out.shape) == 2 * out.cokernel.c2;  // Hilbert scheme of c2 points
  } else {
    if (n < 4) fail(Errc::OutOfRange, "RankN2 needs n >= 4");
    out.shape = {3, n - 1, 2 * n - 3};
    out.cokernel = chern_of_complex({{line_bundle(-1), Int(2 * n - 3)}}, {{line_bundle(-2), Int(n - 1)}});
    out.dim_match = moduli_dim(out.shape) == dim_stable_p2(out.cokernel);
  }
  return out;
}

std::vector<WallCandidate> candidate_walls(long long m, long long n, long long p) {
  if (m < 1 || n < 1 || p < 1) fail(Errc::OutOfRange, "candidate_walls needs m, n, p >= 1");
  std::vector<WallCandidate> out;
  for (long long m1 = 1; m1 <= m; ++m1)
    for (long long n1 = 0; n1 <= n; ++n1)
      for (long long p1 = 0; p1 <= p; ++p1) {
        if (m1 == m && n1 == n && p1 == p) continue;
        Int denom = Int(m) * (Int(n1) * p - Int(n) * p1);
        if (denom.is_zero()) continue;
        Rational lambda = Rational(Int(p) * m1 - Int(p1) * m) / Rational(denom);
        if (lambda <= 0 || lambda >= 1) continue;
        Rational rho = lambda * p / (1 - lambda);
        if (rho <= 3) continue;
        out.push_back({m1, n1, p1, lambda, rho});
      }
  std::sort(out.begin(), out.end(), [](const WallCandidate& a, const WallCandidate& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return std::tie(a.m1, a.n1, a.p1) < std::tie(b.m1, b.n1, b.p1);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const WallCandidate& a, const WallCandidate& b) {
                          return a.m1 == b.m1 && a.n1 == b.n1 && a.p1 == b.p1 && a.lambda == b.lambda;
                        }),
            out.end());
  return out;
}

}  // namespace p2moduli
