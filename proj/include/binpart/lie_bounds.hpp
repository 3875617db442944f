#pragma once

// Upper bounds on mu(g), the smallest dimension of a faithful module of a
// nilpotent Lie algebra g of dimension n and nilpotency class k.

#include <cstddef>
#include <optional>
#include <string>

#include "binpart/binomial_sums.hpp"
#include "binpart/bound_real.hpp"
#include "binpart/certified_bounds.hpp"
#include "binpart/nat.hpp"

namespace binpart {

class NilpotentProfile {
public:
  /// Requires 1 <= class_k <= dim_n - 1.
  NilpotentProfile(std::size_t dim_n, std::size_t class_k) : n_(dim_n), k_(class_k) {
    if (dim_n < 2 || class_k < 1 || class_k + 1 > dim_n) {
      throw domain_error("nilpotent profile needs 1 <= k <= n-1, got n=" + std::to_string(dim_n) +
                         " k=" + std::to_string(class_k));
    }
  }

  std::size_t dim_n() const noexcept { return n_; }
  std::size_t class_k() const noexcept { return k_; }
  bool filiform() const noexcept { return k_ + 1 == n_; }

private:
  std::size_t n_;
  std::size_t k_;
};

/// 1 + n + n^2 + ... + n^{k+1}.
inline Nat birkhoff_bound(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw domain_error("birkhoff_bound needs n, k >= 1");
  Nat sum = 0;
  Nat term = 1;
  for (std::size_t e = 0; e <= k + 1; ++e) {
    sum += term;
    term *= static_cast<unsigned long>(n);
  }
  return sum;
}

/// 1 + n^k.
inline Nat reed_bound(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw domain_error("reed_bound needs n, k >= 1");
  return 1 + pow_ui(n, k);
}

inline Nat pnk_bound(const NilpotentProfile& profile, const PnkTriangle& triangle) {
  return triangle.at(profile.dim_n(), profile.class_k());
}

/// 1 + p(n-2, n-2), valid for filiform algebras.
inline Nat filiform_bound(std::size_t n, const PnkTriangle& triangle) {
  if (n < 2) throw domain_error("filiform_bound needs n >= 2");
  return 1 + triangle.at(n - 2, n - 2);
}

/// Enclosure of 3 * 2^n / sqrt(n).
inline BoundReal corollary_bound(std::size_t n, mpfr_prec_t prec = kStartPrecision) {
  if (n < 1) throw domain_error("corollary_bound needs n >= 1");
  return BoundReal::from_integer(3 * pow_ui(2, n), prec) / sqrt(BoundReal::from_integer(static_cast<long>(n), prec));
}

/// Checks p(n,k) < 3 * 2^n / sqrt(n) for every 1 <= k <= n: as integers,
/// 9 * 4^n > n * p(n,k)^2.  Implied by the 2.825 bound, checked on its own.
inline bool corollary_holds(std::size_t n, const PnkTriangle& triangle) {
  const Nat rhs = 9 * pow_ui(4, n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Nat& v = triangle.at(n, k);
    if (!(Nat(static_cast<unsigned long>(n)) * v * v < rhs)) return false;
  }
  return true;
}

enum class BoundKind { Pnk, Filiform, Reed, Birkhoff };

inline const char* to_string(BoundKind b) {
  switch (b) {
    case BoundKind::Pnk: return "pnk";
    case BoundKind::Filiform: return "filiform";
    case BoundKind::Reed: return "reed";
    case BoundKind::Birkhoff: return "birkhoff";
  }
  return "pnk";
}

struct MuBoundReport {
  std::size_t n = 0;
  std::size_t k = 0;
  Nat birkhoff;
  Nat reed;
  Nat pnk;
  std::optional<Nat> filiform;
  BoundReal corollary;
  BoundKind best = BoundKind::Pnk;
  bool pnk_beats_reed = false;

  const Nat& best_value() const {
    switch (best) {
      case BoundKind::Pnk: return pnk;
      case BoundKind::Filiform: return *filiform;
      case BoundKind::Reed: return reed;
      case BoundKind::Birkhoff: return birkhoff;
    }
    return pnk;
  }
};

/// All requested bounds and the exact minimizer.  The filiform bound takes
/// part only when asked for.  Ties go to the earlier entry in pnk,
/// filiform, reed, birkhoff order.
inline MuBoundReport best_bound(const NilpotentProfile& profile, const PnkTriangle& triangle,
                                bool with_filiform = false) {
  if (with_filiform && !profile.filiform()) throw domain_error("filiform bound needs k = n-1");
  const std::size_t n = profile.dim_n();
  const std::size_t k = profile.class_k();
  MuBoundReport r{n, k, birkhoff_bound(n, k), reed_bound(n, k), pnk_bound(profile, triangle), std::nullopt,
                  corollary_bound(n)};
  if (with_filiform) r.filiform = filiform_bound(n, triangle);
  r.pnk_beats_reed = r.pnk < r.reed;
  const Nat* best = &r.pnk;
  r.best = BoundKind::Pnk;
  if (r.filiform && *r.filiform < *best) {
    best = &*r.filiform;
    r.best = BoundKind::Filiform;
  }
  if (r.reed < *best) {
    best = &r.reed;
    r.best = BoundKind::Reed;
  }
  if (r.birkhoff < *best) r.best = BoundKind::Birkhoff;
  return r;
}

}  // namespace binpart
