#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "hamforms/altform.hpp"
#include "hamforms/bridge.hpp"
#include "hamforms/hampair.hpp"
#include "hamforms/matrix.hpp"

namespace hamforms {

// Line L_u through P_u = (u, 1, 0) and Q_u = (V, 0, 1), affine chart u^{N+1} = 1.
PluckerVector<RatFunc> plucker_line(const HamPair& pair);

struct HomogeneousLine {
  PluckerVector<RatFunc> p;
  unsigned removed_power = 0;  // power of u^{N+1} divided out
  int degree = -1;             // common total degree, -1 when mixed
};

// P = (u¹..u^{N+1}, 0), Q = (g♯ W, 0, Pf) with the homogenized metric and
// covector; entries are polynomials and the common power of u^{N+1} is removed.
HomogeneousLine plucker_line_homogeneous(const HamPair& pair);

// p^{ij}p^{kl} − p^{ik}p^{jl} + p^{il}p^{jk} over all i<j<k<l.
template <class S>
std::vector<S> grassmann_check(const PluckerVector<S>& p) {
  std::vector<S> out;
  const int m = p.dim();
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      for (int k = j + 1; k <= m; ++k)
        for (int l = k + 1; l <= m; ++l)
          out.push_back(p.at(i, j) * p.at(k, l) - p.at(i, k) * p.at(j, l) + p.at(i, l) * p.at(j, k));
  return out;
}

// Row i, column (j,k) in lexicographic pair order holds ω_ijk.
Matrix<RatFunc> congruence_matrix(const OmegaForm& om);

// Ω contracted with the line of the pair; all zero when they match.
std::vector<RatFunc> annihilation_check(const OmegaForm& om, const HamPair& pair, bool homogeneous = false);

struct SampledAnnihilation {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t skipped_poles = 0;
  std::uint64_t seed = 0;
  bool all_zero = false;
};

SampledAnnihilation annihilation_check_sampled(const OmegaForm& om, const HamPair& pair, std::size_t samples,
                                               std::uint64_t seed);

struct RankReport {
  std::size_t rank = 0;
  // Row combinations y with yᵀM = 0, each scaled so its last nonzero entry is −1.
  std::vector<std::vector<RatFunc>> certificates;
};

RankReport congruence_rank(const Matrix<RatFunc>& m);

// Formal Plücker symbol p^{jk} as a polynomial variable.
inline constexpr std::size_t kPluckerBase = 64;
RatFunc plucker_symbol(int j, int k, int dim);

// N=2: solve the first two congruence equations for p^{23} and p^{13} and
// substitute into p¹²p³⁴ − p¹³p²⁴ + p¹⁴p²³.
RatFunc quadric_cut_n2(const OmegaForm& om);

// Each row scaled by ±1 so its first nonzero entry has positive leading coefficient.
Matrix<RatFunc> normalize_row_signs(const Matrix<RatFunc>& m);

// Column labels p^{jk} in lexicographic order.
std::vector<std::string> plucker_labels(int dim);

std::string format_table(const Matrix<RatFunc>& m, const VarNames* names = nullptr);
std::string format_table_csv(const Matrix<RatFunc>& m, const VarNames* names = nullptr);

// Whitespace table: a header of p^{jk} labels, then rows "du<i>" followed by
// entries 0, ±1 or ±<name> with names resolved through `names`. '#' starts a comment.
Matrix<RatFunc> read_table(std::istream& in, const VarNames& names);

struct CellMismatch {
  std::size_t row = 0;
  std::size_t col = 0;
  RatFunc expected, actual;
};

std::vector<CellMismatch> table_mismatches(const Matrix<RatFunc>& expected, const Matrix<RatFunc>& actual);

}  // namespace hamforms
