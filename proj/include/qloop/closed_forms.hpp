#pragma once

// Alternating ADE quivers, their square products, the canonical mutation
// loops on them, and the fermionic sums those loops produce.
//
// Vertex numbering: A_n is the path 1..n; D_n is the path 1..n-2 with n-1
// and n both attached to n-2; E_n is the path 1..n-1 with n attached to 3.
// The orientation is alternating with vertex 1 a source.

#include <string>
#include <string_view>
#include <vector>

#include "qloop/mutation_loop.hpp"
#include "qloop/qseries.hpp"
#include "qloop/variable_system.hpp"

namespace qloop {

enum class DynkinFamily { A, D, E };

struct DynkinType {
  DynkinFamily family;
  int rank;

  /// Throws InvalidArgument unless A_n (n >= 1), D_n (n >= 4), E_6, E_7 or E_8.
  DynkinType(DynkinFamily family, int rank);

  /// "A3", "d5", "E6". Throws ParseError.
  static DynkinType parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

struct CartanData {
  IntMatrix cartan;
  RationalMatrix inverse;
};

CartanData cartan_data(const DynkinType& type);

struct AlternatingQuiver {
  Quiver quiver;
  std::vector<int> signs;
};

AlternatingQuiver alternating_dynkin(const DynkinType& type);

/// (Q; sinks then sources, id), each group in ascending vertex order.
MutationLoop dynkin_loop(const DynkinType& type);

/// Gram matrix C^{-1}.
ExponentForm dynkin_form(const DynkinType& type);
QSeries dynkin_closed_form(const DynkinType& type, const Rational& cutoff, const SumOptions& options = {});

enum class SquareOrder { PlusFirst, MinusFirst };

/// Alternating Q box Q' for two Dynkin types; rank-1 factors are rejected.
Quiver square_quiver(const DynkinType& t, const DynkinType& tp);

/// (Q box Q'; m+ m-, id) for PlusFirst, (Q box Q'; m- m+, id) for MinusFirst.
MutationLoop square_loop(const DynkinType& t, const DynkinType& tp, SquareOrder order);

/// Gram 1/2 (C_Q (x) C_Q'^{-1}) for PlusFirst, 1/2 (C_Q^{-1} (x) C_Q') for MinusFirst.
ExponentForm square_form(const DynkinType& t, const DynkinType& tp, SquareOrder order);
QSeries square_closed_form(const DynkinType& t, const DynkinType& tp, SquareOrder order, const Rational& cutoff,
                           const SumOptions& options = {});

/// sum_{|n| <= N} q^(3 n^2 / 4) truncated at cutoff, with N large enough that
/// every omitted term lies above it.
QSeries a3_theta_series(const Rational& cutoff);

/// Z(A3 loop) * (q)_M against the theta series.
bool theta_check_a3(const Rational& cutoff, const SumOptions& options = {});

}  // namespace qloop
