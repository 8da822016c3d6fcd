// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
/*******************************************************************************
 *
 * Sequence transformations: Aitken's delta-squared process, Wynn's scalar
 * epsilon-algorithm and the vector epsilon-algorithm (Samelson inverse).
 *
 * Every transformation guards its divisions. A denominator d whose magnitude
 * falls below stall_tolerance * max(1, |operand|) marks the cell "stalled";
 * stalled cells never produce a value and taint every cell depending on them.
 * Accelerated sequences repeat the last valid element in place of stalled
 * ones, so downstream convergence tests keep working.
 *
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fixaccel {

using RealVector = Eigen::VectorXd;

enum class Norm { infinity, euclidean };

struct TransformConfig {
    double stall_tolerance{1e-12};
    Norm norm{Norm::infinity};

    /// Throws std::invalid_argument unless stall_tolerance > 0.
    void validate() const;
};

template <typename T>
struct Series {
    std::vector<T> values;
    std::vector<bool> stalled;

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

using ScalarSeries = Series<double>;
using VectorSeries = Series<RealVector>;

/// Aitken delta-squared: y_n = x_n - (x_{n+1} - x_n)^2 / (x_{n+2} - 2 x_{n+1} + x_n).
/// Produces size-2 elements. Throws std::invalid_argument on fewer than 3 terms.
[[nodiscard]] ScalarSeries aitken(std::span<const double> x, const TransformConfig& cfg = {});

/// v / (v . v); nullopt for the zero vector. Dimension 1 is the plain reciprocal.
[[nodiscard]] std::optional<RealVector> samelson_inverse(const RealVector& v);

/// Epsilon table built one base term at a time.
///
/// Column k holds eps^k_n; column -1 is identically zero and column 0 is the
/// input. Appending x_m adds the anti-diagonal eps^k_{m-k} for k = 1..m using
///
///     eps^{k+1}_n = eps^{k-1}_{n+1} + (eps^k_{n+1} - eps^k_n)^{-1}
///
/// where the inverse is the reciprocal for scalars and the Samelson inverse
/// for vectors.
template <typename Cell>
class EpsilonTable {
    struct Entry {
        Cell value;
        bool stalled;
    };

    TransformConfig _cfg;
    std::vector<std::vector<Entry>> _columns;  // _columns[k] = column k >= 0
    Eigen::Index _dim{-1};

  public:
    explicit EpsilonTable(const TransformConfig& cfg = {});

    void push(const Cell& x);

    /// Number of base terms m.
    [[nodiscard]] std::size_t base_length() const { return _columns.empty() ? 0 : _columns[0].size(); }
    /// Number of columns with at least one entry (k = 0..columns()-1).
    [[nodiscard]] std::size_t columns() const { return _columns.size(); }
    /// Entries in column k (m - k); column -1 reports m + 1.
    [[nodiscard]] std::size_t column_size(int k) const;

    /// eps^k_n for k >= -1. Value of a stalled cell is unspecified.
    [[nodiscard]] Cell at(int k, std::size_t n) const;
    [[nodiscard]] bool stalled(int k, std::size_t n) const;

    /// Even diagonal d_k = eps^{2k}_0 for every k with 2k+1 <= m; stalled
    /// entries repeat the last valid one and are flagged.
    [[nodiscard]] Series<Cell> even_diagonal() const;
};

using ScalarEpsilonTable = EpsilonTable<double>;
using VectorEpsilonTable = EpsilonTable<RealVector>;

[[nodiscard]] ScalarEpsilonTable epsilon_table(std::span<const double> x, const TransformConfig& cfg = {});
[[nodiscard]] ScalarSeries epsilon_diagonal(std::span<const double> x, const TransformConfig& cfg = {});

/// Throws std::invalid_argument when the vectors disagree in dimension.
[[nodiscard]] VectorSeries vector_epsilon_diagonal(std::span<const RealVector> x, const TransformConfig& cfg = {});

[[nodiscard]] double distance(const RealVector& a, const RealVector& b, Norm norm);

/// ||y - y_prev|| <= delta in the configured norm.
[[nodiscard]] bool converged(const RealVector& y, const RealVector& y_prev, double delta,
                             const TransformConfig& cfg = {});

enum class Method { aitken, epsilon, vector_epsilon };

[[nodiscard]] std::string to_string(Method m);
/// Accepts "aitken", "epsilon", "vea" and "vector-epsilon".
[[nodiscard]] Method parse_method(const std::string& s);

/// Online accelerator over a vector sequence.
///
/// aitken and epsilon act component by component; vector_epsilon couples the
/// components through the Samelson inverse. Each push returns the newly
/// available accelerated element, if any; every method yields one element per
/// term from the third on. Aitken's stalled components keep their last valid
/// value. The epsilon methods return the deepest valid even-column entry on
/// the newest antidiagonal of the table; the element is flagged stalled when a
/// deeper entry existed but had stalled.
class SequenceAccelerator {
    Method _method;
    TransformConfig _cfg;
    Eigen::Index _dim{-1};
    std::vector<RealVector> _base;
    std::vector<ScalarEpsilonTable> _scalar_tables;
    std::optional<VectorEpsilonTable> _vector_table;
    VectorSeries _out;
    std::vector<double> _aitken_last;      // per component
    std::vector<bool> _aitken_has_valid;   // per component

  public:
    SequenceAccelerator(Method method, const TransformConfig& cfg = {});

    std::optional<RealVector> push(const RealVector& x);

    [[nodiscard]] Method method() const { return _method; }
    [[nodiscard]] const VectorSeries& elements() const { return _out; }
    [[nodiscard]] std::size_t base_length() const { return _base.size(); }

    /// Base terms consumed to produce accelerated element k.
    [[nodiscard]] std::size_t terms_for_element(std::size_t k) const;
};

} // namespace fixaccel
