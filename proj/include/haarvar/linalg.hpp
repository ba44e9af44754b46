// Copyright 2026 The haarvar developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file linalg.hpp
 * Dense complex linear algebra, tensor-factor bookkeeping, and Haar-measure
 * sampling on the unitary group U(N).
 */

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace haarvar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Frobenius tolerance for unitarity checks.
inline constexpr double kUnitaryTol = 1e-10;
/// Frobenius tolerance for Hermiticity checks.
inline constexpr double kHermitianTol = 1e-10;
/// Largest imaginary residue tolerated on physically real scalars.
inline constexpr double kImagResidueTol = 1e-10;

/// Ordered local dimensions of the tensor factors of a composite space.
/// The leftmost factor is the most significant one in the composite index,
/// i.e. for dims (N, M) the composite index is i*M + m.
struct FactorShape {
    std::vector<Index> dims;

    FactorShape() = default;
    FactorShape(std::initializer_list<Index> d) : dims(d) {}
    explicit FactorShape(std::vector<Index> d) : dims(std::move(d)) {}

    Index total() const;
    std::size_t num_factors() const { return dims.size(); }
};

/// Identifies one deterministic random stream. Identical (master_seed,
/// stream_index) pairs reproduce identical sample sequences; distinct
/// stream_index values give statistically independent streams.
struct SeededStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    /// Derives an independent family of child streams, e.g. one per
    /// Monte-Carlo sample. Used for counter-based seed splitting.
    SeededStream child(std::uint64_t index) const;
};

/// Deterministic random number generator bound to one SeededStream.
///
/// All distributions are implemented on top of the raw mt19937_64 output so
/// that sequences are bit-identical across platforms and standard library
/// implementations.
class RandomStream {
  public:
    explicit RandomStream(SeededStream stream);

    /// Uniform double in (0, 1].
    double uniform();
    /// Standard real normal via Box-Muller.
    double gaussian();
    /// Standard complex normal, Var(re) = Var(im) = 1/2.
    Complex complex_gaussian();
    /// Matrix of i.i.d. standard complex Gaussians, filled row by row.
    ComplexMatrix ginibre(Index rows, Index cols);
    /// Haar-distributed unitary via QR of a Ginibre matrix with the
    /// R-diagonal phase correction.
    ComplexMatrix haar_unitary(Index n);

  private:
    std::mt19937_64 engine_;
};

ComplexMatrix haar_unitary(Index n, SeededStream stream);

bool is_unitary(const ComplexMatrix& a, double tol = kUnitaryTol);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// Asserts |Im z| <= tol and returns Re z. `what` names the quantity in the
/// error message.
double real_part_checked(Complex z, const char* what,
                         double tol = kImagResidueTol);

/// Kronecker product; dims multiply, leftmost factor most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Keep { First, Second };

/// Partial trace of a square operator on a two-factor space (N, M).
/// Keep::First returns the N-dimensional trace over the second factor,
/// Keep::Second the M-dimensional trace over the first.
ComplexMatrix partial_trace(const ComplexMatrix& a, const FactorShape& shape,
                            Keep keep);

/// Conjugates a square operator by the factor permutation that makes output
/// factor k the input factor perm[k] (0-based). The result is unitarily
/// similar to the input.
ComplexMatrix permute_factors(const ComplexMatrix& a, const FactorShape& shape,
                              const std::vector<std::size_t>& perm);

/// Composite-index relabeling for the permutation above: entry r of the
/// returned table is the input index corresponding to output index r.
std::vector<Index> factor_permutation_map(const FactorShape& shape,
                                          const std::vector<std::size_t>& perm);

/// Swap = sum_{i,j} |i,j><j,i| on C^N (x) C^N.
ComplexMatrix swap_operator(Index n);

/// Re Tr(A^dag B).
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// B := (G acting on `targets`) * A, where G is a gate on the listed factors
/// of the composite space and A is a square operator on the whole space.
ComplexMatrix apply_to_factors_left(const ComplexMatrix& gate,
                                    const FactorShape& shape,
                                    const std::vector<std::size_t>& targets,
                                    const ComplexMatrix& a);

/// B := A * (G acting on `targets`).
ComplexMatrix apply_to_factors_right(const ComplexMatrix& gate,
                                     const FactorShape& shape,
                                     const std::vector<std::size_t>& targets,
                                     const ComplexMatrix& a);

/// In-place statevector update v := (G acting on `targets`) v.
void apply_to_vector(const ComplexMatrix& gate, const FactorShape& shape,
                     const std::vector<std::size_t>& targets, ComplexVector& v);

}  // namespace haarvar
