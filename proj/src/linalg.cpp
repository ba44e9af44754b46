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

#include "haarvar/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace haarvar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ b);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Index FactorShape::total() const {
    Index prod = 1;
    for (Index d : dims) {
        if (d < 1) throw std::invalid_argument("FactorShape: dims must be positive");
        prod *= d;
    }
    return prod;
}

SeededStream SeededStream::child(std::uint64_t index) const {
    return SeededStream{mix(master_seed, stream_index), index};
}

RandomStream::RandomStream(SeededStream stream)
    : engine_(mix(stream.master_seed, stream.stream_index)) {}

double RandomStream::uniform() {
    // (x >> 11) + 1 maps the 64-bit word into (0, 2^53], so log() is safe.
    const std::uint64_t x = engine_();
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

Complex RandomStream::complex_gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u) / sqrt(2)
    return {r * std::cos(2.0 * std::numbers::pi * u2),
            r * std::sin(2.0 * std::numbers::pi * u2)};
}

ComplexMatrix RandomStream::ginibre(Index rows, Index cols) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = complex_gaussian();
    return g;
}

ComplexMatrix RandomStream::haar_unitary(Index n) {
    require(n >= 1, "haar_unitary: n must be >= 1");
    const ComplexMatrix g = ginibre(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < n; ++k) {
        const Complex rkk = r(k, k);
        q.col(k) *= rkk / std::abs(rkk);
    }
    return q;
}

ComplexMatrix haar_unitary(Index n, SeededStream stream) {
    RandomStream rng(stream);
    return rng.haar_unitary(n);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const ComplexMatrix gram = a.adjoint() * a;
    return (gram - ComplexMatrix::Identity(a.rows(), a.cols())).norm() <= tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol;
}

double real_part_checked(Complex z, const char* what, double tol) {
    if (std::abs(z.imag()) > tol) {
        throw std::runtime_error(std::string(what) + ": imaginary residue " +
                                 std::to_string(z.imag()) + " exceeds tolerance");
    }
    return z.real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, const FactorShape& shape,
                            Keep keep) {
    require(shape.num_factors() == 2, "partial_trace: shape must have 2 factors");
    const Index n = shape.dims[0];
    const Index m = shape.dims[1];
    require(a.rows() == a.cols() && a.rows() == n * m,
            "partial_trace: operator dimension does not match shape");
    if (keep == Keep::First) {
        ComplexMatrix out = ComplexMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < m; ++k) out(i, j) += a(i * m + k, j * m + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            for (Index k = 0; k < n; ++k) out(i, j) += a(k * m + i, k * m + j);
    return out;
}

std::vector<Index> factor_permutation_map(const FactorShape& shape,
                                          const std::vector<std::size_t>& perm) {
    const std::size_t f = shape.num_factors();
    require(perm.size() == f, "permute_factors: perm size does not match shape");
    std::vector<bool> seen(f, false);
    for (std::size_t p : perm) {
        require(p < f && !seen[p], "permute_factors: invalid permutation");
        seen[p] = true;
    }
    // Strides of the input factors.
    std::vector<Index> stride(f, 1);
    for (std::size_t k = f; k-- > 1;) stride[k - 1] = stride[k] * shape.dims[k];

    const Index total = shape.total();
    std::vector<Index> map(static_cast<std::size_t>(total));
    std::vector<Index> digit(f, 0);
    for (Index r = 0; r < total; ++r) {
        // Decompose r in the output dims (dims[perm[k]]), place digits at the
        // input positions.
        Index rem = r;
        Index src = 0;
        for (std::size_t k = f; k-- > 0;) {
            const Index d = shape.dims[perm[k]];
            digit[k] = rem % d;
            rem /= d;
            src += digit[k] * stride[perm[k]];
        }
        map[static_cast<std::size_t>(r)] = src;
    }
    return map;
}

ComplexMatrix permute_factors(const ComplexMatrix& a, const FactorShape& shape,
                              const std::vector<std::size_t>& perm) {
    const Index total = shape.total();
    require(a.rows() == a.cols() && a.rows() == total,
            "permute_factors: operator dimension does not match shape");
    const std::vector<Index> map = factor_permutation_map(shape, perm);
    ComplexMatrix out(total, total);
    for (Index j = 0; j < total; ++j)
        for (Index i = 0; i < total; ++i)
            out(i, j) = a(map[static_cast<std::size_t>(i)],
                          map[static_cast<std::size_t>(j)]);
    return out;
}

ComplexMatrix swap_operator(Index n) {
    require(n >= 1, "swap_operator: n must be >= 1");
    ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
    return s;
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(),
            "frobenius_inner: dimension mismatch");
    return a.cwiseProduct(b.conjugate()).sum().real();
}

namespace {

struct FactorIndexer {
    Index gate_dim = 1;
    std::vector<Index> gate_offsets;  // composite offset of each gate index
    std::vector<Index> rest_offsets;  // composite offset of each rest index

    FactorIndexer(const FactorShape& shape,
                  const std::vector<std::size_t>& targets) {
        const std::size_t f = shape.num_factors();
        std::vector<bool> is_target(f, false);
        for (std::size_t t : targets) {
            require(t < f, "apply_to_factors: target out of range");
            require(!is_target[t], "apply_to_factors: duplicate target");
            is_target[t] = true;
        }
        std::vector<Index> stride(f, 1);
        for (std::size_t k = f; k-- > 1;) stride[k - 1] = stride[k] * shape.dims[k];

        for (std::size_t t : targets) gate_dim *= shape.dims[t];
        gate_offsets.assign(static_cast<std::size_t>(gate_dim), 0);
        for (Index g = 0; g < gate_dim; ++g) {
            Index rem = g;
            Index off = 0;
            for (std::size_t k = targets.size(); k-- > 0;) {
                const Index d = shape.dims[targets[k]];
                off += (rem % d) * stride[targets[k]];
                rem /= d;
            }
            gate_offsets[static_cast<std::size_t>(g)] = off;
        }

        Index rest_dim = shape.total() / gate_dim;
        rest_offsets.assign(static_cast<std::size_t>(rest_dim), 0);
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < f; ++k)
            if (!is_target[k]) rest.push_back(k);
        for (Index r = 0; r < rest_dim; ++r) {
            Index rem = r;
            Index off = 0;
            for (std::size_t k = rest.size(); k-- > 0;) {
                const Index d = shape.dims[rest[k]];
                off += (rem % d) * stride[rest[k]];
                rem /= d;
            }
            rest_offsets[static_cast<std::size_t>(r)] = off;
        }
    }
};

}  // namespace

ComplexMatrix apply_to_factors_left(const ComplexMatrix& gate,
                                    const FactorShape& shape,
                                    const std::vector<std::size_t>& targets,
                                    const ComplexMatrix& a) {
    const FactorIndexer ix(shape, targets);
    require(gate.rows() == ix.gate_dim && gate.cols() == ix.gate_dim,
            "apply_to_factors_left: gate dimension mismatch");
    require(a.rows() == shape.total(), "apply_to_factors_left: operand mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    const Index nt = ix.gate_dim;
    ComplexVector v(nt), w(nt);
    for (Index c = 0; c < a.cols(); ++c) {
        for (Index base : ix.rest_offsets) {
            for (Index g = 0; g < nt; ++g)
                v(g) = a(base + ix.gate_offsets[static_cast<std::size_t>(g)], c);
            w.noalias() = gate * v;
            for (Index g = 0; g < nt; ++g)
                out(base + ix.gate_offsets[static_cast<std::size_t>(g)], c) = w(g);
        }
    }
    return out;
}

ComplexMatrix apply_to_factors_right(const ComplexMatrix& gate,
                                     const FactorShape& shape,
                                     const std::vector<std::size_t>& targets,
                                     const ComplexMatrix& a) {
    const FactorIndexer ix(shape, targets);
    require(gate.rows() == ix.gate_dim && gate.cols() == ix.gate_dim,
            "apply_to_factors_right: gate dimension mismatch");
    require(a.cols() == shape.total(), "apply_to_factors_right: operand mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    const Index nt = ix.gate_dim;
    ComplexMatrix cols(a.rows(), nt);
    for (Index base : ix.rest_offsets) {
        for (Index g = 0; g < nt; ++g)
            cols.col(g) = a.col(base + ix.gate_offsets[static_cast<std::size_t>(g)]);
        for (Index h = 0; h < nt; ++h) {
            auto dst = out.col(base + ix.gate_offsets[static_cast<std::size_t>(h)]);
            dst.setZero();
            for (Index g = 0; g < nt; ++g) dst += cols.col(g) * gate(g, h);
        }
    }
    return out;
}

void apply_to_vector(const ComplexMatrix& gate, const FactorShape& shape,
                     const std::vector<std::size_t>& targets, ComplexVector& v) {
    const FactorIndexer ix(shape, targets);
    require(gate.rows() == ix.gate_dim && gate.cols() == ix.gate_dim,
            "apply_to_vector: gate dimension mismatch");
    require(v.size() == shape.total(), "apply_to_vector: operand mismatch");
    const Index nt = ix.gate_dim;
    ComplexVector chunk(nt), mixed(nt);
    for (Index base : ix.rest_offsets) {
        for (Index g = 0; g < nt; ++g)
            chunk(g) = v(base + ix.gate_offsets[static_cast<std::size_t>(g)]);
        mixed.noalias() = gate * chunk;
        for (Index g = 0; g < nt; ++g)
            v(base + ix.gate_offsets[static_cast<std::size_t>(g)]) = mixed(g);
    }
}

}  // namespace haarvar
