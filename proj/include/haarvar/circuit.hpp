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
 * @file circuit.hpp
 * Circuit data model (fixed and variable gate slots, reference state,
 * observable), full-circuit cost evaluation, and single-gate environment
 * extraction.
 *
 * Slots apply left to right: the full circuit operator is
 * M_last * ... * M_first, where M_j is the j-th slot lifted to the whole
 * register.
 */

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haarvar/linalg.hpp"

namespace haarvar {

enum class SlotKind { Fixed, Variable };

/// One gate slot. Fixed slots carry their unitary; variable slots are filled
/// in by a GateAssignment. `name` keeps the symbolic origin of named fixed
/// gates (e.g. "CNOT") so circuit files round-trip exactly.
struct GateSlot {
    SlotKind kind = SlotKind::Fixed;
    std::vector<std::size_t> targets;
    ComplexMatrix matrix;  // fixed slots only; empty for variable slots
    std::string name;      // optional, fixed slots built from a named gate
};

/// Real-weighted Pauli string, one character per qubit out of I, X, Y, Z.
struct PauliTerm {
    double coeff = 0.0;
    std::string ops;

    bool operator==(const PauliTerm&) const = default;
};

struct Observable {
    std::variant<std::vector<PauliTerm>, ComplexMatrix> value;
};

/// Pure states are kept as amplitude vectors and promoted to projectors on
/// demand; mixed states are stored densely.
struct ReferenceState {
    std::variant<ComplexVector, ComplexMatrix> value;

    bool is_pure() const {
        return std::holds_alternative<ComplexVector>(value);
    }
};

struct Circuit {
    std::size_t num_qudits = 0;
    std::vector<Index> local_dims;
    std::vector<GateSlot> slots;
    ReferenceState rho0;
    Observable observable;

    FactorShape shape() const { return FactorShape(local_dims); }
    Index dim() const;
    /// Product of the local dimensions of a slot's targets.
    Index slot_dimension(std::size_t slot_pos) const;
    std::size_t num_variable_slots() const;
    /// Positions of the variable slots, in circuit order.
    std::vector<std::size_t> variable_slot_positions() const;
};

/// One unitary per variable slot, in circuit order.
struct GateAssignment {
    std::vector<ComplexMatrix> unitaries;
};

/// Everything in the circuit except one variable gate, reduced to the pair
/// (X, Y) on C^N (x) C^M with the gate's qudits as the leading factor. The
/// cost is Tr(Y (U (x) 1_M) X (U (x) 1_M)^dag) for any gate replacement U.
struct Environment {
    ComplexMatrix X;
    ComplexMatrix Y;
    Index N = 1;
    Index M = 1;
};

enum class ObservableKind { GlobalZ, Identity };

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard_gate();
ComplexMatrix cnot_gate();
ComplexMatrix cz_gate();
/// Named gate lookup for circuit files: one of I, X, Y, Z, H, CNOT, CZ.
ComplexMatrix named_gate(const std::string& name);

/// Throws std::invalid_argument when any circuit invariant is violated
/// (target ranges, unitarity of fixed gates, Hermiticity and normalization
/// of the reference state and observable).
void validate_circuit(const Circuit& c);
void validate_assignment(const Circuit& c, const GateAssignment& a);

ComplexMatrix rho0_density(const Circuit& c);
ComplexMatrix observable_dense(const Circuit& c);

/// Lifts a gate to the full register: identity on all qudits outside the
/// slot's targets.
ComplexMatrix embed_gate(const GateSlot& slot, const ComplexMatrix& gate_matrix,
                         const Circuit& c);

/// E = Tr(U rho0 U^dag O) with U the ordered product of embedded slots.
double cost(const Circuit& c, const GateAssignment& a);

/// Same as cost() but with a pre-materialized dense observable, so callers
/// evaluating many assignments do not rebuild it per sample.
double cost_given_observable(const Circuit& c, const GateAssignment& a,
                             const ComplexMatrix& obs);

/// Environment of the variable slot at position `slot_pos` in the slot list.
/// Throws if the slot is fixed or out of range.
Environment environment(const Circuit& c, const GateAssignment& a,
                        std::size_t slot_pos);

/// Environments of all variable slots in one pair of sweeps; element k
/// belongs to the k-th variable slot.
std::vector<Environment> all_environments(const Circuit& c,
                                          const GateAssignment& a);

/// Tr(Y (U (x) 1_M) X (U (x) 1_M)^dag). U is not required to be unitary:
/// the expression extends to the whole embedding space, which the
/// finite-difference checks rely on.
double cost_from_environment(const Environment& env, const ComplexMatrix& u);

/// Layered ansatz of variable single-qubit gates followed by a CNOT ladder
/// per layer; reference state |0...0>.
Circuit build_hardware_efficient(int num_qubits, int layers,
                                 ObservableKind obs = ObservableKind::GlobalZ);

/// n independent single-qubit slots with observable Z^(x)n and no
/// entanglers, so the cost factorizes into per-qubit terms.
Circuit build_product_z(int num_qubits);

/// Seeded circuit with `layers` repetitions of one variable single-qubit
/// slot and one Haar-random fixed two-qubit gate on random targets.
Circuit build_random_circuit(int num_qubits, int layers, SeededStream stream);

GateAssignment identity_assignment(const Circuit& c);
GateAssignment random_assignment(const Circuit& c, SeededStream stream);

/// Random environment with Hermitian X, Y of unit Frobenius scale; used by
/// the exactness checks over many (N, M) combinations.
Environment random_environment(Index n, Index m, SeededStream stream);

}  // namespace haarvar
