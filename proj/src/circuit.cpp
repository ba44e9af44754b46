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

#include "haarvar/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace haarvar {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

const Complex kI{0.0, 1.0};

/// rho := M rho M^dag for the slot's gate on the full register.
void conjugate_in_place(const ComplexMatrix& gate, const FactorShape& shape,
                        const std::vector<std::size_t>& targets,
                        ComplexMatrix& rho) {
    rho = apply_to_factors_left(gate, shape, targets, rho);
    rho = apply_to_factors_right(gate.adjoint(), shape, targets, rho);
}

/// y := M^dag y M (Heisenberg direction).
void conjugate_dag_in_place(const ComplexMatrix& gate, const FactorShape& shape,
                            const std::vector<std::size_t>& targets,
                            ComplexMatrix& y) {
    y = apply_to_factors_left(gate.adjoint(), shape, targets, y);
    y = apply_to_factors_right(gate, shape, targets, y);
}

const ComplexMatrix& slot_gate(const Circuit& c, const GateAssignment& a,
                               std::size_t slot_pos, std::size_t& var_cursor) {
    const GateSlot& slot = c.slots[slot_pos];
    if (slot.kind == SlotKind::Fixed) return slot.matrix;
    return a.unitaries[var_cursor++];
}

Environment extract_environment(const Circuit& c, const ComplexMatrix& x_full,
                                const ComplexMatrix& y_full,
                                const GateSlot& slot) {
    const FactorShape shape = c.shape();
    std::vector<std::size_t> perm = slot.targets;
    for (std::size_t q = 0; q < c.num_qudits; ++q) {
        if (std::find(slot.targets.begin(), slot.targets.end(), q) ==
            slot.targets.end())
            perm.push_back(q);
    }
    Environment env;
    env.N = 1;
    for (std::size_t t : slot.targets) env.N *= c.local_dims[t];
    env.M = c.dim() / env.N;
    env.X = permute_factors(x_full, shape, perm);
    env.Y = permute_factors(y_full, shape, perm);
    return env;
}

}  // namespace

Index Circuit::dim() const { return shape().total(); }

Index Circuit::slot_dimension(std::size_t slot_pos) const {
    require(slot_pos < slots.size(), "slot index out of range");
    Index n = 1;
    for (std::size_t t : slots[slot_pos].targets) n *= local_dims[t];
    return n;
}

std::size_t Circuit::num_variable_slots() const {
    std::size_t k = 0;
    for (const GateSlot& s : slots)
        if (s.kind == SlotKind::Variable) ++k;
    return k;
}

std::vector<std::size_t> Circuit::variable_slot_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].kind == SlotKind::Variable) out.push_back(i);
    return out;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix hadamard_gate() {
    ComplexMatrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

ComplexMatrix cnot_gate() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

ComplexMatrix cz_gate() {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

ComplexMatrix named_gate(const std::string& name) {
    if (name == "I") return ComplexMatrix::Identity(2, 2);
    if (name == "X") return pauli_x();
    if (name == "Y") return pauli_y();
    if (name == "Z") return pauli_z();
    if (name == "H") return hadamard_gate();
    if (name == "CNOT") return cnot_gate();
    if (name == "CZ") return cz_gate();
    throw std::invalid_argument("unknown gate name: " + name);
}

void validate_circuit(const Circuit& c) {
    require(c.num_qudits >= 1, "circuit: needs at least one qudit");
    require(c.local_dims.size() == c.num_qudits,
            "circuit: local_dims size must match num_qudits");
    for (Index d : c.local_dims) require(d >= 1, "circuit: local dims must be >= 1");
    const Index dim = c.dim();

    for (std::size_t i = 0; i < c.slots.size(); ++i) {
        const GateSlot& s = c.slots[i];
        require(!s.targets.empty(), "slot " + std::to_string(i) + ": no targets");
        std::vector<bool> seen(c.num_qudits, false);
        for (std::size_t t : s.targets) {
            require(t < c.num_qudits,
                    "slot " + std::to_string(i) + ": target out of range");
            require(!seen[t], "slot " + std::to_string(i) + ": duplicate target");
            seen[t] = true;
        }
        if (s.kind == SlotKind::Fixed) {
            const Index n = c.slot_dimension(i);
            require(s.matrix.rows() == n && s.matrix.cols() == n,
                    "slot " + std::to_string(i) + ": gate dimension mismatch");
            require(is_unitary(s.matrix),
                    "slot " + std::to_string(i) + ": fixed gate not unitary");
        } else {
            require(s.matrix.size() == 0,
                    "slot " + std::to_string(i) + ": variable slot carries a matrix");
        }
    }

    if (c.rho0.is_pure()) {
        const auto& v = std::get<ComplexVector>(c.rho0.value);
        require(v.size() == dim, "rho0: amplitude vector dimension mismatch");
        require(std::abs(v.norm() - 1.0) <= kHermitianTol, "rho0: not normalized");
    } else {
        const auto& rho = std::get<ComplexMatrix>(c.rho0.value);
        require(rho.rows() == dim && rho.cols() == dim,
                "rho0: density matrix dimension mismatch");
        require(is_hermitian(rho), "rho0: not Hermitian");
        require(std::abs(rho.trace().real() - 1.0) <= kHermitianTol &&
                    std::abs(rho.trace().imag()) <= kHermitianTol,
                "rho0: trace must be 1");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
        require(es.eigenvalues().minCoeff() >= -kHermitianTol,
                "rho0: negative eigenvalue");
    }

    if (std::holds_alternative<std::vector<PauliTerm>>(c.observable.value)) {
        for (const PauliTerm& t :
             std::get<std::vector<PauliTerm>>(c.observable.value)) {
            require(t.ops.size() == c.num_qudits,
                    "observable: Pauli string length mismatch");
            for (std::size_t q = 0; q < t.ops.size(); ++q) {
                const char op = t.ops[q];
                require(op == 'I' || op == 'X' || op == 'Y' || op == 'Z',
                        "observable: invalid Pauli character");
                if (op != 'I')
                    require(c.local_dims[q] == 2,
                            "observable: Pauli op on non-qubit factor");
            }
            require(std::isfinite(t.coeff), "observable: non-finite coefficient");
        }
    } else {
        const auto& o = std::get<ComplexMatrix>(c.observable.value);
        require(o.rows() == dim && o.cols() == dim,
                "observable: dimension mismatch");
        require(is_hermitian(o), "observable: not Hermitian");
    }
}

void validate_assignment(const Circuit& c, const GateAssignment& a) {
    const auto positions = c.variable_slot_positions();
    require(a.unitaries.size() == positions.size(),
            "assignment: expected " + std::to_string(positions.size()) +
                " unitaries, got " + std::to_string(a.unitaries.size()));
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const Index n = c.slot_dimension(positions[k]);
        require(a.unitaries[k].rows() == n && a.unitaries[k].cols() == n,
                "assignment: unitary " + std::to_string(k) + " dimension mismatch");
        require(is_unitary(a.unitaries[k]),
                "assignment: matrix " + std::to_string(k) + " not unitary");
    }
}

ComplexMatrix rho0_density(const Circuit& c) {
    if (c.rho0.is_pure()) {
        const auto& v = std::get<ComplexVector>(c.rho0.value);
        return v * v.adjoint();
    }
    return std::get<ComplexMatrix>(c.rho0.value);
}

ComplexMatrix observable_dense(const Circuit& c) {
    if (std::holds_alternative<ComplexMatrix>(c.observable.value))
        return std::get<ComplexMatrix>(c.observable.value);
    const auto& terms = std::get<std::vector<PauliTerm>>(c.observable.value);
    ComplexMatrix out = ComplexMatrix::Zero(c.dim(), c.dim());
    for (const PauliTerm& t : terms) {
        ComplexMatrix term = ComplexMatrix::Identity(1, 1);
        for (std::size_t q = 0; q < c.num_qudits; ++q) {
            switch (t.ops[q]) {
                case 'I':
                    term = kron(term, ComplexMatrix::Identity(c.local_dims[q],
                                                              c.local_dims[q]));
                    break;
                case 'X': term = kron(term, pauli_x()); break;
                case 'Y': term = kron(term, pauli_y()); break;
                case 'Z': term = kron(term, pauli_z()); break;
                default: throw std::invalid_argument("invalid Pauli character");
            }
        }
        out += t.coeff * term;
    }
    return out;
}

ComplexMatrix embed_gate(const GateSlot& slot, const ComplexMatrix& gate_matrix,
                         const Circuit& c) {
    Index n = 1;
    for (std::size_t t : slot.targets) n *= c.local_dims[t];
    require(gate_matrix.rows() == n && gate_matrix.cols() == n,
            "embed_gate: gate dimension mismatch");
    const Index m = c.dim() / n;

    // Build gate (x) 1_rest on the factor order [targets..., rest...], then
    // permute back to the natural qudit order.
    std::vector<std::size_t> order = slot.targets;
    std::vector<Index> ordered_dims;
    for (std::size_t t : slot.targets) ordered_dims.push_back(c.local_dims[t]);
    for (std::size_t q = 0; q < c.num_qudits; ++q) {
        if (std::find(slot.targets.begin(), slot.targets.end(), q) ==
            slot.targets.end()) {
            order.push_back(q);
            ordered_dims.push_back(c.local_dims[q]);
        }
    }
    const ComplexMatrix lifted = kron(gate_matrix, ComplexMatrix::Identity(m, m));

    // Output factor q must be the input factor at order-position of q.
    std::vector<std::size_t> perm(c.num_qudits);
    for (std::size_t k = 0; k < c.num_qudits; ++k) perm[order[k]] = k;
    return permute_factors(lifted, FactorShape(ordered_dims), perm);
}

double cost(const Circuit& c, const GateAssignment& a) {
    return cost_given_observable(c, a, observable_dense(c));
}

double cost_given_observable(const Circuit& c, const GateAssignment& a,
                             const ComplexMatrix& obs) {
    validate_assignment(c, a);
    const FactorShape shape = c.shape();
    std::size_t var_cursor = 0;
    if (c.rho0.is_pure()) {
        ComplexVector v = std::get<ComplexVector>(c.rho0.value);
        for (std::size_t j = 0; j < c.slots.size(); ++j) {
            const ComplexMatrix& g = slot_gate(c, a, j, var_cursor);
            apply_to_vector(g, shape, c.slots[j].targets, v);
        }
        const Complex e = v.adjoint() * (obs * v);
        return real_part_checked(e, "cost");
    }
    ComplexMatrix rho = rho0_density(c);
    for (std::size_t j = 0; j < c.slots.size(); ++j) {
        const ComplexMatrix& g = slot_gate(c, a, j, var_cursor);
        conjugate_in_place(g, shape, c.slots[j].targets, rho);
    }
    const Complex e = rho.cwiseProduct(obs.transpose()).sum();
    return real_part_checked(e, "cost");
}

Environment environment(const Circuit& c, const GateAssignment& a,
                        std::size_t slot_pos) {
    require(slot_pos < c.slots.size(), "environment: slot index out of range");
    require(c.slots[slot_pos].kind == SlotKind::Variable,
            "environment: slot is not variable");
    validate_assignment(c, a);
    const FactorShape shape = c.shape();

    ComplexMatrix x_full = rho0_density(c);
    std::size_t var_cursor = 0;
    for (std::size_t j = 0; j < slot_pos; ++j) {
        const ComplexMatrix& g = slot_gate(c, a, j, var_cursor);
        conjugate_in_place(g, shape, c.slots[j].targets, x_full);
    }

    ComplexMatrix y_full = observable_dense(c);
    std::size_t var_after = c.num_variable_slots();
    for (std::size_t j = c.slots.size(); j-- > slot_pos + 1;) {
        const GateSlot& slot = c.slots[j];
        const ComplexMatrix& g = slot.kind == SlotKind::Fixed
                                     ? slot.matrix
                                     : a.unitaries[--var_after];
        conjugate_dag_in_place(g, shape, slot.targets, y_full);
    }

    return extract_environment(c, x_full, y_full, c.slots[slot_pos]);
}

std::vector<Environment> all_environments(const Circuit& c,
                                          const GateAssignment& a) {
    validate_assignment(c, a);
    const FactorShape shape = c.shape();
    const auto positions = c.variable_slot_positions();
    const std::size_t k = positions.size();

    // Backward sweep: Heisenberg-evolved observable just after each variable
    // slot.
    std::vector<ComplexMatrix> y_at(k);
    {
        ComplexMatrix y = observable_dense(c);
        std::size_t var_cursor = k;
        for (std::size_t j = c.slots.size(); j-- > 0;) {
            const GateSlot& slot = c.slots[j];
            const ComplexMatrix* g = &slot.matrix;
            if (slot.kind == SlotKind::Variable) {
                y_at[--var_cursor] = y;
                g = &a.unitaries[var_cursor];
            }
            conjugate_dag_in_place(*g, shape, slot.targets, y);
        }
    }

    // Forward sweep: evolved reference state just before each variable slot.
    std::vector<Environment> out(k);
    ComplexMatrix x = rho0_density(c);
    std::size_t var_cursor = 0;
    for (std::size_t j = 0; j < c.slots.size(); ++j) {
        const GateSlot& slot = c.slots[j];
        const ComplexMatrix& g =
            slot.kind == SlotKind::Fixed ? slot.matrix : a.unitaries[var_cursor];
        if (slot.kind == SlotKind::Variable) {
            out[var_cursor] = extract_environment(c, x, y_at[var_cursor], slot);
            ++var_cursor;
        }
        conjugate_in_place(g, shape, slot.targets, x);
    }
    return out;
}

double cost_from_environment(const Environment& env, const ComplexMatrix& u) {
    require(u.rows() == env.N && u.cols() == env.N,
            "cost_from_environment: gate dimension mismatch");
    const FactorShape shape{env.N, env.M};
    ComplexMatrix t = apply_to_factors_left(u, shape, {0}, env.X);
    t = apply_to_factors_right(u.adjoint(), shape, {0}, t);
    const Complex e = env.Y.cwiseProduct(t.transpose()).sum();
    return real_part_checked(e, "cost_from_environment");
}

Circuit build_hardware_efficient(int num_qubits, int layers,
                                 ObservableKind obs) {
    require(num_qubits >= 2, "hardware-efficient ansatz needs >= 2 qubits");
    require(layers >= 1, "hardware-efficient ansatz needs >= 1 layer");
    Circuit c;
    c.num_qudits = static_cast<std::size_t>(num_qubits);
    c.local_dims.assign(c.num_qudits, 2);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < num_qubits; ++q) {
            GateSlot s;
            s.kind = SlotKind::Variable;
            s.targets = {static_cast<std::size_t>(q)};
            c.slots.push_back(std::move(s));
        }
        for (int q = 0; q + 1 < num_qubits; ++q) {
            GateSlot s;
            s.kind = SlotKind::Fixed;
            s.targets = {static_cast<std::size_t>(q),
                         static_cast<std::size_t>(q + 1)};
            s.matrix = cnot_gate();
            s.name = "CNOT";
            c.slots.push_back(std::move(s));
        }
    }
    ComplexVector v = ComplexVector::Zero(c.dim());
    v(0) = 1.0;
    c.rho0.value = v;

    PauliTermت term;
    c.observable.value = std::vector<PauliTerm>{};
    auto& terms = std::get<std::vector<PauliTerm>>(c.observable.value);
    if (obs == ObservableKind::GlobalZ) {
        terms.push_back({1.0, std::string(c.num_qudits, 'Z')});
    } else {
        terms.push_back({1.0, std::string(c.num_qudits, 'I')});
    }
    validate_circuit(c);
    return c;
}

Circuit build_product_z(int num_qubits) {
    require(num_qubits >= 1, "product ansatz needs >= 1 qubit");
    Circuit c;
    c.num_qudits = static_cast<std::size_t>(num_qubits);
    c.local_dims.assign(c.num_qudits, 2);
    for (int q = 0; q < num_qubits; ++q) {
        GateSlot s;
        s.kind = SlotKind::Variable;
        s.targets = {static_cast<std::size_t>(q)};
        c.slots.push_back(std::move(s));
    }
    ComplexVector v = ComplexVector::Zero(c.dim());
    v(0) = 1.0;
    c.rho0.value = v;
    c.observable.value =
        std::vector<PauliTerm>{{1.0, std::string(c.num_qudits, 'Z')}};
    validate_circuit(c);
    return c;
}

Circuit build_random_circuit(int num_qubits, int layers, SeededStream stream) {
    require(num_qubits >= 2, "random circuit needs >= 2 qubits");
    require(layers >= 1, "random circuit needs >= 1 layer");
    RandomStream rng(stream);
    Circuit c;
    c.num_qudits = static_cast<std::size_t>(num_qubits);
    c.local_dims.assign(c.num_qudits, 2);
    for (int l = 0; l < layers; ++l) {
        GateSlot var;
        var.kind = SlotKind::Variable;
        var.targets = {static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::uint64_t>(num_qubits)))};
        c.slots.push_back(std::move(var));

        GateSlot fixed;
        fixed.kind = SlotKind::Fixed;
        const auto q0 = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::uint64_t>(num_qubits)));
        auto q1 = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::uint64_t>(num_qubits - 1)));
        if (q1 >= q0) ++q1;
        fixed.targets = {q0, q1};
        fixed.matrix = rng.haar_unitary(4);
        c.slots.push_back(std::move(fixed));
    }
    ComplexVector v = ComplexVector::Zero(c.dim());
    v(0) = 1.0;
    c.rho0.value = v;
    c.observable.value =
        std::vector<PauliTerm>{{1.0, std::string(c.num_qudits, 'Z')}};
    validate_circuit(c);
    return c;
}

GateAssignment identity_assignment(const Circuit& c) {
    GateAssignment a;
    for (std::size_t pos : c.variable_slot_positions()) {
        const Index n = c.slot_dimension(pos);
        a.unitaries.push_back(ComplexMatrix::Identity(n, n));
    }
    return a;
}

GateAssignment random_assignment(const Circuit& c, SeededStream stream) {
    RandomStream rng(stream);
    GateAssignment a;
    for (std::size_t pos : c.variable_slot_positions())
        a.unitaries.push_back(rng.haar_unitary(c.slot_dimension(pos)));
    return a;
}

Environment random_environment(Index n, Index m, SeededStream stream) {
    RandomStream rng(stream);
    Environment env;
    env.N = n;
    env.M = m;
    const Index d = n * m;
    const ComplexMatrix a = rng.ginibre(d, d);
    const ComplexMatrix b = rng.ginibre(d, d);
    env.X = (a + a.adjoint()) / (2.0 * std::sqrt(static_cast<double>(d)));
    env.Y = (b + b.adjoint()) / (2.0 * std::sqrt(static_cast<double>(d)));
    return env;
}

}  // namespace haarvar
