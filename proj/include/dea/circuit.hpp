// Copyright 2026 The DEA Authors
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dea/errors.hpp"
#include "dea/pauli.hpp"

namespace dea {

/// One of H, X, Y, Z on a single qubit.
struct PrimitiveGate {
    enum class Kind { H, X, Y, Z };
    Kind kind;
    int qubit;
    bool operator==(const PrimitiveGate&) const = default;
};

/// CNOT or CZ.
struct ControlledGate {
    enum class Kind { CNOT, CZ };
    Kind kind;
    int control;
    int target;
    bool operator==(const ControlledGate&) const = default;
};

/// A Pauli word applied when the control qubit is |1>. The word carries I at
/// the control position. Used by the ancilla measurement protocol.
struct ControlledPauliGate {
    int control;
    PauliString word;
    bool operator==(const ControlledPauliGate&) const = default;
};

/// Parametric rotation exp(-i*theta*G/2).
struct RotationGate {
    Generator generator;
    std::string parameter;
    bool operator==(const RotationGate&) const = default;
};

/// Rotation frozen at a fixed angle; produced when a redundant parameter is
/// removed while keeping its value.
struct FrozenRotationGate {
    Generator generator;
    double angle;
    bool operator==(const FrozenRotationGate&) const = default;
};

using GateSpec =
    std::variant<PrimitiveGate, ControlledGate, ControlledPauliGate, RotationGate, FrozenRotationGate>;

/// Ordered real parameter values matching a circuit's parameter roster.
using ParameterAssignment = std::vector<double>;

/// An initial computational basis state plus an ordered gate list.
///
/// The parameter roster lists the declared symmetry parameters first (in
/// declaration order) and the remaining parameters in order of first
/// appearance in the gate list. Each parameter name belongs to exactly one
/// gate. Instances are immutable after construction.
class ParametricCircuit {
  public:
    ParametricCircuit(int qubits, std::uint64_t init_bits, std::vector<GateSpec> gates,
                      std::vector<std::string> symmetry_params = {})
        : qubits_(qubits),
          init_bits_(init_bits),
          gates_(std::move(gates)),
          symmetry_params_(std::move(symmetry_params)) {
        validate_and_build_roster();
    }

    int qubits() const { return qubits_; }
    std::uint64_t init_bits() const { return init_bits_; }
    const std::vector<GateSpec>& gates() const { return gates_; }
    const std::vector<std::string>& symmetry_params() const { return symmetry_params_; }

    /// Parameter names in roster order.
    const std::vector<std::string>& parameters() const { return roster_; }
    int parameter_count() const { return static_cast<int>(roster_.size()); }

    /// Gate-list position of the rotation holding roster parameter k.
    int gate_index_of_parameter(int k) const {
        if (k < 0 || k >= parameter_count())
            throw std::invalid_argument("parameter index out of range");
        return param_gate_index_[k];
    }

    const Generator& generator_of_parameter(int k) const {
        return std::get<RotationGate>(gates_[gate_index_of_parameter(k)]).generator;
    }

    std::string init_string() const {
        std::string s(qubits_, '0');
        for (int q = 0; q < qubits_; ++q)
            if ((init_bits_ >> q) & 1) s[qubits_ - 1 - q] = '1';
        return s;
    }

    bool operator==(const ParametricCircuit& o) const {
        return qubits_ == o.qubits_ && init_bits_ == o.init_bits_ && gates_ == o.gates_ &&
               symmetry_params_ == o.symmetry_params_;
    }

  private:
    void validate_and_build_roster() {
        if (qubits_ < 1 || qubits_ > PauliString::kMaxQubits)
            throw std::invalid_argument("circuit: qubit count out of range");
        if (init_bits_ >> qubits_)
            throw std::invalid_argument("circuit: init state out of range");
        auto check_qubit = [&](int q) {
            if (q < 0 || q >= qubits_) throw std::invalid_argument("circuit: qubit index out of range");
        };
        std::set<std::string> seen;
        std::vector<std::string> appearance;
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            const GateSpec& gate = gates_[g];
            if (const auto* p = std::get_if<PrimitiveGate>(&gate)) {
                check_qubit(p->qubit);
            } else if (const auto* c = std::get_if<ControlledGate>(&gate)) {
                check_qubit(c->control);
                check_qubit(c->target);
                if (c->control == c->target)
                    throw std::invalid_argument("circuit: control equals target");
            } else if (const auto* cp = std::get_if<ControlledPauliGate>(&gate)) {
                check_qubit(cp->control);
                if (cp->word.qubits() != qubits_)
                    throw std::invalid_argument("circuit: controlled word length mismatch");
                if (cp->word.letter(cp->control) != Pauli::I)
                    throw std::invalid_argument("circuit: controlled word must be I at the control");
            } else if (const auto* r = std::get_if<RotationGate>(&gate)) {
                if (r->generator.qubits() != qubits_)
                    throw std::invalid_argument("circuit: generator word length mismatch");
                if (r->parameter.empty()) throw std::invalid_argument("circuit: empty parameter name");
                if (!seen.insert(r->parameter).second)
                    throw std::invalid_argument("circuit: duplicate parameter name '" + r->parameter + "'");
                appearance.push_back(r->parameter);
            } else if (const auto* f = std::get_if<FrozenRotationGate>(&gate)) {
                if (f->generator.qubits() != qubits_)
                    throw std::invalid_argument("circuit: generator word length mismatch");
            }
        }
        std::set<std::string> sym_seen;
        for (const std::string& s : symmetry_params_) {
            if (!seen.count(s))
                throw std::invalid_argument("circuit: unknown symmetry parameter '" + s + "'");
            if (!sym_seen.insert(s).second)
                throw std::invalid_argument("circuit: symmetry parameter listed twice");
        }
        roster_ = symmetry_params_;
        for (const std::string& name : appearance)
            if (!sym_seen.count(name)) roster_.push_back(name);
        param_gate_index_.assign(roster_.size(), -1);
        for (std::size_t g = 0; g < gates_.size(); ++g)
            if (const auto* r = std::get_if<RotationGate>(&gates_[g]))
                for (std::size_t k = 0; k < roster_.size(); ++k)
                    if (roster_[k] == r->parameter) param_gate_index_[k] = static_cast<int>(g);
    }

    int qubits_;
    std::uint64_t init_bits_;
    std::vector<GateSpec> gates_;
    std::vector<std::string> symmetry_params_;
    std::vector<std::string> roster_;
    std::vector<int> param_gate_index_;
};

// ---------------------------------------------------------------------------
// Circuit description format (JSON).
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t parse_init_bits(const std::string& s, int qubits) {
    if (static_cast<int>(s.size()) != qubits) throw ParseError("init: length must equal qubit count");
    std::uint64_t bits = 0;
    for (int i = 0; i < qubits; ++i) {
        char c = s[i];
        if (c != '0' && c != '1') throw ParseError("init: bitstring may contain only 0 and 1");
        if (c == '1') bits |= std::uint64_t(1) << (qubits - 1 - i);
    }
    return bits;
}

inline Generator parse_generator(const nlohmann::json& strings, int qubits) {
    if (!strings.is_array() || strings.empty()) throw ParseError("rp: 'strings' must be a nonempty array");
    std::vector<PauliString> terms;
    for (const auto& w : strings) {
        if (!w.is_string()) throw ParseError("rp: Pauli word must be a string");
        PauliString p = PauliString::from_string(w.get<std::string>());
        if (p.qubits() != qubits) throw ParseError("rp: Pauli word length must equal qubit count");
        terms.push_back(p);
    }
    try {
        return Generator(std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("rp: ") + e.what());
    }
}

}  // namespace detail

/// Parses a circuit description document. See the project README for the
/// grammar. Gate objects of type rx/ry/rz/rp carry either "param" (a
/// parametric rotation) or "value" (a rotation frozen at a fixed angle).
inline ParametricCircuit parse_circuit(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (!doc.contains("qubits") || !doc["qubits"].is_number_integer())
        throw ParseError("'qubits' must be an integer");
    int qubits = doc["qubits"].get<int>();
    if (qubits < 1 || qubits > PauliString::kMaxQubits) throw ParseError("'qubits' out of range");

    std::uint64_t init_bits = 0;
    if (doc.contains("init")) {
        if (!doc["init"].is_string()) throw ParseError("'init' must be a string");
        init_bits = detail::parse_init_bits(doc["init"].get<std::string>(), qubits);
    }

    if (!doc.contains("gates") || !doc["gates"].is_array()) throw ParseError("'gates' must be an array");
    std::vector<GateSpec> gates;
    for (const auto& g : doc["gates"]) {
        if (!g.is_object() || !g.contains("type") || !g["type"].is_string())
            throw ParseError("gate: missing 'type'");
        std::string type = g["type"].get<std::string>();
        auto get_int = [&](const char* key) {
            if (!g.contains(key) || !g[key].is_number_integer())
                throw ParseError("gate '" + type + "': missing integer '" + key + "'");
            return g[key].get<int>();
        };
        auto rotation = [&](Generator gen) -> GateSpec {
            bool has_param = g.contains("param"), has_value = g.contains("value");
            if (has_param == has_value)
                throw ParseError("gate '" + type + "': exactly one of 'param' or 'value' required");
            if (has_param) {
                if (!g["param"].is_string() || g["param"].get<std::string>().empty())
                    throw ParseError("gate '" + type + "': 'param' must be a nonempty string");
                return RotationGate{std::move(gen), g["param"].get<std::string>()};
            }
            if (!g["value"].is_number()) throw ParseError("gate '" + type + "': 'value' must be a number");
            return FrozenRotationGate{std::move(gen), g["value"].get<double>()};
        };
        if (type == "rx" || type == "ry" || type == "rz") {
            int q = get_int("qubit");
            if (q < 0 || q >= qubits) throw ParseError("gate '" + type + "': qubit out of range");
            Pauli letter = type == "rx" ? Pauli::X : (type == "ry" ? Pauli::Y : Pauli::Z);
            gates.push_back(rotation(Generator::single(qubits, letter, q)));
        } else if (type == "rp") {
            gates.push_back(rotation(detail::parse_generator(
                g.contains("strings") ? g["strings"] : nlohmann::json(), qubits)));
        } else if (type == "h" || type == "x" || type == "y" || type == "z") {
            int q = get_int("qubit");
            if (q < 0 || q >= qubits) throw ParseError("gate '" + type + "': qubit out of range");
            PrimitiveGate::Kind kind = type == "h"   ? PrimitiveGate::Kind::H
                                       : type == "x" ? PrimitiveGate::Kind::X
                                       : type == "y" ? PrimitiveGate::Kind::Y
                                                     : PrimitiveGate::Kind::Z;
            gates.push_back(PrimitiveGate{kind, q});
        } else if (type == "cnot" || type == "cz") {
            int c = get_int("control"), t = get_int("target");
            if (c < 0 || c >= qubits || t < 0 || t >= qubits)
                throw ParseError("gate '" + type + "': qubit out of range");
            gates.push_back(ControlledGate{
                type == "cnot" ? ControlledGate::Kind::CNOT : ControlledGate::Kind::CZ, c, t});
        } else if (type == "cp") {
            int c = get_int("control");
            if (c < 0 || c >= qubits) throw ParseError("gate 'cp': control out of range");
            if (!g.contains("string") || !g["string"].is_string())
                throw ParseError("gate 'cp': missing 'string'");
            PauliString w = PauliString::from_string(g["string"].get<std::string>());
            if (w.qubits() != qubits) throw ParseError("gate 'cp': word length mismatch");
            gates.push_back(ControlledPauliGate{c, std::move(w)});
        } else {
            throw ParseError("unknown gate type '" + type + "'");
        }
    }

    std::vector<std::string> symmetry;
    if (doc.contains("symmetry_params")) {
        if (!doc["symmetry_params"].is_array()) throw ParseError("'symmetry_params' must be an array");
        for (const auto& s : doc["symmetry_params"]) {
            if (!s.is_string()) throw ParseError("'symmetry_params' entries must be strings");
            symmetry.push_back(s.get<std::string>());
        }
    }

    try {
        return ParametricCircuit(qubits, init_bits, std::move(gates), std::move(symmetry));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// Serializes to the circuit description format. Single-letter X/Y/Z
/// rotations are emitted as rx/ry/rz, everything else as rp.
inline nlohmann::json circuit_to_json(const ParametricCircuit& c) {
    nlohmann::json doc;
    doc["qubits"] = c.qubits();
    doc["init"] = c.init_string();
    nlohmann::json gates = nlohmann::json::array();
    auto rotation_json = [&](const Generator& gen) {
        nlohmann::json g;
        if (gen.term_count() == 1 && gen.terms()[0].weight() == 1) {
            const PauliString& w = gen.terms()[0];
            int q = std::countr_zero(w.x_mask() | w.z_mask());
            Pauli letter = w.letter(q);
            g["type"] = letter == Pauli::X ? "rx" : (letter == Pauli::Y ? "ry" : "rz");
            g["qubit"] = q;
        } else {
            g["type"] = "rp";
            nlohmann::json words = nlohmann::json::array();
            for (const PauliString& t : gen.terms()) words.push_back(t.to_string());
            g["strings"] = words;
        }
        return g;
    };
    for (const GateSpec& gate : c.gates()) {
        if (const auto* p = std::get_if<PrimitiveGate>(&gate)) {
            static const char* names[] = {"h", "x", "y", "z"};
            gates.push_back({{"type", names[static_cast<int>(p->kind)]}, {"qubit", p->qubit}});
        } else if (const auto* cg = std::get_if<ControlledGate>(&gate)) {
            gates.push_back({{"type", cg->kind == ControlledGate::Kind::CNOT ? "cnot" : "cz"},
                             {"control", cg->control},
                             {"target", cg->target}});
        } else if (const auto* cp = std::get_if<ControlledPauliGate>(&gate)) {
            gates.push_back(
                {{"type", "cp"}, {"control", cp->control}, {"string", cp->word.to_string()}});
        } else if (const auto* r = std::get_if<RotationGate>(&gate)) {
            nlohmann::json g = rotation_json(r->generator);
            g["param"] = r->parameter;
            gates.push_back(g);
        } else if (const auto* f = std::get_if<FrozenRotationGate>(&gate)) {
            nlohmann::json g = rotation_json(f->generator);
            g["value"] = f->angle;
            gates.push_back(g);
        }
    }
    doc["gates"] = gates;
    if (!c.symmetry_params().empty()) doc["symmetry_params"] = c.symmetry_params();
    return doc;
}

inline std::string serialize_circuit(const ParametricCircuit& c) {
    return circuit_to_json(c).dump(2) + "\n";
}

}  // namespace dea
