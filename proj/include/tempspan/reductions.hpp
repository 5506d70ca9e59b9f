#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempspan/temporal_graph.hpp"

namespace tempspan {

// ---------------------------------------------------------------------------
// 3-SAT to minimum temporal spanner on happy graphs

struct Literal {
  std::size_t variable = 0;
  bool negated = false;
  bool value_under(const std::vector<bool>& assignment) const { return assignment.at(variable) != negated; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

struct SatInstance {
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;

  /// Throws InvalidArgument when a literal names a missing variable.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// DIMACS CNF. Clauses must have exactly three literals unless `pad_short` is set,
/// in which case shorter clauses repeat their last literal.
SatInstance parse_dimacs(std::istream& in, bool pad_short = false);
SatInstance parse_dimacs(std::string_view text, bool pad_short = false);
std::string serialize_dimacs(const SatInstance& phi);

/// Brute force; nullopt when unsatisfiable. Meant for the small instances the
/// oracle can handle.
std::optional<std::vector<bool>> find_satisfying_assignment(const SatInstance& phi);

struct SatVariableVertices {
  VertexId x1, x2, x_true, x_false, dummy, dummy1, dummy2;
};

struct SatClauseVertices {
  VertexId c;
  std::array<VertexId, 3> literal;
};

struct SatReductionOutput {
  SatInstance instance;
  TemporalGraph graph;
  /// Simple but not proper graph with the construction's original labels.
  TemporalGraph pre_relabel;
  std::size_t budget = 0;
  EdgeSet critical;
  std::vector<std::string> roles;

  VertexId u = 0, v = 1, w = 2;
  std::vector<SatVariableVertices> variables;
  std::vector<SatClauseVertices> clauses;
};

/// Requires at least one clause.
SatReductionOutput sat_to_spanner_instance(const SatInstance& phi);

/// Spanner of exactly `out.budget` edges built from a satisfying assignment.
/// Throws AssignmentDoesNotSatisfy.
Spanner sat_witness_spanner(const SatReductionOutput& out, const std::vector<bool>& assignment);

struct TwoSourceInstance {
  TemporalGraph graph;
  VertexId s1 = 0, s2 = 0;
  std::size_t budget = 0;
  std::vector<std::string> roles;
};

/// Drops `u` and its edges; vertices above u shift down by one.
TwoSourceInstance sat_two_source_variant(const SatReductionOutput& out);

// ---------------------------------------------------------------------------
// Multicolored clique to strict minimum temporal spanner

struct EdgeSelectionGadget {
  TemporalGraph graph;
  std::vector<std::string> roles;
  std::size_t selection_edges = 0;
  /// First high label; the witness anchor carries it.
  Label high_base = 0;
};

/// Cycle of 3 * e_ij vertices (v_{l,i}, v_{l,j}, u_l for each l); every cycle edge
/// carries every low and every high label. Throws OddEdgeCount.
EdgeSelectionGadget edge_selection_gadget(std::size_t i, std::size_t j, std::size_t e_ij,
                                          std::size_t m, std::size_t k, std::size_t n);

/// Witness for the gadget anchored at selection edge `chosen` (0-based);
/// 6 * e_ij - 3 edges. Throws NotASelectionEdge.
EdgeSet gadget_witness_spanner(const EdgeSelectionGadget& gadget, std::size_t chosen);

struct MccEdge {
  std::size_t color_a = 0, index_a = 0, color_b = 0, index_b = 0;
  friend auto operator<=>(const MccEdge&, const MccEdge&) = default;
};

struct MccInstance {
  std::size_t color_count = 0;
  std::size_t class_size = 0;
  std::vector<MccEdge> edges;

  /// Edges between colors i < j as (index in color i, index in color j), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> between(std::size_t i, std::size_t j) const;
  /// Throws InvariantViolated on odd or empty color pairs or a color with no vertex
  /// adjacent to all other colors; InvalidArgument on malformed edges.
  void validate() const;
};

/// Format: `k n`, then `i a j b` per edge (all 0-based). `#` lines are comments.
MccInstance parse_mcc(std::istream& in);
MccInstance parse_mcc(std::string_view text);
std::string serialize_mcc(const MccInstance& inst);

/// Repeats the last edge of every color pair with an odd edge count, so that
/// the edge appears as two selection regions.
MccInstance pad_to_even(const MccInstance& inst);

enum class GadgetKind { Selection, Validator, Connector };

struct GadgetTag {
  GadgetKind kind = GadgetKind::Connector;
  /// Selection: (i, j, -). Validator: (i, j, j'). Connector: unused.
  std::size_t a = 0, b = 0, c = 0;
  std::string to_string() const;
};

struct MccSelectionLayout {
  std::size_t color_i = 0, color_j = 0;
  VertexId first_vertex = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct MccValidatorLayout {
  std::size_t color = 0, j = 0, j2 = 0;
  std::size_t edge_l = 0, edge_l2 = 0;
  /// First of the eight consecutive time edges.
  EdgeIndex first_edge = 0;
};

struct MccReductionOutput {
  MccInstance instance;
  TemporalGraph graph;
  std::size_t budget = 0;
  std::size_t connector_edges = 0;
  std::vector<GadgetTag> gadget_map;
  std::vector<VertexId> fvs;
  std::vector<std::string> roles;

  std::vector<MccSelectionLayout> selections;
  std::vector<MccValidatorLayout> validators;
  /// Low anchor label of each selection gadget, (3/2) e_ij + 4.
  std::vector<Label> selection_low_top;
  Label high_base = 0;
};

MccReductionOutput mcc_to_spanner_instance(const MccInstance& inst);

/// `clique[i]` is the chosen vertex index within color i. Throws NotAClique.
Spanner mcc_witness_spanner(const MccReductionOutput& out, const std::vector<std::size_t>& clique);

/// Brute force over one vertex per color; nullopt when there is none.
std::optional<std::vector<std::size_t>> find_multicolored_clique(const MccInstance& inst);

/// True when deleting `removed` leaves an acyclic underlying graph.
bool is_feedback_vertex_set(const TemporalGraph& g, std::span<const VertexId> removed);

}  // namespace tempspan
