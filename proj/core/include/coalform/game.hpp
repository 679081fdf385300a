/*
Copyright 2026 coalform contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <optional>
#include <vector>

#include "coalform/rng.hpp"
#include "coalform/scenario.hpp"
#include "coalform/scoring.hpp"

namespace coalform {

/// Operation kinds; the numeric order doubles as the trail-operation
/// tie-break order.
enum class OpKind { HeadElection = 0, Switch = 1, Replace = 2 };

/// One candidate coalition operation for a node.
///   HeadElection: actor takes over as head of its coalition (counterpart is
///     the current head, dst == src).
///   Switch with counterpart: bidirectional exchange of actor and counterpart
///     between src and dst.
///   Switch without counterpart: unilateral join of actor into dst.
///   Replace: actor takes counterpart's place in dst; counterpart is expelled
///     to a fresh singleton. With dst == src this expels a co-member.
/// The gain is the exact change of the summed coalition values the operation
/// would cause, including the spill-over onto untouched coalitions when the
/// coalition count or the head set changes.
struct OperationProposal {
  OpKind kind = OpKind::Switch;
  NodeId actor = -1;
  std::optional<NodeId> counterpart;
  int src = -1;
  std::optional<int> dst;
  double gain = 0.0;
  uint64_t dst_uid = 0;  // stable join-target identity for re-evaluation
};

/// Log-linear learning temperature schedule. Greedy mode is the zero
/// temperature limit: the trail operation applies whenever its gain is
/// positive.
struct LearningParams {
  double epsilon0 = 0.1;
  double decay = 0.98;  // per-slot geometric factor, in (0, 1]
  double floor = 1e-3;
  bool greedy = false;

  double epsilon_at(int slot) const;
  void validate() const;  // throws std::invalid_argument
};

/// Probability of updating to the trail operation (gain_new) instead of
/// keeping the maintained one (gain_last):
/// e^(gain_new/eps) / (e^(gain_new/eps) + e^(gain_last/eps)).
double acceptance_probability(double gain_new, double gain_last, double epsilon);

enum class OperationCatalog {
  Full,       // joins, switches, replaces, head elections
  JoinsOnly,  // unilateral joins only
};

struct MetricsRecord {
  int slot = 0;
  double g1 = 0.0;
  double chi_total = 0.0;
  double e_total = 0.0;
  int m = 0;
  int ops_applied = 0;
  double epsilon = 0.0;
};

struct AppliedOpRecord {
  int slot = 0;
  OperationProposal op;
  double phi_before = 0.0;
  double phi_after = 0.0;
};

struct EngineState {
  Partition partition;
  PartitionScores scores;
  Rng rng{0};
  int slot = 0;
  std::vector<std::optional<OperationProposal>> last_op;  // per node, last applied
  std::vector<MetricsRecord> trace;
  std::vector<AppliedOpRecord> applied_log;
  bool reached_fixed_point = false;  // a full round applied zero operations
};

EngineState make_engine_state(Partition partition, const NetworkGraph& graph,
                              const ObjectiveParams& params, uint64_t engine_seed);

/// Every admissible positive-gain operation available to node i: unilateral
/// joins into neighbor clusters, switches and replaces against their members
/// (a replace inside the own cluster expels the counterpart), and the head
/// election in the own cluster. An operation is admissible when every
/// coalition it would form has positive value, which subsumes the size,
/// diameter and connectivity constraints; head elections only need positive
/// gain since they form no new coalition.
std::vector<OperationProposal> enumerate_operations(NodeId i, const EngineState& state,
                                                    const NetworkGraph& graph,
                                                    const ObjectiveParams& params,
                                                    OperationCatalog catalog = OperationCatalog::Full);

/// Exact gain of an explicit operation shape against the current state.
/// Throws std::invalid_argument when the shape does not match the state.
double gain(const OperationProposal& op, const EngineState& state, const NetworkGraph& graph,
            const ObjectiveParams& params);

/// The maintain side of the acceptance rule: the node's last applied
/// operation re-evaluated against the current state (operations re-anchor to
/// the actors' current coalitions; joins follow their target's identity).
/// Zero when there is none or its shape no longer fits.
double maintained_gain(NodeId i, const EngineState& state, const NetworkGraph& graph,
                       const ObjectiveParams& params);

/// One activation of node i: pick the trail operation (maximum gain; ties by
/// kind, then counterpart id, then target index), then apply it with the
/// log-linear probability against the re-evaluated gain of the node's last
/// applied operation (0 when that operation no longer fits the state). In
/// greedy mode the trail operation applies whenever its gain is positive.
/// Returns whether an operation was applied.
bool dca_step(NodeId i, EngineState& state, const NetworkGraph& graph,
              const ObjectiveParams& params, const LearningParams& learn,
              OperationCatalog catalog = OperationCatalog::Full);

/// Runs `slots` time slots: advance mobility (when enabled), activate every
/// node once in a fresh random permutation, record one MetricsRecord. On a
/// frozen graph in greedy mode the run stops early after the first round that
/// applies no operation. chi_max refreshes from the graph after each mobility
/// step.
void run(EngineState& state, GraphSequence& seq, ObjectiveParams params,
         const LearningParams& learn, int slots,
         OperationCatalog catalog = OperationCatalog::Full);

/// Nash stability: no node has an admissible positive-gain operation.
/// Returns a witnessing operation when unstable.
std::optional<OperationProposal> nash_witness(const Partition& partition,
                                              const NetworkGraph& graph,
                                              const ObjectiveParams& params);
bool is_nash_stable(const Partition& partition, const NetworkGraph& graph,
                    const ObjectiveParams& params);

/// Head succession rule shared by gain evaluation and application: when a
/// head departs, the member with the largest in-coalition capacity
/// involvement (sum of both kappa directions to adjacent co-members) takes
/// over; ties go to the lowest id.
NodeId pick_head(std::span<const NodeId> members, const NetworkGraph& graph, double alpha);

}  // namespace coalform
