#include "core/lifecycle.hpp"

#include <algorithm>

#include "core/repository.hpp"
#include "core/validation.hpp"

namespace arspi {

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Analysis: return "Analysis";
    case Phase::Conceptualisation: return "Conceptualisation";
    case Phase::Realisation: return "Realisation";
    case Phase::Deployment: return "Deployment";
  }
  return "?";
}

std::optional<Phase> parse_phase(const std::string& name) {
  for (Phase phase : {Phase::Analysis, Phase::Conceptualisation, Phase::Realisation,
                      Phase::Deployment}) {
    if (name == phase_name(phase)) return phase;
  }
  return std::nullopt;
}

std::optional<Phase> next_phase(Phase phase) {
  if (phase == Phase::Deployment) return std::nullopt;
  return static_cast<Phase>(static_cast<int>(phase) + 1);
}

const char* iteration_state_name(IterationState state) {
  switch (state) {
    case IterationState::Planned: return "planned";
    case IterationState::Running: return "running";
    case IterationState::Closed: return "closed";
  }
  return "?";
}

std::optional<IterationState> parse_iteration_state(const std::string& name) {
  for (IterationState state :
       {IterationState::Planned, IterationState::Running, IterationState::Closed}) {
    if (name == iteration_state_name(state)) return state;
  }
  return std::nullopt;
}

std::vector<Iteration> plan_project(ProjectStore& store, int iteration_count,
                                    const std::vector<bool>& shortened_flags) {
  if (iteration_count < 1 || static_cast<int>(shortened_flags.size()) != iteration_count) {
    fail(Errc::CountMismatch, "expected exactly " + std::to_string(iteration_count) +
                                  " shortened flags, got " +
                                  std::to_string(shortened_flags.size()));
  }
  int base = 0;
  for (const Iteration& iteration : store.iterations) base = std::max(base, iteration.index);
  std::vector<Iteration> planned;
  for (int i = 0; i < iteration_count; ++i) {
    Iteration iteration;
    iteration.index = base + i + 1;
    iteration.shortened = shortened_flags[i];
    iteration.state = IterationState::Planned;
    store.iterations.push_back(iteration);
    planned.push_back(iteration);
  }
  return planned;
}

Iteration& start_iteration(ProjectStore& store, const IterationInputs& inputs, bool shortened) {
  if (store.running_iteration()) {
    fail(Errc::IterationAlreadyRunning, "another iteration is already running");
  }
  for (const std::string& change_id : inputs.changes) {
    const ChangeRequest* change = store.find_change(change_id);
    if (!change) fail(Errc::UnknownChange, "no change request with id " + change_id);
    if (change->status != ChangeStatus::Accepted) {
      fail(Errc::ChangeNotAccepted, "change " + change_id + " is " +
                                        change_status_name(change->status) +
                                        ", only accepted changes can feed an iteration");
    }
  }

  int next_index = 1;
  for (const Iteration& iteration : store.iterations) {
    if (iteration.state != IterationState::Planned) {
      next_index = std::max(next_index, iteration.index + 1);
    }
  }
  Iteration* slot = nullptr;
  for (Iteration& iteration : store.iterations) {
    if (iteration.state == IterationState::Planned && iteration.index == next_index) {
      slot = &iteration;
    }
  }
  if (!slot) {
    Iteration iteration;
    iteration.index = next_index;
    store.iterations.push_back(iteration);
    slot = &store.iterations.back();
  }
  slot->state = IterationState::Running;
  slot->current_phase = Phase::Analysis;
  slot->shortened = shortened;
  slot->inputs = inputs;
  slot->produced.clear();
  slot->released = std::nullopt;
  for (const std::string& change_id : inputs.changes) {
    store.find_change(change_id)->status = ChangeStatus::InProgress;
  }
  return *slot;
}

namespace {

/// The key artefact that must be complete before the phase may be left.
const Artefact* gate_artefact(const ProjectStore& store, Phase phase, std::string& label) {
  const bool merged = store.manifest.profile.merge_designs;
  switch (phase) {
    case Phase::Analysis:
      label = "PRQ";
      return store.first_of_kind(KindCode::PRQ);
    case Phase::Conceptualisation:
      label = merged ? "PD" : "CPD";
      return store.first_of_kind(merged ? KindCode::PD : KindCode::CPD);
    case Phase::Realisation:
      label = merged ? "PD" : "TPD";
      return store.first_of_kind(merged ? KindCode::PD : KindCode::TPD);
    case Phase::Deployment:
      label = "PR";
      return nullptr;
  }
  return nullptr;
}

}  // namespace

Phase advance_phase(ProjectStore& store, Iteration& iteration) {
  if (iteration.state != IterationState::Running) {
    fail(Errc::IterationNotRunning,
         "iteration " + std::to_string(iteration.index) + " is not running");
  }
  Phase current = *iteration.current_phase;
  if (current == Phase::Deployment) {
    fail(Errc::WrongPhase, "Deployment is the final phase; close the iteration instead");
  }
  std::string label;
  const Artefact* artefact = gate_artefact(store, current, label);
  if (!artefact) {
    fail(Errc::GateNotSatisfied,
         std::string(phase_name(current)) + " gate: key artefact " + label + " does not exist");
  }
  auto blocking = check_artefact_completeness(store, *artefact);
  if (!blocking.empty()) {
    std::string message = std::string(phase_name(current)) + " gate: " + label +
                          " has completeness errors:";
    for (const Finding& finding : blocking) message += "\n  " + finding.message;
    fail(Errc::GateNotSatisfied, message);
  }

  if (current == Phase::Realisation && iteration.shortened) {
    // Shortened iterations end here and ship nothing; their changes go back
    // to the queue, same as an explicit early close.
    for (const std::string& change_id : iteration.inputs.changes) {
      ChangeRequest* change = store.find_change(change_id);
      if (change && change->status == ChangeStatus::InProgress) {
        change->status = ChangeStatus::Accepted;
      }
    }
    iteration.state = IterationState::Closed;
    return current;
  }
  iteration.current_phase = *next_phase(current);
  return *iteration.current_phase;
}

Iteration& close_iteration(ProjectStore& store, Iteration& iteration) {
  if (iteration.state != IterationState::Running) {
    fail(Errc::IterationNotRunning,
         "iteration " + std::to_string(iteration.index) + " is not running");
  }
  if (iteration.shortened) {
    // Shortened iterations ship nothing; their changes go back to the queue.
    for (const std::string& change_id : iteration.inputs.changes) {
      ChangeRequest* change = store.find_change(change_id);
      if (change && change->status == ChangeStatus::InProgress) {
        change->status = ChangeStatus::Accepted;
      }
    }
    iteration.state = IterationState::Closed;
    return iteration;
  }
  if (!iteration.released) {
    fail(Errc::ReleaseMissing, "iteration " + std::to_string(iteration.index) +
                                   " has not shipped a Process Release yet");
  }
  if (!store.first_of_kind(KindCode::PLC)) {
    fail(Errc::PlcMissing, "no Process Life Cycle Support artefact exists; required at latest "
                           "in the Deployment phase");
  }
  for (const std::string& change_id : iteration.inputs.changes) {
    ChangeRequest* change = store.find_change(change_id);
    if (change && change->status == ChangeStatus::InProgress) {
      change->status = ChangeStatus::Resolved;
    }
  }
  iteration.state = IterationState::Closed;
  return iteration;
}

}  // namespace arspi
