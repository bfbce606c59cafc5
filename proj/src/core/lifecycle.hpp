#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace arspi {

class ProjectStore;

// ---------------------------------------------------------------------------
// Phases
// ---------------------------------------------------------------------------

enum class Phase { Analysis, Conceptualisation, Realisation, Deployment };

const char* phase_name(Phase phase);
std::optional<Phase> parse_phase(const std::string& name);

/// Immediate successor in the phase order, or nullopt at Deployment.
std::optional<Phase> next_phase(Phase phase);

// ---------------------------------------------------------------------------
// Iterations
// ---------------------------------------------------------------------------

enum class IterationState { Planned, Running, Closed };

const char* iteration_state_name(IterationState state);
std::optional<IterationState> parse_iteration_state(const std::string& name);

struct IterationInputs {
  std::string vision;
  std::set<std::string> changes;
  std::optional<std::string> actual_process;

  friend bool operator==(const IterationInputs&, const IterationInputs&) = default;
};

struct Iteration {
  int index = 0;
  std::optional<Phase> current_phase;
  bool shortened = false;
  std::set<std::string> produced;
  std::optional<std::string> released;
  IterationState state = IterationState::Planned;
  IterationInputs inputs;

  friend bool operator==(const Iteration&, const Iteration&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Record plan metadata for iteration_count iterations. shortened_flags must
/// have exactly iteration_count entries.
std::vector<Iteration> plan_project(ProjectStore& store, int iteration_count,
                                    const std::vector<bool>& shortened_flags);

/// Open the next iteration in phase Analysis. Referenced changes must exist
/// in state accepted; they move to in_progress. A matching planned iteration
/// is promoted instead of creating a new record.
Iteration& start_iteration(ProjectStore& store, const IterationInputs& inputs, bool shortened);

/// Move the running iteration to the next phase once the current phase's key
/// artefact exists and is complete. On a shortened iteration, advancing past
/// Realisation closes the iteration instead of entering Deployment.
Phase advance_phase(ProjectStore& store, Iteration& iteration);

/// Close the running iteration. A deploying iteration needs a shipped release
/// and an existing PLC; resolved changes are those attached to its inputs.
Iteration& close_iteration(ProjectStore& store, Iteration& iteration);

}  // namespace arspi
