// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion is independent and self-timed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/lifecycle.hpp"
#include "core/metamodel.hpp"
#include "core/release_change.hpp"
#include "core/repository.hpp"
#include "core/tailoring.hpp"
#include "core/validation.hpp"
#include "helpers.hpp"

using namespace arspi;
using arspi::testing::TempDir;

namespace {

struct Criterion {
  std::string name;
  std::function<void(std::vector<std::string>&)> run;  // push failure messages
};

void expect(std::vector<std::string>& failures, bool condition, const std::string& what) {
  if (!condition) failures.push_back(what);
}

// --------------------------------------------------------------------------
// 1. Catalog fidelity: the six kinds carry exactly the published sections.
// --------------------------------------------------------------------------

std::string render_spec(const SectionSpec& spec, int depth) {
  std::string out(static_cast<std::size_t>(depth) * 2, ' ');
  out += spec.key;
  if (!spec.shared_with.empty()) {
    out += " (shared:";
    for (KindCode code : spec.shared_with) out += std::string(" ") + kind_code_name(code);
    out += ")";
  }
  out += "\n";
  for (const SectionSpec& child : spec.children) out += render_spec(child, depth + 1);
  return out;
}

void criterion_catalog(std::vector<std::string>& failures) {
  const std::string golden =
      "PRQ\n"
      "  Goals (shared: CPD PD)\n"
      "  StakeholdersAndRoles\n"
      "  Requirements\n"
      "  OverallProcessDraft\n"
      "  TechnicalInfrastructure\n"
      "  BasicConditions\n"
      "CPD\n"
      "  Goals (shared: PRQ)\n"
      "  Principles\n"
      "  PlannedAdaptations\n"
      "    OrganisationAndRoles\n"
      "    Artefacts\n"
      "    Processes\n"
      "  AdditionalRequirements\n"
      "    Tailoring\n"
      "    ProcessDocumentation\n"
      "    SupportingMaterial\n"
      "  RequirementsTracing (shared: TPD)\n"
      "TPD\n"
      "  Goals\n"
      "  Principles\n"
      "  PlannedAdaptations\n"
      "    OrganisationAndRoles\n"
      "    Artefacts\n"
      "    Processes\n"
      "  AdditionalRequirements\n"
      "    Tailoring\n"
      "    ProcessDocumentation\n"
      "    SupportingMaterial\n"
      "  RequirementsTracing (shared: CPD)\n"
      "  LogicalAndPhysicalModelOrganisation\n"
      "PLC\n"
      "  Training\n"
      "  DeploymentAndFurtherDevelopment\n"
      "  MeasurementAndEvaluation\n"
      "  ChangeManagement\n"
      "PR\n"
      "PD\n"
      "  Goals (shared: PRQ)\n"
      "  Principles\n"
      "  PlannedAdaptations\n"
      "    OrganisationAndRoles\n"
      "    Artefacts\n"
      "    Processes\n"
      "  AdditionalRequirements\n"
      "    Tailoring\n"
      "    ProcessDocumentation\n"
      "    SupportingMaterial\n"
      "  RequirementsTracing\n"
      "  LogicalAndPhysicalModelOrganisation\n";

  std::string actual;
  for (const auto& [kind, spec] : catalog_key_artefacts()) {
    actual += kind.to_string() + "\n";
    for (const SectionSpec& child : spec.children) actual += render_spec(child, 1);
  }
  if (actual != golden) {
    failures.push_back("catalog snapshot mismatch:\n--- expected ---\n" + golden +
                       "--- actual ---\n" + actual);
  }
}

// --------------------------------------------------------------------------
// 2. Narrative fixture: merged set-up, shortened first iteration delivering
//    only a demonstrator, full second iteration shipping a release.
// --------------------------------------------------------------------------

void fill_artefact(ProjectStore& store, const std::string& id) {
  std::vector<std::string> keys;
  std::function<void(const std::vector<Section>&)> collect = [&](const std::vector<Section>& ss) {
    for (const Section& s : ss) {
      keys.push_back(s.spec_key);
      collect(s.children);
    }
  };
  collect(store.get_artefact(id).sections);
  for (const std::string& key : keys) {
    if (key == "RequirementsTracing") continue;
    store.add_item(id, key, ItemKind::Note, "note " + key);
  }
}

void criterion_narrative(std::vector<std::string>& failures) {
  // set-up: a small project answers the questionnaire and gets the unified
  // design artefact plus training material
  QuestionnaireAnswers answers;
  answers.project_scale = ProjectScale::Small;
  answers.training_needed = true;
  answers.iteration_count_planned = 2;
  TailoringProfile profile = derive_profile(answers);
  expect(failures, profile.merge_designs, "checkpoint 1: small scale must merge the designs");
  expect(failures, profile.selected_supports == std::set<std::string>{kSupportTrainingMaterial},
         "checkpoint 2: training answer selects exactly TrainingMaterial");

  ProjectStore store;
  apply_profile(store, profile);
  expect(failures, store.first_support(kSupportTrainingMaterial) != nullptr,
         "checkpoint 3: support skeleton exists after set-up");

  plan_project(store, 2, {true, false});

  // analysis output
  std::string prq = store.put_artefact(new_artefact({KindCode::PRQ, {}}, "prq", profile)).id;
  std::string pd = store.put_artefact(new_artefact({KindCode::PD, {}}, "pd", profile)).id;
  std::string plc = store.put_artefact(new_artefact({KindCode::PLC, {}}, "plc", profile)).id;
  fill_artefact(store, prq);
  fill_artefact(store, pd);
  fill_artefact(store, plc);
  std::string requirement =
      store.add_item(prq, "Requirements", ItemKind::Requirement, "pilot the new process");
  std::string design = store.add_item(pd, "Processes", ItemKind::DesignElement, "pilot workflow");
  store.add_trace(requirement, design, LinkKind::Addresses);
  for (const std::string& line : tracing_projection(store)) {
    store.add_item(pd, "RequirementsTracing", ItemKind::Note, line);
  }

  // iteration 1: shortened, only a demonstrator, nothing shipped
  Iteration& first = start_iteration(store, {}, true);
  expect(failures, first.index == 1 && first.current_phase == Phase::Analysis,
         "checkpoint 4: first iteration opens in Analysis");
  advance_phase(store, first);
  advance_phase(store, first);
  expect(failures, first.current_phase == Phase::Realisation,
         "checkpoint 5: demonstrator work happens in Realisation");
  advance_phase(store, first);  // closes instead of deploying
  expect(failures, first.state == IterationState::Closed && !first.released.has_value(),
         "checkpoint 6: shortened iteration closes without a release");
  expect(failures, store.list_artefacts(ArtefactKind{KindCode::PR, {}}).empty(),
         "checkpoint 7: the demonstrator ships no Process Release artefact");

  // feedback from the demonstrator drives iteration 2
  ChangeRequest& change =
      submit_change(store, ChangeOrigin::Internal, "demonstrator feedback", "fix the rough edges",
                    {});
  std::string change_id = change.id;
  triage_change(store, change_id, TriageDecision::Accept);

  IterationInputs inputs;
  inputs.vision = "full rollout";
  inputs.changes = {change_id};
  Iteration& second = start_iteration(store, inputs, false);
  expect(failures,
         second.index == 2 && store.find_change(change_id)->status == ChangeStatus::InProgress,
         "checkpoint 8: second iteration picks up the accepted change");

  advance_phase(store, second);
  advance_phase(store, second);
  advance_phase(store, second);
  expect(failures, second.current_phase == Phase::Deployment,
         "checkpoint 9: full iteration reaches Deployment");

  Release& release = package_release(store, second, "v1.0");
  std::string release_id = release.id;
  expect(failures,
         release.status == ReleaseStatus::Review &&
             store.list_artefacts(ArtefactKind{KindCode::PR, {}}).size() == 1,
         "checkpoint 10: packaging creates the Process Release in review");

  promote(store, release_id);
  promote(store, release_id);
  promote(store, release_id);
  expect(failures,
         store.find_release(release_id)->status == ReleaseStatus::Released &&
             store.manifest.actual_process_ref == release_id,
         "checkpoint 11: released version becomes the Actual Process reference");

  close_iteration(store, second);
  bool clean = true;
  for (const Finding& finding : check_completeness(store)) {
    if (finding.severity == Severity::Error) clean = false;
  }
  for (const Finding& finding : check_consistency(store)) {
    if (finding.severity == Severity::Error) clean = false;
  }
  expect(failures,
         second.state == IterationState::Closed &&
             store.find_change(change_id)->status == ChangeStatus::Resolved && clean,
         "checkpoint 12: project closes clean with the change resolved");
}

// --------------------------------------------------------------------------
// 3. Coverage rules equal a brute-force link-table scan on random stores.
// --------------------------------------------------------------------------

void criterion_coverage_oracle(std::vector<std::string>& failures) {
  std::mt19937 rng(1203);
  for (int run = 0; run < 500; ++run) {
    ProjectStore store = arspi::testing::random_store(rng, 10, 20);
    auto oracle = arspi::testing::coverage_oracle(store);
    std::set<std::string> flagged_reqs, flagged_designs;
    for (const Finding& finding : check_consistency(store)) {
      std::string id = finding.subject.substr(finding.subject.rfind(':') + 1);
      if (finding.rule_id == rules::kRequirementCoverage) flagged_reqs.insert(id);
      if (finding.rule_id == rules::kRealisationCoverage) flagged_designs.insert(id);
    }
    if (flagged_reqs != oracle.uncovered_requirements ||
        flagged_designs != oracle.uncovered_designs) {
      failures.push_back("coverage mismatch on random store (run " + std::to_string(run) + ")");
      return;
    }
  }
}

// --------------------------------------------------------------------------
// 4. Delta impact equals brute-force reverse reachability on random graphs,
//    plus idempotence and monotonicity.
// --------------------------------------------------------------------------

void criterion_delta_oracle(std::vector<std::string>& failures) {
  std::mt19937 rng(78134);
  for (int run = 0; run < 500; ++run) {
    ProjectStore store = arspi::testing::random_graph_store(rng, 30, 60);
    std::set<std::string> seeds = {"N0"};
    std::set<std::string> wider = {"N0", "N1", "N2"};

    DeltaReport report = compute_delta(store, seeds);
    if (report.affected_local != arspi::testing::delta_oracle(store, seeds)) {
      failures.push_back("delta mismatch vs oracle (run " + std::to_string(run) + ")");
      return;
    }
    if (!(compute_delta(store, seeds) == report)) {
      failures.push_back("delta not idempotent (run " + std::to_string(run) + ")");
      return;
    }
    DeltaReport wide = compute_delta(store, wider);
    for (const std::string& node : report.affected_local) {
      if (!wide.affected_local.count(node)) {
        failures.push_back("delta not monotone in the changed set (run " + std::to_string(run) +
                           ")");
        return;
      }
    }
  }
}

// --------------------------------------------------------------------------
// 5. Small-model check: every operation sequence of length <= 8 over
//    {start, advance, close, package, promote} keeps the state invariants.
// --------------------------------------------------------------------------

struct ModelStats {
  long long states = 0;
};

std::string check_invariants(const ProjectStore& parent, const ProjectStore& store) {
  int running = 0;
  for (const Iteration& iteration : store.iterations) {
    if (iteration.state == IterationState::Running) ++running;
    if (iteration.state == IterationState::Closed) {
      if (iteration.shortened && iteration.released) {
        return "closed shortened iteration holds a release";
      }
      if (!iteration.shortened && !iteration.released) {
        return "closed full iteration shipped nothing";
      }
      if (!iteration.shortened && iteration.current_phase != Phase::Deployment) {
        return "closed full iteration skipped Deployment";
      }
      if (iteration.shortened && iteration.current_phase > Phase::Realisation) {
        return "shortened iteration entered Deployment";
      }
    }
  }
  if (running > 1) return "more than one running iteration";

  std::size_t prs = store.list_artefacts(ArtefactKind{KindCode::PR, {}}).size();
  if (prs != store.releases.size()) return "PR artefact count diverges from release count";
  long long closed_full = 0;
  for (const Iteration& iteration : store.iterations) {
    if (iteration.state == IterationState::Closed && !iteration.shortened) ++closed_full;
  }
  if (static_cast<long long>(prs) < closed_full) {
    return "a closed full iteration lacks its Process Release";
  }

  for (const Release& release : store.releases) {
    for (const Release& before : parent.releases) {
      if (before.id == release.id && static_cast<int>(release.status) <
                                         static_cast<int>(before.status)) {
        return "release status regressed";
      }
    }
  }

  // a running iteration's phase moves forward one step at a time
  const Iteration* now = store.running_iteration();
  if (now) {
    for (const Iteration& before : parent.iterations) {
      if (before.index == now->index && before.state == IterationState::Running &&
          before.current_phase && now->current_phase) {
        int jump = static_cast<int>(*now->current_phase) - static_cast<int>(*before.current_phase);
        if (jump < 0 || jump > 1) return "phase chain is not prefix-complete";
      }
    }
  }
  return {};
}

void enumerate(const ProjectStore& store, int depth, bool shortened, ModelStats& stats,
               std::vector<std::string>& failures) {
  if (depth == 0 || !failures.empty()) return;
  for (int op = 0; op < 5; ++op) {
    ProjectStore next = store;
    bool applied = true;
    try {
      switch (op) {
        case 0:
          start_iteration(next, {}, shortened);
          break;
        case 1: {
          Iteration* running = next.running_iteration();
          if (!running) throw Error(Errc::IterationNotRunning, "no running iteration");
          advance_phase(next, *running);
          break;
        }
        case 2: {
          Iteration* running = next.running_iteration();
          if (!running) throw Error(Errc::IterationNotRunning, "no running iteration");
          close_iteration(next, *running);
          break;
        }
        case 3: {
          Iteration* running = next.running_iteration();
          if (!running) throw Error(Errc::IterationNotRunning, "no running iteration");
          package_release(next, *running, "v" + std::to_string(next.releases.size() + 1));
          break;
        }
        case 4: {
          if (next.releases.empty()) throw Error(Errc::UnknownId, "no release");
          promote(next, next.releases.back().id);
          break;
        }
      }
    } catch (const Error&) {
      applied = false;  // rejected operations must leave no trace; skip the branch
    }
    if (!applied) continue;
    ++stats.states;
    std::string violation = check_invariants(store, next);
    if (!violation.empty()) {
      failures.push_back("invariant violated after op " + std::to_string(op) + " at depth " +
                         std::to_string(depth) + ": " + violation);
      return;
    }
    enumerate(next, depth - 1, shortened, stats, failures);
  }
}

void criterion_small_model(std::vector<std::string>& failures) {
  ProjectStore base;
  base.manifest.profile.merge_designs = true;
  for (KindCode code : {KindCode::PRQ, KindCode::PD, KindCode::PLC}) {
    std::string id =
        base.put_artefact(new_artefact({code, {}}, kind_code_name(code), base.manifest.profile)).id;
    fill_artefact(base, id);
  }
  ModelStats stats;
  enumerate(base, 8, false, stats, failures);
  enumerate(base, 8, true, stats, failures);
  if (stats.states == 0) failures.push_back("small-model enumeration explored no states");
}

// --------------------------------------------------------------------------
// 6. Persistence: load-save identity on random stores; interrupted saves
//    always leave a loadable directory.
// --------------------------------------------------------------------------

void criterion_round_trip(std::vector<std::string>& failures) {
  std::mt19937 rng(55221);
  TempDir dir("arspi-acceptance-rt");
  for (int run = 0; run < 500; ++run) {
    ProjectStore store = arspi::testing::random_store(rng, 20, 50);
    std::filesystem::remove_all(dir.path());
    save(store, dir.path());
    if (!(load(dir.path()) == store)) {
      failures.push_back("round-trip mismatch (run " + std::to_string(run) + ")");
      return;
    }
  }

  // fault injection: interrupt a save after every possible file commit
  struct Abort {};
  ProjectStore old_state = arspi::testing::random_store(rng, 20, 50);
  ProjectStore new_state = old_state;
  new_state.manifest.vision = "revised vision";
  new_state.add_item(new_state.artefacts.front().id, "Goals", ItemKind::Goal, "late goal");

  std::filesystem::remove_all(dir.path());
  save(old_state, dir.path());
  int total = 0;
  save(new_state, dir.path(), [&](const std::filesystem::path&) { ++total; });
  for (int cut = 0; cut < total; ++cut) {
    std::filesystem::remove_all(dir.path());
    save(old_state, dir.path());
    int seen = 0;
    try {
      save(new_state, dir.path(), [&](const std::filesystem::path&) {
        if (seen++ == cut) throw Abort{};
      });
    } catch (const Abort&) {
    }
    try {
      load(dir.path());
    } catch (const std::exception& e) {
      failures.push_back("interrupted save (cut " + std::to_string(cut) +
                         ") left an unloadable store: " + e.what());
      return;
    }
  }
}

// --------------------------------------------------------------------------
// 7. Merging a CPD/TPD pair preserves the item multiset and leaves zero
//    dangling trace endpoints.
// --------------------------------------------------------------------------

std::multiset<std::string> item_census(const ProjectStore& store) {
  std::multiset<std::string> census;
  std::function<void(const std::vector<Section>&)> walk = [&](const std::vector<Section>& ss) {
    for (const Section& s : ss) {
      for (const ContentItem& item : s.items) {
        census.insert(item.id + "|" + item_kind_name(item.kind) + "|" + item.text);
      }
      walk(s.children);
    }
  };
  for (const Artefact& artefact : store.artefacts) walk(artefact.sections);
  return census;
}

void criterion_merge(std::vector<std::string>& failures) {
  std::mt19937 rng(90125);
  for (int run = 0; run < 200; ++run) {
    ProjectStore store;
    std::string prq = store.put_artefact(new_artefact({KindCode::PRQ, {}}, "prq",
                                                      store.manifest.profile)).id;
    std::string cpd = store.put_artefact(new_artefact({KindCode::CPD, {}}, "cpd",
                                                      store.manifest.profile)).id;
    std::string tpd = store.put_artefact(new_artefact({KindCode::TPD, {}}, "tpd",
                                                      store.manifest.profile)).id;
    std::vector<std::string> requirements, designs, realisations;
    int budget = arspi::testing::uniform(rng, 0, 12);
    for (int i = 0; i < budget; ++i) {
      switch (rng() % 3) {
        case 0:
          requirements.push_back(store.add_item(prq, "Requirements", ItemKind::Requirement,
                                                "r" + std::to_string(i)));
          break;
        case 1:
          designs.push_back(store.add_item(cpd, "Processes", ItemKind::DesignElement,
                                           "d" + std::to_string(i)));
          break;
        default:
          realisations.push_back(store.add_item(tpd, "LogicalAndPhysicalModelOrganisation",
                                                ItemKind::RealisationElement,
                                                "e" + std::to_string(i)));
          break;
      }
    }
    int links = arspi::testing::uniform(rng, 0, 12);
    for (int i = 0; i < links; ++i) {
      if (arspi::testing::coin(rng) && !requirements.empty() && !designs.empty()) {
        store.add_trace(requirements[rng() % requirements.size()],
                        designs[rng() % designs.size()], LinkKind::Addresses);
      } else if (!designs.empty() && !realisations.empty()) {
        store.add_trace(designs[rng() % designs.size()],
                        realisations[rng() % realisations.size()], LinkKind::Realises);
      }
    }
    if (arspi::testing::coin(rng)) store.add_trace(cpd, tpd, LinkKind::Shares);
    if (arspi::testing::coin(rng)) store.add_trace(prq, cpd, LinkKind::Shares);

    std::multiset<std::string> before = item_census(store);
    merge_designs(store, cpd, tpd);
    if (item_census(store) != before) {
      failures.push_back("merge changed the item multiset (run " + std::to_string(run) + ")");
      return;
    }
    for (const TraceLink& link : store.links) {
      if (!store.resolve_endpoint(link.source) || !store.resolve_endpoint(link.target)) {
        failures.push_back("merge left a dangling endpoint on link " + link.id + " (run " +
                           std::to_string(run) + ")");
        return;
      }
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"catalog fidelity", criterion_catalog},
      {"end-to-end project narrative", criterion_narrative},
      {"coverage-rule oracle equivalence (500 stores)", criterion_coverage_oracle},
      {"impact-analysis oracle equivalence (500 graphs)", criterion_delta_oracle},
      {"lifecycle small-model invariants (sequences <= 8)", criterion_small_model},
      {"persistence round-trip and fault injection (500 stores)", criterion_round_trip},
      {"design merge preservation (200 pairs)", criterion_merge},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> failures;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::printf("%s criterion %zu: %s (%.2fs)\n", failures.empty() ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), elapsed.count());
    for (const std::string& message : failures) std::printf("  %s\n", message.c_str());
    if (!failures.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
