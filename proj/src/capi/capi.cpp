#include "arspi.h"

#include <cstdlib>
#include <cstring>
#include <optional>

#include "core/json_codec.hpp"
#include "core/lifecycle.hpp"
#include "core/metamodel.hpp"
#include "core/release_change.hpp"
#include "core/repository.hpp"
#include "core/tailoring.hpp"
#include "core/validation.hpp"

using namespace arspi;

struct arspi_project {
  std::filesystem::path root;
  ProjectStore store;
  std::optional<ProjectLock> lock;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ARSPI_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const Json::exception& e) {
    g_last_error = e.what();
    return ARSPI_E_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ARSPI_E_CORRUPT_FILE;
  }
}

const char* require(const char* arg, const char* name) {
  if (!arg) fail(Errc::UsageError, std::string(name) + " must not be null");
  return arg;
}

Json parse_json(const char* text, const char* what) {
  try {
    return Json::parse(require(text, what));
  } catch (const Json::parse_error& e) {
    fail(Errc::UsageError, std::string(what) + ": " + e.what());
  }
}

Json finding_json(const Finding& finding) {
  return Json{{"message", finding.message},
              {"rule", finding.rule_id},
              {"severity", severity_name(finding.severity)},
              {"subject", finding.subject}};
}

Json iteration_json(const Iteration& iteration) { return Json(iteration); }

void emit(char** out, const Json& value) {
  if (out) *out = dup_string(value.dump(2));
}

TailoringProfile profile_from_json(const char* profile_json) {
  if (!profile_json) return TailoringProfile{};
  return parse_json(profile_json, "profile").get<TailoringProfile>();
}

}  // namespace

extern "C" {

const char* arspi_errc_name(int code) { return errc_name(static_cast<Errc>(code)); }

const char* arspi_last_error(void) { return g_last_error.c_str(); }

void arspi_string_free(char* s) { std::free(s); }

int arspi_init(const char* path, const char* name, const char* profile_json,
               arspi_project_t** out) {
  return guarded([&] {
    require(path, "path");
    require(name, "name");
    require(reinterpret_cast<const char*>(out), "out");
    auto project = std::make_unique<arspi_project>();
    project->root = path;
    project->store = init_project(project->root, name, profile_from_json(profile_json));
    project->lock.emplace(project->root);
    *out = project.release();
  });
}

int arspi_open(const char* path, arspi_project_t** out) {
  return guarded([&] {
    require(path, "path");
    require(reinterpret_cast<const char*>(out), "out");
    auto project = std::make_unique<arspi_project>();
    project->root = path;
    project->lock.emplace(project->root);
    project->store = load(project->root);
    *out = project.release();
  });
}

int arspi_save(arspi_project_t* project) {
  return guarded([&] { save(project->store, project->root); });
}

void arspi_close(arspi_project_t* project) { delete project; }

int arspi_catalog_json(char** out) {
  return guarded([&] {
    Json catalog = Json::array();
    for (const auto& [kind, tree] : catalog_key_artefacts()) {
      catalog.push_back(Json{{"kind", kind.to_string()}, {"sections", tree.children}});
    }
    emit(out, catalog);
  });
}

int arspi_tailor_derive(const char* answers_json, char** out_profile_json) {
  return guarded([&] {
    Json j = parse_json(answers_json, "answers");
    QuestionnaireAnswers answers;
    auto scale = parse_project_scale(j.at("project_scale").get<std::string>());
    if (!scale) fail(Errc::UsageError, "project_scale must be small, medium, or large");
    answers.project_scale = *scale;
    answers.preexisting_process = j.at("preexisting_process").get<bool>();
    answers.training_needed = j.at("training_needed").get<bool>();
    answers.process_line_based = j.at("process_line_based").get<bool>();
    answers.iteration_count_planned = j.at("iteration_count_planned").get<int>();
    std::optional<bool> merge_override;
    if (j.contains("merge_override") && !j["merge_override"].is_null()) {
      merge_override = j["merge_override"].get<bool>();
    }
    emit(out_profile_json, Json(derive_profile(answers, merge_override)));
  });
}

int arspi_tailor_apply(arspi_project_t* project, const char* profile_json) {
  return guarded([&] {
    apply_profile(project->store, profile_from_json(require(profile_json, "profile")));
  });
}

int arspi_merge_designs(arspi_project_t* project, const char* cpd_id, const char* tpd_id,
                        char** out_pd_id) {
  return guarded([&] {
    Artefact& pd = merge_designs(project->store, require(cpd_id, "cpd_id"),
                                 require(tpd_id, "tpd_id"));
    if (out_pd_id) *out_pd_id = dup_string(pd.id);
  });
}

int arspi_artefact_new(arspi_project_t* project, const char* kind, const char* name,
                       char** out_id) {
  return guarded([&] {
    ArtefactKind parsed = ArtefactKind::parse(require(kind, "kind"));
    Artefact& stored = project->store.put_artefact(
        new_artefact(parsed, require(name, "name"), project->store.manifest.profile));
    if (out_id) *out_id = dup_string(stored.id);
  });
}

int arspi_artefact_add_item(arspi_project_t* project, const char* artefact_id,
                            const char* section_key, const char* item_kind, const char* text,
                            char** out_item_id) {
  return guarded([&] {
    auto kind = parse_item_kind(require(item_kind, "item_kind"));
    if (!kind) fail(Errc::UsageError, std::string("unknown item kind: ") + item_kind);
    std::string id = project->store.add_item(require(artefact_id, "artefact_id"),
                                             require(section_key, "section_key"), *kind,
                                             require(text, "text"));
    if (out_item_id) *out_item_id = dup_string(id);
  });
}

int arspi_artefact_show(arspi_project_t* project, const char* id, char** out_json) {
  return guarded([&] {
    emit(out_json, Json(project->store.get_artefact(require(id, "id"))));
  });
}

int arspi_artefact_list(arspi_project_t* project, const char* kind, char** out_json) {
  return guarded([&] {
    std::optional<ArtefactKind> filter;
    if (kind) filter = ArtefactKind::parse(kind);
    Json list = Json::array();
    for (const Artefact* artefact : project->store.list_artefacts(filter)) {
      list.push_back(Json{{"id", artefact->id},
                          {"kind", artefact->kind.to_string()},
                          {"name", artefact->name},
                          {"version", artefact->version}});
    }
    emit(out_json, list);
  });
}

int arspi_support_register(arspi_project_t* project, const char* name,
                           const char* description) {
  return guarded([&] {
    project->store.registry.register_descriptor(
        {require(name, "name"), description ? description : "", false});
  });
}

int arspi_support_list(arspi_project_t* project, char** out_json) {
  return guarded([&] {
    Json list = Json::array();
    for (const SupportArtefactDescriptor& descriptor : project->store.registry.list()) {
      list.push_back(descriptor);
    }
    emit(out_json, list);
  });
}

int arspi_trace_add(arspi_project_t* project, const char* source, const char* target,
                    const char* kind) {
  return guarded([&] {
    auto parsed = parse_link_kind(require(kind, "kind"));
    if (!parsed) fail(Errc::UsageError, std::string("unknown link kind: ") + kind);
    project->store.add_trace(require(source, "source"), require(target, "target"), *parsed);
  });
}

int arspi_trace_list(arspi_project_t* project, char** out_json) {
  return guarded([&] { emit(out_json, Json(project->store.links)); });
}

int arspi_validate(arspi_project_t* project, char** out_findings_json) {
  return guarded([&] {
    Json findings = Json::array();
    for (const Finding& finding : check_completeness(project->store)) {
      findings.push_back(finding_json(finding));
    }
    for (const Finding& finding : check_consistency(project->store)) {
      findings.push_back(finding_json(finding));
    }
    emit(out_findings_json, findings);
  });
}

int arspi_iteration_plan(arspi_project_t* project, const char* flags_json) {
  return guarded([&] {
    Json j = parse_json(flags_json, "flags");
    std::vector<bool> flags;
    for (const Json& flag : j) flags.push_back(flag.get<bool>());
    plan_project(project->store, static_cast<int>(flags.size()), flags);
  });
}

int arspi_iteration_start(arspi_project_t* project, const char* inputs_json, int shortened,
                          char** out_json) {
  return guarded([&] {
    IterationInputs inputs;
    if (inputs_json) inputs = parse_json(inputs_json, "inputs").get<IterationInputs>();
    Iteration& iteration = start_iteration(project->store, inputs, shortened != 0);
    emit(out_json, iteration_json(iteration));
  });
}

int arspi_iteration_close(arspi_project_t* project, char** out_json) {
  return guarded([&] {
    Iteration* running = project->store.running_iteration();
    if (!running) fail(Errc::IterationNotRunning, "no iteration is running");
    emit(out_json, iteration_json(close_iteration(project->store, *running)));
  });
}

int arspi_phase_status(arspi_project_t* project, char** out_json) {
  return guarded([&] {
    Json status;
    const Iteration* running = project->store.running_iteration();
    status["running"] = running ? iteration_json(*running) : Json(nullptr);
    status["iterations"] = Json(project->store.iterations);
    emit(out_json, status);
  });
}

int arspi_phase_advance(arspi_project_t* project, char** out_json) {
  return guarded([&] {
    Iteration* running = project->store.running_iteration();
    if (!running) fail(Errc::IterationNotRunning, "no iteration is running");
    advance_phase(project->store, *running);
    emit(out_json, iteration_json(*running));
  });
}

int arspi_release_package(arspi_project_t* project, const char* version_label,
                          char** out_json) {
  return guarded([&] {
    Iteration* running = project->store.running_iteration();
    if (!running) fail(Errc::IterationNotRunning, "no iteration is running");
    Release& release =
        package_release(project->store, *running, require(version_label, "version_label"));
    emit(out_json, Json(release));
  });
}

int arspi_release_promote(arspi_project_t* project, const char* release_id, char** out_json) {
  return guarded([&] {
    emit(out_json, Json(promote(project->store, require(release_id, "release_id"))));
  });
}

int arspi_release_list(arspi_project_t* project, char** out_json) {
  return guarded([&] { emit(out_json, Json(project->store.releases)); });
}

int arspi_change_submit(arspi_project_t* project, const char* origin, const char* title,
                        const char* description, const char* linked_assets_json,
                        char** out_json) {
  return guarded([&] {
    auto parsed = parse_change_origin(require(origin, "origin"));
    if (!parsed) fail(Errc::UsageError, std::string("unknown change origin: ") + origin);
    std::set<std::string> linked;
    if (linked_assets_json) {
      parse_json(linked_assets_json, "linked_assets").get_to(linked);
    }
    ChangeRequest& change =
        submit_change(project->store, *parsed, require(title, "title"),
                      description ? description : "", linked);
    emit(out_json, Json(change));
  });
}

int arspi_change_triage(arspi_project_t* project, const char* id, const char* decision,
                        char** out_json) {
  return guarded([&] {
    std::string text = require(decision, "decision");
    TriageDecision parsed;
    if (text == "accept") {
      parsed = TriageDecision::Accept;
    } else if (text == "reject") {
      parsed = TriageDecision::Reject;
    } else {
      fail(Errc::UsageError, "decision must be accept or reject");
    }
    emit(out_json, Json(triage_change(project->store, require(id, "id"), parsed)));
  });
}

int arspi_change_list(arspi_project_t* project, char** out_json) {
  return guarded([&] { emit(out_json, Json(project->store.changes)); });
}

int arspi_update_trigger(arspi_project_t* project, const char* old_snapshot_json,
                         const char* new_snapshot_json, char** out_json) {
  return guarded([&] {
    auto old_snapshot =
        parse_json(old_snapshot_json, "old snapshot").get<ReferenceProcessSnapshot>();
    auto new_snapshot =
        parse_json(new_snapshot_json, "new snapshot").get<ReferenceProcessSnapshot>();
    emit(out_json, Json(ingest_update_trigger(project->store, old_snapshot, new_snapshot)));
  });
}

int arspi_delta(arspi_project_t* project, const char* changed_assets_json,
                char** out_report_json) {
  return guarded([&] {
    std::set<std::string> changed;
    parse_json(changed_assets_json, "changed_assets").get_to(changed);
    DeltaReport report = compute_delta(project->store, changed);
    persist_delta_report(project->store, report);
    emit(out_report_json, Json(report));
  });
}

int arspi_report(arspi_project_t* project, char** out_json) {
  return guarded([&] {
    const ProjectStore& store = project->store;
    Json artefacts = Json::array();
    for (const Artefact& artefact : store.artefacts) {
      int required = 0;
      int populated = required;
      struct Counter {
        const Artefact& artefact;
        int& required;
        int& populated;
        void walk(const SectionSpec& spec) {
          for (const SectionSpec& child : spec.children) {
            if (child.required) {
              ++required;
              const Section* section = artefact.find_section(child.key);
              if (section) {
                if (!check_section_empty(*section)) ++populated;
              }
            }
            walk(child);
          }
        }
        static bool check_section_empty(const Section& section) {
          if (!section.items.empty()) return false;
          for (const Section& child : section.children) {
            if (!check_section_empty(child)) return false;
          }
          return true;
        }
      };
      if (artefact.kind.code != KindCode::PR && !artefact.kind.is_support()) {
        SectionSpec spec = required_sections(artefact.kind, store.manifest.profile);
        Counter counter{artefact, required, populated};
        counter.walk(spec);
      }
      int percent = required == 0 ? 100 : (100 * populated) / required;
      artefacts.push_back(Json{{"completeness_percent", percent},
                               {"id", artefact.id},
                               {"kind", artefact.kind.to_string()},
                               {"name", artefact.name},
                               {"version", artefact.version}});
    }

    int open_changes = 0;
    for (const ChangeRequest& change : store.changes) {
      if (change.status == ChangeStatus::Submitted || change.status == ChangeStatus::Accepted ||
          change.status == ChangeStatus::InProgress) {
        ++open_changes;
      }
    }
    const Iteration* running = store.running_iteration();
    Json report{{"artefacts", artefacts},
                {"actual_process_ref", store.manifest.actual_process_ref
                                           ? Json(*store.manifest.actual_process_ref)
                                           : Json(nullptr)},
                {"iteration", running ? Json(running->index) : Json(nullptr)},
                {"last_release", store.releases.empty() ? Json(nullptr)
                                                        : Json(store.releases.back())},
                {"open_changes", open_changes},
                {"phase", running && running->current_phase
                              ? Json(phase_name(*running->current_phase))
                              : Json(nullptr)},
                {"project_name", store.manifest.project_name}};
    emit(out_json, report);
  });
}

}  // extern "C"
