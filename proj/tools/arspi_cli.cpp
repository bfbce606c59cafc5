// arspi — command-line front end for the arspi engine.
//
// Exit codes: 0 success/clean, 1 validation warnings, 2 validation errors,
// 3 usage error, 4 store error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arspi.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitWarnings = 1;
constexpr int kExitErrors = 2;
constexpr int kExitUsage = 3;
constexpr int kExitStore = 4;

int exit_code_for(int capi_code) {
  switch (capi_code) {
    case ARSPI_OK:
      return kExitOk;
    case ARSPI_E_PATH_OCCUPIED:
    case ARSPI_E_SCHEMA_MISMATCH:
    case ARSPI_E_CORRUPT_FILE:
    case ARSPI_E_LOCK_TIMEOUT:
      return kExitStore;
    default:
      return kExitUsage;
  }
}

/// Fails the command with the library's last error on a nonzero code.
struct CommandError {
  int exit_code;
};

void check(int code) {
  if (code != ARSPI_OK) {
    std::cerr << "error (" << arspi_errc_name(code) << "): " << arspi_last_error() << "\n";
    throw CommandError{exit_code_for(code)};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  arspi_string_free(s);
  return out;
}

struct ProjectHandle {
  arspi_project_t* project = nullptr;
  ~ProjectHandle() {
    if (project) arspi_close(project);
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    throw CommandError{kExitStore};
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    throw CommandError{kExitStore};
  }
}

void print_payload(const std::string& payload, bool as_json) {
  if (as_json) {
    std::cout << payload << "\n";
    return;
  }
  std::cout << payload << "\n";
}

void print_catalog_tree(const Json& sections, int depth) {
  for (const Json& section : sections) {
    std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "- "
              << section.at("title").get<std::string>() << " ["
              << section.at("key").get<std::string>() << "]";
    auto shared = section.at("shared_with");
    if (!shared.empty()) {
      std::cout << " (shared with";
      for (const Json& kind : shared) std::cout << " " << kind.get<std::string>();
      std::cout << ")";
    }
    std::cout << "\n";
    print_catalog_tree(section.at("children"), depth + 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arspi — artefact-based SPI project engine"};
  app.require_subcommand(1);

  std::string project_path = ".";
  if (const char* env = std::getenv("ARSPI_PROJECT")) project_path = env;
  app.add_option("--project", project_path, "Project directory (default: $ARSPI_PROJECT or .)");
  bool json_output = false;
  app.add_flag("--json", json_output, "Structured JSON output");

  // init
  auto* cmd_init = app.add_subcommand("init", "Create a new project store");
  std::string init_name;
  bool init_merged = false;
  std::vector<std::string> init_supports;
  cmd_init->add_option("--name", init_name, "Project name")->required();
  cmd_init->add_flag("--merged", init_merged, "Use the unified Process Design artefact");
  cmd_init->add_option("--support", init_supports, "Select a support artefact");

  // tailor
  auto* cmd_tailor = app.add_subcommand("tailor", "Derive and apply a tailoring profile");
  std::string tailor_scale = "medium";
  bool tailor_training = false, tailor_process_line = false, tailor_preexisting = false;
  int tailor_iterations = 1;
  bool tailor_dry_run = false;
  std::optional<bool> tailor_merge;
  cmd_tailor->add_option("--scale", tailor_scale, "small, medium, or large");
  cmd_tailor->add_flag("--training", tailor_training, "Training for process consumers needed");
  cmd_tailor->add_flag("--process-line", tailor_process_line,
                       "Process is a software process line variant");
  cmd_tailor->add_flag("--preexisting", tailor_preexisting, "An actual process already exists");
  cmd_tailor->add_option("--iterations", tailor_iterations, "Planned iteration count");
  cmd_tailor->add_flag("--dry-run", tailor_dry_run, "Print the profile without applying it");
  cmd_tailor->add_flag_callback("--merge", [&] { tailor_merge = true; },
                                "Force the unified Process Design");
  cmd_tailor->add_flag_callback("--no-merge", [&] { tailor_merge = false; },
                                "Force split CPD/TPD designs");

  // catalog dump
  auto* cmd_catalog = app.add_subcommand("catalog", "Artefact catalog");
  auto* cmd_catalog_dump = cmd_catalog->add_subcommand("dump", "Print the section structures");
  cmd_catalog->require_subcommand(1);

  // artefact
  auto* cmd_artefact = app.add_subcommand("artefact", "Create and edit artefacts");
  cmd_artefact->require_subcommand(1);
  auto* cmd_artefact_new = cmd_artefact->add_subcommand("new", "Create an artefact");
  std::string artefact_kind, artefact_name;
  cmd_artefact_new->add_option("--kind", artefact_kind, "PRQ|CPD|TPD|PD|PLC|PR|SUPPORT:<name>")
      ->required();
  cmd_artefact_new->add_option("--name", artefact_name, "Artefact name")->required();
  auto* cmd_artefact_set = cmd_artefact->add_subcommand("set", "Add content to a section");
  std::string set_id, set_section, set_item_text, set_item_kind = "note";
  cmd_artefact_set->add_option("id", set_id, "Artefact id")->required();
  cmd_artefact_set->add_option("section", set_section, "Section key")->required();
  cmd_artefact_set->add_option("--add-item", set_item_text, "Item text")->required();
  cmd_artefact_set->add_option("--item-kind", set_item_kind,
                               "goal|requirement|design_element|realisation_element|asset|note");
  auto* cmd_artefact_show = cmd_artefact->add_subcommand("show", "Print one artefact");
  std::string show_id;
  cmd_artefact_show->add_option("id", show_id, "Artefact id")->required();
  auto* cmd_artefact_list = cmd_artefact->add_subcommand("list", "List artefacts");
  std::string list_kind;
  cmd_artefact_list->add_option("--kind", list_kind, "Filter by kind");

  // trace
  auto* cmd_trace = app.add_subcommand("trace", "Trace links");
  cmd_trace->require_subcommand(1);
  auto* cmd_trace_add = cmd_trace->add_subcommand("add", "Add a trace link");
  std::string trace_source, trace_target, trace_kind;
  cmd_trace_add->add_option("source", trace_source)->required();
  cmd_trace_add->add_option("target", trace_target)->required();
  cmd_trace_add->add_option("kind", trace_kind, "addresses|refines|realises|shares|derives_from")
      ->required();
  auto* cmd_trace_list = cmd_trace->add_subcommand("list", "List trace links");

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "Run completeness and consistency checks");

  // iteration
  auto* cmd_iteration = app.add_subcommand("iteration", "Iteration control");
  cmd_iteration->require_subcommand(1);
  auto* cmd_iteration_plan = cmd_iteration->add_subcommand("plan", "Record the iteration plan");
  std::vector<std::string> plan_flags;
  cmd_iteration_plan->add_option("flags", plan_flags, "One 'full' or 'short' per iteration")
      ->required();
  auto* cmd_iteration_start = cmd_iteration->add_subcommand("start", "Start the next iteration");
  bool start_short = false;
  std::string start_vision;
  std::vector<std::string> start_changes;
  cmd_iteration_start->add_flag("--short", start_short, "No deployment phase");
  cmd_iteration_start->add_option("--vision", start_vision, "Iteration vision text");
  cmd_iteration_start->add_option("--change", start_changes, "Accepted change request id");
  auto* cmd_iteration_close = cmd_iteration->add_subcommand("close", "Close the running iteration");

  // phase
  auto* cmd_phase = app.add_subcommand("phase", "Phase state");
  cmd_phase->require_subcommand(1);
  auto* cmd_phase_status = cmd_phase->add_subcommand("status", "Show iteration/phase state");
  auto* cmd_phase_advance = cmd_phase->add_subcommand("advance", "Advance to the next phase");

  // release
  auto* cmd_release = app.add_subcommand("release", "Release pipeline");
  cmd_release->require_subcommand(1);
  auto* cmd_release_package = cmd_release->add_subcommand("package", "Package a Process Release");
  std::string release_label;
  cmd_release_package->add_option("--label", release_label, "Version label")->required();
  auto* cmd_release_promote = cmd_release->add_subcommand("promote", "Promote a release");
  std::string promote_id;
  cmd_release_promote->add_option("id", promote_id, "Release id")->required();
  auto* cmd_release_list = cmd_release->add_subcommand("list", "List releases");

  // change
  auto* cmd_change = app.add_subcommand("change", "Change request queue");
  cmd_change->require_subcommand(1);
  auto* cmd_change_submit = cmd_change->add_subcommand("submit", "Submit a change request");
  std::string change_title, change_description;
  bool change_external = false;
  std::vector<std::string> change_assets;
  cmd_change_submit->add_option("--title", change_title)->required();
  cmd_change_submit->add_option("--description", change_description);
  cmd_change_submit->add_flag("--external", change_external, "Origin is an upstream update trigger");
  cmd_change_submit->add_option("--asset", change_assets, "Linked asset id");
  auto* cmd_change_triage = cmd_change->add_subcommand("triage", "Accept or reject a change");
  std::string triage_id, triage_decision;
  cmd_change_triage->add_option("id", triage_id)->required();
  cmd_change_triage->add_option("decision", triage_decision, "accept|reject")->required();
  auto* cmd_change_list = cmd_change->add_subcommand("list", "List change requests");

  // delta
  auto* cmd_delta = app.add_subcommand("delta", "Reference-process delta analysis");
  std::string delta_old, delta_new;
  bool delta_ingest = false;
  cmd_delta->add_option("old", delta_old, "Old snapshot file (JSON: label + asset hashes)")
      ->required();
  cmd_delta->add_option("new", delta_new, "New snapshot file")->required();
  cmd_delta->add_flag("--ingest", delta_ingest, "Also file update-trigger change requests");

  // report
  auto* cmd_report = app.add_subcommand("report", "Project status summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_catalog->parsed() && cmd_catalog_dump->parsed()) {
      char* out = nullptr;
      check(arspi_catalog_json(&out));
      std::string payload = take(out);
      if (json_output) {
        std::cout << payload << "\n";
      } else {
        for (const Json& entry : Json::parse(payload)) {
          std::cout << entry.at("kind").get<std::string>() << "\n";
          print_catalog_tree(entry.at("sections"), 1);
        }
      }
      return kExitOk;
    }

    if (cmd_init->parsed()) {
      Json profile{{"merge_designs", init_merged},
                   {"selected_supports", init_supports},
                   {"strict_realisation_coverage", true},
                   {"notes", ""}};
      ProjectHandle handle;
      check(arspi_init(project_path.c_str(), init_name.c_str(), profile.dump().c_str(),
                       &handle.project));
      std::cout << "initialized project '" << init_name << "' at " << project_path << "\n";
      return kExitOk;
    }

    ProjectHandle handle;
    check(arspi_open(project_path.c_str(), &handle.project));
    arspi_project_t* project = handle.project;
    bool mutated = false;
    std::string payload;

    if (cmd_tailor->parsed()) {
      Json answers{{"project_scale", tailor_scale},
                   {"preexisting_process", tailor_preexisting},
                   {"training_needed", tailor_training},
                   {"process_line_based", tailor_process_line},
                   {"iteration_count_planned", tailor_iterations}};
      if (tailor_merge) answers["merge_override"] = *tailor_merge;
      char* out = nullptr;
      check(arspi_tailor_derive(answers.dump().c_str(), &out));
      payload = take(out);
      if (!tailor_dry_run) {
        check(arspi_tailor_apply(project, payload.c_str()));
        mutated = true;
      }
      print_payload(payload, json_output);
    } else if (cmd_artefact->parsed()) {
      if (cmd_artefact_new->parsed()) {
        char* id = nullptr;
        check(arspi_artefact_new(project, artefact_kind.c_str(), artefact_name.c_str(), &id));
        std::cout << take(id) << "\n";
        mutated = true;
      } else if (cmd_artefact_set->parsed()) {
        char* item_id = nullptr;
        check(arspi_artefact_add_item(project, set_id.c_str(), set_section.c_str(),
                                      set_item_kind.c_str(), set_item_text.c_str(), &item_id));
        std::cout << take(item_id) << "\n";
        mutated = true;
      } else if (cmd_artefact_show->parsed()) {
        char* out = nullptr;
        check(arspi_artefact_show(project, show_id.c_str(), &out));
        print_payload(take(out), json_output);
      } else if (cmd_artefact_list->parsed()) {
        char* out = nullptr;
        check(arspi_artefact_list(project, list_kind.empty() ? nullptr : list_kind.c_str(),
                                  &out));
        print_payload(take(out), json_output);
      }
    } else if (cmd_trace->parsed()) {
      if (cmd_trace_add->parsed()) {
        check(arspi_trace_add(project, trace_source.c_str(), trace_target.c_str(),
                              trace_kind.c_str()));
        mutated = true;
      } else if (cmd_trace_list->parsed()) {
        char* out = nullptr;
        check(arspi_trace_list(project, &out));
        print_payload(take(out), json_output);
      }
    } else if (cmd_validate->parsed()) {
      char* out = nullptr;
      check(arspi_validate(project, &out));
      Json findings = Json::parse(take(out));
      if (json_output) {
        std::cout << findings.dump(2) << "\n";
      } else {
        for (const Json& finding : findings) {
          std::cout << finding.at("severity").get<std::string>() << " "
                    << finding.at("rule").get<std::string>() << " "
                    << finding.at("subject").get<std::string>() << ": "
                    << finding.at("message").get<std::string>() << "\n";
        }
      }
      bool errors = false, warnings = false;
      for (const Json& finding : findings) {
        if (finding.at("severity") == "error") errors = true;
        if (finding.at("severity") == "warning") warnings = true;
      }
      return errors ? kExitErrors : (warnings ? kExitWarnings : kExitOk);
    } else if (cmd_iteration->parsed()) {
      if (cmd_iteration_plan->parsed()) {
        Json flags = Json::array();
        for (const std::string& flag : plan_flags) {
          if (flag != "full" && flag != "short") {
            std::cerr << "error: plan flags must be 'full' or 'short'\n";
            return kExitUsage;
          }
          flags.push_back(flag == "short");
        }
        check(arspi_iteration_plan(project, flags.dump().c_str()));
        mutated = true;
      } else if (cmd_iteration_start->parsed()) {
        Json inputs{{"vision", start_vision},
                    {"changes", start_changes},
                    {"actual_process", nullptr}};
        char* out = nullptr;
        check(arspi_iteration_start(project, inputs.dump().c_str(), start_short ? 1 : 0, &out));
        payload = take(out);
        print_payload(payload, json_output);
        mutated = true;
      } else if (cmd_iteration_close->parsed()) {
        char* out = nullptr;
        check(arspi_iteration_close(project, &out));
        print_payload(take(out), json_output);
        mutated = true;
      }
    } else if (cmd_phase->parsed()) {
      if (cmd_phase_status->parsed()) {
        char* out = nullptr;
        check(arspi_phase_status(project, &out));
        print_payload(take(out), json_output);
      } else if (cmd_phase_advance->parsed()) {
        char* out = nullptr;
        check(arspi_phase_advance(project, &out));
        print_payload(take(out), json_output);
        mutated = true;
      }
    } else if (cmd_release->parsed()) {
      if (cmd_release_package->parsed()) {
        char* out = nullptr;
        check(arspi_release_package(project, release_label.c_str(), &out));
        print_payload(take(out), json_output);
        mutated = true;
      } else if (cmd_release_promote->parsed()) {
        char* out = nullptr;
        check(arspi_release_promote(project, promote_id.c_str(), &out));
        print_payload(take(out), json_output);
        mutated = true;
      } else if (cmd_release_list->parsed()) {
        char* out = nullptr;
        check(arspi_release_list(project, &out));
        print_payload(take(out), json_output);
      }
    } else if (cmd_change->parsed()) {
      if (cmd_change_submit->parsed()) {
        Json assets = change_assets;
        char* out = nullptr;
        check(arspi_change_submit(project,
                                  change_external ? "external_update_trigger" : "internal",
                                  change_title.c_str(), change_description.c_str(),
                                  assets.dump().c_str(), &out));
        print_payload(take(out), json_output);
        mutated = true;
      } else if (cmd_change_triage->parsed()) {
        char* out = nullptr;
        check(arspi_change_triage(project, triage_id.c_str(), triage_decision.c_str(), &out));
        print_payload(take(out), json_output);
        mutated = true;
      } else if (cmd_change_list->parsed()) {
        char* out = nullptr;
        check(arspi_change_list(project, &out));
        print_payload(take(out), json_output);
      }
    } else if (cmd_delta->parsed()) {
      Json old_snapshot = read_json_file(delta_old);
      Json new_snapshot = read_json_file(delta_new);
      if (delta_ingest) {
        char* out = nullptr;
        check(arspi_update_trigger(project, old_snapshot.dump().c_str(),
                                   new_snapshot.dump().c_str(), &out));
        print_payload(take(out), json_output);
        mutated = true;
      }
      // The changed-asset set is the hash diff of the two snapshots.
      std::set<std::string> changed;
      const Json& old_assets = old_snapshot.at("assets");
      const Json& new_assets = new_snapshot.at("assets");
      for (auto it = old_assets.begin(); it != old_assets.end(); ++it) {
        if (!new_assets.contains(it.key()) || new_assets.at(it.key()) != it.value()) {
          changed.insert(it.key());
        }
      }
      for (auto it = new_assets.begin(); it != new_assets.end(); ++it) {
        if (!old_assets.contains(it.key())) changed.insert(it.key());
      }
      if (changed.empty()) {
        std::cout << "no changed assets\n";
        return kExitOk;
      }
      char* out = nullptr;
      check(arspi_delta(project, Json(changed).dump().c_str(), &out));
      print_payload(take(out), json_output);
      mutated = true;  // the report may be persisted into the SPLDeltaReport artefact
    } else if (cmd_report->parsed()) {
      char* out = nullptr;
      check(arspi_report(project, &out));
      payload = take(out);
      if (json_output) {
        std::cout << payload << "\n";
      } else {
        Json report = Json::parse(payload);
        std::cout << "project: " << report.at("project_name").get<std::string>() << "\n";
        std::cout << "iteration: "
                  << (report.at("iteration").is_null()
                          ? "none"
                          : std::to_string(report.at("iteration").get<int>()))
                  << ", phase: "
                  << (report.at("phase").is_null() ? "-" : report.at("phase").get<std::string>())
                  << "\n";
        std::cout << "open changes: " << report.at("open_changes").get<int>() << "\n";
        if (!report.at("last_release").is_null()) {
          const Json& release = report.at("last_release");
          std::cout << "last release: " << release.at("id").get<std::string>() << " ("
                    << release.at("version_label").get<std::string>() << ", "
                    << release.at("status").get<std::string>() << ")\n";
        } else {
          std::cout << "last release: none\n";
        }
        std::cout << "artefacts (" << report.at("artefacts").size() << "):\n";
        for (const Json& artefact : report.at("artefacts")) {
          std::cout << "  " << artefact.at("id").get<std::string>() << " "
                    << artefact.at("kind").get<std::string>() << " '"
                    << artefact.at("name").get<std::string>() << "' "
                    << artefact.at("completeness_percent").get<int>() << "% complete\n";
        }
      }
    }

    if (mutated) check(arspi_save(project));
    return kExitOk;
  } catch (const CommandError& e) {
    return e.exit_code;
  }
}
