#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "core/repository.hpp"
#include "core/tailoring.hpp"
#include "core/validation.hpp"
#include "helpers.hpp"

using namespace arspi;

static Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Ok;
}

TEST_CASE("a small project with training gets a merged design profile") {
  QuestionnaireAnswers answers;
  answers.project_scale = ProjectScale::Small;
  answers.preexisting_process = false;
  answers.training_needed = true;
  answers.process_line_based = false;
  answers.iteration_count_planned = 3;

  TailoringProfile profile = derive_profile(answers);
  CHECK(profile.merge_designs);
  CHECK(profile.selected_supports.count(kSupportTrainingMaterial) == 1);
  CHECK(profile.selected_supports.count(kSupportSplDeltaReport) == 0);
}

TEST_CASE("a large process-line project keeps designs split and tracks deltas") {
  QuestionnaireAnswers answers;
  answers.project_scale = ProjectScale::Large;
  answers.preexisting_process = true;
  answers.training_needed = false;
  answers.process_line_based = true;
  answers.iteration_count_planned = 6;

  TailoringProfile profile = derive_profile(answers);
  CHECK_FALSE(profile.merge_designs);
  CHECK(profile.selected_supports.count(kSupportSplDeltaReport) == 1);
  CHECK(profile.selected_supports.count(kSupportUserEvaluationPlan) == 1);
}

TEST_CASE("a plain medium project selects nothing and merges by default") {
  QuestionnaireAnswers answers;
  answers.project_scale = ProjectScale::Medium;
  answers.iteration_count_planned = 1;

  TailoringProfile profile = derive_profile(answers);
  CHECK(profile.merge_designs);
  CHECK(profile.selected_supports.empty());

  CHECK_FALSE(derive_profile(answers, false).merge_designs);
}

TEST_CASE("derive_profile is pure over the full answer space") {
  for (ProjectScale scale : {ProjectScale::Small, ProjectScale::Medium, ProjectScale::Large}) {
    for (bool preexisting : {false, true}) {
      for (bool training : {false, true}) {
        for (bool line : {false, true}) {
          for (int iterations : {1, 2, 5}) {
            QuestionnaireAnswers answers{scale, preexisting, training, line, iterations};
            TailoringProfile profile = derive_profile(answers);
            CHECK(profile == derive_profile(answers));
            if (line) CHECK(profile.selected_supports.count(kSupportSplDeltaReport) == 1);
            if (training) CHECK(profile.selected_supports.count(kSupportTrainingMaterial) == 1);
            CHECK(profile.merge_designs == (scale != ProjectScale::Large));
            CHECK(derive_profile(answers, true).merge_designs);
            CHECK_FALSE(derive_profile(answers, false).merge_designs);
          }
        }
      }
    }
  }
}

TEST_CASE("apply_profile creates support skeletons and admits PD") {
  ProjectStore store;
  TailoringProfile profile;
  profile.merge_designs = true;
  profile.selected_supports = {kSupportTrainingMaterial, kSupportSplDeltaReport};
  apply_profile(store, profile);

  CHECK(store.manifest.profile == profile);
  CHECK(store.first_support(kSupportTrainingMaterial) != nullptr);
  CHECK(store.first_support(kSupportSplDeltaReport) != nullptr);
  CHECK(store.artefacts.size() == 2);
  CHECK_NOTHROW(store.put_artefact(new_artefact({KindCode::PD, {}}, "pd", profile)));
}

TEST_CASE("flipping the merge flag on populated designs is rejected") {
  ProjectStore store;
  std::string cpd = store.put_artefact(new_artefact({KindCode::CPD, {}}, "cpd",
                                                    store.manifest.profile)).id;
  store.add_item(cpd, "Processes", ItemKind::DesignElement, "d1");

  TailoringProfile merged;
  merged.merge_designs = true;
  CHECK(code_of([&] { apply_profile(store, merged); }) == Errc::IncompatibleRetailoring);
}

TEST_CASE("merging empty designs yields an empty PD with the union tree") {
  ProjectStore store;
  std::string cpd = store.put_artefact(new_artefact({KindCode::CPD, {}}, "cpd",
                                                    store.manifest.profile)).id;
  std::string tpd = store.put_artefact(new_artefact({KindCode::TPD, {}}, "tpd",
                                                    store.manifest.profile)).id;
  Artefact& pd = merge_designs(store, cpd, tpd);
  CHECK(pd.kind.code == KindCode::PD);
  CHECK(pd.find_section("RequirementsTracing") != nullptr);
  CHECK(pd.find_section("LogicalAndPhysicalModelOrganisation") != nullptr);
  CHECK(store.find_artefact(cpd) == nullptr);
  CHECK(store.find_artefact(tpd) == nullptr);
  CHECK(check_artefact_completeness(store, pd).size() > 0);  // still empty, not broken
}

TEST_CASE("merge keeps every item and intra-design link") {
  ProjectStore store;
  std::string prq = store.put_artefact(new_artefact({KindCode::PRQ, {}}, "prq",
                                                    store.manifest.profile)).id;
  std::string cpd = store.put_artefact(new_artefact({KindCode::CPD, {}}, "cpd",
                                                    store.manifest.profile)).id;
  std::string tpd = store.put_artefact(new_artefact({KindCode::TPD, {}}, "tpd",
                                                    store.manifest.profile)).id;
  std::vector<std::string> designs, realisations;
  for (int i = 0; i < 3; ++i) {
    designs.push_back(store.add_item(cpd, "Processes", ItemKind::DesignElement,
                                     "design " + std::to_string(i)));
    realisations.push_back(store.add_item(tpd, "LogicalAndPhysicalModelOrganisation",
                                          ItemKind::RealisationElement,
                                          "realisation " + std::to_string(i)));
  }
  for (int i = 0; i < 3; ++i) store.add_trace(designs[i], realisations[i], LinkKind::Realises);
  store.add_trace(prq, cpd, LinkKind::Shares);

  std::size_t links_before = store.links.size();
  Artefact& pd = merge_designs(store, cpd, tpd);

  int items = 0;
  std::function<void(const std::vector<Section>&)> count = [&](const std::vector<Section>& ss) {
    for (const Section& s : ss) {
      items += static_cast<int>(s.items.size());
      count(s.children);
    }
  };
  count(pd.sections);
  CHECK(items == 6);
  CHECK(store.links.size() == links_before);  // item links untouched, artefact link retargeted
  for (const TraceLink& link : store.links) {
    CHECK(link.source != cpd);
    CHECK(link.target != cpd);
    CHECK(link.source != tpd);
    CHECK(link.target != tpd);
  }

  auto findings = check_consistency(store);
  CHECK(std::none_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.rule_id == rules::kDanglingEndpoint;
  }));
}

TEST_CASE("merging a non-design pair is a kind mismatch") {
  ProjectStore store;
  std::string prq = store.put_artefact(new_artefact({KindCode::PRQ, {}}, "prq",
                                                    store.manifest.profile)).id;
  std::string tpd = store.put_artefact(new_artefact({KindCode::TPD, {}}, "tpd",
                                                    store.manifest.profile)).id;
  CHECK(code_of([&] { merge_designs(store, prq, tpd); }) == Errc::KindMismatch);
}
