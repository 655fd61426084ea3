#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fairlens/corpus.hpp"
#include "fairlens/error.hpp"

using namespace fairlens;

namespace {

namespace fs = std::filesystem;

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

constexpr const char* kHeader5 = "instance_id\tspeaker_id\treference\tgender\tduration_s\n";

}  // namespace

TEST_CASE("load_manifest parses TSV rows") {
  const auto path = write_temp("fairlens_manifest.tsv",
                               std::string(kHeader5) +
                                   "u1\tspk7\thallo wereld\tfemale\t3.2\n"
                                   "u2\tspk8\tal klaar\t\t\n"
                                   "u3\tspk7\tdag\tother\t0\n");
  const auto instances = load_manifest(path.string(), ManifestFormat::kTsv);
  REQUIRE(instances.size() == 3);
  CHECK(instances[0].instance_id == "u1");
  CHECK(instances[0].speaker_id == "spk7");
  CHECK(instances[0].reference_text == "hallo wereld");
  CHECK(instances[0].gender == Gender::kFemale);
  CHECK(*instances[0].duration_s == doctest::Approx(3.2));
  // empty gender column maps to unknown, empty duration to absent
  CHECK(instances[1].gender == Gender::kUnknown);
  CHECK(!instances[1].duration_s.has_value());
  // unrecognized gender vocabulary maps to unknown
  CHECK(instances[2].gender == Gender::kUnknown);
  fs::remove(path);
}

TEST_CASE("load_manifest accepts optional and extra columns") {
  const auto path = write_temp(
      "fairlens_manifest_extra.tsv",
      "instance_id\tspeaker_id\treference\tgender\tduration_s\tage_band\taccent\tshow_type\n"
      "u1\ts1\ttekst een\tmale\t2.0\tfourties\tnl\teloquent\n"
      "u2\ts2\ttekst twee\tfemale\t\t\t\tradio\n");
  const auto instances = load_manifest(path.string(), ManifestFormat::kTsv);
  REQUIRE(instances.size() == 2);
  CHECK(*instances[0].age_band == "fourties");
  CHECK(*instances[0].accent == "nl");
  CHECK(instances[0].extras.at("show_type") == "eloquent");
  CHECK(!instances[1].age_band.has_value());
  CHECK(instances[1].extras.at("show_type") == "radio");
  CHECK(attribute_value(instances[1], "show_type") == "radio");
  CHECK(attribute_value(instances[1], "age_band") == "unknown");
  fs::remove(path);
}

TEST_CASE("load_manifest errors carry row numbers and ids") {
  const auto short_row = write_temp("fairlens_manifest_short.tsv",
                                    std::string(kHeader5) + "u1\tspk7\thallo\tmale\t1.0\n"
                                                            "u2\tspk8\n");
  CHECK_THROWS_WITH_AS(load_manifest(short_row.string(), ManifestFormat::kTsv),
                       doctest::Contains("line 3"), ParseError);
  fs::remove(short_row);

  const auto bad_duration = write_temp(
      "fairlens_manifest_dur.tsv", std::string(kHeader5) + "u1\tspk7\thallo\tmale\tlang\n");
  CHECK_THROWS_AS(load_manifest(bad_duration.string(), ManifestFormat::kTsv), ParseError);
  fs::remove(bad_duration);

  const auto dup = write_temp("fairlens_manifest_dup.tsv",
                              std::string(kHeader5) + "u1\tspk7\thallo\tmale\t1.0\n"
                                                      "u1\tspk8\tdag\tfemale\t2.0\n");
  CHECK_THROWS_WITH_AS(load_manifest(dup.string(), ManifestFormat::kTsv),
                       doctest::Contains("u1"), ValidationError);
  fs::remove(dup);

  const auto bad_header =
      write_temp("fairlens_manifest_hdr.tsv", "id\tspeaker\ttext\tgender\tduration_s\nx\n");
  CHECK_THROWS_AS(load_manifest(bad_header.string(), ManifestFormat::kTsv), ParseError);
  fs::remove(bad_header);
}

TEST_CASE("load_manifest parses JSONL with extras") {
  const auto path = write_temp(
      "fairlens_manifest.jsonl",
      R"({"instance_id": "u1", "speaker_id": "s1", "reference": "hallo", "gender": "female", "duration_s": 3.5, "show_type": "radio"})"
      "\n"
      R"({"instance_id": "u2", "speaker_id": "s2", "reference": "dag"})"
      "\n");
  const auto instances = load_manifest(path.string(), ManifestFormat::kJsonl);
  REQUIRE(instances.size() == 2);
  CHECK(instances[0].gender == Gender::kFemale);
  CHECK(instances[0].extras.at("show_type") == "radio");
  CHECK(instances[1].gender == Gender::kUnknown);
  fs::remove(path);

  const auto bad = write_temp("fairlens_manifest_bad.jsonl", "niet json\n");
  CHECK_THROWS_AS(load_manifest(bad.string(), ManifestFormat::kJsonl), ParseError);
  fs::remove(bad);
}

TEST_CASE("manifest round-trip is a fixed point in both formats") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> dur(0.0, 100.0);
  std::vector<TranscriptInstance> instances;
  const char* words[] = {"een", "twee", "drie", "vier", "vijf"};
  for (int i = 0; i < 40; ++i) {
    TranscriptInstance inst;
    inst.instance_id = "u" + std::to_string(i);
    inst.speaker_id = "s" + std::to_string(i % 7);
    std::uniform_int_distribution<int> len(0, 6);
    const int n = len(rng);
    for (int w = 0; w < n; ++w) {
      inst.reference_text += (w ? " " : "");
      inst.reference_text += words[rng() % 5];
    }
    inst.gender = coin(rng) ? Gender::kFemale : (coin(rng) ? Gender::kMale : Gender::kUnknown);
    if (coin(rng)) inst.duration_s = dur(rng);
    if (coin(rng)) inst.age_band = "band" + std::to_string(rng() % 3);
    if (coin(rng)) inst.accent = "accent" + std::to_string(rng() % 2);
    if (coin(rng)) inst.extras["show_type"] = coin(rng) ? "radio" : "tv";
    instances.push_back(std::move(inst));
  }
  for (const auto format : {ManifestFormat::kTsv, ManifestFormat::kJsonl}) {
    const auto p1 = fs::temp_directory_path() / "fairlens_roundtrip_1";
    const auto p2 = fs::temp_directory_path() / "fairlens_roundtrip_2";
    save_manifest(instances, p1.string(), format);
    const auto once = load_manifest(p1.string(), format);
    CHECK(once == instances);
    save_manifest(once, p2.string(), format);
    const auto twice = load_manifest(p2.string(), format);
    CHECK(twice == once);
    fs::remove(p1);
    fs::remove(p2);
  }
}

TEST_CASE("load_hypotheses parses records and rejects duplicates") {
  const auto path = write_temp(
      "fairlens_hyps.jsonl",
      R"({"instance_id": "u1", "model_id": "medium", "text": "hallo wereld"})"
      "\n"
      R"({"instance_id": "u1", "model_id": "tiny", "text": ""})"
      "\n");
  const auto hyps = load_hypotheses(path.string());
  REQUIRE(hyps.size() == 2);
  CHECK(hyps[0].model_id == "medium");
  CHECK(hyps[1].text.empty());  // a model may emit nothing
  fs::remove(path);

  const auto dup = write_temp(
      "fairlens_hyps_dup.jsonl",
      R"({"instance_id": "u1", "model_id": "medium", "text": "a"})"
      "\n"
      R"({"instance_id": "u1", "model_id": "medium", "text": "b"})"
      "\n");
  CHECK_THROWS_AS(load_hypotheses(dup.string()), ValidationError);
  fs::remove(dup);

  const auto bad = write_temp("fairlens_hyps_bad.jsonl",
                              R"({"instance_id": "u1"})"
                              "\n");
  CHECK_THROWS_WITH_AS(load_hypotheses(bad.string()), doctest::Contains("line 1"), ParseError);
  fs::remove(bad);
}

TEST_CASE("join_dataset resolves hypotheses and normalizes both sides") {
  std::vector<TranscriptInstance> instances(3);
  instances[0].instance_id = "u1";
  instances[0].speaker_id = "s1";
  instances[0].reference_text = "Hallo, Wereld!";
  instances[1].instance_id = "u2";
  instances[1].speaker_id = "s1";
  instances[1].reference_text = "Al klaar";
  instances[2].instance_id = "u3";
  instances[2].speaker_id = "s2";
  instances[2].reference_text = "Dag";

  std::vector<Hypothesis> hyps = {{"u1", "m", "hallo wereld"},
                                  {"u2", "m", "alklaar"},
                                  {"u3", "m", "dag"},
                                  {"u9", "m", "spook"}};
  const auto result = join_dataset(instances, hyps, {});
  CHECK(result.units.size() == 3);  // one per resolvable hypothesis
  CHECK(result.unresolved_hypotheses == 1);
  CHECK(result.units[0].normalized_reference == "hallo wereld");
  CHECK(result.units[0].normalized_hypothesis == "hallo wereld");

  // instance without a hypothesis is absent from the output
  for (const auto& unit : result.units) CHECK(unit.instance.instance_id != "u9");

  // zero resolvable hypotheses is an error
  CHECK_THROWS_AS(join_dataset(instances, {{"zz", "m", "niks"}}, {}), ValidationError);
}

TEST_CASE("filter_unrepresentative_groups keeps large groups, drops unknown") {
  std::vector<EvaluationUnit> units;
  auto add = [&](const std::string& id, Gender g, int copies) {
    for (int c = 0; c < copies; ++c) {
      EvaluationUnit u;
      u.instance.instance_id = id + "_" + std::to_string(c);
      u.instance.speaker_id = "s";
      u.instance.gender = g;
      u.model_id = "m";
      units.push_back(std::move(u));
    }
  };
  add("f", Gender::kFemale, 100);
  add("m", Gender::kMale, 400);
  add("u", Gender::kUnknown, 5);

  const auto result = filter_unrepresentative_groups(units, GroupAttribute::kGender, 50);
  CHECK(result.kept.size() == 500);
  REQUIRE(result.excluded_groups.size() == 1);
  CHECK(result.excluded_groups[0].first == "unknown");
  CHECK(result.excluded_groups[0].second == 5);

  // min_instances = 1 still excludes only unknown-valued units
  const auto loose = filter_unrepresentative_groups(units, GroupAttribute::kGender, 1);
  CHECK(loose.kept.size() == 500);

  // all groups below threshold: empty kept set plus the full exclusion list
  const auto strict = filter_unrepresentative_groups(units, GroupAttribute::kGender, 1000);
  CHECK(strict.kept.empty());
  CHECK(strict.excluded_groups.size() == 3);

  // filter never alters contents, only membership
  for (const auto& unit : result.kept) {
    CHECK((unit.instance.gender == Gender::kFemale || unit.instance.gender == Gender::kMale));
  }
  CHECK_THROWS_AS(filter_unrepresentative_groups(units, GroupAttribute::kGender, 0),
                  ValidationError);
}

TEST_CASE("filter counts distinct instances, not units") {
  std::vector<EvaluationUnit> units;
  for (int model = 0; model < 5; ++model) {
    for (int i = 0; i < 12; ++i) {
      EvaluationUnit u;
      u.instance.instance_id = "u" + std::to_string(i);
      u.instance.gender = Gender::kFemale;
      u.model_id = "m" + std::to_string(model);
      units.push_back(std::move(u));
    }
  }
  // 60 units but only 12 instances: a threshold of 13 excludes the group
  const auto result = filter_unrepresentative_groups(units, GroupAttribute::kGender, 13);
  CHECK(result.kept.empty());
  REQUIRE(result.excluded_groups.size() == 1);
  CHECK(result.excluded_groups[0].second == 12);
}

TEST_CASE("transcribe_with_command runs the adapter per audio path") {
  const auto result = transcribe_with_command(
      "echo transcript voor", {{"u1", "/tmp/a.wav"}, {"u2", "/tmp/b.wav"}}, "extern");
  REQUIRE(result.hypotheses.size() == 2);
  CHECK(result.hypotheses[0].instance_id == "u1");
  CHECK(result.hypotheses[0].model_id == "extern");
  CHECK(result.hypotheses[0].text == "transcript voor /tmp/a.wav");
  CHECK(result.failed_instance_ids.empty());

  // nonzero exit marks the instance failed
  const auto failed = transcribe_with_command("false", {{"u1", "x.wav"}}, "extern");
  CHECK(failed.hypotheses.empty());
  REQUIRE(failed.failed_instance_ids.size() == 1);
  CHECK(failed.failed_instance_ids[0] == "u1");

  // paths with spaces and quotes survive shell quoting
  const auto quoted =
      transcribe_with_command("echo", {{"u1", "/tmp/ruis 'n lawaai.wav"}}, "extern");
  REQUIRE(quoted.hypotheses.size() == 1);
  CHECK(quoted.hypotheses[0].text == "/tmp/ruis 'n lawaai.wav");
}

TEST_CASE("manifest format detection from extensions") {
  CHECK(manifest_format_from_path("/data/corpus.tsv") == ManifestFormat::kTsv);
  CHECK(manifest_format_from_path("corpus.jsonl") == ManifestFormat::kJsonl);
  CHECK(manifest_format_from_path("corpus.json") == ManifestFormat::kJsonl);
  CHECK_THROWS_AS(manifest_format_from_path("corpus.csv"), ValidationError);
}
