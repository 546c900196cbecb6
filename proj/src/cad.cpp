#include "afcm/cad.hpp"

#include "afcm/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace afcm::cad {

namespace {

struct InputRow
{
  char const *id;
  char const *label;
  char const *section;
  char const *group;
  std::vector<std::string> values;
};

std::vector<std::string> const kYesNo{"no", "yes"};

std::vector<InputRow> input_rows()
{
  return {
    {"A1", "typical angina pectoris", "symptoms", "", kYesNo},
    {"A2", "atypical angina pectoris", "symptoms", "", kYesNo},
    {"A3", "atypical thoracic pain", "symptoms", "", kYesNo},
    {"A4", "dyspnea on exertion", "symptoms", "", kYesNo},
    {"A5", "asymptomatic", "symptoms", "", kYesNo},
    {"A6", "gender - male", "demographics", "A34", kYesNo},
    {"A7", "gender - female", "demographics", "A34", kYesNo},
    {"A8", "age <40", "demographics", "A34", kYesNo},
    {"A9", "age [40-50]", "demographics", "A34", kYesNo},
    {"A10", "age [50-60]", "demographics", "A34", kYesNo},
    {"A11", "age >60", "demographics", "A34", kYesNo},
    {"A12", "known CAD", "history", "A32", kYesNo},
    {"A13", "previous stroke", "history", "A32", kYesNo},
    {"A14", "peripheral arterial disease", "history", "A33", kYesNo},
    {"A15", "smoking", "history", "A32", {"no", "occasionally", "yes"}},
    {"A16", "arterial hypertension", "history", "A32", kYesNo},
    {"A17", "dyslipidemia", "history", "A32", kYesNo},
    {"A18", "obesity", "history", "A32", {"no", "relatively", "yes"}},
    {"A19", "family history", "history", "A32", kYesNo},
    {"A20", "diabetes", "history", "A33", kYesNo},
    {"A21", "chronic kidney failure", "history", "A33", kYesNo},
    {"A22", "electrocardiogram normal", "tests", "A35", kYesNo},
    {"A23", "electrocardiogram abnormal", "tests", "A35", kYesNo},
    {"A24", "echocardiogram normal - doubtful", "tests", "A35", kYesNo},
    {"A25", "echocardiogram abnormal", "tests", "A35", {"no", "little", "abnormal", "definitely abnormal"}},
    {"A26", "treadmill exercise test normal", "tests", "A35", kYesNo},
    {"A27", "treadmill exercise test abnormal", "tests", "A35", {"no", "abnormal", "definitely abnormal"}},
    {"A28", "dynamic echocardiogram normal", "tests", "A35", kYesNo},
    {"A29", "dynamic echocardiogram abnormal", "tests", "A35", {"no", "doubtful", "abnormal", "definitely abnormal"}},
    {"A30", "scintigraphy normal - doubtful", "tests", "A35", kYesNo},
    {"A31", "scintigraphy abnormal", "tests", "A35",
     {"no", "little abnormal", "medium abnormal", "abnormal", "definitely abnormal"}},
  };
}

Edge edge(std::string from, std::string to, char const *weight, std::string provenance = "expert")
{
  return {std::move(from), std::move(to), LinguisticWeight::parse(weight), Gate::Always, 1.0, std::move(provenance)};
}

Predicate equals(std::string attr, std::string value)
{
  return {Predicate::Kind::Equals, {std::move(attr)}, {std::move(value)}, 1};
}

EdgeSelector from_sources(std::vector<std::string> ids) { return {std::move(ids), {}, {}}; }

std::vector<Rule> expert_rules()
{
  std::vector<std::string> const normalTests{"A22", "A24", "A26", "A28", "A30"};
  std::vector<std::string> const abnormalTests{"A23", "A25", "A27", "A29"};
  std::vector<Rule> rules;

  rules.push_back({"R1", "definitely abnormal scintigraphy: scintigraphy weights +50%",
                   {{equals("A31", "definitely abnormal")}},
                   {{Action::Kind::ScaleEdges, 1.5, from_sources({"A31"}), {}, {}}}});

  rules.push_back({"R2", "normal ECG and normal scintigraphy: both test weights +20%",
                   {{equals("A22", "yes"), equals("A30", "yes")}},
                   {{Action::Kind::ScaleEdges, 1.2, from_sources({"A22", "A30"}), {}, {}}}});

  rules.push_back({"R3", "previous stroke: deactivate gender",
                   {{equals("A13", "yes")}},
                   {{Action::Kind::DeactivateConcepts, 1.0, {}, {"A6", "A7"}, {}}}});

  rules.push_back({"R4", "known CAD: negate family history",
                   {{equals("A12", "yes")}},
                   {{Action::Kind::RemoveEdges, 1.0, from_sources({"A19"}), {}, {}}}});

  rules.push_back({"R5", "no diabetes, known CAD or stroke: normal test weights +20%",
                   {{equals("A20", "no"), equals("A12", "no"), equals("A13", "no"),
                     Predicate{Predicate::Kind::CountIn, normalTests, {"yes"}, 1}}},
                   {{Action::Kind::ScaleEdgesWhere, 1.2, from_sources(normalTests), {}, {"yes"}}}});

  rules.push_back({"R6", "asymptomatic with abnormal scintigraphy and another abnormal test: asymptomatic weight -25%",
                   {{equals("A5", "yes"), Predicate{Predicate::Kind::NotIn, {"A31"}, {"no"}, 1},
                     Predicate{Predicate::Kind::CountNotIn, abnormalTests, {"no"}, 1}}},
                   {{Action::Kind::ScaleEdges, 0.75, from_sources({"A5"}), {}, {}}}});
  return rules;
}

} // namespace

FcmModel builtin_model()
{
  FcmModel m;
  m.meta = {"CAD state-space FCM", "1.0"};

  for (auto const &row : input_rows()) {
    ConceptSpec c;
    c.id = row.id;
    c.label = row.label;
    c.kind = ConceptKind::Input;
    c.domain = evenly_spaced(row.values);
    c.group = row.group;
    c.section = row.section;
    m.concepts.push_back(std::move(c));
  }
  for (auto const &[id, label] : std::vector<std::pair<char const *, char const *>>{
         {"A32", "predisposing factors"},
         {"A33", "recurrent diseases"},
         {"A34", "demographic characteristics"},
         {"A35", "diagnostic tests"}}) {
    m.concepts.push_back({id, label, ConceptKind::State, {}, {}, "states", true});
  }
  m.concepts.push_back({"OUT", "CAD", ConceptKind::Output, {}, {}, "output", true});

  // Female -> diagnostic tests.
  std::vector<char const *> const femaleOnTests{"+W", "-W", "+VW", "-VW", "+W", "-W", "+W", "-W", "+W", "-W"};
  for (int i = 0; i < 10; ++i) { m.edges.push_back(edge("A7", "A" + std::to_string(22 + i), femaleOnTests[i])); }

  auto members = [&](char const *state, std::vector<std::pair<char const *, char const *>> const &rows) {
    for (auto const &[src, w] : rows) { m.edges.push_back(edge(src, state, w)); }
  };
  members("A32", {{"A12", "M"}, {"A13", "M"}, {"A15", "W"}, {"A16", "M"}, {"A17", "VW"}, {"A18", "W"}, {"A19", "VW"}});
  members("A33", {{"A14", "M"}, {"A20", "M"}, {"A21", "W"}});
  members("A34", {{"A6", "M"}, {"A7", "-S"}, {"A8", "-VS"}, {"A9", "-W"}, {"A10", "W"}, {"A11", "S"}});
  members("A35", {{"A22", "-M"}, {"A23", "M"}, {"A24", "-W"}, {"A25", "M"}, {"A26", "-S"},
                  {"A27", "W"}, {"A28", "-W"}, {"A29", "M"}, {"A30", "-VS"}, {"A31", "S"}});

  m.edges.push_back(edge("A1", "OUT", "VS"));
  m.edges.push_back(edge("A2", "OUT", "M"));
  m.edges.push_back(edge("A3", "OUT", "W"));
  m.edges.push_back(edge("A4", "OUT", "W"));
  m.edges.push_back(edge("A5", "OUT", "-S", "default"));

  m.edges.push_back(edge("A32", "OUT", "S"));
  m.edges.push_back(edge("A33", "OUT", "VS"));
  m.edges.push_back(edge("A34", "OUT", "S"));
  m.edges.push_back(edge("A35", "OUT", "VS"));

  m.rules = expert_rules();
  return m;
}

std::vector<std::string> case_ids()
{
  std::vector<std::string> ids;
  for (int i = 1; i <= 10; ++i) { ids.push_back("Case" + std::to_string(i)); }
  return ids;
}

CaseConfig case_config(std::string const &id)
{
  using Act = ActivationSpec;
  std::vector<std::string> const two{"A32", "A33"};
  auto make = [&](EngineKind engine, bool rules, std::vector<std::string> states, ActivationSpec act, OutputMode mode) {
    CaseConfig c;
    c.id = id;
    c.engine = engine;
    c.rules_enabled = rules;
    c.states = std::move(states);
    c.activation = act;
    c.output_mode = mode;
    return c;
  };
  auto const single = OutputMode::Single;
  auto const softmax = OutputMode::TwoClassSoftmax;
  auto const afcm = EngineKind::Afcm;

  if (id == "Case1") { return make(EngineKind::Classic, false, {}, Act::make_sigmoid(), single); }
  if (id == "Case2") { return make(EngineKind::Classic, false, {}, Act::make_sigmoid(), softmax); }
  if (id == "Case3") { return make(afcm, false, two, Act::make_sigmoid(), single); }
  if (id == "Case4") { return make(afcm, false, two, Act::make_sigmoid_n(), single); }
  if (id == "Case5") { return make(afcm, false, two, Act::make_sigmoid_n(), softmax); }
  if (id == "Case6") { return make(afcm, false, two, Act::make_tanh(), single); }
  if (id == "Case7") { return make(afcm, true, two, Act::make_sigmoid_n(), single); }
  if (id == "Case8") { return make(afcm, true, two, Act::make_sigmoid_n(), softmax); }
  if (id == "Case9") { return make(afcm, true, {"A32", "A33", "A34"}, Act::make_sigmoid_n(), single); }
  if (id == "Case10") { return make(afcm, true, {"A32", "A33", "A34", "A35"}, Act::make_sigmoid_n(), single); }
  throw ValidationError("unknown case '" + id + "'");
}

std::vector<CaseConfig> all_cases()
{
  std::vector<CaseConfig> out;
  for (auto const &id : case_ids()) { out.push_back(case_config(id)); }
  return out;
}

Record baseline_record(FcmModel const &model)
{
  Record r;
  for (auto const &c : model.concepts) {
    if (c.kind == ConceptKind::Input && !c.domain.empty()) { r[c.id] = c.domain.front().value; }
  }
  return r;
}

// Fixture ------------------------------------------------------------------
//
// Each record draws a latent propensity (60% "sick"), then every attribute from
// probabilities conditioned on it. The label is not the latent flag: a fixed
// additive risk score ranks the records and the top 60% are labelled Diseased.
// Uniform draws use the raw 53 high bits of mt19937_64 so the output is identical
// on every standard library.

namespace {

class Draw
{
public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }

  std::size_t pick(std::vector<double> const &weights)
  {
    double const total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double r = uniform() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      if (r < weights[i]) { return i; }
      r -= weights[i];
    }
    return weights.size() - 1;
  }

private:
  std::mt19937_64 engine_;
};

std::string yn(bool b) { return b ? "yes" : "no"; }

Record draw_record(Draw &d)
{
  bool const sick = d.chance(0.6);
  auto p = [&](double ifSick, double ifWell) { return d.chance(sick ? ifSick : ifWell); };
  Record r;

  bool const asymptomatic = p(0.15, 0.30);
  std::size_t const symptom = d.pick(sick ? std::vector<double>{0.5, 0.2, 0.15, 0.15} : std::vector<double>{0.15, 0.35, 0.35, 0.15});
  for (std::size_t i = 0; i < 4; ++i) { r["A" + std::to_string(i + 1)] = yn(!asymptomatic && symptom == i); }
  r["A5"] = yn(asymptomatic);

  bool const male = d.chance(0.85);
  r["A6"] = yn(male);
  r["A7"] = yn(!male);
  std::size_t const age = d.pick(sick ? std::vector<double>{0.05, 0.15, 0.35, 0.45} : std::vector<double>{0.15, 0.3, 0.3, 0.25});
  for (std::size_t i = 0; i < 4; ++i) { r["A" + std::to_string(8 + i)] = yn(age == i); }

  r["A12"] = yn(p(0.30, 0.08));
  r["A13"] = yn(p(0.10, 0.04));
  r["A14"] = yn(p(0.15, 0.05));
  r["A15"] = std::vector<std::string>{"no", "occasionally", "yes"}[d.pick(sick ? std::vector<double>{0.4, 0.2, 0.4} : std::vector<double>{0.6, 0.2, 0.2})];
  r["A16"] = yn(p(0.65, 0.40));
  r["A17"] = yn(p(0.60, 0.40));
  r["A18"] = std::vector<std::string>{"no", "relatively", "yes"}[d.pick(sick ? std::vector<double>{0.4, 0.35, 0.25} : std::vector<double>{0.6, 0.3, 0.1})];
  r["A19"] = yn(p(0.40, 0.25));
  r["A20"] = yn(p(0.35, 0.15));
  r["A21"] = yn(p(0.10, 0.03));

  bool const ecgAbnormal = p(0.55, 0.20);
  r["A22"] = yn(!ecgAbnormal);
  r["A23"] = yn(ecgAbnormal);

  // Optional tests: (normal attr, abnormal attr, chance performed, abnormal stages).
  auto test = [&](char const *normal, char const *abnormal, double performed, std::vector<std::string> const &stages,
                  std::vector<double> const &sickStages, std::vector<double> const &wellStages, double pSick,
                  double pWell) {
    r[normal] = "no";
    r[abnormal] = "no";
    if (!d.chance(performed)) { return; }
    if (p(pSick, pWell)) {
      r[abnormal] = stages[d.pick(sick ? sickStages : wellStages)];
    } else {
      r[normal] = "yes";
    }
  };
  test("A24", "A25", 0.7, {"little", "abnormal", "definitely abnormal"}, {0.3, 0.4, 0.3}, {0.6, 0.3, 0.1}, 0.5, 0.15);
  test("A26", "A27", 0.4, {"abnormal", "definitely abnormal"}, {0.5, 0.5}, {0.8, 0.2}, 0.6, 0.2);
  test("A28", "A29", 0.25, {"doubtful", "abnormal", "definitely abnormal"}, {0.2, 0.4, 0.4}, {0.5, 0.35, 0.15}, 0.6, 0.2);
  test("A30", "A31", 0.9, {"little abnormal", "medium abnormal", "abnormal", "definitely abnormal"},
       {0.15, 0.25, 0.3, 0.3}, {0.45, 0.3, 0.15, 0.1}, 0.75, 0.25);
  return r;
}

double risk_score(Record const &r, EncodingTable const &table)
{
  auto yes = [&](char const *a) { return r.at(a) == "yes" ? 1.0 : 0.0; };
  auto crisp = [&](char const *a) {
    for (auto const &l : table.at(a)) {
      if (l.value == r.at(a)) { return l.crisp; }
    }
    return 0.0;
  };
  double s = 0.0;
  s += 2.0 * yes("A1") + 1.0 * yes("A2") + 0.5 * yes("A4") - 0.5 * yes("A3");
  s += 0.5 * yes("A6") + 0.5 * yes("A10") + 1.0 * yes("A11") - 0.5 * yes("A8");
  s += 2.0 * yes("A12") + 1.0 * yes("A13") + 1.0 * yes("A14") + 0.5 * crisp("A15") + 0.5 * yes("A16");
  s += 0.5 * yes("A17") + 0.5 * crisp("A18") + 0.5 * yes("A19") + 1.0 * yes("A20") + 0.5 * yes("A21");
  s += 1.0 * yes("A23") + 1.5 * crisp("A25") + 1.5 * crisp("A27") + 1.5 * crisp("A29") + 3.0 * crisp("A31");
  s -= 1.0 * yes("A30");
  return s;
}

} // namespace

Dataset fixture_dataset()
{
  auto const model = builtin_model();
  auto const table = EncodingTable::of(model);

  Draw d(kFixtureSeed);
  Dataset ds;
  ds.attributes = table.attributes;
  std::vector<double> scores;
  for (std::size_t i = 0; i < kFixtureSize; ++i) {
    LabeledRecord rec;
    rec.attributes = draw_record(d);
    rec.line = static_cast<int>(i) + 2;
    scores.push_back(risk_score(rec.attributes, table));
    ds.records.push_back(std::move(rec));
  }

  std::vector<std::size_t> order(kFixtureSize);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  std::size_t const diseased = kFixtureSize * 6 / 10;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    ds.records[order[rank]].label = rank < diseased ? DecisionClass::Diseased : DecisionClass::Healthy;
  }
  return ds;
}

} // namespace afcm::cad
