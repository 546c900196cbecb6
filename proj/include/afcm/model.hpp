#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace afcm {

enum class ConceptKind
{
  Input,
  State,
  Output
};

std::string_view to_string(ConceptKind kind);

/// One admissible raw value of an input attribute and its crisp encoding in [0,1].
struct ValueLevel
{
  std::string value;
  double crisp = 0.0;
  bool operator==(ValueLevel const &) const = default;
};

struct ConceptSpec
{
  std::string id;
  std::string label;
  ConceptKind kind = ConceptKind::Input;
  /// Ordered from least to most severe. Empty for states and outputs.
  std::vector<ValueLevel> domain;
  /// State concept this input feeds, if any.
  std::string group;
  /// Display section (symptoms, demographics, ...). Purely presentational.
  std::string section;
  /// Cleared by rule deactivation; an inactive concept holds 0 and has no edges.
  bool active = true;

  bool operator==(ConceptSpec const &) const = default;
};

enum class Magnitude
{
  VeryWeak,
  Weak,
  Medium,
  Strong,
  VeryStrong
};

struct LinguisticWeight
{
  Magnitude magnitude = Magnitude::Medium;
  bool negative = false;

  /// Accepts "VW", "W", "M", "S", "VS" with an optional leading '+' or '-'.
  static LinguisticWeight parse(std::string_view text);
  [[nodiscard]] std::string str() const;
  bool operator==(LinguisticWeight const &) const = default;
};

/// Sign routing on state->output edges.
enum class Gate
{
  Always,
  PositiveSource, ///< contributes |w|*x only when x > 0
  NegativeSource  ///< contributes |w|*|x| only when x < 0
};

std::string_view to_string(Gate gate);

struct Edge
{
  std::string source;
  std::string target;
  LinguisticWeight weight;
  Gate gate = Gate::Always;
  /// Accumulated rule scaling. The resolved numeric weight is clamped to [-1, 1].
  double multiplier = 1.0;
  /// "expert" for expert-given weights, "default" for reconstructed ones.
  std::string provenance;

  bool operator==(Edge const &) const = default;
};

/// Numeric value of each magnitude term.
struct WeightScale
{
  std::array<double, 5> values{0.1, 0.3, 0.5, 0.7, 0.9};

  [[nodiscard]] double operator[](Magnitude m) const { return values[static_cast<std::size_t>(m)]; }
  bool operator==(WeightScale const &) const = default;
};

/// Resolves sign x scale[magnitude] x multiplier, clamped to [-1, 1].
double numeric_weight(Edge const &edge, WeightScale const &scale);

struct LabelBand
{
  double upper = 1.0;
  std::string label;
  bool operator==(LabelBand const &) const = default;
};

/// Bands are inclusive at their upper bound; the last bound is 1.
using OutputLabelScale = std::vector<LabelBand>;

OutputLabelScale default_label_scale();

// Rules ------------------------------------------------------------------

struct Predicate
{
  enum class Kind
  {
    Equals,     ///< attributes[0] == values[0]
    In,         ///< attributes[0] in values
    NotIn,      ///< attributes[0] not in values
    CountIn,    ///< #{a in attributes : record[a] in values} >= at_least
    CountNotIn  ///< #{a in attributes : record[a] not in values} >= at_least
  };
  Kind kind = Kind::Equals;
  std::vector<std::string> attributes;
  std::vector<std::string> values;
  int at_least = 1;

  bool operator==(Predicate const &) const = default;
};

/// Conjunction of predicates.
struct Condition
{
  std::vector<Predicate> all;
  bool operator==(Condition const &) const = default;
};

/// Matches an edge when every non-empty field matches (fields are ORed internally).
struct EdgeSelector
{
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::vector<std::string> source_groups;
  bool operator==(EdgeSelector const &) const = default;
};

struct Action
{
  enum class Kind
  {
    ScaleEdges,
    RemoveEdges,
    DeactivateConcepts,
    ScaleEdgesWhere ///< scale selected edges whose source's raw value is in source_values
  };
  Kind kind = Kind::ScaleEdges;
  double factor = 1.0;
  EdgeSelector select;
  std::vector<std::string> concepts;
  std::vector<std::string> source_values;

  bool operator==(Action const &) const = default;
};

struct Rule
{
  std::string id;
  std::string description;
  Condition condition;
  std::vector<Action> actions;
  bool operator==(Rule const &) const = default;
};

// Model ------------------------------------------------------------------

struct ModelMeta
{
  std::string name;
  std::string version;
  bool operator==(ModelMeta const &) const = default;
};

struct FcmModel
{
  ModelMeta meta;
  std::vector<ConceptSpec> concepts;
  std::vector<Edge> edges;
  WeightScale scale;
  std::vector<Rule> rules;
  OutputLabelScale labels = default_label_scale();

  [[nodiscard]] ConceptSpec const *find(std::string_view id) const;
  [[nodiscard]] ConceptSpec const &at(std::string_view id) const;
  [[nodiscard]] std::vector<std::string> ids_of(ConceptKind kind) const;
  [[nodiscard]] bool has_incoming(std::string_view id) const;

  bool operator==(FcmModel const &) const = default;
};

struct Violation
{
  std::string code;    ///< short invariant name, e.g. "self-edge"
  std::string message; ///< names the offending ids
};

struct ValidationReport
{
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  [[nodiscard]] std::string str() const;
};

/// Lists every violated invariant. Never throws.
ValidationReport validate_model(FcmModel const &model);

/// Parses without validating. Throws ParseError on malformed documents.
FcmModel parse_model_document(std::string_view document);
/// Parses and validates a model document. Throws ParseError or ValidationError.
FcmModel load_model(std::string_view document);
FcmModel load_model_file(std::string const &path);
std::string serialize_model(FcmModel const &model);

// Topology rewrites used by the case configurations ------------------------

/// Keeps only the listed state concepts. Inputs that fed a dropped state are wired
/// straight to every output with their original weight; the dropped state and its
/// remaining edges disappear.
FcmModel with_states(FcmModel const &model, std::vector<std::string> const &keep);

/// Replaces the single output with a (healthy, diseased) pair. Input->output edges
/// are routed statically by sign; state->output edges become a pair of gated edges
/// routed by the sign of the state value.
FcmModel with_two_outputs(FcmModel const &model);

inline constexpr std::string_view kHealthyOutput = "OUT_H";
inline constexpr std::string_view kDiseasedOutput = "OUT_D";

} // namespace afcm
