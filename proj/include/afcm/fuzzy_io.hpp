#pragma once

#include "afcm/model.hpp"
#include "afcm/weights.hpp"

#include <map>
#include <string>
#include <vector>

namespace afcm {

/// Raw patient record: attribute id -> raw (verbal) value.
using Record = std::map<std::string, std::string>;

/// Per-attribute ordered value -> crisp maps, in model input order.
struct EncodingTable
{
  std::vector<std::string> attributes;
  std::map<std::string, std::vector<ValueLevel>> levels;

  static EncodingTable of(FcmModel const &model);
  [[nodiscard]] std::vector<ValueLevel> const &at(std::string const &attribute) const;
};

/// Evenly spaced crisp values on [0,1] for an ordered list of raw values.
std::vector<ValueLevel> evenly_spaced(std::vector<std::string> const &ordered_values);

/// Crisp values in table attribute order. Throws AttributeError naming the attribute
/// for a missing attribute, an unknown attribute, or a value outside its domain.
Vector<double> encode_record(Record const &record, EncodingTable const &table);

/// Validates a record without encoding it.
void check_record(Record const &record, EncodingTable const &table);

/// Label of the first band whose upper bound is >= score. Throws ValidationError
/// for a score outside [0,1].
std::string const &label_output(double score, OutputLabelScale const &scale);

} // namespace afcm
