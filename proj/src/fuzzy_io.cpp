#include "afcm/fuzzy_io.hpp"

#include "afcm/error.hpp"

#include <algorithm>
#include <cmath>

namespace afcm {

EncodingTable EncodingTable::of(FcmModel const &model)
{
  EncodingTable t;
  for (auto const &c : model.concepts) {
    if (c.kind != ConceptKind::Input) { continue; }
    t.attributes.push_back(c.id);
    t.levels[c.id] = c.domain;
  }
  return t;
}

std::vector<ValueLevel> const &EncodingTable::at(std::string const &attribute) const
{
  auto it = levels.find(attribute);
  if (it == levels.end()) { throw AttributeError(attribute, "unknown attribute '" + attribute + "'"); }
  return it->second;
}

std::vector<ValueLevel> evenly_spaced(std::vector<std::string> const &ordered_values)
{
  std::vector<ValueLevel> out;
  auto const n = ordered_values.size();
  for (std::size_t i = 0; i < n; ++i) {
    double const crisp = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back({ordered_values[i], crisp});
  }
  return out;
}

void check_record(Record const &record, EncodingTable const &table)
{
  for (auto const &[attr, value] : record) {
    if (!table.levels.count(attr)) { throw AttributeError(attr, "unknown attribute '" + attr + "'"); }
  }
  for (auto const &attr : table.attributes) {
    auto it = record.find(attr);
    if (it == record.end()) { throw AttributeError(attr, "missing attribute '" + attr + "'"); }
    auto const &dom = table.levels.at(attr);
    if (std::none_of(dom.begin(), dom.end(), [&](auto const &l) { return l.value == it->second; })) {
      throw AttributeError(attr, "unknown value '" + it->second + "' for attribute '" + attr + "'");
    }
  }
}

Vector<double> encode_record(Record const &record, EncodingTable const &table)
{
  check_record(record, table);
  Vector<double> u(static_cast<Index>(table.attributes.size()));
  for (std::size_t i = 0; i < table.attributes.size(); ++i) {
    auto const &attr = table.attributes[i];
    auto const &value = record.at(attr);
    auto const &dom = table.levels.at(attr);
    auto lvl = std::find_if(dom.begin(), dom.end(), [&](auto const &l) { return l.value == value; });
    u(static_cast<Index>(i)) = lvl->crisp;
  }
  return u;
}

std::string const &label_output(double score, OutputLabelScale const &scale)
{
  if (!(score >= 0.0 && score <= 1.0)) { throw ValidationError("score outside [0,1]"); }
  if (scale.empty()) { throw ValidationError("empty label scale"); }
  for (auto const &band : scale) {
    if (score <= band.upper) { return band.label; }
  }
  return scale.back().label;
}

} // namespace afcm
