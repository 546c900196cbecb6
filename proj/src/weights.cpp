#include "afcm/weights.hpp"

namespace afcm {

std::optional<Index> Layout::flat_index(std::string_view id) const
{
  Index offset = 0;
  for (auto const *part : {&inputs, &states, &outputs}) {
    for (std::size_t i = 0; i < part->size(); ++i) {
      if ((*part)[i] == id) { return offset + static_cast<Index>(i); }
    }
    offset += static_cast<Index>(part->size());
  }
  return std::nullopt;
}

std::string const &Layout::id_at(Index flat) const
{
  if (flat < 0 || flat >= size()) { throw DimensionError("layout index out of range"); }
  if (flat < n_inputs()) { return inputs[static_cast<std::size_t>(flat)]; }
  flat -= n_inputs();
  if (flat < n_states()) { return states[static_cast<std::size_t>(flat)]; }
  return outputs[static_cast<std::size_t>(flat - n_states())];
}

Layout Layout::of(FcmModel const &model)
{
  return {model.ids_of(ConceptKind::Input), model.ids_of(ConceptKind::State), model.ids_of(ConceptKind::Output)};
}

} // namespace afcm
