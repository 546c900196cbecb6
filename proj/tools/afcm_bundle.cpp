// Writes the bundled model document and fixture dataset.
#include "afcm/cad.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

bool write_file(std::filesystem::path const &path, std::string const &content)
{
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

} // namespace

int main(int argc, char **argv)
{
  std::filesystem::path const root = argc > 1 ? argv[1] : ".";
  auto const model = afcm::cad::builtin_model();
  if (!write_file(root / "models" / "cad.model", afcm::serialize_model(model)) ||
      !write_file(root / "data" / "fixture.csv", afcm::to_csv(afcm::cad::fixture_dataset()))) {
    std::cerr << "error: cannot write bundle under " << root << "\n";
    return 1;
  }
  std::cout << "wrote " << (root / "models" / "cad.model").string() << " and " << (root / "data" / "fixture.csv").string()
            << "\n";
  return 0;
}
