#include <filesystem>
#include <fstream>
#include <iostream>

#include "dispcat/corpus.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : dispcat::fixtures::corpus_files()) {
    std::ofstream out(dir / name, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "cannot write " << (dir / name) << "\n";
      return 1;
    }
    std::cout << (dir / name).string() << "\n";
  }
  return 0;
}
