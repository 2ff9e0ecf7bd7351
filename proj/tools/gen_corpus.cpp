// Writes the built-in corpus entries as input files: gen_corpus <dir>.
#include "laurentia/corpus.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_corpus <dir>\n";
    return 2;
  }
  std::vector<laurentia::CorpusEntry> all;
  for (const auto& name : laurentia::example_names()) all.push_back(laurentia::load_example(name));
  all.push_back(laurentia::skew_c2_badorder());
  for (const auto& e : all) {
    std::string path = std::string(argv[1]) + "/" + e.name + ".toml";
    std::ofstream out(path);
    out << "# " << e.name << ": " << e.description << "\n";
    for (const auto& x : e.expected) out << "# expect " << x.key << " = " << x.value << "  (" << x.provenance << ")\n";
    out << "\n" << laurentia::to_toml(e.problem);
    std::cout << path << "\n";
  }
}
