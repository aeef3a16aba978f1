// rvt-smt: a small QF_LRA/QF_LIRA solver speaking an SMT-LIB v2 subset.
// Reads a script from a file argument or stdin, writes results to stdout.
#include <fstream>
#include <iostream>
#include <sstream>

#include "smt.hpp"

int main(int argc, char** argv) {
  std::string script;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "rvt-smt: cannot open " << argv[1] << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    script = ss.str();
  } else {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    script = ss.str();
  }
  try {
    rvtsmt::Engine engine;
    std::cout << engine.run(script);
  } catch (const std::exception& e) {
    std::cout << "(error \"" << e.what() << "\")" << std::endl;
    return 1;
  }
  return 0;
}
