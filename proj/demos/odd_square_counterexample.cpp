// Builds the non-CI map over Z_{p^2} (or Z_p x Z_p), prints its automorphism group order
// and a map isomorphic to it that is not Cayley isomorphic.
//
//   demo_odd_square_counterexample [p] [cyclic|elementary]

#include <cstdlib>
#include <iostream>
#include <string>

#include "cimlab/ci.hpp"
#include "cimlab/constructions.hpp"

using namespace cimlab;

int main(int argc, char** argv) {
  std::size_t p = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  auto kind = argc > 2 && std::string(argv[2]) == "elementary" ? SquareKind::elementary : SquareKind::cyclic;
  try {
    auto w = odd_square_map(p, kind);
    std::cout << "map       " << describe(w.map) << "\n";
    std::cout << "|Aut(M)|  " << map_automorphism_group(w.map).order() << "\n";
    std::cout << "rival     order " << w.rival.order() << ", " << w.notes << "\n";

    auto r = babai_is_ci_map(w.map);
    std::cout << "CI        " << (r.verdict ? "yes" : "no") << "\n";
    for (auto const& wit : r.witnesses) {
      if (!wit.other) continue;
      std::cout << "twin      " << describe(*wit.other) << "\n";
      std::cout << "vertex map";
      for (Element x : wit.isomorphism->images()) std::cout << ' ' << x;
      std::cout << "\n";
    }
  } catch (Error const& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
