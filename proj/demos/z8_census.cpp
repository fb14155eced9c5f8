// Census of Cayley maps over Z_8 by valency, up to Cayley isomorphism, with the size of
// each map's automorphism group.

#include <iomanip>
#include <iostream>
#include <map>

#include "cimlab/ci.hpp"

using namespace cimlab;

int main() {
  auto h = share(make_cyclic(8));
  auto reps = enumerate_cayley_maps(h, 7, EnumerationMode::up_to_cayley_iso);
  auto all = enumerate_cayley_maps(h, 7);
  std::cout << "valency  maps  classes\n";
  for (auto const& [k, n] : all.counts_by_valency) {
    std::cout << std::setw(7) << k << std::setw(6) << n << std::setw(9) << reps.counts_by_valency[k] << "\n";
  }
  std::map<std::size_t, std::size_t> by_aut;
  for (auto const& m : reps.maps) {
    if (is_connected(m)) ++by_aut[map_automorphism_group(m).order()];
  }
  std::cout << "\nconnected classes by |Aut(M)|\n";
  for (auto const& [order, n] : by_aut) std::cout << "  " << order << ": " << n << "\n";
}
