// Counts proper endomorphisms of the line graph of the Tutte-Coxeter graph by rank.
#include <iostream>
#include <thread>

#include "synchro/catalog.hpp"
#include "synchro/search.hpp"

int main() {
  using namespace synchro;
  SearchOptions opts;
  opts.proper_only = true;
  opts.count_only = true;
  opts.parallelism = std::max(1u, std::thread::hardware_concurrency());
  const auto res = enumerate_endomorphisms(catalog::tutte_coxeter_line_graph(), opts);
  std::cout << "proper endomorphisms: " << res.total << "\n";
  for (auto [rank, count] : res.by_rank) std::cout << "  rank " << rank << ": " << count << "\n";
}
