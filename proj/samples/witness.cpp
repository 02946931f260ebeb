// Takes a rank-7 endomorphism e of the 45-vertex line graph and shows that
// PGammaL(2,9) together with e does not synchronize. Then prints Gr(<G,e>).
#include <iostream>

#include "synchro/catalog.hpp"
#include "synchro/search.hpp"
#include "synchro/synchro.hpp"

int main() {
  using namespace synchro;
  const auto line = catalog::tutte_coxeter_line_graph();
  const auto g = catalog::build_group("pgammal_2_9_deg45");

  SearchOptions opts;
  opts.rank_filter = {7};
  const auto found = find_homomorphism(line, line, opts);
  if (!found.found) return 1;
  const Transformation e(found.found->images);

  std::cout << "kernel type     " << kernel_type(e).to_string() << "\n";
  std::cout << "synchronizes    " << std::boolalpha << synchronizes(g, e) << "\n";
  std::cout << "minimal rank    " << min_rank(g, e) << "\n";

  const auto gr = graph_of(g, e);
  std::cout << "Gr: " << gr.order() << " vertices, valency " << gr.valency().value_or(0) << ", clique number "
            << clique_number(gr).size << ", chromatic number " << chromatic_number(gr).colours << "\n";
  std::cout << "Gr equals the line graph: " << (gr == line) << "\n";
}
