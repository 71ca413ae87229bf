#pragma once
// Small crossed-module generators shared by the test binaries.

#include <vector>

#include "butterfly/fixtures.hpp"

namespace testing_util {

  inline bfly::CrossedModule one_object(bfly::Group const& A) {
    using namespace bfly;
    return make_xmod(zero_hom(A, trivial_group()), trivial_action(trivial_group(), A));
  }

  inline std::vector<bfly::CrossedModule> xmods_on(bfly::Group const& G,
                                                   bfly::Group const& G0) {
    return bfly::crossed_modules_on(G, G0);
  }

}  // namespace testing_util
