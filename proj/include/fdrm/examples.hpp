#ifndef FDRM_EXAMPLES_HPP
#define FDRM_EXAMPLES_HPP

#include <functional>
#include <string>
#include <vector>

#include "fdrm/rankcode.hpp"

namespace fdrm {

/// A reproducible construction with known parameters, used as a golden test
/// by the CLI and the acceptance suite.
struct ExampleSpec {
    std::string id;
    std::string summary;
    u64 q = 0;
    std::size_t delta = 0;
    std::size_t expected_k = 0;
    /// Whether the distance check fits the default enumeration budget. When
    /// false, optimality can only be reported as unknown (sampled check).
    bool expect_exhaustive = true;
    FerrersDiagram diagram;
    std::function<RankCode()> build;
};

const std::vector<ExampleSpec>& example_registry();

/// nullptr when the id is not registered.
const ExampleSpec* find_example(const std::string& id);

}  // namespace fdrm

#endif
