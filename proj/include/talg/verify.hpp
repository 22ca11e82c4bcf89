#pragma once

#include "talg/absorption.hpp"
#include "talg/csp.hpp"
#include "talg/cyclic.hpp"

#include <string>
#include <vector>

namespace talg {

struct Budgets {
    CloneBudget clone{};
    SearchBudget search{};
    CyclicOptions cyclic{};
};

/// Outcome of one property suite. Each instance either passes, is skipped
/// because a premise fails, or records a violation.
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::size_t skipped = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

const std::vector<std::string>& suite_names();

/// Throws InvalidInput for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const Budgets& budgets = {});

/// Copy of alg with elements renamed by perm: f'(perm x) = perm f(x).
FiniteAlgebra relabel(const FiniteAlgebra& alg, const std::vector<Element>& perm);

} // namespace talg
