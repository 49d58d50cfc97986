#pragma once

#include <string>
#include <vector>

namespace pnsqkd {

struct Check {
    std::string name;
    double measured;
    double expected;
    double tolerance;
    bool pass;
    std::string note;
};

Check near(std::string name, double measured, double expected, double tolerance, std::string note = {});
Check within(std::string name, double measured, double lo, double hi, std::string note = {});
Check holds(std::string name, bool condition, double measured = 0.0, std::string note = {});

struct Criterion {
    int id;
    std::string title;
    std::vector<Check> checks;
    bool pass() const;
};

// The twelve acceptance criteria, each with its sub-checks.
std::vector<Criterion> acceptance_criteria();
// Additional module invariants exercised by `validate`.
std::vector<Check> invariant_checks();

}  // namespace pnsqkd
