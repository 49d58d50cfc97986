// One line per acceptance criterion; failing sub-checks are listed underneath.
#include "pnsqkd/anchors.hpp"

#include <cstdio>

int main() {
    int failed = 0;
    for (const auto& c : pnsqkd::acceptance_criteria()) {
        const bool ok = c.pass();
        std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str());
        if (ok) continue;
        ++failed;
        for (const auto& k : c.checks) {
            if (k.pass) continue;
            std::printf("       %s: measured %.8g, expected %.8g +- %.3g%s%s\n", k.name.c_str(), k.measured, k.expected, k.tolerance,
                        k.note.empty() ? "" : "; ", k.note.c_str());
        }
    }
    std::printf("%d of 12 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
