// Full acceptance sweep: one line per criterion, nonzero exit if any gating
// criterion fails. Advisory criteria print [WARN] on miss but never gate.

#include <cstdio>

#include "twisted/acceptance.hpp"

int main() {
    twisted::AcceptanceConfig cfg;
    bool ok = true;
    for (int id = 1; id <= 10; ++id) {
        const twisted::CriterionResult r = twisted::run_criterion(id, cfg);
        std::printf("%s\n", twisted::format_result_line(r).c_str());
        std::fflush(stdout);
        if (r.gating && !r.pass) ok = false;
    }
    return ok ? 0 : 1;
}
