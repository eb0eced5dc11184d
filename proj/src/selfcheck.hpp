#pragma once

#include <string>

namespace ktwin {

struct SelfCheckResult {
    bool ok = true;
    std::string text;  // one line per check
};

// Cross-validates the closed forms against their brute-force counterparts on
// small inputs. Runs in about a second.
SelfCheckResult run_self_check();

}  // namespace ktwin
