#pragma once

#include <string>
#include <vector>

#include "iwasawa/zmod.hpp"

namespace iwasawa {

// Outcome of one check.  A failure names the objects involved (subgroup indices, or a class
// index for the L-value checks) and the offending residue.
struct Verdict {
    std::string check;
    bool passed = true;
    int small = -1;
    int big = -1;
    std::string detail;
    std::vector<u64> residue;

    static Verdict pass(std::string name) { return Verdict{std::move(name), true, -1, -1, {}, {}}; }
    static Verdict fail(std::string name, int small, int big, std::string detail, std::vector<u64> residue) {
        return Verdict{std::move(name), false, small, big, std::move(detail), std::move(residue)};
    }
};

}  // namespace iwasawa
