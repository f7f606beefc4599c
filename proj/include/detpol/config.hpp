#pragma once
/**
 * @brief Size caps and search bounds shared by the engines and the command line.
 */

#include "canonical_equiv.hpp"
#include "covering.hpp"

namespace detpol {

struct Limits {
    int enumeration_cap = 16;  ///< largest monoid whose subsets are enumerated for ~C
    int k_max = 4;             ///< largest class index tried by witness extraction
    int ptk = 3;               ///< PTK level standing in for PT bases in covering
    int word_bound = 8;        ///< word-length bound for bounded scans
    int monoid_cap = kDefaultMonoidCap;
    bool full_enumeration = false;

    EquivConfig equiv() const { return EquivConfig{enumeration_cap, full_enumeration, monoid_cap}; }
    CoverConfig cover() const { return CoverConfig{ptk, monoid_cap}; }
};

}  // namespace detpol
