#pragma once

#include <string>
#include <vector>

#include "pedkin/pedigree.hpp"

namespace pedkin::support {

Pedigree make_pedigree(const std::vector<PedigreeRecord>& records);

// A x B -> C.
Pedigree trio();
// A x B -> C, D.
Pedigree full_sibs();
// M x F1 -> C, M x F2 -> D.
Pedigree half_sibs();
// Grandparents G1 x G2 -> P1, P2; P1 x S1 -> C1; P2 x S2 -> C2.
Pedigree first_cousins();
// A x B -> S (male), D (female); S x D -> X.
Pedigree full_sib_mating();

}  // namespace pedkin::support
