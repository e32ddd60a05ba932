#include "fixtures.hpp"

namespace pedkin::support {

Pedigree make_pedigree(const std::vector<PedigreeRecord>& records) {
  return Pedigree::from_records(records);
}

Pedigree trio() {
  return make_pedigree({{"A", "", "", Sex::male}, {"B", "", "", Sex::female}, {"C", "A", "B", Sex::female}});
}

Pedigree full_sibs() {
  return make_pedigree({{"A", "", "", Sex::male},
                        {"B", "", "", Sex::female},
                        {"C", "A", "B", Sex::female},
                        {"D", "A", "B", Sex::male}});
}

Pedigree half_sibs() {
  return make_pedigree({{"M", "", "", Sex::male},
                        {"F1", "", "", Sex::female},
                        {"F2", "", "", Sex::female},
                        {"C", "M", "F1", Sex::unknown},
                        {"D", "M", "F2", Sex::unknown}});
}

Pedigree first_cousins() {
  return make_pedigree({{"G1", "", "", Sex::male},
                        {"G2", "", "", Sex::female},
                        {"P1", "G1", "G2", Sex::male},
                        {"P2", "G1", "G2", Sex::female},
                        {"S1", "", "", Sex::female},
                        {"S2", "", "", Sex::male},
                        {"C1", "P1", "S1", Sex::unknown},
                        {"C2", "S2", "P2", Sex::unknown}});
}

Pedigree full_sib_mating() {
  return make_pedigree({{"A", "", "", Sex::male},
                        {"B", "", "", Sex::female},
                        {"S", "A", "B", Sex::male},
                        {"D", "A", "B", Sex::female},
                        {"X", "S", "D", Sex::unknown}});
}

}  // namespace pedkin::support
