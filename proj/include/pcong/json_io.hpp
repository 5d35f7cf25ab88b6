#pragma once

#include <json.hpp>

#include "pcong/congruence.hpp"
#include "pcong/scanner.hpp"

// JSON record formats shared by the library surface and the CLI:
//   RamanujanCongruence   {"ell":13,"m":1,"A":17303,"B":237}
//   SquareClassCongruence {"ell":13,"m":1,"modulus":17303,"convention":"thmA",
//                          "offset":1,"conditions":{"11":0,"13":-1}}
//   VerificationReport    {"tested":...,"violations":[[index,residue],...],
//                          "range_max":...,"notes":[...]}
// Condition values are -1 / 0 / 1, or the two-element sets [0,-1] / [0,1].

namespace pcong::congruence {

nlohmann::json to_json(const RamanujanCongruence& rc);
RamanujanCongruence ramanujan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SquareClassCongruence& sq);
SquareClassCongruence square_class_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& rep);

} // namespace pcong::congruence

namespace pcong::scanner {

nlohmann::json to_json(const ScanHit& hit);
nlohmann::json to_json(const SquareClassHit& hit);

} // namespace pcong::scanner
