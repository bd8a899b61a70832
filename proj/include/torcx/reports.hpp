#pragma once

#include "torcx/diophantine.hpp"
#include "torcx/divisor_scan.hpp"
#include "torcx/normal_form.hpp"
#include "torcx/spectral.hpp"
#include "torcx/witness.hpp"

#include <json.hpp>

#include <string>

namespace torcx {

nlohmann::json to_json(const DivisorRecord& r);
/// {lambda_hat, C_hat, min_divisor, offenders[], ...}
nlohmann::json to_json(const DivisorScan& s);
/// "size,norm" rows sorted by size, then norm.
std::string scatter_csv(const DivisorScan& s);

/// {tag, q0?, mu?, witness: [{p, q, bound}], precision_digits, search_bounds}
nlohmann::json to_json(const DiophantineVerdict& v);
nlohmann::json to_json(const SDASearch& s);
nlohmann::json to_json(const RationalLowerBound& b);
nlohmann::json to_json(const HomogeneousScan& s);

nlohmann::json to_json(const GrowthFit& g);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const BlowupReport& r);

nlohmann::json to_json(const PolyBoundFit& f);
/// {per_xi: [{xi, sup_exp_im, ...}], fit: {C, kappa}, verdict, ...}
nlohmann::json to_json(const ConditionDReport& r);
nlohmann::json to_json(const ConjugationReport& r);
/// {per_j: {j: {condition, details}}, L_set, reduction_applies}
nlohmann::json to_json(const DecoupledClassification& c);

nlohmann::json big_json(const BigInt& v);
nlohmann::json big_json(const std::vector<BigInt>& v);

}  // namespace torcx
