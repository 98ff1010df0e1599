#pragma once

// JSON and CSV renderings of module results. Object keys are emitted in a
// fixed order, so identical inputs give byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "matring/cayley.hpp"
#include "matring/decomp.hpp"
#include "matring/error.hpp"
#include "matring/normal_form.hpp"
#include "matring/spectra.hpp"
#include "matring/sumprod.hpp"

namespace matring::report {

using Json = nlohmann::ordered_json;

/// Rounds values within 1e-9 of an integer and drops negative zero.
double clean(double x);

Json field_json(const FieldSpec& f);
Json matrix_json(const Matrix& m);
Json error_json(const Error& e);

Json counts_json(int n, long long q);

Json spectrum_json(const SpectrumReport& r);
/// label,rep,re,im,mult
std::string spectrum_csv(const SpectrumReport& r);

Json normal_form_json(const Matrix& a, const NormalFormWitness& w);
Json decomposition_json(const DecompositionWitness& w);
Json reachability_json(const CayleyGraphSpec& g, const Reachability& r);
Json srg_json(const CayleyGraphSpec& g, const std::optional<SrgParams>& params);

Json kloosterman_json(const Field& field);
/// q,delta,K,weil_bound
std::string kloosterman_csv(const Field& field);

Json gap_check_json(const Field& field, FieldElem alpha, const SubsetOfRing& x,
                    const SubsetOfRing& y, const std::optional<DetWitness>& w);
Json sumprod_json(const SumProdResult& r, const std::vector<const SubsetOfField*>& sets);

}  // namespace matring::report
